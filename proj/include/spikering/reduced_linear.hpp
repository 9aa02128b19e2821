#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spikering/configuration.hpp"
#include "spikering/groundstate.hpp"

namespace spikering {

// 2K x 2K symmetric block operator
//   T = [ c1 A1 + c4 I    c2 A2 ]
//       [   -c2 A2        c3 A1 ]
// with A1 = circ(-2, 1, 0, ..., 0, 1), A2 = circ(0, 1, 0, ..., 0, -1),
// acting on stacked vectors (f_0..f_{K-1}, g_0..g_{K-1}).
struct ReducedOperator {
    std::size_t K = 0;
    double dhat = 0.0;
    double m = 0.0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;

    std::vector<double> matvec(const std::vector<double>& q) const;  // O(K)
    std::vector<double> dense() const;                               // row-major 2K x 2K
};

ReducedOperator build_T(std::size_t K, double dhat, double m);

struct SpectralData {
    std::vector<double> lambda1;    // -4 sin^2((l-1) pi / K)
    std::vector<double> lambda2sq;  // -4 sin^2(2 (l-1) pi / K)
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> Lambda1;  // smaller root of L^2 - alpha L + beta
    std::vector<double> Lambda2;  // larger root
    int n_zero = 0, n_neg = 0, n_pos = 0;
};

SpectralData spectrum(const ReducedOperator& op);

// Solve T q = b + gamma q0 with q perp q0, q0 = (0,...,0,1,...,1), by
// per-frequency 2x2 block solves in the cos/sin basis.
std::pair<std::vector<double>, double> solve_constrained(const ReducedOperator& op,
                                                         const std::vector<double>& b);

// Solve T q_sol = b + gamma q1 with q_sol perp q0, where
// q1 = c0 (R q0 + q_perp) and q_perp = (-g, f) for the current perturbation q.
std::pair<std::vector<double>, double> solve_constrained_q1(const ReducedOperator& op,
                                                            const std::vector<double>& b, double R,
                                                            const PerturbationVector& q, double c0);

enum class GramMode { asymptotic, quadrature };

// Gram matrix M of the translated-gradient basis projected on the frames,
// ordering (f_0..f_{K-1}, g_0..g_{K-1}).  Quadrature mode skips pairs farther
// apart than 30 (entries below ~1e-11).
std::vector<double> gram_matrix(const SpikeConfig& config, const GroundStateProfile& profile,
                                GramMode mode);

}  // namespace spikering
