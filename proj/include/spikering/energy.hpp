#pragma once

#include <optional>
#include <vector>

#include "spikering/balance.hpp"
#include "spikering/configuration.hpp"
#include "spikering/groundstate.hpp"
#include "spikering/potential.hpp"

namespace spikering {

struct EnergyReport {
    double J_total = 0.0;
    double term_const = 0.0;        // K I0
    double term_potential = 0.0;    // a0 sum |Q_j|^{-m}, or its V-based analogue
    double term_interaction = 0.0;  // -(gamma0/2) sum_{i != j} w(|Q_i - Q_j|)
    std::optional<double> direct_quadrature;
    std::optional<double> remainder;  // direct - expansion
};

// Radial model term a0 sum |Q_j|^{-m}.
EnergyReport reduced_energy(const SpikeConfig& config, double m, const ModelConstants& constants,
                            const GroundStateProfile& profile);
// General potential term sum (V(Q_j) - V_inf) mass2 / 2.
EnergyReport reduced_energy(const SpikeConfig& config, const PotentialModel& potential,
                            const ModelConstants& constants, const GroundStateProfile& profile);

// Gradient of J in (f_1..f_K, g_1..g_K) ordering.
std::vector<double> reduced_gradient(const SpikeConfig& config, double m,
                                     const ModelConstants& constants,
                                     const GroundStateProfile& profile);
std::vector<double> reduced_gradient(const SpikeConfig& config, const PotentialModel& potential,
                                     const ModelConstants& constants,
                                     const GroundStateProfile& profile);

// Leading projected error per spike, decomposed on (n_k, t_k):
//   a0 m |Q_k|^{-m-1} Q_k/|Q_k| + sum_{j != k} Psi(|Q_j - Q_k|)(Q_j - Q_k)/|Q_j - Q_k|
// with the first term replaced by -(mass2/2) grad V(Q_k) in the potential form.
std::vector<Vec2> projected_error_leading(const SpikeConfig& config, double m,
                                          const ModelConstants& constants,
                                          const GroundStateProfile& profile,
                                          PsiMode psi_mode = PsiMode::asymptotic);
std::vector<Vec2> projected_error_leading(const SpikeConfig& config,
                                          const PotentialModel& potential,
                                          const ModelConstants& constants,
                                          const GroundStateProfile& profile,
                                          PsiMode psi_mode = PsiMode::asymptotic);

// -a0 R^{-m-2} times the linearized bracket pair, evaluated through the
// cyclic difference quotients; coincides with -a0 R^{-m-2} (T q) per spike.
std::vector<Vec2> projected_error_frame(const SpikeConfig& config, double m, double a0,
                                        double dhat, double R);

// E(U) for U = sum_j w(. - Q_j) on a uniform grid with padding 15, evaluated
// at grid_step and grid_step/2; returns the Richardson combination of the two.
double direct_energy(const SpikeConfig& config, const PotentialModel& potential,
                     const GroundStateProfile& profile, double grid_step);

struct ReducedQResult {
    PerturbationVector q;
    double gamma = 0.0;
    int iterations = 0;
    bool in_Lambda_K = false;
};

ReducedQResult solve_reduced_q(double alpha, std::size_t K, double m,
                               const PotentialModel& potential, const BalanceResult& balance,
                               const ModelConstants& constants, const GroundStateProfile& profile,
                               int max_iter, double tol, bool force = false);

struct ScanRow {
    double alpha = 0.0;
    double F = 0.0;
    double gamma = 0.0;
    int iterations = 0;
    double q_norm_star = 0.0;
    bool converged = false;
};

struct Extremum {
    double alpha = 0.0;
    double F = 0.0;
    bool is_max = false;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<Extremum> extrema;  // at least the global max and min
    bool flat = false;              // relative spread below 1e-10
};

ScanResult scan_F(std::size_t K, double m, const PotentialModel& potential,
                  const BalanceResult& balance, const ModelConstants& constants,
                  const GroundStateProfile& profile, int n_alpha);

}  // namespace spikering
