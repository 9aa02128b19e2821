#pragma once

#include <cstddef>
#include <vector>

namespace spikering {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a);

// Cyclic index helper: wraps j into [0, K).  Single source of truth for the
// wraparound convention (j - 1 = K - 1 when j = 0).
std::size_t cyc(std::ptrdiff_t j, std::size_t K);

// Perturbation q = (f, g) of the ring, indices cyclic.
struct PerturbationVector {
    std::vector<double> f;
    std::vector<double> g;

    std::size_t K() const { return f.size(); }
    static PerturbationVector zeros(std::size_t K);

    // First difference quotient (x_{j+1} - x_j) K / (2 pi), applied per component.
    PerturbationVector dot_q() const;
    // Second difference quotient (x_{j+1} - 2 x_j + x_{j-1}) K^2 / (4 pi^2).
    PerturbationVector ddot_q() const;
    // Centered difference (x_{j+1} - x_{j-1}) K / (2 pi)  (the "bar" quotient).
    PerturbationVector bar_q() const;

    double inf_norm() const;
    // ||q||_inf + ||qdot||_inf + ||qddot||_inf
    double norm_star() const;
};

struct SpikeConfig {
    std::size_t K = 0;
    double R = 0.0;
    double alpha = 0.0;
    PerturbationVector q;
    std::vector<Vec2> Q;   // spike positions
    std::vector<Vec2> nn;  // outward normals n_j
    std::vector<Vec2> tt;  // tangents t_j
    bool in_Lambda_K = false;
};

SpikeConfig build_config(std::size_t K, double R, double alpha, const PerturbationVector& q);

double min_separation(const SpikeConfig& config);

// #{ Q_j : ell rho/2 <= |Q_j - x| < (ell+1) rho/2 }
int annulus_count(const SpikeConfig& config, Vec2 x, int ell);

// (sum_{j != j0} e^{-eta |Q_j - Q_{j0}|}) / e^{-eta rho}
double exp_sum_ratio(const SpikeConfig& config, std::size_t j0, double eta);

}  // namespace spikering
