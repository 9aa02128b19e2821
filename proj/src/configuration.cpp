#include "spikering/configuration.hpp"

#include <cmath>
#include <limits>

#include "spikering/errors.hpp"

namespace spikering {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

std::size_t cyc(std::ptrdiff_t j, std::size_t K) {
    const auto k = static_cast<std::ptrdiff_t>(K);
    return static_cast<std::size_t>(((j % k) + k) % k);
}

PerturbationVector PerturbationVector::zeros(std::size_t K) {
    PerturbationVector q;
    q.f.assign(K, 0.0);
    q.g.assign(K, 0.0);
    return q;
}

namespace {

std::vector<double> stencil(const std::vector<double>& x, double c_p1, double c_0, double c_m1,
                            double scale) {
    const std::size_t K = x.size();
    std::vector<double> out(K);
    for (std::size_t j = 0; j < K; ++j)
        out[j] = scale * (c_p1 * x[cyc(std::ptrdiff_t(j) + 1, K)] + c_0 * x[j] +
                          c_m1 * x[cyc(std::ptrdiff_t(j) - 1, K)]);
    return out;
}

}  // namespace

PerturbationVector PerturbationVector::dot_q() const {
    const double pi = std::acos(-1.0);
    const double s = K() / (2.0 * pi);
    return {stencil(f, 1, -1, 0, s), stencil(g, 1, -1, 0, s)};
}

PerturbationVector PerturbationVector::ddot_q() const {
    const double pi = std::acos(-1.0);
    const double s = K() * K() / (4.0 * pi * pi);
    return {stencil(f, 1, -2, 1, s), stencil(g, 1, -2, 1, s)};
}

PerturbationVector PerturbationVector::bar_q() const {
    const double pi = std::acos(-1.0);
    const double s = K() / (2.0 * pi);
    return {stencil(f, 1, 0, -1, s), stencil(g, 1, 0, -1, s)};
}

double PerturbationVector::inf_norm() const {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

double PerturbationVector::norm_star() const {
    return inf_norm() + dot_q().inf_norm() + ddot_q().inf_norm();
}

SpikeConfig build_config(std::size_t K, double R, double alpha, const PerturbationVector& q) {
    if (K < 8) throw ValidationError("build_config: K must be >= 8");
    if (R <= 0.0) throw ValidationError("build_config: R must be > 0");
    if (q.f.size() != K || q.g.size() != K)
        throw ValidationError("build_config: q has wrong length");
    SpikeConfig cfg;
    cfg.K = K;
    cfg.R = R;
    cfg.alpha = alpha;
    cfg.q = q;
    cfg.Q.resize(K);
    cfg.nn.resize(K);
    cfg.tt.resize(K);
    const double pi = std::acos(-1.0);
    for (std::size_t j = 0; j < K; ++j) {
        const double th = alpha + 2.0 * pi * double(j) / double(K);
        const Vec2 n{std::cos(th), std::sin(th)};
        const Vec2 t{-std::sin(th), std::cos(th)};
        cfg.nn[j] = n;
        cfg.tt[j] = t;
        cfg.Q[j] = (R + q.f[j]) * n + q.g[j] * t;
    }
    cfg.in_Lambda_K = q.norm_star() <= 1.0;
    return cfg;
}

double min_separation(const SpikeConfig& cfg) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cfg.K; ++j)
        for (std::size_t l = j + 1; l < cfg.K; ++l) best = std::min(best, norm(cfg.Q[j] - cfg.Q[l]));
    return best;
}

int annulus_count(const SpikeConfig& cfg, Vec2 x, int ell) {
    const double rho = min_separation(cfg);
    if (rho <= 0.0) throw ZeroSeparation("annulus_count: zero minimal separation");
    int count = 0;
    for (std::size_t j = 0; j < cfg.K; ++j) {
        const double dist = norm(cfg.Q[j] - x);
        if (dist >= ell * rho / 2.0 && dist < (ell + 1) * rho / 2.0) ++count;
    }
    return count;
}

double exp_sum_ratio(const SpikeConfig& cfg, std::size_t j0, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("exp_sum_ratio: need 0 < eta < 1");
    if (j0 >= cfg.K) throw ValidationError("exp_sum_ratio: index out of range");
    const double rho = min_separation(cfg);
    if (rho < 5.0) throw SeparationTooSmall("exp_sum_ratio: rho below 5");
    double s = 0.0;
    for (std::size_t j = 0; j < cfg.K; ++j)
        if (j != j0) s += std::exp(-eta * (norm(cfg.Q[j] - cfg.Q[j0]) - rho));
    return s;
}

}  // namespace spikering
