#include "spikering/balance.hpp"

#include <cmath>

#include "spikering/errors.hpp"

namespace spikering {

double asymptotic_d(int K, double m, int N) {
    if (K < 8) throw ValidationError("asymptotic_d: K must be >= 8");
    const double mlk = m * std::log(double(K));
    return mlk + (m - 0.5 * (N - 3)) * std::log(mlk);
}

BalanceResult solve_balance(int K, double m, const ModelConstants& constants,
                            const GroundStateProfile& profile, PsiMode psi_mode) {
    if (K < 8) throw ValidationError("solve_balance: K must be >= 8");
    if (m <= 0.0) throw ValidationError("solve_balance: m must be > 0");
    const double pi = std::acos(-1.0);
    const double sinf = 2.0 * std::sin(pi / K);
    const double log_target = std::log(constants.a0 * m) + m * std::log(sinf);
    const int N = profile.N;

    auto log_psi_asym = [&](double d) {
        return std::log(profile.c_Np) - 0.5 * (N - 1) * std::log(d) - d;
    };
    auto g_asym = [&](double d) { return (m + 1.0) * std::log(d) + log_psi_asym(d) - log_target; };

    // g is strictly decreasing for d > m + 1; bracketed Newton in log space.
    double lo = std::log(double(K));
    double hi = 10.0 * m * std::log(double(K));
    if (psi_mode == PsiMode::quadrature) hi = std::min(hi, 2.0 * profile.r_max - 10.0);
    if (g_asym(lo) < 0.0 || g_asym(hi) > 0.0)
        throw NoBracket("solve_balance: g does not change sign on the search interval");

    double d = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double gv = g_asym(d);
        if (gv > 0.0)
            lo = d;
        else
            hi = d;
        const double gp = (m + 1.0 - 0.5 * (N - 1)) / d - 1.0;
        double dn = d - gv / gp;
        if (!(dn > lo && dn < hi)) dn = 0.5 * (lo + hi);
        if (std::abs(dn - d) < 1e-13 * d) {
            d = dn;
            break;
        }
        d = dn;
    }

    if (psi_mode == PsiMode::quadrature) {
        auto g_quad = [&](double dd) {
            return (m + 1.0) * std::log(dd) + std::log(psi(profile, dd)) - log_target;
        };
        if (d + 10.0 > 2.0 * profile.r_max)
            throw NoBracket("solve_balance: quadrature Psi range exhausted");
        // Newton polish from the asymptotic root; Psi'/Psi = -dhat/d.
        for (int it = 0; it < 30; ++it) {
            const double gv = g_quad(d);
            const double gp = (m + 1.0 - psi_log_derivative(profile, d)) / d;
            const double dn = d - gv / gp;
            if (std::abs(dn - d) < 1e-12 * d) {
                d = dn;
                break;
            }
            d = dn;
        }
    }

    BalanceResult res;
    res.K = K;
    res.m = m;
    res.d = d;
    res.R = d / sinf;
    if (psi_mode == PsiMode::asymptotic) {
        res.dhat = d + 0.5 * (N - 1);
        res.residual = std::exp(log_target) * std::expm1(g_asym(d));
    } else {
        res.dhat = psi_log_derivative(profile, d);
        res.residual =
            std::exp(log_target) *
            std::expm1((m + 1.0) * std::log(d) + std::log(psi(profile, d)) - log_target);
    }
    return res;
}

}  // namespace spikering
