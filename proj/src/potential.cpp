#include "spikering/potential.hpp"

#include <cmath>
#include <limits>

#include "spikering/errors.hpp"

namespace spikering {

namespace {

// r^{-e} with a multiply chain for small integer e; eval_V sits in the inner
// loop of the 2D energy quadrature.
double pow_neg(double r, double e) {
    const int n = int(e);
    if (double(n) == e && n > 0 && n <= 16) {
        double acc = 1.0;
        for (int i = 0; i < n; ++i) acc *= r;
        return 1.0 / acc;
    }
    return std::pow(r, -e);
}

double unclamped_V(const PotentialModel& mo, double r, double theta) {
    double v = mo.V_inf + mo.a * pow_neg(r, mo.m);
    if (mo.eps != 0.0)
        v += mo.eps * std::cos(mo.frequency * theta) * pow_neg(r, mo.m + mo.sigma);
    return v;
}

}  // namespace

double eval_V(const PotentialModel& mo, Vec2 x) {
    const double r = norm(x);
    const double theta = mo.eps != 0.0 ? std::atan2(x.y, x.x) : 0.0;
    return unclamped_V(mo, std::max(r, mo.r0), theta);
}

Vec2 grad_V(const PotentialModel& mo, Vec2 x) {
    const double r = norm(x);
    if (r <= mo.r0) {
        if (mo.eps == 0.0) return {0.0, 0.0};
        // Clamped region still carries the angular dependence at r0.
        const double theta = std::atan2(x.y, x.x);
        const double dth = -mo.eps * mo.frequency * std::sin(mo.frequency * theta) *
                           std::pow(mo.r0, -mo.m - mo.sigma);
        const Vec2 t{-x.y / r, x.x / r};
        return (dth / r) * t;
    }
    const double theta = std::atan2(x.y, x.x);
    const Vec2 er{x.x / r, x.y / r};
    const Vec2 et{-x.y / r, x.x / r};
    double dr = -mo.a * mo.m * std::pow(r, -mo.m - 1.0);
    double dth = 0.0;
    if (mo.eps != 0.0) {
        dr += -mo.eps * (mo.m + mo.sigma) * std::cos(mo.frequency * theta) *
              std::pow(r, -mo.m - mo.sigma - 1.0);
        dth = -mo.eps * mo.frequency * std::sin(mo.frequency * theta) *
              std::pow(r, -mo.m - mo.sigma);
    }
    return dr * er + (dth / r) * et;
}

DecayReport check_decay(const PotentialModel& mo, const std::vector<double>& radii, double tol) {
    DecayReport rep;
    rep.min_V = 1e300;
    const double pi = std::acos(-1.0);
    for (double r : radii) {
        for (int i = 0; i < 64; ++i) {
            const double th = 2.0 * pi * i / 64.0;
            const Vec2 x{r * std::cos(th), r * std::sin(th)};
            const double v = eval_V(mo, x);
            rep.min_V = std::min(rep.min_V, v);
            if (r >= 2.0 * mo.r0) {
                const double dev = std::abs(v - mo.V_inf - mo.a * std::pow(r, -mo.m));
                rep.worst_ratio = std::max(rep.worst_ratio, dev * std::pow(r, mo.m + mo.sigma));
                // the subtraction leaves ~ulp(V_inf) of noise, which dominates
                // once the r^{-m-sigma} bound drops below it
                const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                                     (std::abs(mo.V_inf) + std::abs(mo.a) * std::pow(r, -mo.m));
                if (dev > (std::abs(mo.eps) + tol) * std::pow(r, -mo.m - mo.sigma) + slack)
                    throw DecayViolated("check_decay: tail bound violated");
            }
        }
    }
    if (rep.min_V <= 0.0) throw InfimumViolated("check_decay: inf V <= 0");
    rep.pass = true;
    return rep;
}

bool cond_m_ok(double p, double m, double sigma) {
    return std::min(1.0, 0.5 * (p - 1.0)) * m > 2.0 && sigma > 2.0;
}

}  // namespace spikering
