#include "spikering/groundstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "spikering/errors.hpp"
#include "spikering/quad.hpp"

namespace spikering {

namespace {

double surface_area(int n) {  // |S^{n-1}|
    const double pi = std::acos(-1.0);
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double upow(double w, double p) { return w > 0.0 ? std::pow(w, p) : 0.0; }

struct State {
    double w;
    double v;  // w'
};

State rhs(double r, State y, int N, double p) {
    return {y.v, -(N - 1) / r * y.v + y.w - upow(y.w, p)};
}

// One embedded Dormand-Prince 5(4) step; returns error estimate scale.
State dp_step(double r, State y, double h, int N, double p, double& err, double atol = 1e-20) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto ax = [&](double cw, double cv) { return State{y.w + h * cw, y.v + h * cv}; };
    State k1 = rhs(r, y, N, p);
    State k2 = rhs(r + h * 0.2, ax(a21 * k1.w, a21 * k1.v), N, p);
    State k3 = rhs(r + h * 0.3, ax(a31 * k1.w + a32 * k2.w, a31 * k1.v + a32 * k2.v), N, p);
    State k4 = rhs(r + h * 0.8,
                   ax(a41 * k1.w + a42 * k2.w + a43 * k3.w, a41 * k1.v + a42 * k2.v + a43 * k3.v),
                   N, p);
    State k5 = rhs(r + h * 8.0 / 9,
                   ax(a51 * k1.w + a52 * k2.w + a53 * k3.w + a54 * k4.w,
                      a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v),
                   N, p);
    State k6 = rhs(r + h,
                   ax(a61 * k1.w + a62 * k2.w + a63 * k3.w + a64 * k4.w + a65 * k5.w,
                      a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v + a65 * k5.v),
                   N, p);
    State ynew = ax(b1 * k1.w + b3 * k3.w + b4 * k4.w + b5 * k5.w + b6 * k6.w,
                    b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v);
    State k7 = rhs(r + h, ynew, N, p);
    const double ew = h * (e1 * k1.w + e3 * k3.w + e4 * k4.w + e5 * k5.w + e6 * k6.w + e7 * k7.w);
    const double ev = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
    const double sw = atol + 1e-12 * std::max(std::abs(y.w), std::abs(ynew.w));
    const double sv = atol + 1e-12 * std::max(std::abs(y.v), std::abs(ynew.v));
    err = std::max(std::abs(ew) / sw, std::abs(ev) / sv);
    return ynew;
}

// Adaptive integration from (r0, y) to r1; direction given by sign(r1 - r0).
// The tail branch never vanishes, so callers there pass a tiny atol: a plain
// absolute floor above the solution scale lets the integrator commit errors
// that ride along the backward-growing mode and wreck the junction match.
State integrate_to(double r0, double r1, State y, int N, double p, double atol = 1e-20) {
    const double dir = r1 > r0 ? 1.0 : -1.0;
    double r = r0;
    double h = dir * std::min(0.05, std::abs(r1 - r0));
    while (dir * (r1 - r) > 1e-14 * std::abs(r1)) {
        if (dir * (r + h) > dir * r1) h = r1 - r;
        double err = 0.0;
        State ynew = dp_step(r, y, h, N, p, err, atol);
        if (std::isfinite(err) && err <= 1.0) {
            r += h;
            y = ynew;
            h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 1.0, 5.0);
        } else {
            h *= std::isfinite(err) ? std::max(0.9 * std::pow(err, -0.2), 0.2) : 0.2;
        }
        if (!(std::abs(h) >= 1e-15))
            throw ShootingFailed("step size underflow in radial integrator");
    }
    return y;
}

State series_start(double w0, double r0, int N, double p) {
    const double w2 = (w0 - upow(w0, p)) / N;  // w''(0)
    return {w0 + 0.5 * w2 * r0 * r0, w2 * r0};
}

enum class Shot { Cross, Under };

// Integrate from the origin and classify: Cross means w hits zero (w0 too
// large), Under means w' turns positive while w < 1 (w0 too small).
Shot classify(double w0, int N, double p, double r_end) {
    const double r0 = 1e-6;
    State y = series_start(w0, r0, N, p);
    double r = r0;
    double h = 1e-4;
    while (r < r_end) {
        if (r + h > r_end) h = r_end - r;
        double err = 0.0;
        State ynew = dp_step(r, y, h, N, p, err);
        if (err <= 1.0) {
            r += h;
            y = ynew;
            if (y.w <= 0.0) return Shot::Cross;
            if (y.v > 0.0) return Shot::Under;
            if (y.w > w0 + 1.0) return Shot::Under;
            h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 1.0, 5.0);
        } else {
            h *= std::max(0.9 * std::pow(err, -0.2), 0.2);
        }
        if (h < 1e-15) throw ShootingFailed("step size underflow in shooting classifier");
    }
    return Shot::Under;  // reached the far end still positive and decreasing
}

}  // namespace

double GroundStateProfile::tail(double rr) const {
    return c_Np * std::pow(rr, -0.5 * (N - 1)) * std::exp(-rr);
}

void GroundStateProfile::refresh_wpp() {
    wpp.resize(r.size());
    wpp[0] = (w[0] - upow(w[0], p)) / N;
    for (std::size_t i = 1; i < r.size(); ++i)
        wpp[i] = -(N - 1) / r[i] * wp[i] + w[i] - upow(w[i], p);
}

double GroundStateProfile::value(double rr) const {
    if (rr < 0.0) rr = -rr;
    if (rr >= r_max) return tail(rr);
    const double h = step();
    auto i = static_cast<std::size_t>(rr / h);
    if (i + 1 >= r.size()) i = r.size() - 2;
    const double t = (rr - r[i]) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double m0 = h * wp[i], m1 = h * wp[i + 1];
    const double s0 = h * h * wpp[i], s1 = h * h * wpp[i + 1];
    return w[i] * (1 - 10 * t3 + 15 * t4 - 6 * t5) + m0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
           s0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) +
           w[i + 1] * (10 * t3 - 15 * t4 + 6 * t5) + m1 * (-4 * t3 + 7 * t4 - 3 * t5) +
           s1 * (0.5 * t3 - t4 + 0.5 * t5);
}

double GroundStateProfile::deriv(double rr) const {
    double sign = 1.0;
    if (rr < 0.0) {
        rr = -rr;
        sign = -1.0;
    }
    if (rr >= r_max) return -sign * (1.0 + 0.5 * (N - 1) / rr) * tail(rr);
    const double h = step();
    auto i = static_cast<std::size_t>(rr / h);
    if (i + 1 >= r.size()) i = r.size() - 2;
    const double t = (rr - r[i]) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double m0 = h * wp[i], m1 = h * wp[i + 1];
    const double s0 = h * h * wpp[i], s1 = h * h * wpp[i + 1];
    const double dv = w[i] * (-30 * t2 + 60 * t3 - 30 * t4) +
                      m0 * (1 - 18 * t2 + 32 * t3 - 15 * t4) +
                      s0 * (t - 4.5 * t2 + 6 * t3 - 2.5 * t4) +
                      w[i + 1] * (30 * t2 - 60 * t3 + 30 * t4) +
                      m1 * (-12 * t2 + 28 * t3 - 15 * t4) + s1 * (1.5 * t2 - 4 * t3 + 2.5 * t4);
    return sign * dv / h;
}

GroundStateProfile solve_ground_state(int N, double p, double r_max, double tol,
                                      double grid_step) {
    if (N < 2) throw ValidationError("solve_ground_state: N must be >= 2");
    if (p <= 1.0 || (N >= 3 && p >= double(N + 2) / (N - 2)))
        throw NonSubcriticalExponent("solve_ground_state: exponent out of subcritical range");
    if (r_max < 40.0) throw ValidationError("solve_ground_state: r_max must be >= 40");
    if (tol <= 0.0) throw ValidationError("solve_ground_state: tol must be > 0");
    if (!(grid_step > 0.0 && grid_step <= 0.1))
        throw ValidationError("solve_ground_state: grid_step must be in (0, 0.1]");
    const double kGridStep = grid_step;

    const double r_end = r_max + 12.0;

    // Bracket w(0): just above 1 the solution undershoots; scan upward for a crossing.
    double lo = 1.0 + 1e-6;
    if (classify(lo, N, p, r_end) != Shot::Under)
        throw ShootingFailed("lower shooting bracket does not undershoot");
    double hi = 1.5;
    int scan = 0;
    while (classify(hi, N, p, r_end) == Shot::Under) {
        lo = hi;
        hi *= 1.5;
        if (++scan > 60) throw ShootingFailed("no crossing found while scanning for upper bracket");
    }

    // Bisect to floating-point collapse.
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (classify(mid, N, p, r_end) == Shot::Cross)
            hi = mid;
        else
            lo = mid;
    }
    if (hi - lo > tol)
        throw ShootingFailed("bisection interval collapsed without meeting requested tol");
    const double w0 = 0.5 * (lo + hi);

    GroundStateProfile prof;
    prof.N = N;
    prof.p = p;
    prof.r_max = r_max;
    prof.tol = tol;
    const auto n_nodes = static_cast<std::size_t>(std::llround(r_max / kGridStep)) + 1;
    prof.r.resize(n_nodes);
    prof.w.assign(n_nodes, 0.0);
    prof.wp.assign(n_nodes, 0.0);
    for (std::size_t i = 0; i < n_nodes; ++i) prof.r[i] = i * kGridStep;

    // Forward branch: origin to the junction point, tabulating node by node.
    // The junction sits where w is still O(1): the forward solution is only
    // mildly sensitive to the bisected w0 there, while the decaying branch is
    // recovered stably by backward integration from asymptotic tail data.
    const double r_join = 3.0;
    const auto i_join = static_cast<std::size_t>(std::llround(r_join / kGridStep));
    prof.w[0] = w0;
    prof.wp[0] = 0.0;
    {
        const double r0 = 1e-6;
        State y = series_start(w0, r0, N, p);
        double rc = r0;
        for (std::size_t i = 1; i <= i_join; ++i) {
            y = integrate_to(rc, prof.r[i], y, N, p);
            rc = prof.r[i];
            prof.w[i] = y.w;
            prof.wp[i] = y.v;
        }
    }

    // Backward branch: secant iteration on the tail amplitude until the
    // backward value matches the forward value at the junction.
    const double r_far = r_max + 12.0;
    auto tail_state = [&](double c) {
        const double g = c * std::pow(r_far, -0.5 * (N - 1)) * std::exp(-r_far);
        return State{g, -(1.0 + 0.5 * (N - 1) / r_far) * g};
    };
    auto mismatch = [&](double c) {
        return std::log(integrate_to(r_far, r_join, tail_state(c), N, p, 1e-300).w) -
               std::log(prof.w[i_join]);
    };
    double c_amp = 1.0;
    {
        double c_prev = 1.0, f_prev = mismatch(1.0);
        if (!std::isfinite(f_prev)) throw ShootingFailed("tail matching: invalid junction value");
        // In the tail-linear regime log w_b is log c + const, so the first
        // secant step uses slope 1.
        double c_cur = std::exp(std::log(c_prev) - f_prev);
        for (int it = 0; it < 40; ++it) {
            const double f_cur = mismatch(c_cur);
            if (!std::isfinite(f_cur)) throw ShootingFailed("tail matching: invalid junction value");
            const double dlc = std::log(c_cur) - std::log(c_prev);
            if (std::abs(f_cur) < 1e-13 || std::abs(dlc) < 1e-15) break;
            const double slope = (f_cur - f_prev) / dlc;
            if (!std::isfinite(slope) || slope == 0.0) break;
            c_prev = c_cur;
            f_prev = f_cur;
            c_cur = std::exp(std::log(c_cur) - f_cur / slope);
        }
        c_amp = c_cur;
    }
    {
        State y = tail_state(c_amp);
        double rc = r_far;
        for (std::size_t i = n_nodes - 1; i > i_join; --i) {
            y = integrate_to(rc, prof.r[i], y, N, p, 1e-300);
            rc = prof.r[i];
            prof.w[i] = y.w;
            prof.wp[i] = y.v;
        }
    }

    // Asymptotic constant: least-squares constant fit of
    // log w + r + ((N-1)/2) log r over the last 10 units of the grid.
    {
        double acc = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < n_nodes; ++i) {
            if (prof.r[i] < r_max - 10.0) continue;
            acc += std::log(prof.w[i]) + prof.r[i] + 0.5 * (N - 1) * std::log(prof.r[i]);
            ++cnt;
        }
        prof.c_Np = std::exp(acc / double(cnt));
    }

    prof.refresh_wpp();

    for (std::size_t i = 1; i < n_nodes; ++i)
        if (!(prof.w[i] > 0.0) || prof.w[i] >= prof.w[i - 1])
            throw ShootingFailed("tabulated profile is not positive and strictly decreasing");
    const double logder = prof.wp.back() / prof.w.back();
    if (std::abs(logder + 1.0) > 0.03)
        throw ShootingFailed("log-derivative at r_max is not close to -1");
    return prof;
}

namespace {

// 2D refinement wrapper: panel count doubled once, must agree to rel_tol.
double quad2d_checked(const std::function<double(double, double)>& f, double ax, double bx,
                      double ay, double by, double rel_tol) {
    const int px = std::max(4, int(std::ceil(bx - ax)));
    const int py = std::max(4, int(std::ceil(by - ay)));
    const double coarse = integrate_2d(f, ax, bx, ay, by, px, py);
    const double fine = integrate_2d(f, ax, bx, ay, by, 2 * px, 2 * py);
    const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
    if (std::abs(coarse - fine) > rel_tol * scale)
        throw QuadratureNotConverged("2D quadrature did not converge under panel doubling");
    return fine;
}

}  // namespace

ModelConstants derive_constants(const GroundStateProfile& prof, double a) {
    if (a <= 0.0) throw ValidationError("derive_constants: a must be > 0");
    const int N = prof.N;
    const double p = prof.p;
    const double S = surface_area(N);

    auto radial = [&](const std::function<double(double)>& f) {
        return S * integrate_adaptive(
                       [&](double r) { return f(r) * std::pow(r, N - 1); }, 0.0, prof.r_max, 1e-10,
                       64);
    };

    ModelConstants c;
    const double int_wp1 = radial([&](double r) { return std::pow(prof.value(r), p + 1.0); });
    c.I0 = (0.5 - 1.0 / (p + 1.0)) * int_wp1;
    c.mass2 = radial([&](double r) { return std::pow(prof.value(r), 2.0); });
    c.a0 = 0.5 * a * c.mass2;
    const double c0_radial = radial([&](double r) { return std::pow(prof.deriv(r), 2.0); }) / N;

    if (N == 2) {
        const double Lg = std::min(prof.r_max - 2.0, 10.0 + 28.0 / (p - 1.0));
        c.gamma0 = quad2d_checked(
            [&](double x1, double x2) {
                const double r = std::hypot(x1, x2);
                return upow(prof.value(r), p) * std::exp(-x1);
            },
            -Lg, Lg, -Lg, Lg, 1e-6);
        const double Lc = std::min(prof.r_max, 22.0);
        c.c0 = quad2d_checked(
            [&](double x1, double x2) {
                const double r = std::hypot(x1, x2);
                if (r < 1e-12) return 0.0;
                const double dx1w = prof.deriv(r) * x1 / r;
                return dx1w * dx1w;
            },
            -Lc, Lc, -Lc, Lc, 1e-6);
    } else {
        // Polar reduction: angular kernel of e^{-x1} over the sphere.
        const double Sm = surface_area(N - 1);
        c.gamma0 = Sm * integrate_adaptive(
                            [&](double r) {
                                const double ang = integrate_panels(
                                    [&](double phi) {
                                        return std::exp(-r * std::cos(phi)) *
                                               std::pow(std::sin(phi), N - 2.0);
                                    },
                                    0.0, std::acos(-1.0), 16);
                                return upow(prof.value(r), p) * ang * std::pow(r, N - 1);
                            },
                            0.0, prof.r_max, 1e-10, 64);
        c.c0 = c0_radial;
    }

    const double c0_scale = std::max(std::abs(c.c0), std::abs(c0_radial));
    if (std::abs(c.c0 - c0_radial) > 1e-6 * c0_scale)
        throw QuadratureNotConverged("c0 cross-check against (1/N) int |grad w|^2 failed");
    if (!(c.I0 > 0 && c.a0 > 0 && c.mass2 > 0 && c.gamma0 > 0 && c.c0 > 0))
        throw NumericalError("derive_constants: non-positive constant");
    return c;
}

namespace {

// Shared quadrature core for Psi and Psi'.  Axially symmetric integrals are
// reduced to the (x1, rho) half plane with weight |S^{N-2}| rho^{N-2}.
double psi_core(const GroundStateProfile& prof, double s, bool derivative) {
    if (s <= 0.0) throw ValidationError("psi: s must be > 0");
    if (s + 10.0 > 2.0 * prof.r_max)
        throw OutOfTabulatedRange("psi: separation exceeds tabulated support");
    if (s > 690.0) throw OutOfTabulatedRange("psi: integrand underflows");
    const int N = prof.N;
    const double p = prof.p;
    const double Sm = N == 2 ? 2.0 : surface_area(N - 1);
    const double L = std::min(prof.r_max - 2.0, 8.0 + 28.0 / (p - 1.0));
    auto f = [&](double x1, double rho) {
        const double r = std::hypot(x1, rho);
        if (r < 1e-12) return 0.0;
        const double ddx_wp = p * upow(prof.value(r), p - 1.0) * prof.deriv(r) * x1 / r;
        const double rs = std::hypot(x1 - s, rho);
        double left;
        if (derivative) {
            left = prof.deriv(rs) * (rs < 1e-12 ? 0.0 : (x1 - s) / rs);
        } else {
            left = -prof.value(rs);
        }
        return left * ddx_wp * std::pow(rho, N - 2.0);
    };
    const int px = std::max(8, int(std::ceil(2.0 * L)));
    const int py = std::max(4, int(std::ceil(L)));
    const double coarse = integrate_2d(f, -L, L, 0.0, L, px, py);
    const double fine = integrate_2d(f, -L, L, 0.0, L, 2 * px, 2 * py);
    const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
    if (std::abs(coarse - fine) > 1e-8 * scale)
        throw QuadratureNotConverged("psi quadrature did not converge");
    return Sm * fine;
}

}  // namespace

double psi(const GroundStateProfile& prof, double s) { return psi_core(prof, s, false); }

double psi_log_derivative(const GroundStateProfile& prof, double s) {
    if (s <= 1.0) throw ValidationError("psi_log_derivative: s must be > 1");
    const double v = psi_core(prof, s, false);
    const double d = psi_core(prof, s, true);
    return -d * s / v;
}

double psi_asymptotic(const GroundStateProfile& prof, double s) {
    if (s <= 0.0) throw ValidationError("psi_asymptotic: s must be > 0");
    return prof.c_Np * std::pow(s, -0.5 * (prof.N - 1)) * std::exp(-s);
}

}  // namespace spikering
