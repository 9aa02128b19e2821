#include "spikering/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "spikering/errors.hpp"

namespace spikering {

static GaussRule make_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int n_panels, int n_pts) {
    const GaussRule& rule = gauss_legendre(n_pts);
    const double h = (b - a) / n_panels;
    double total = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < n_pts; ++i) s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        total += 0.5 * h * s;
    }
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int n_panels0, int max_doublings, int n_pts) {
    double prev = integrate_panels(f, a, b, n_panels0, n_pts);
    int n = n_panels0;
    for (int k = 0; k < max_doublings; ++k) {
        n *= 2;
        double cur = integrate_panels(f, a, b, n, n_pts);
        double scale = std::max({std::abs(prev), std::abs(cur), 1e-300});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw QuadratureNotConverged("integrate_adaptive: no convergence to requested tolerance");
}

double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, int panels_x, int panels_y, int n_pts) {
    const GaussRule& rule = gauss_legendre(n_pts);
    const double hx = (bx - ax) / panels_x;
    const double hy = (by - ay) / panels_y;
    double total = 0.0;
    for (int px = 0; px < panels_x; ++px) {
        const double mx = ax + (px + 0.5) * hx;
        for (int py = 0; py < panels_y; ++py) {
            const double my = ay + (py + 0.5) * hy;
            double s = 0.0;
            for (int i = 0; i < n_pts; ++i) {
                const double x = mx + 0.5 * hx * rule.nodes[i];
                double row = 0.0;
                for (int j = 0; j < n_pts; ++j)
                    row += rule.weights[j] * f(x, my + 0.5 * hy * rule.nodes[j]);
                s += rule.weights[i] * row;
            }
            total += 0.25 * hx * hy * s;
        }
    }
    return total;
}

}  // namespace spikering
