#pragma once

#include <functional>
#include <vector>

namespace spikering {

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point rule, computed by Newton iteration on the Legendre polynomial.
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre on [a, b] with n_panels panels of an n_pts rule.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int n_panels, int n_pts = 16);

// Panel-doubling refinement until successive values agree to rel_tol (relative
// to the larger magnitude) or max_doublings is hit; returns the finer value.
// Throws QuadratureNotConverged on failure.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int n_panels0 = 8, int max_doublings = 8,
                          int n_pts = 16);

// Tensor-product composite rule on [ax, bx] x [ay, by].
double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, int panels_x, int panels_y, int n_pts = 16);

}  // namespace spikering
