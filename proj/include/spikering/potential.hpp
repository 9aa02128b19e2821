#pragma once

#include <vector>

#include "spikering/configuration.hpp"

namespace spikering {

// V(x) = V_inf + a/|x|^m (+ eps cos(freq theta)/|x|^{m+sigma}), clamped to its
// boundary value inside |x| < r0.
struct PotentialModel {
    double V_inf = 1.0;
    double a = 1.0;
    double m = 4.0;
    double sigma = 3.0;
    double eps = 0.0;   // 0 disables the angular perturbation
    int frequency = 1;
    double r0 = 1.0;
};

double eval_V(const PotentialModel& model, Vec2 x);

// Gradient of the clamped closed form (zero inside the clamp radius).
Vec2 grad_V(const PotentialModel& model, Vec2 x);

struct DecayReport {
    bool pass = false;
    double worst_ratio = 0.0;  // max over samples of |V - V_inf - a/r^m| r^{m+sigma}
    double min_V = 0.0;
};

// Samples |V - V_inf - a/|x|^m| <= (|eps| + tol) |x|^{-m-sigma} on circles and
// checks inf V > 0.  Throws DecayViolated / InfimumViolated on failure.
DecayReport check_decay(const PotentialModel& model, const std::vector<double>& radii, double tol);

// (cond-m): min{1, (p-1)/2} m > 2 and sigma > 2.
bool cond_m_ok(double p, double m, double sigma);

}  // namespace spikering
