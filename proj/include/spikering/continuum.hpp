#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace spikering {

// Periodic solution of the limiting system on [0, 2pi):
//   -(m+1) f + (f'' - g') + dhat (f + g') = phi
//    g + (f' - g) - dhat (f' + g'')      = varphi
// with int g = 0 and int varphi = 0.
struct ContinuumSolution {
    std::size_t M = 0;
    double m = 0.0;
    double dhat = 0.0;
    double c = 0.0;  // sqrt(m - 1 + 1/dhat)
    std::vector<double> theta;
    std::vector<double> f;
    std::vector<double> g;
    std::vector<double> h;  // dhat (f + g')
};

using PeriodicFn = std::function<double(double)>;

ContinuumSolution solve_continuum(const PeriodicFn& phi, const PeriodicFn& varphi, double m,
                                  double dhat, std::size_t M);

// Periodic Green's kernel of -d^2/dtheta^2 + c^2 on [0, 2pi].
double green_G0(double theta, double s, double c);

// Sample the forcings at the K ring angles, solve the discrete constrained
// system with T, and compare against the continuum solution at those angles.
struct DiscreteComparison {
    double sup_err_f = 0.0;
    double sup_err_g = 0.0;
};

DiscreteComparison compare_discrete(std::size_t K, const PeriodicFn& phi, const PeriodicFn& varphi,
                                    double m, double dhat);

}  // namespace spikering
