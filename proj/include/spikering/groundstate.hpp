#pragma once

#include <vector>

namespace spikering {

// Tabulated radial ground state of  -w'' - (N-1)/r w' + w - w^p = 0,
// w > 0, w'(0) = 0, w -> 0 at infinity.  Uniform grid on [0, r_max];
// quintic Hermite interpolation between nodes, asymptotic tail beyond r_max.
struct GroundStateProfile {
    int N = 0;
    double p = 0.0;
    double r_max = 0.0;
    double tol = 0.0;
    std::vector<double> r;
    std::vector<double> w;
    std::vector<double> wp;   // w'
    std::vector<double> wpp;  // w'' from the ODE at the nodes (not serialized)
    double c_Np = 0.0;        // w(r) ~ c_Np r^{-(N-1)/2} e^{-r}

    double w0() const { return w.front(); }
    double step() const { return r[1] - r[0]; }

    // Interpolated w(rr) (quintic Hermite); asymptotic tail for rr > r_max.
    double value(double rr) const;
    // Interpolated w'(rr).
    double deriv(double rr) const;
    // Tail formula c_Np rr^{-(N-1)/2} e^{-rr}.
    double tail(double rr) const;
    // Rebuild the w'' table from the ODE (used after deserialization).
    void refresh_wpp();
};

struct ModelConstants {
    double I0 = 0.0;      // (1/2 - 1/(p+1)) \int w^{p+1}
    double a0 = 0.0;      // (a/2) \int w^2
    double mass2 = 0.0;   // \int w^2
    double gamma0 = 0.0;  // \int w^p e^{-x_1}
    double c0 = 0.0;      // \int (d_{x1} w)^2 = (1/N) \int |grad w|^2
};

GroundStateProfile solve_ground_state(int N, double p, double r_max, double tol,
                                      double grid_step = 0.01);

ModelConstants derive_constants(const GroundStateProfile& profile, double a);

// Interaction integral Psi(s) = -\int w(x - s e) div(w^p(x) e) dx, e = e_1.
double psi(const GroundStateProfile& profile, double s);

// -Psi'(s) s / Psi(s), with Psi' obtained by differentiating under the integral.
double psi_log_derivative(const GroundStateProfile& profile, double s);

// Asymptotic model c_Np s^{-(N-1)/2} e^{-s}.
double psi_asymptotic(const GroundStateProfile& profile, double s);

}  // namespace spikering
