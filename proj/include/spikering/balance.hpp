#pragma once

#include "spikering/groundstate.hpp"

namespace spikering {

enum class PsiMode { quadrature, asymptotic };

struct BalanceResult {
    int K = 0;
    double m = 0.0;
    double d = 0.0;     // neighbor distance, d = 2 R sin(pi/K)
    double R = 0.0;     // ring radius
    double dhat = 0.0;  // -Psi'(d) d / Psi(d)
    double residual = 0.0;
};

// Solve d^{m+1} Psi(d) = a0 m (2 sin(pi/K))^m for d, in log space.
BalanceResult solve_balance(int K, double m, const ModelConstants& constants,
                            const GroundStateProfile& profile,
                            PsiMode psi_mode = PsiMode::asymptotic);

// m ln K + (m - (N-3)/2) ln(m ln K).
double asymptotic_d(int K, double m, int N);

}  // namespace spikering
