#pragma once

#include <complex>
#include <vector>

namespace spikering {

// Real trigonometric transform pair on K samples:
//   a[nu] = sum_j v[j] cos(2 pi nu j / K),  b[nu] = sum_j v[j] sin(2 pi nu j / K)
// and the inverse v[j] = (1/K) sum_nu (a[nu] cos + b[nu] sin).
// Direct O(K^2) evaluation below K = 512; radix-2 FFT for power-of-two K >= 512.
struct TrigCoeffs {
    std::vector<double> a;
    std::vector<double> b;
};

TrigCoeffs trig_forward(const std::vector<double>& v);
std::vector<double> trig_inverse(const TrigCoeffs& c);

// Same transforms with the implementation forced, used for cross-checks.
TrigCoeffs trig_forward_direct(const std::vector<double>& v);
TrigCoeffs trig_forward_fft(const std::vector<double>& v);

// In-place complex radix-2 FFT (size must be a power of two); sign = -1 forward.
void fft_pow2(std::vector<std::complex<double>>& x, int sign);

}  // namespace spikering
