#include "spikering/fourier.hpp"

#include <cmath>

#include "spikering/errors.hpp"

namespace spikering {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

void fft_pow2(std::vector<std::complex<double>>& x, int sign) {
    const std::size_t n = x.size();
    if (!is_pow2(n)) throw ValidationError("fft_pow2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const double pi = std::acos(-1.0);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * pi / double(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = x[i + k];
                const std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

TrigCoeffs trig_forward_direct(const std::vector<double>& v) {
    const std::size_t K = v.size();
    const double pi = std::acos(-1.0);
    TrigCoeffs c;
    c.a.assign(K, 0.0);
    c.b.assign(K, 0.0);
    for (std::size_t nu = 0; nu < K; ++nu) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
            const double th = 2.0 * pi * double(nu) * double(j) / double(K);
            sa += v[j] * std::cos(th);
            sb += v[j] * std::sin(th);
        }
        c.a[nu] = sa;
        c.b[nu] = sb;
    }
    return c;
}

TrigCoeffs trig_forward_fft(const std::vector<double>& v) {
    const std::size_t K = v.size();
    std::vector<std::complex<double>> x(K);
    for (std::size_t j = 0; j < K; ++j) x[j] = v[j];
    fft_pow2(x, -1);
    TrigCoeffs c;
    c.a.resize(K);
    c.b.resize(K);
    for (std::size_t nu = 0; nu < K; ++nu) {
        c.a[nu] = x[nu].real();
        c.b[nu] = -x[nu].imag();
    }
    return c;
}

TrigCoeffs trig_forward(const std::vector<double>& v) {
    if (v.size() >= 512 && is_pow2(v.size())) return trig_forward_fft(v);
    return trig_forward_direct(v);
}

std::vector<double> trig_inverse(const TrigCoeffs& c) {
    const std::size_t K = c.a.size();
    if (K >= 512 && is_pow2(K)) {
        std::vector<std::complex<double>> x(K);
        for (std::size_t nu = 0; nu < K; ++nu) x[nu] = {c.a[nu], -c.b[nu]};
        fft_pow2(x, +1);
        std::vector<double> v(K);
        for (std::size_t j = 0; j < K; ++j) v[j] = x[j].real() / double(K);
        return v;
    }
    const double pi = std::acos(-1.0);
    std::vector<double> v(K, 0.0);
    for (std::size_t j = 0; j < K; ++j) {
        double s = 0.0;
        for (std::size_t nu = 0; nu < K; ++nu) {
            const double th = 2.0 * pi * double(nu) * double(j) / double(K);
            s += c.a[nu] * std::cos(th) + c.b[nu] * std::sin(th);
        }
        v[j] = s / double(K);
    }
    return v;
}

}  // namespace spikering
