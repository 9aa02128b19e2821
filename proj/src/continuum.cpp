#include "spikering/continuum.hpp"

#include <cmath>
#include <complex>

#include "spikering/errors.hpp"
#include "spikering/fourier.hpp"
#include "spikering/reduced_linear.hpp"

namespace spikering {

namespace {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Normalized complex DFT: c_k = (1/M) sum_j v_j e^{-i k theta_j}.
std::vector<cplx> dft(const std::vector<double>& v) {
    const std::size_t M = v.size();
    std::vector<cplx> x(M);
    for (std::size_t j = 0; j < M; ++j) x[j] = v[j];
    if (is_pow2(M)) {
        fft_pow2(x, -1);
    } else {
        const double pi = std::acos(-1.0);
        std::vector<cplx> out(M, 0.0);
        for (std::size_t k = 0; k < M; ++k) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < M; ++j) {
                const double th = -2.0 * pi * double(k) * double(j) / double(M);
                s += v[j] * cplx(std::cos(th), std::sin(th));
            }
            out[k] = s;
        }
        x = out;
    }
    for (auto& c : x) c /= double(M);
    return x;
}

std::vector<double> idft(std::vector<cplx> c) {
    const std::size_t M = c.size();
    std::vector<double> v(M);
    if (is_pow2(M)) {
        fft_pow2(c, +1);
        for (std::size_t j = 0; j < M; ++j) v[j] = c[j].real();
        return v;
    }
    const double pi = std::acos(-1.0);
    for (std::size_t j = 0; j < M; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < M; ++k) {
            const double th = 2.0 * pi * double(k) * double(j) / double(M);
            s += c[k] * cplx(std::cos(th), std::sin(th));
        }
        v[j] = s.real();
    }
    return v;
}

double signed_freq(std::size_t k, std::size_t M) {
    return k <= M / 2 ? double(k) : double(k) - double(M);
}

}  // namespace

ContinuumSolution solve_continuum(const PeriodicFn& phi, const PeriodicFn& varphi, double m,
                                  double dhat, std::size_t M) {
    if (dhat <= m + 1.0) throw DhatTooSmall("solve_continuum: dhat must exceed m + 1");
    if (M < 16) throw ValidationError("solve_continuum: grid too small");
    const double pi = std::acos(-1.0);

    ContinuumSolution sol;
    sol.M = M;
    sol.m = m;
    sol.dhat = dhat;
    sol.c = std::sqrt(m - 1.0 + 1.0 / dhat);
    sol.theta.resize(M);
    std::vector<double> phi_s(M), vph_s(M);
    double vmax = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        sol.theta[j] = 2.0 * pi * double(j) / double(M);
        phi_s[j] = phi(sol.theta[j]);
        vph_s[j] = varphi(sol.theta[j]);
        vmax = std::max(vmax, std::abs(vph_s[j]));
    }
    std::vector<cplx> cphi = dft(phi_s);
    std::vector<cplx> cvph = dft(vph_s);
    if (std::abs(cvph[0]) > 1e-12 * std::max(1.0, vmax))
        throw NonZeroMeanForcing("solve_continuum: varphi must have zero mean");

    const double Pphi = cphi[0].real();
    const double denom = dhat - 1.0 - m;
    const double c2 = sol.c * sol.c;
    const cplx iu(0.0, 1.0);

    // I = mean-free antiderivative of varphi; h' = f' - varphi reduces the
    // system to f'' - c^2 f = phi + ((dhat-1)/dhat)(I - PI) - mean correction.
    std::vector<cplx> cI(M, 0.0), cf(M, 0.0), ch(M, 0.0), cg(M, 0.0);
    for (std::size_t k = 1; k < M; ++k) cI[k] = cvph[k] / (iu * signed_freq(k, M));
    for (std::size_t k = 0; k < M; ++k) {
        cplx rhs = cphi[k] + (dhat - 1.0) / dhat * cI[k];
        if (k == 0) rhs -= (dhat - 1.0) * (dhat - 1.0) / (dhat * denom) * Pphi;
        const double kk = signed_freq(k, M);
        cf[k] = rhs / (-kk * kk - c2);
        ch[k] = cf[k] - cI[k];
    }
    ch[0] += (dhat - 1.0) / denom * Pphi;
    for (std::size_t k = 1; k < M; ++k)
        cg[k] = (ch[k] / dhat - cf[k]) / (iu * signed_freq(k, M));
    cg[0] = 0.0;  // normalization: int g = 0

    sol.f = idft(cf);
    sol.h = idft(ch);
    sol.g = idft(cg);
    return sol;
}

double green_G0(double theta, double s, double c) {
    if (c <= 0.0) throw ValidationError("green_G0: c must be > 0");
    const double pi = std::acos(-1.0);
    const double pref = 1.0 / (2.0 * c * std::expm1(2.0 * pi * c));
    const double u = theta - s;
    if (u <= 0.0) return pref * (std::exp(2.0 * pi * c) * std::exp(c * u) + std::exp(-c * u));
    return pref * (std::exp(2.0 * pi * c) * std::exp(-c * u) + std::exp(c * u));
}

DiscreteComparison compare_discrete(std::size_t K, const PeriodicFn& phi, const PeriodicFn& varphi,
                                    double m, double dhat) {
    const double pi = std::acos(-1.0);
    std::vector<double> b(2 * K);
    for (std::size_t j = 0; j < K; ++j) {
        const double th = 2.0 * pi * double(j) / double(K);
        b[j] = phi(th);
        b[K + j] = varphi(th);
    }
    ReducedOperator op = build_T(K, dhat, m);
    auto [q, gamma] = solve_constrained(op, b);
    (void)gamma;

    const std::size_t M = 4 * K;
    ContinuumSolution sol = solve_continuum(phi, varphi, m, dhat, M);

    // Match normalizations: project both tangential parts to zero mean over
    // the K sample angles.
    double mean_gd = 0.0, mean_gc = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        mean_gd += q[K + j];
        mean_gc += sol.g[4 * j];
    }
    mean_gd /= double(K);
    mean_gc /= double(K);

    DiscreteComparison cmp;
    for (std::size_t j = 0; j < K; ++j) {
        cmp.sup_err_f = std::max(cmp.sup_err_f, std::abs(q[j] - sol.f[4 * j]));
        cmp.sup_err_g =
            std::max(cmp.sup_err_g, std::abs((q[K + j] - mean_gd) - (sol.g[4 * j] - mean_gc)));
    }
    return cmp;
}

}  // namespace spikering
