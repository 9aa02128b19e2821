// Acceptance harness: one line per criterion, PASS/FAIL plus the measured
// numbers.  Exit status is the number of failed criteria.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "spikering/balance.hpp"
#include "spikering/configuration.hpp"
#include "spikering/continuum.hpp"
#include "spikering/energy.hpp"
#include "spikering/groundstate.hpp"
#include "spikering/potential.hpp"
#include "spikering/reduced_linear.hpp"

using namespace spikering;

namespace {

const double kPi = std::acos(-1.0);

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("CRITERION %d: %s  (%s)\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

GroundStateProfile g_prof;
ModelConstants g_cst;

// 1. Ground-state suite.
void criterion1() {
    Clock ck;
    g_prof = solve_ground_state(2, 3.0, 40.0, 1e-12);
    g_cst = derive_constants(g_prof, 1.0);

    double resid = 0.0;
    const double h = g_prof.step();
    for (std::size_t i = 3; i + 3 < g_prof.r.size(); ++i) {
        const double wpp =
            (-g_prof.wp[i - 3] + 9 * g_prof.wp[i - 2] - 45 * g_prof.wp[i - 1] +
             45 * g_prof.wp[i + 1] - 9 * g_prof.wp[i + 2] + g_prof.wp[i + 3]) /
            (60 * h);
        resid = std::max(resid, std::abs(-wpp - g_prof.wp[i] / g_prof.r[i] + g_prof.w[i] -
                                         std::pow(g_prof.w[i], 3.0)));
    }
    const bool ok_resid = resid < 1e-8;

    const double logder = g_prof.deriv(35.0) / g_prof.value(35.0);
    // True decay is -1 - (N-1)/(2r) + O(r^-2) = -1.0143 at r = 35; the 1e-3
    // band around -1 excludes the exact solution, so this leg stays red.
    const bool ok_logder = std::abs(logder + 1.0) <= 1e-3;

    const GroundStateProfile fine = solve_ground_state(2, 3.0, 40.0, 1e-12, 0.005);
    const ModelConstants cf = derive_constants(fine, 1.0);
    double cdev = 0.0;
    cdev = std::max(cdev, std::abs(cf.I0 - g_cst.I0) / g_cst.I0);
    cdev = std::max(cdev, std::abs(cf.a0 - g_cst.a0) / g_cst.a0);
    cdev = std::max(cdev, std::abs(cf.mass2 - g_cst.mass2) / g_cst.mass2);
    cdev = std::max(cdev, std::abs(cf.gamma0 - g_cst.gamma0) / g_cst.gamma0);
    cdev = std::max(cdev, std::abs(cf.c0 - g_cst.c0) / g_cst.c0);
    const bool ok_const = cdev <= 1e-6;

    const double t = ck.s();
    report(1, ok_resid && ok_logder && ok_const && t < 10.0,
           fmt("ode residual %.2e %s; w'/w(35) = %.5f vs -1 +- 1e-3 %s; constants dev %.2e %s; "
               "%.1fs",
               resid, ok_resid ? "ok" : "BAD", logder, ok_logder ? "ok" : "BAD", cdev,
               ok_const ? "ok" : "BAD", t));
}

// 2. Psi asymptotics.
void criterion2() {
    Clock ck;
    double prod[3];
    const double ss[3] = {10.0, 15.0, 20.0};
    for (int i = 0; i < 3; ++i)
        prod[i] = psi(g_prof, ss[i]) * std::sqrt(ss[i]) * std::exp(ss[i]);
    const double mean = (prod[0] + prod[1] + prod[2]) / 3.0;
    const double var =
        (std::max({prod[0], prod[1], prod[2]}) - std::min({prod[0], prod[1], prod[2]})) / mean;
    // "varies by less than 5/s" read as relative variation at the largest s
    const bool ok_var = var < 5.0 / 20.0;
    const double ibp = std::abs(psi(g_prof, 15.0) + g_cst.gamma0 * g_prof.deriv(15.0)) /
                       psi(g_prof, 15.0);
    const bool ok_ibp = ibp <= 0.2;
    const double t = ck.s();
    report(2, ok_var && ok_ibp && t < 30.0,
           fmt("psi*sqrt(s)*e^s = %.3f/%.3f/%.3f rel var %.3f %s; |psi+g0 w'|/psi = %.1e %s; %.1fs",
               prod[0], prod[1], prod[2], var, ok_var ? "ok" : "BAD", ibp, ok_ibp ? "ok" : "BAD",
               t));
}

// 3. Balancing.
void criterion3() {
    Clock ck;
    bool ok_gap = true, ok_res = true;
    double worst_gap = 0.0;
    double ratio6400 = 0.0;
    for (int K = 50; K <= 6400; K *= 2) {
        const BalanceResult b = solve_balance(K, 4.0, g_cst, g_prof, PsiMode::asymptotic);
        const double gap = std::abs(b.d - asymptotic_d(K, 4.0, 2));
        worst_gap = std::max(worst_gap, gap);
        ok_gap = ok_gap && gap <= 9.0;  // frozen O(1) constant
        ok_res = ok_res && std::abs(b.residual) <= 1e-10;
        if (K * 2 > 6400) ratio6400 = b.R / (double(K) * std::log(double(K)));
    }
    const double target = 4.0 / (2.0 * kPi);
    const double off = std::abs(ratio6400 - target) / target;
    // ln(m ln K) correction decays only logarithmically; 22% off at K = 6400,
    // so the 10% clause stays red at any reachable K.
    const bool ok_ratio = off <= 0.10;
    const double t = ck.s();
    report(3, ok_gap && ok_res && ok_ratio && t < 5.0,
           fmt("|d - asym| <= %.3f (<= 9 frozen) %s; resid %s; R/(KlnK) = %.4f vs m/2pi = %.4f "
               "(%.0f%% off) %s; %.1fs",
               worst_gap, ok_gap ? "ok" : "BAD", ok_res ? "ok" : "BAD", ratio6400, target,
               100.0 * off, ok_ratio ? "ok" : "BAD", t));
}

// 4. Spectrum.
void criterion4() {
    Clock ck;
    bool ok_closed = true, ok_inertia = true;
    for (int K = 8; K <= 1024; K *= 2) {
        const BalanceResult b = solve_balance(K, 4.0, g_cst, g_prof, PsiMode::asymptotic);
        const ReducedOperator op = build_T(K, b.dhat, 4.0);
        const SpectralData sp = spectrum(op);
        ok_closed = ok_closed && sp.Lambda1[0] == 0.0 &&
                    std::abs(sp.Lambda2[0] - (b.dhat - 5.0)) <= 1e-12;
        ok_inertia = ok_inertia && sp.n_zero == 1 && sp.n_neg == K - 1 && sp.n_pos == K;
    }
    // dense eigensolver cross-check at K = 64
    double dense_dev = 0.0;
    {
        const std::size_t K = 64;
        const BalanceResult b = solve_balance(64, 4.0, g_cst, g_prof, PsiMode::asymptotic);
        const ReducedOperator op = build_T(K, b.dhat, 4.0);
        const SpectralData sp = spectrum(op);
        const std::vector<double> D = op.dense();
        Eigen::MatrixXd M(2 * K, 2 * K);
        for (std::size_t i = 0; i < 2 * K; ++i)
            for (std::size_t j = 0; j < 2 * K; ++j) M(i, j) = D[i * 2 * K + j];
        Eigen::EigenSolver<Eigen::MatrixXd> es(M);
        std::vector<double> ev(2 * K);
        for (std::size_t i = 0; i < 2 * K; ++i) ev[i] = es.eigenvalues()[i].real();
        std::vector<double> closed;
        closed.insert(closed.end(), sp.Lambda1.begin(), sp.Lambda1.end());
        closed.insert(closed.end(), sp.Lambda2.begin(), sp.Lambda2.end());
        std::sort(ev.begin(), ev.end());
        std::sort(closed.begin(), closed.end());
        for (std::size_t i = 0; i < 2 * K; ++i)
            dense_dev = std::max(dense_dev, std::abs(ev[i] - closed[i]));
    }
    const bool ok_dense = dense_dev <= 1e-9;
    const double t = ck.s();
    report(4, ok_closed && ok_inertia && ok_dense && t < 20.0,
           fmt("closed forms %s; inertia (1,K-1,K) %s; dense dev %.1e %s; %.1fs",
               ok_closed ? "ok" : "BAD", ok_inertia ? "ok" : "BAD", dense_dev,
               ok_dense ? "ok" : "BAD", t));
}

// 5. Constrained solve.
void criterion5() {
    Clock ck;
    const std::size_t K = 128;
    const BalanceResult bal = solve_balance(128, 4.0, g_cst, g_prof, PsiMode::asymptotic);
    const ReducedOperator op = build_T(K, bal.dhat, 4.0);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> b(2 * K);
        for (double& v : b) v = U(rng);
        double bn = 0.0;
        for (double v : b) bn = std::max(bn, std::abs(v));
        const auto [q, gamma] = solve_constrained(op, b);
        const std::vector<double> Tq = op.matvec(q);
        double res = 0.0, orth = 0.0;
        for (std::size_t i = 0; i < 2 * K; ++i)
            res = std::max(res, std::abs(Tq[i] - b[i] - (i >= K ? gamma : 0.0)));
        for (std::size_t k = K; k < 2 * K; ++k) orth += q[k];
        worst = std::max(worst, (res + std::abs(orth)) / bn);
    }
    const bool ok_res = worst <= 1e-10;

    // dense bordered-KKT oracle at K = 16
    double kkt_dev = 0.0;
    {
        const std::size_t Ks = 16;
        const BalanceResult bs = solve_balance(16, 4.0, g_cst, g_prof, PsiMode::asymptotic);
        const ReducedOperator ops = build_T(Ks, bs.dhat, 4.0);
        std::vector<double> b(2 * Ks);
        for (double& v : b) v = U(rng);
        const auto [q, gamma] = solve_constrained(ops, b);
        const std::size_t n = 2 * Ks;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
        const std::vector<double> D = ops.dense();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = D[i * n + j];
        for (std::size_t k = Ks; k < n; ++k) {
            A(k, n) = -1.0;
            A(n, k) = 1.0;
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
        for (std::size_t i = 0; i < n; ++i) rhs(i) = b[i];
        const Eigen::VectorXd sol = A.fullPivLu().solve(rhs);
        for (std::size_t i = 0; i < n; ++i) kkt_dev = std::max(kkt_dev, std::abs(q[i] - sol(i)));
        kkt_dev = std::max(kkt_dev, std::abs(gamma - sol(n)));
    }
    const bool ok_kkt = kkt_dev <= 1e-8;

    // (ln K)^2 norm scaling on smooth data
    std::vector<double> ratios;
    for (std::size_t Ks : {64u, 128u, 256u, 512u, 1024u}) {
        const BalanceResult bs = solve_balance(int(Ks), 4.0, g_cst, g_prof, PsiMode::asymptotic);
        const ReducedOperator ops = build_T(Ks, bs.dhat, 4.0);
        std::vector<double> b(2 * Ks);
        for (std::size_t j = 0; j < Ks; ++j) {
            const double th = 2.0 * kPi * double(j) / double(Ks);
            b[j] = std::cos(th) + 0.2 * std::cos(2.0 * th);
            b[Ks + j] = 0.5 * std::sin(th) - 0.1 * std::sin(3.0 * th);
        }
        const auto [q, gamma] = solve_constrained(ops, b);
        PerturbationVector pq;
        pq.f.assign(q.begin(), q.begin() + Ks);
        pq.g.assign(q.begin() + Ks, q.end());
        const double lk = std::log(double(Ks));
        double bn = 0.0;
        for (double v : b) bn = std::max(bn, std::abs(v));
        ratios.push_back(pq.norm_star() / (lk * lk * bn));
    }
    bool ok_scale = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        ok_scale = ok_scale && ratios[i] <= 2.0 * ratios[i - 1] && ratios[i] >= 0.5 * ratios[i - 1];

    const double t = ck.s();
    report(5, ok_res && ok_kkt && ok_scale && t < 30.0,
           fmt("res+orth %.1e <= 1e-10 %s; KKT dev %.1e %s; (lnK)^2 scaling %s; %.1fs", worst,
               ok_res ? "ok" : "BAD", kkt_dev, ok_kkt ? "ok" : "BAD", ok_scale ? "ok" : "BAD",
               t));
}

// 6. Discrete-to-continuum.
void criterion6() {
    Clock ck;
    const BalanceResult b = solve_balance(256, 4.0, g_cst, g_prof, PsiMode::asymptotic);
    const PeriodicFn phi = [](double th) { return std::cos(th); };
    const PeriodicFn varphi = [](double th) { return 0.3 * std::sin(th); };
    std::vector<double> errs;
    for (std::size_t K : {128u, 256u, 512u})
        errs.push_back(compare_discrete(K, phi, varphi, 4.0, b.dhat).sup_err_f);
    const double r1 = errs[1] / errs[0], r2 = errs[2] / errs[1];
    const bool ok_rate = r1 > 0.2 && r1 < 0.32 && r2 > 0.2 && r2 < 0.32;

    // closed-form single mode l = 2
    double mode_dev = 0.0;
    {
        const double m = 4.0, dhat = b.dhat;
        const int l = 2;
        const double a = dhat - (m + 1.0) - double(l) * l;
        const double b12 = (dhat - 1.0) * l;
        const double det = a * dhat * l * l - b12 * b12;
        const double Fc = (dhat * l * l - b12 * 0.3) / det;
        const double Gs = (a * 0.3 - b12) / det;
        const ContinuumSolution sol = solve_continuum(
            [&](double th) { return std::cos(l * th); },
            [&](double th) { return 0.3 * std::sin(l * th); }, m, dhat, 1024);
        for (std::size_t j = 0; j < sol.theta.size(); ++j) {
            mode_dev = std::max(mode_dev, std::abs(sol.f[j] - Fc * std::cos(l * sol.theta[j])));
            mode_dev = std::max(mode_dev, std::abs(sol.g[j] - Gs * std::sin(l * sol.theta[j])));
        }
    }
    const bool ok_mode = mode_dev <= 1e-8;
    const double t = ck.s();
    report(6, ok_rate && ok_mode && t < 20.0,
           fmt("error ratios %.3f/%.3f in [0.2,0.32] %s; single-mode dev %.1e %s; %.1fs", r1, r2,
               ok_rate ? "ok" : "BAD", mode_dev, ok_mode ? "ok" : "BAD", t));
}

// 7. Linearization identity.
void criterion7() {
    Clock ck;
    const std::size_t K = 64;
    const BalanceResult b = solve_balance(64, 4.0, g_cst, g_prof, PsiMode::asymptotic);
    const ReducedOperator op = build_T(K, b.dhat, 4.0);
    const double lin = g_cst.a0 * std::pow(b.R, -6.0);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> U(-5e-4, 5e-4);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        PerturbationVector q = PerturbationVector::zeros(K);
        for (auto& v : q.f) v = U(rng);
        for (auto& v : q.g) v = U(rng);
        const SpikeConfig cfg = build_config(K, b.R, 0.3, q);
        const auto frame = projected_error_frame(cfg, 4.0, g_cst.a0, b.dhat, b.R);
        std::vector<double> qv(2 * K);
        for (std::size_t k = 0; k < K; ++k) {
            qv[k] = q.f[k];
            qv[K + k] = q.g[k];
        }
        const std::vector<double> Tq = op.matvec(qv);
        double scale = 0.0;
        for (double v : Tq) scale = std::max(scale, lin * std::abs(v));
        for (std::size_t k = 0; k < K; ++k) {
            worst = std::max(worst, std::abs(frame[k].x + lin * Tq[k]) / scale);
            worst = std::max(worst, std::abs(frame[k].y + lin * Tq[K + k]) / scale);
        }
    }
    const double t = ck.s();
    report(7, worst <= 1e-12 && t < 5.0,
           fmt("max rel deviation %.1e <= 1e-12; %.1fs", worst, t));
}

// 8. Energy.
void criterion8() {
    Clock ck;
    PotentialModel radial;
    const BalanceResult b16 = solve_balance(16, 4.0, g_cst, g_prof, PsiMode::asymptotic);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-5e-4, 5e-4);
    PerturbationVector q = PerturbationVector::zeros(16);
    for (auto& v : q.f) v = U(rng);
    for (auto& v : q.g) v = U(rng);
    const EnergyReport e0 =
        reduced_energy(build_config(16, b16.R, 0.4, q), radial, g_cst, g_prof);
    double rot_dev = 0.0;
    for (double da : {0.7, 2.1, -1.3}) {
        const EnergyReport e1 =
            reduced_energy(build_config(16, b16.R, 0.4 + da, q), radial, g_cst, g_prof);
        rot_dev = std::max(rot_dev, std::abs(e1.J_total - e0.J_total) / std::abs(e0.J_total));
    }
    const bool ok_rot = rot_dev <= 1e-10;

    const std::vector<double> g = reduced_gradient(build_config(16, b16.R, 0.4, q), radial,
                                                   g_cst, g_prof);
    double gn = 0.0;
    for (double v : g) gn = std::max(gn, std::abs(v));
    const double h = 1e-4;
    double fd_dev = 0.0;
    for (std::size_t k = 0; k < 16; ++k)
        for (int comp = 0; comp < 2; ++comp) {
            PerturbationVector qp = q, qm = q;
            (comp ? qp.g[k] : qp.f[k]) += h;
            (comp ? qm.g[k] : qm.f[k]) -= h;
            const EnergyReport ep =
                reduced_energy(build_config(16, b16.R, 0.4, qp), radial, g_cst, g_prof);
            const EnergyReport em =
                reduced_energy(build_config(16, b16.R, 0.4, qm), radial, g_cst, g_prof);
            const double fd = ((ep.term_potential + ep.term_interaction) -
                               (em.term_potential + em.term_interaction)) /
                              (2.0 * h);
            fd_dev = std::max(fd_dev, std::abs(fd - g[comp * 16 + k]) / gn);
        }
    const bool ok_fd = fd_dev <= 1e-6;

    // direct quadrature vs expansion at K = 8 and K = 12, m = 5
    PotentialModel pot5;
    pot5.m = 5.0;
    double mult8 = 0.0, mult12 = 0.0, rem8 = 0.0, rem12 = 0.0;
    for (int K : {8, 12}) {
        const BalanceResult b = solve_balance(K, 5.0, g_cst, g_prof, PsiMode::quadrature);
        const SpikeConfig cfg = build_config(K, b.R, 0.0, PerturbationVector::zeros(std::size_t(K)));
        const EnergyReport er = reduced_energy(cfg, pot5, g_cst, g_prof);
        const double de = direct_energy(cfg, pot5, g_prof, 0.01);
        const double rem = de - er.J_total;
        const double scale =
            5.0 * (K * std::exp(-2.0 * b.d) + K * std::pow(b.R, -10.0));
        if (K == 8) {
            rem8 = rem;
            mult8 = std::abs(rem) / scale;
        } else {
            rem12 = rem;
            mult12 = std::abs(rem) / scale;
        }
    }
    // Frozen multiple from the first K = 8 run: 2.2e4 (the measured remainder
    // sits on the O(h^4) quadrature floor, about 1e-8, while the expansion scale
    // is ~8e-13 here).  At K = 12 the theoretical scale shrinks with e^{-2d}
    // but the quadrature floor grows with K, so both the frozen-multiple and
    // the monotone-improvement clauses stay red; see the remainders printed.
    const double frozen_mult = 2.2e4;
    const bool ok_mult = mult8 <= frozen_mult && mult12 <= frozen_mult;
    const bool ok_mono = mult12 <= mult8;

    const double t = ck.s();
    report(8, ok_rot && ok_fd && ok_mult && ok_mono && t < 600.0,
           fmt("rot inv %.1e %s; grad FD %.1e %s; remainders %.1e/%.1e, multiples %.1e/%.1e vs "
               "frozen 2.2e4 %s; monotone %s; %.0fs",
               rot_dev, ok_rot ? "ok" : "BAD", fd_dev, ok_fd ? "ok" : "BAD", rem8, rem12, mult8,
               mult12, ok_mult ? "ok" : "BAD", ok_mono ? "ok" : "BAD", t));
}

// 9. Variational reduction.
void criterion9() {
    Clock ck;
    PotentialModel radial;
    const BalanceResult b = solve_balance(16, 4.0, g_cst, g_prof, PsiMode::asymptotic);
    const ScanResult flat = scan_F(16, 4.0, radial, b, g_cst, g_prof, 32);
    double mn = 1e300, mx = -1e300;
    bool all_conv = true;
    for (const ScanRow& r : flat.rows) {
        all_conv = all_conv && r.converged;
        mn = std::min(mn, r.F);
        mx = std::max(mx, r.F);
    }
    const bool ok_flat = all_conv && flat.flat && (mx - mn) <= 1e-10 * std::abs(mx);

    // ring-resonant angular perturbation: cos(K theta) survives the symmetric
    // sum (cos(theta) cancels identically on the ring), so two critical
    // points appear per period 2pi/K
    PotentialModel pert;
    pert.eps = 1e-3;
    pert.frequency = 16;
    const ScanResult sr = scan_F(16, 4.0, pert, b, g_cst, g_prof, 64);
    const bool ok_count = sr.extrema.size() >= 2;
    bool ok_coloc = ok_count;
    const std::size_t n = sr.rows.size();
    const double cell = sr.rows[1].alpha - sr.rows[0].alpha;
    for (const Extremum& ex : sr.extrema) {
        double best = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            const ScanRow& a = sr.rows[i];
            const ScanRow& c = sr.rows[(i + 1) % n];
            if (a.gamma * c.gamma < 0.0) {
                double da = std::abs(a.alpha + 0.5 * cell - ex.alpha);
                da = std::min(da, 2.0 * kPi - da);
                best = std::min(best, da);
            }
        }
        ok_coloc = ok_coloc && best <= cell;
    }
    const double t = ck.s();
    report(9, ok_flat && ok_count && ok_coloc && t < 300.0,
           fmt("radial spread %.1e flat %s; %zu extrema %s; gamma sign changes colocated %s; "
               "%.1fs",
               (mx - mn) / std::abs(mx), ok_flat ? "ok" : "BAD", sr.extrema.size(),
               ok_count ? "ok" : "BAD", ok_coloc ? "ok" : "BAD", t));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
