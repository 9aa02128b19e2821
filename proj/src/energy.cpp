#include "spikering/energy.hpp"

#include <cmath>
#include <functional>

#include "spikering/errors.hpp"
#include "spikering/reduced_linear.hpp"

namespace spikering {

namespace {

void check_separation(const SpikeConfig& cfg) {
    if (min_separation(cfg) < 1.0)
        throw SeparationTooSmall("reduced_energy: minimal separation below 1");
}

double interaction_term(const SpikeConfig& cfg, const ModelConstants& cst,
                        const GroundStateProfile& prof) {
    double s = 0.0;
    for (std::size_t i = 0; i < cfg.K; ++i)
        for (std::size_t j = 0; j < cfg.K; ++j)
            if (i != j) s += prof.value(norm(cfg.Q[i] - cfg.Q[j]));
    return -0.5 * cst.gamma0 * s;
}

EnergyReport assemble(const SpikeConfig& cfg, const ModelConstants& cst,
                      const GroundStateProfile& prof,
                      const std::function<double(Vec2)>& pot_term) {
    check_separation(cfg);
    EnergyReport rep;
    rep.term_const = double(cfg.K) * cst.I0;
    double s = 0.0;
    for (const Vec2& Q : cfg.Q) s += pot_term(Q);
    rep.term_potential = s;
    rep.term_interaction = interaction_term(cfg, cst, prof);
    rep.J_total = rep.term_const + rep.term_potential + rep.term_interaction;
    return rep;
}

std::vector<double> gradient(const SpikeConfig& cfg, const ModelConstants& cst,
                             const GroundStateProfile& prof,
                             const std::function<Vec2(Vec2)>& pot_grad) {
    check_separation(cfg);
    const std::size_t K = cfg.K;
    std::vector<double> grad(2 * K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        Vec2 gk = pot_grad(cfg.Q[k]);
        for (std::size_t j = 0; j < K; ++j) {
            if (j == k) continue;
            const Vec2 diff = cfg.Q[k] - cfg.Q[j];
            const double dist = norm(diff);
            // d/dQ_k of -(gamma0/2) * 2 w(|Q_k - Q_j|) over ordered pairs.
            gk = gk + (-cst.gamma0 * prof.deriv(dist) / dist) * diff;
        }
        grad[k] = dot(gk, cfg.nn[k]);
        grad[K + k] = dot(gk, cfg.tt[k]);
    }
    return grad;
}

std::vector<Vec2> leading(const SpikeConfig& cfg, const GroundStateProfile& prof,
                          const std::function<Vec2(Vec2)>& pot_part,
                          const std::function<double(double)>& Psi) {
    check_separation(cfg);
    const std::size_t K = cfg.K;
    std::vector<Vec2> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        Vec2 e = pot_part(cfg.Q[k]);
        for (std::size_t j = 0; j < K; ++j) {
            if (j == k) continue;
            const Vec2 diff = cfg.Q[j] - cfg.Q[k];
            const double dist = norm(diff);
            e = e + (Psi(dist) / dist) * diff;
        }
        out[k] = {dot(e, cfg.nn[k]), dot(e, cfg.tt[k])};
    }
    (void)prof;
    return out;
}

std::function<double(double)> psi_fn(const GroundStateProfile& prof, PsiMode mode) {
    if (mode == PsiMode::asymptotic)
        return [&prof](double s) { return psi_asymptotic(prof, s); };
    return [&prof](double s) { return psi(prof, s); };
}

}  // namespace

EnergyReport reduced_energy(const SpikeConfig& cfg, double m, const ModelConstants& cst,
                            const GroundStateProfile& prof) {
    return assemble(cfg, cst, prof,
                    [&](Vec2 Q) { return cst.a0 * std::pow(norm(Q), -m); });
}

EnergyReport reduced_energy(const SpikeConfig& cfg, const PotentialModel& pot,
                            const ModelConstants& cst, const GroundStateProfile& prof) {
    return assemble(cfg, cst, prof, [&](Vec2 Q) {
        return 0.5 * cst.mass2 * (eval_V(pot, Q) - pot.V_inf);
    });
}

std::vector<double> reduced_gradient(const SpikeConfig& cfg, double m, const ModelConstants& cst,
                                     const GroundStateProfile& prof) {
    return gradient(cfg, cst, prof, [&](Vec2 Q) {
        const double r = norm(Q);
        return (-cst.a0 * m * std::pow(r, -m - 1.0) / r) * Q;
    });
}

std::vector<double> reduced_gradient(const SpikeConfig& cfg, const PotentialModel& pot,
                                     const ModelConstants& cst, const GroundStateProfile& prof) {
    return gradient(cfg, cst, prof,
                    [&](Vec2 Q) { return 0.5 * cst.mass2 * grad_V(pot, Q); });
}

std::vector<Vec2> projected_error_leading(const SpikeConfig& cfg, double m,
                                          const ModelConstants& cst,
                                          const GroundStateProfile& prof, PsiMode psi_mode) {
    return leading(
        cfg, prof,
        [&](Vec2 Q) {
            const double r = norm(Q);
            return (cst.a0 * m * std::pow(r, -m - 1.0) / r) * Q;
        },
        psi_fn(prof, psi_mode));
}

std::vector<Vec2> projected_error_leading(const SpikeConfig& cfg, const PotentialModel& pot,
                                          const ModelConstants& cst,
                                          const GroundStateProfile& prof, PsiMode psi_mode) {
    return leading(
        cfg, prof, [&](Vec2 Q) { return -0.5 * cst.mass2 * grad_V(pot, Q); },
        psi_fn(prof, psi_mode));
}

std::vector<Vec2> projected_error_frame(const SpikeConfig& cfg, double m, double a0, double dhat,
                                        double R) {
    if (cfg.q.norm_star() > 1.0 + 1e-12)
        throw ValidationError("projected_error_frame: ||q||_* must be <= 1");
    const std::size_t K = cfg.K;
    const double pref = -a0 * std::pow(R, -m - 2.0);
    const PerturbationVector dd = cfg.q.ddot_q();
    const PerturbationVector bar = cfg.q.bar_q();
    std::vector<Vec2> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double f = cfg.q.f[k];
        const double br_n = -(m + 1.0) * f + (dd.f[k] - 0.5 * bar.g[k]) +
                            dhat * (f + 0.5 * bar.g[k]);
        const double br_t = 0.5 * bar.f[k] - dhat * (0.5 * bar.f[k] + dd.g[k]);
        out[k] = {pref * br_n, pref * br_t};
    }
    return out;
}

double direct_energy(const SpikeConfig& cfg, const PotentialModel& pot,
                     const GroundStateProfile& prof, double grid_step) {
    if (prof.N != 2) throw ValidationError("direct_energy: N = 2 only");
    if (grid_step <= 0.0) throw ValidationError("direct_energy: grid_step must be > 0");
    const double pad = 15.0;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Vec2& Q : cfg.Q) {
        xmin = std::min(xmin, Q.x);
        xmax = std::max(xmax, Q.x);
        ymin = std::min(ymin, Q.y);
        ymax = std::max(ymax, Q.y);
    }
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;

    // Spikes beyond the tabulated support contribute below 1e-17 pointwise.
    const double cutoff2 = prof.r_max * prof.r_max;
    const double pp1 = prof.p + 1.0;
    const bool p_is_3 = prof.p == 3.0;
    auto eval = [&](double h) {
        const auto nx = static_cast<std::size_t>(std::ceil((xmax - xmin) / h)) + 1;
        const auto ny = static_cast<std::size_t>(std::ceil((ymax - ymin) / h)) + 1;
        std::vector<double> U(nx * ny);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = xmin + ix * h;
            for (std::size_t iy = 0; iy < ny; ++iy) {
                const double y = ymin + iy * h;
                double u = 0.0;
                for (const Vec2& Q : cfg.Q) {
                    const double dx = x - Q.x, dy = y - Q.y;
                    const double r2 = dx * dx + dy * dy;
                    if (r2 < cutoff2) u += prof.value(std::sqrt(r2));
                }
                U[ix * ny + iy] = u;
            }
        }
        double acc = 0.0;
        for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
            const double x = xmin + ix * h;
            for (std::size_t iy = 1; iy + 1 < ny; ++iy) {
                const double y = ymin + iy * h;
                const double u = U[ix * ny + iy];
                const double gx = (U[(ix + 1) * ny + iy] - U[(ix - 1) * ny + iy]) / (2.0 * h);
                const double gy = (U[ix * ny + iy + 1] - U[ix * ny + iy - 1]) / (2.0 * h);
                const double V = eval_V(pot, {x, y});
                acc += 0.5 * (gx * gx + gy * gy + V * u * u);
                if (u > 0.0) acc -= (p_is_3 ? (u * u) * (u * u) : std::pow(u, pp1)) / pp1;
            }
        }
        return acc * h * h;
    };

    const double coarse = eval(grid_step);
    const double fine = eval(0.5 * grid_step);
    if (std::abs(fine - coarse) > 1e-4 * std::abs(fine))
        throw GridTooCoarse("direct_energy: result not stable under grid halving");
    // Both passes are second order; the Richardson combination removes the
    // leading h^2 term and is what downstream comparisons need.
    return fine + (fine - coarse) / 3.0;
}

ReducedQResult solve_reduced_q(double alpha, std::size_t K, double m,
                               const PotentialModel& pot, const BalanceResult& bal,
                               const ModelConstants& cst, const GroundStateProfile& prof,
                               int max_iter, double tol, bool force) {
    if (!force && !cond_m_ok(prof.p, m, pot.sigma))
        throw ValidationError("solve_reduced_q: decay regime condition fails (use force)");
    const double R = bal.R;
    const ReducedOperator op = build_T(K, bal.dhat, m);
    const double lin = cst.a0 * m * std::pow(R, -m - 2.0);

    ReducedQResult res;
    res.q = PerturbationVector::zeros(K);
    double prev_step = 1e300;
    int bad = 0;
    for (int it = 1; it <= max_iter; ++it) {
        res.iterations = it;
        const SpikeConfig cfg = build_config(K, R, alpha, res.q);
        const std::vector<Vec2> pe =
            projected_error_leading(cfg, pot, cst, prof, PsiMode::asymptotic);
        std::vector<double> qv(2 * K);
        for (std::size_t k = 0; k < K; ++k) {
            qv[k] = res.q.f[k];
            qv[K + k] = res.q.g[k];
        }
        const std::vector<double> Tq = op.matvec(qv);
        std::vector<double> b(2 * K);
        for (std::size_t k = 0; k < K; ++k) {
            b[k] = -(pe[k].x - lin * Tq[k]) / lin;
            b[K + k] = -(pe[k].y - lin * Tq[K + k]) / lin;
        }
        auto [qnew, gamma] = solve_constrained_q1(op, b, R, res.q, cst.c0);
        PerturbationVector qn;
        qn.f.assign(qnew.begin(), qnew.begin() + K);
        qn.g.assign(qnew.begin() + K, qnew.end());
        PerturbationVector diff;
        diff.f.resize(K);
        diff.g.resize(K);
        for (std::size_t k = 0; k < K; ++k) {
            diff.f[k] = qn.f[k] - res.q.f[k];
            diff.g[k] = qn.g[k] - res.q.g[k];
        }
        const double step = diff.norm_star();
        res.q = qn;
        res.gamma = lin * gamma;
        if (step <= tol) break;
        if (step >= prev_step) {
            if (++bad >= 5)
                throw NotContracting("solve_reduced_q: step norms not decreasing");
        } else {
            bad = 0;
        }
        prev_step = step;
        if (it == max_iter)
            throw NotContracting("solve_reduced_q: no convergence within max_iter");
    }
    res.in_Lambda_K = res.q.norm_star() <= 1.0;
    return res;
}

ScanResult scan_F(std::size_t K, double m, const PotentialModel& pot, const BalanceResult& bal,
                  const ModelConstants& cst, const GroundStateProfile& prof, int n_alpha) {
    if (n_alpha < 16) throw ValidationError("scan_F: n_alpha must be >= 16");
    const double pi = std::acos(-1.0);
    ScanResult out;
    out.rows.resize(n_alpha);
    for (int i = 0; i < n_alpha; ++i) {
        ScanRow& row = out.rows[i];
        row.alpha = 2.0 * pi * double(i) / double(n_alpha);
        try {
            const ReducedQResult rq =
                solve_reduced_q(row.alpha, K, m, pot, bal, cst, prof, 50, 1e-12);
            const SpikeConfig cfg = build_config(K, bal.R, row.alpha, rq.q);
            row.F = reduced_energy(cfg, pot, cst, prof).J_total;
            row.gamma = rq.gamma;
            row.iterations = rq.iterations;
            row.q_norm_star = rq.q.norm_star();
            row.converged = true;
        } catch (const NumericalError&) {
            row.converged = false;
        }
    }

    double Fmin = 1e300, Fmax = -1e300;
    for (const ScanRow& r : out.rows)
        if (r.converged) {
            Fmin = std::min(Fmin, r.F);
            Fmax = std::max(Fmax, r.F);
        }
    const double mid = 0.5 * (std::abs(Fmin) + std::abs(Fmax));
    out.flat = mid > 0.0 && (Fmax - Fmin) <= 1e-10 * mid;

    // Local extrema by cyclic 3-point stencil with parabolic refinement.
    const int n = n_alpha;
    for (int i = 0; i < n; ++i) {
        const ScanRow& a = out.rows[(i + n - 1) % n];
        const ScanRow& b = out.rows[i];
        const ScanRow& c = out.rows[(i + 1) % n];
        if (!(a.converged && b.converged && c.converged)) continue;
        const bool is_max = b.F > a.F && b.F > c.F;
        const bool is_min = b.F < a.F && b.F < c.F;
        if (!is_max && !is_min) continue;
        const double h = 2.0 * pi / double(n);
        const double denom = a.F - 2.0 * b.F + c.F;
        double shift = 0.0;
        if (denom != 0.0) shift = 0.5 * h * (a.F - c.F) / denom;
        Extremum ex;
        ex.alpha = b.alpha + shift;
        ex.F = b.F - 0.25 * (a.F - c.F) * shift / h;
        ex.is_max = is_max;
        out.extrema.push_back(ex);
    }
    if (out.extrema.empty() && Fmax > -1e300) {
        // Flat landscape: report the sampled global extremes.
        for (const ScanRow& r : out.rows)
            if (r.converged && r.F == Fmax) {
                out.extrema.push_back({r.alpha, r.F, true});
                break;
            }
        for (const ScanRow& r : out.rows)
            if (r.converged && r.F == Fmin) {
                out.extrema.push_back({r.alpha, r.F, false});
                break;
            }
    }
    return out;
}

}  // namespace spikering
