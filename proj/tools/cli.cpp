// Command-line front end: ground-state, balance-sweep, spectrum,
// compare-continuum, energy-scan.  JSON configs in, CSV/JSON files out.
// Exit codes: 0 success, 2 validation failure, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spikering/balance.hpp"
#include "spikering/continuum.hpp"
#include "spikering/energy.hpp"
#include "spikering/errors.hpp"
#include "spikering/io.hpp"
#include "spikering/potential.hpp"
#include "spikering/reduced_linear.hpp"

using nlohmann::json;
namespace sr = spikering;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sr::ValidationError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
}

struct ProfileSpec {
    int N = 2;
    double p = 3.0;
    double r_max = 40.0;
    double tol = 1e-12;
};

ProfileSpec parse_profile_spec(const json& j) {
    ProfileSpec ps;
    if (j.contains("profile")) {
        const json& p = j.at("profile");
        for (auto it = p.begin(); it != p.end(); ++it)
            if (it.key() != "N" && it.key() != "p" && it.key() != "r_max" && it.key() != "tol")
                throw sr::ValidationError("profile: unknown key '" + it.key() + "'");
        ps.N = p.value("N", 2);
        ps.p = p.value("p", 3.0);
        ps.r_max = p.value("r_max", 40.0);
        ps.tol = p.value("tol", 1e-12);
    }
    return ps;
}

// Load the cached profile for this parameter set, or solve and cache it.
sr::GroundStateProfile obtain_profile(const ProfileSpec& ps, const std::string& out_dir) {
    const std::string key = sr::profile_cache_key(ps.N, ps.p, ps.r_max, ps.tol);
    const std::string csv = out_dir + "/profile_" + key + ".csv";
    if (std::filesystem::exists(csv) && std::filesystem::exists(csv + ".json"))
        return sr::load_profile(csv);
    sr::GroundStateProfile prof = sr::solve_ground_state(ps.N, ps.p, ps.r_max, ps.tol);
    sr::save_profile(prof, csv);
    return prof;
}

sr::PeriodicFn parse_forcing(const json& j, const std::string& name) {
    if (!j.is_array()) throw sr::ValidationError(name + ": expected array of terms");
    struct Term {
        int k;
        double c, s;
    };
    std::vector<Term> terms;
    for (const json& t : j) {
        for (auto it = t.begin(); it != t.end(); ++it)
            if (it.key() != "k" && it.key() != "cos" && it.key() != "sin")
                throw sr::ValidationError(name + ": unknown key '" + it.key() + "'");
        terms.push_back({t.at("k").get<int>(), t.value("cos", 0.0), t.value("sin", 0.0)});
    }
    return [terms](double th) {
        double v = 0.0;
        for (const auto& t : terms) v += t.c * std::cos(t.k * th) + t.s * std::sin(t.k * th);
        return v;
    };
}

int run_ground_state(const json& cfg, const std::string& out_dir, const std::string& format) {
    const ProfileSpec ps = parse_profile_spec(cfg);
    sr::GroundStateProfile prof = sr::solve_ground_state(ps.N, ps.p, ps.r_max, ps.tol);
    const std::string key = sr::profile_cache_key(ps.N, ps.p, ps.r_max, ps.tol);
    sr::save_profile(prof, out_dir + "/profile_" + key + ".csv");
    const double a = cfg.value("a", 1.0);
    sr::ModelConstants cst = sr::derive_constants(prof, a);
    json summary;
    summary["w0"] = prof.w0();
    summary["c_Np"] = prof.c_Np;
    summary["I0"] = cst.I0;
    summary["a0"] = cst.a0;
    summary["mass2"] = cst.mass2;
    summary["gamma0"] = cst.gamma0;
    summary["c0"] = cst.c0;
    sr::atomic_write(out_dir + "/ground_state_summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    (void)format;
    return 0;
}

int run_balance_sweep(const json& cfg, const std::string& out_dir, const std::string&) {
    const ProfileSpec ps = parse_profile_spec(cfg);
    const auto K_list = cfg.at("K_list").get<std::vector<int>>();
    const double m = cfg.at("m").get<double>();
    const double a = cfg.value("a", 1.0);
    const std::string mode = cfg.value("psi_mode", std::string("asymptotic"));
    const sr::PsiMode pm =
        mode == "quadrature" ? sr::PsiMode::quadrature : sr::PsiMode::asymptotic;
    sr::GroundStateProfile prof = obtain_profile(ps, out_dir);
    sr::ModelConstants cst = sr::derive_constants(prof, a);
    std::ostringstream csv;
    csv << "K,d,R,dhat,residual,asymptotic_d\n";
    for (int K : K_list) {
        sr::BalanceResult b = sr::solve_balance(K, m, cst, prof, pm);
        csv << K << ',' << fmt(b.d) << ',' << fmt(b.R) << ',' << fmt(b.dhat) << ','
            << fmt(b.residual) << ',' << fmt(sr::asymptotic_d(K, m, prof.N)) << '\n';
    }
    sr::atomic_write(out_dir + "/balance_sweep.csv", csv.str());
    std::cout << csv.str();
    return 0;
}

int run_spectrum(const json& cfg, const std::string& out_dir, const std::string&) {
    const ProfileSpec ps = parse_profile_spec(cfg);
    const int K = cfg.at("K").get<int>();
    const double m = cfg.at("m").get<double>();
    const double a = cfg.value("a", 1.0);
    sr::GroundStateProfile prof = obtain_profile(ps, out_dir);
    sr::ModelConstants cst = sr::derive_constants(prof, a);
    sr::BalanceResult bal = sr::solve_balance(K, m, cst, prof);
    sr::ReducedOperator op = sr::build_T(K, bal.dhat, m);
    sr::SpectralData sd = sr::spectrum(op);
    std::ostringstream csv;
    csv << "l,lambda1,lambda2sq,Lambda1,Lambda2\n";
    for (int l = 1; l <= K; ++l)
        csv << l << ',' << fmt(sd.lambda1[l - 1]) << ',' << fmt(sd.lambda2sq[l - 1]) << ','
            << fmt(sd.Lambda1[l - 1]) << ',' << fmt(sd.Lambda2[l - 1]) << '\n';
    sr::atomic_write(out_dir + "/spectrum.csv", csv.str());
    std::cout << sd.n_zero << " zero, " << sd.n_neg << " negative, " << sd.n_pos
              << " positive\n";
    if (!(sd.n_zero == 1 && sd.n_neg == K - 1 && sd.n_pos == K))
        throw sr::NumericalError("spectrum: unexpected inertia");
    return 0;
}

int run_compare_continuum(const json& cfg, const std::string& out_dir, const std::string&) {
    const ProfileSpec ps = parse_profile_spec(cfg);
    const auto K_list = cfg.at("K_list").get<std::vector<int>>();
    const double m = cfg.at("m").get<double>();
    const double a = cfg.value("a", 1.0);
    sr::PeriodicFn phi = parse_forcing(cfg.at("phi"), "phi");
    sr::PeriodicFn vph = parse_forcing(cfg.at("varphi"), "varphi");
    sr::GroundStateProfile prof = obtain_profile(ps, out_dir);
    sr::ModelConstants cst = sr::derive_constants(prof, a);
    std::ostringstream csv;
    csv << "K,sup_err_f,sup_err_g,ratio\n";
    double prev = 0.0;
    for (std::size_t i = 0; i < K_list.size(); ++i) {
        const int K = K_list[i];
        sr::BalanceResult bal = sr::solve_balance(K, m, cst, prof);
        sr::DiscreteComparison cmp = sr::compare_discrete(K, phi, vph, m, bal.dhat);
        const double err = std::max(cmp.sup_err_f, cmp.sup_err_g);
        csv << K << ',' << fmt(cmp.sup_err_f) << ',' << fmt(cmp.sup_err_g) << ','
            << (i == 0 ? "" : fmt(prev > 0.0 ? err / prev : 0.0)) << '\n';
        prev = err;
    }
    sr::atomic_write(out_dir + "/compare_continuum.csv", csv.str());
    std::cout << csv.str();
    return 0;
}

int run_energy_scan(const json& cfg, const std::string& out_dir, const std::string&) {
    const ProfileSpec ps = parse_profile_spec(cfg);
    const int K = cfg.at("K").get<int>();
    const double m = cfg.at("m").get<double>();
    const int n_alpha = cfg.value("n_alpha", 32);
    sr::PotentialModel pot = sr::parse_potential_json(cfg.at("potential").dump());
    if (pot.m != m) throw sr::ValidationError("energy-scan: potential m must match m");
    sr::GroundStateProfile prof = obtain_profile(ps, out_dir);
    sr::ModelConstants cst = sr::derive_constants(prof, pot.a);
    sr::BalanceResult bal = sr::solve_balance(K, m, cst, prof);
    sr::ScanResult scan = sr::scan_F(K, m, pot, bal, cst, prof, n_alpha);
    std::ostringstream csv;
    csv << "alpha,F,gamma,iterations,q_norm_star\n";
    for (const auto& row : scan.rows)
        csv << fmt(row.alpha) << ',' << fmt(row.F) << ',' << fmt(row.gamma) << ','
            << row.iterations << ',' << fmt(row.q_norm_star) << '\n';
    sr::atomic_write(out_dir + "/energy_scan.csv", csv.str());
    json ext;
    ext["flat"] = scan.flat;
    ext["extrema"] = json::array();
    for (const auto& e : scan.extrema)
        ext["extrema"].push_back({{"alpha", e.alpha}, {"F", e.F}, {"is_max", e.is_max}});
    sr::atomic_write(out_dir + "/energy_scan_extrema.json", ext.dump(2) + "\n");
    std::cout << ext.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spike-ring reduction toolkit"};
    app.require_subcommand(1);
    std::string config_path, out_dir = ".", format = "csv";
    int threads = 1;
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "thread count (results are deterministic)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* gs = app.add_subcommand("ground-state", "solve the radial profile");
    auto* bs = app.add_subcommand("balance-sweep", "solve the balancing condition over K");
    auto* sp = app.add_subcommand("spectrum", "closed-form spectrum and inertia of T");
    auto* cc = app.add_subcommand("compare-continuum", "discrete vs continuum convergence");
    auto* es = app.add_subcommand("energy-scan", "F(alpha) scan with the reduced fixed point");
    // let global options appear after the subcommand as well
    for (auto* sub : {gs, bs, sp, cc, es}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "{\"error\":\"validation\",\"detail\":\"bad arguments\"}\n";
        return 2;
    }

    try {
        std::filesystem::create_directories(out_dir);
        const json cfg = read_json_file(config_path);
        if (gs->parsed()) return run_ground_state(cfg, out_dir, format);
        if (bs->parsed()) return run_balance_sweep(cfg, out_dir, format);
        if (sp->parsed()) return run_spectrum(cfg, out_dir, format);
        if (cc->parsed()) return run_compare_continuum(cfg, out_dir, format);
        if (es->parsed()) return run_energy_scan(cfg, out_dir, format);
        return 2;
    } catch (const sr::ValidationError& e) {
        std::cerr << "{\"error\":\"validation\",\"detail\":\"" << e.what() << "\"}\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "{\"error\":\"validation\",\"detail\":\"" << e.what() << "\"}\n";
        return 2;
    } catch (const sr::NumericalError& e) {
        std::cerr << "{\"error\":\"numerical\",\"detail\":\"" << e.what() << "\"}\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"numerical\",\"detail\":\"" << e.what() << "\"}\n";
        return 3;
    }
}
