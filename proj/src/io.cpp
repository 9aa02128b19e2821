#include "spikering/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spikering/errors.hpp"

namespace spikering {

using nlohmann::json;

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("atomic_write: cannot open " + tmp.string());
        out << content;
        if (!out) throw ValidationError("atomic_write: write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ValidationError(where + ": unknown key '" + it.key() + "'");
    }
}

}  // namespace

void save_profile(const GroundStateProfile& prof, const std::string& csv_path,
                  const std::string& header_path) {
    std::ostringstream csv;
    csv << "r,w,wp\n";
    for (std::size_t i = 0; i < prof.r.size(); ++i)
        csv << fmt(prof.r[i]) << ',' << fmt(prof.w[i]) << ',' << fmt(prof.wp[i]) << '\n';
    atomic_write(csv_path, csv.str());

    json hdr;
    hdr["N"] = prof.N;
    hdr["p"] = prof.p;
    hdr["r_max"] = prof.r_max;
    hdr["tol"] = prof.tol;
    hdr["c_Np"] = prof.c_Np;
    atomic_write(header_path.empty() ? csv_path + ".json" : header_path, hdr.dump(2) + "\n");
}

GroundStateProfile load_profile(const std::string& csv_path, const std::string& header_path) {
    GroundStateProfile prof;
    try {
        const json hdr =
            json::parse(read_file(header_path.empty() ? csv_path + ".json" : header_path));
        reject_unknown_keys(hdr, {"N", "p", "r_max", "tol", "c_Np"}, "profile header");
        prof.N = hdr.at("N").get<int>();
        prof.p = hdr.at("p").get<double>();
        prof.r_max = hdr.at("r_max").get<double>();
        prof.tol = hdr.at("tol").get<double>();
        prof.c_Np = hdr.at("c_Np").get<double>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("profile header: ") + e.what());
    }

    std::istringstream in(read_file(csv_path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("r,w,wp", 0) != 0)
        throw ValidationError("profile CSV: bad header row");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double r, w, wp;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &w, &wp) != 3)
            throw ValidationError("profile CSV: bad row '" + line + "'");
        prof.r.push_back(r);
        prof.w.push_back(w);
        prof.wp.push_back(wp);
    }
    if (prof.r.size() < 2) throw ValidationError("profile CSV: too few rows");
    prof.refresh_wpp();
    return prof;
}

void save_config(const SpikeConfig& cfg, const std::string& path) {
    json j;
    j["K"] = cfg.K;
    j["R"] = cfg.R;
    j["alpha"] = cfg.alpha;
    j["f"] = cfg.q.f;
    j["g"] = cfg.q.g;
    atomic_write(path, j.dump(2) + "\n");
}

SpikeConfig load_config(const std::string& path) {
    try {
        const json j = json::parse(read_file(path));
        reject_unknown_keys(j, {"K", "R", "alpha", "f", "g"}, "config");
        PerturbationVector q;
        q.f = j.at("f").get<std::vector<double>>();
        q.g = j.at("g").get<std::vector<double>>();
        return build_config(j.at("K").get<std::size_t>(), j.at("R").get<double>(),
                            j.at("alpha").get<double>(), q);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

void save_potential(const PotentialModel& mo, const std::string& path) {
    json j;
    j["V_inf"] = mo.V_inf;
    j["a"] = mo.a;
    j["m"] = mo.m;
    j["sigma"] = mo.sigma;
    j["r0"] = mo.r0;
    if (mo.eps != 0.0) {
        j["perturbation"] = {{"type", "angular"}, {"eps", mo.eps}, {"frequency", mo.frequency}};
    } else {
        j["perturbation"] = {{"type", "none"}};
    }
    atomic_write(path, j.dump(2) + "\n");
}

PotentialModel parse_potential_json(const std::string& text) {
    PotentialModel mo;
    try {
        const json j = json::parse(text);
        reject_unknown_keys(j, {"V_inf", "a", "m", "sigma", "r0", "perturbation"}, "potential");
        mo.V_inf = j.value("V_inf", 1.0);
        mo.a = j.value("a", 1.0);
        mo.m = j.at("m").get<double>();
        mo.sigma = j.value("sigma", 3.0);
        mo.r0 = j.value("r0", 1.0);
        if (j.contains("perturbation")) {
            const json& p = j.at("perturbation");
            reject_unknown_keys(p, {"type", "eps", "frequency"}, "potential.perturbation");
            const std::string type = p.at("type").get<std::string>();
            if (type == "angular") {
                mo.eps = p.at("eps").get<double>();
                mo.frequency = p.value("frequency", 1);
            } else if (type != "none") {
                throw ValidationError("potential.perturbation: unknown type '" + type + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("potential: ") + e.what());
    }
    if (!(mo.V_inf > 0.0 && mo.a > 0.0 && mo.m > 0.0 && mo.sigma > 0.0 && mo.r0 > 0.0))
        throw ValidationError("potential: parameters must be positive");
    return mo;
}

PotentialModel load_potential(const std::string& path) {
    return parse_potential_json(read_file(path));
}

std::string profile_cache_key(int N, double p, double r_max, double tol) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d|%.17g|%.17g|%.17g", N, p, r_max, tol);
    // FNV-1a over the canonical parameter string.
    std::uint64_t h = 1469598103934665603ull;
    for (const char* c = buf; *c; ++c) {
        h ^= static_cast<unsigned char>(*c);
        h *= 1099511628211ull;
    }
    char out[20];
    std::snprintf(out, sizeof out, "%016" PRIx64, h);
    return out;
}

}  // namespace spikering
