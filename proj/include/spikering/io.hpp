#pragma once

#include <optional>
#include <string>

#include "spikering/configuration.hpp"
#include "spikering/groundstate.hpp"
#include "spikering/potential.hpp"

namespace spikering {

// Atomically write content to path (temp file in the same directory + rename).
void atomic_write(const std::string& path, const std::string& content);

// Profile: CSV columns r,w,wp plus a JSON sidecar header {N, p, c_Np, ...}.
// header_path defaults to csv_path + ".json".
void save_profile(const GroundStateProfile& profile, const std::string& csv_path,
                  const std::string& header_path = "");
GroundStateProfile load_profile(const std::string& csv_path, const std::string& header_path = "");

// Configuration: JSON {K, R, alpha, f[], g[]}.
void save_config(const SpikeConfig& config, const std::string& path);
SpikeConfig load_config(const std::string& path);

// Potential model JSON {V_inf, a, m, sigma, perturbation}.
void save_potential(const PotentialModel& model, const std::string& path);
PotentialModel load_potential(const std::string& path);
PotentialModel parse_potential_json(const std::string& text);

// Cache key for profile files: hash of (N, p, r_max, tol).
std::string profile_cache_key(int N, double p, double r_max, double tol);

}  // namespace spikering
