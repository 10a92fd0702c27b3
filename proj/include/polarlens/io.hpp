#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "polarlens/joint_distribution.hpp"
#include "polarlens/perturbation.hpp"
#include "polarlens/profile.hpp"

namespace polarlens {

// Distribution files: {"atoms": [[p0, p1, weight], ...], "normalization_tol": 1e-9}
// with the tolerance optional. Loading applies make_from_atoms.

JointDistribution parse_distribution_json(std::string_view text);
JointDistribution load_distribution(const std::filesystem::path& path);
std::string distribution_to_json(const JointDistribution& d);
void save_distribution(const std::filesystem::path& path, const JointDistribution& d);

// Perturbation specs:
// {"mode": "uniform"|"deterministic", "base_weights": [...], "deltas": [...], "alpha": 2}
PerturbationSpec parse_perturbation_json(std::string_view text);
PerturbationSpec load_perturbation_spec(const std::filesystem::path& path);

/// Header "n,index,alpha,entropy" (plus ",shannon_rank" when requested), one
/// row per index × order. Doubles are written in shortest round-trip form.
void write_profile_csv(std::ostream& out, const PolarizationProfile& profile, bool shannon_rank = false);

/// {"level": n, "orders": ["0.5", ...], "entries": [[H(1), ..., H(2^n)], ...]}
std::string profile_to_json(const PolarizationProfile& profile);
PolarizationProfile parse_profile_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

} // namespace polarlens
