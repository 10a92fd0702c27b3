#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polarlens/joint_distribution.hpp"
#include "polarlens/polar_transform.hpp"

namespace polarlens::cli {

enum ExitCode : int {
    kExitPass = 0,      // all checks passed
    kExitViolation = 1, // a property check failed
    kExitUsage = 2,     // bad flags, unreadable input or a resource cap
};

enum class Format { Csv, Json };

/// Settings shared by all commands; every field has a flag.
struct RunConfig {
    std::string channel = "bsc:0.2";   // bsc:p | bec:e | file:PATH
    std::optional<double> prior0;      // overrides the channel's input prior
    int n = 7;
    std::string alpha;                 // comma-separated orders; empty = command default
    std::vector<double> deltas{0.1, 0.01};
    std::string out;                   // empty = standard output
    Format format = Format::Csv;
    std::uint64_t seed = 1;
    std::size_t atom_cap = kDefaultAtomCap;
    bool merge_tol = false;            // tolerance dedup at the default relative tolerance
    bool sort_shannon = false;
    unsigned threads = 0;              // 0 = hardware, capped by POLARLENS_THREADS
};

/// Builds the joint distribution named by a channel spec.
JointDistribution parse_channel(const std::string& spec, std::optional<double> prior0 = std::nullopt);

/// Worker count after applying hardware limits and POLARLENS_THREADS.
unsigned effective_threads(unsigned requested);

int cmd_polarize(const RunConfig& cfg, std::ostream& out);

struct VerifyConfig {
    std::string suite; // lemma1 | chain | martingale | oracle | minkowski
    std::size_t trials = 20;
};
int cmd_verify(const RunConfig& cfg, const VerifyConfig& vcfg, std::ostream& out);

struct ExtremeConfig {
    double alpha0 = 2.0;
    int n_min = 8;
    int n_max = 28;
};
int cmd_example_extreme(const RunConfig& cfg, const ExtremeConfig& ecfg, std::ostream& out);

struct PerturbConfig {
    std::string spec_path;
    int halvings = 5;
};
int cmd_perturb(const RunConfig& cfg, const PerturbConfig& pcfg, std::ostream& out);

int cmd_entropy(const RunConfig& cfg, std::ostream& out);

/// Parses argv and dispatches; errors are reported on `err` with exit code 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace polarlens::cli
