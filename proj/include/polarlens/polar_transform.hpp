#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarlens/joint_distribution.hpp"
#include "polarlens/order.hpp"

namespace polarlens {

inline constexpr std::size_t kDefaultAtomCap = 50'000'000;

struct TransformOptions {
    /// Reorient child atoms to p0 ≥ p1 before merging.
    bool canonicalize = false;
    /// Maximum distinct atoms per child; exceeding it throws CapacityError.
    std::size_t atom_cap = kDefaultAtomCap;
    /// Optional approximate merge of near-identical atoms.
    std::optional<double> merge_rel_tol;
};

/// The two children of one basic polar step on inputs (X1,Y1) ~ a, (X2,Y2) ~ b:
/// minus is (U1; Y1 Y2), plus is (U2; Y1 Y2 U1), with U1 = X1 ⊕ X2, U2 = X2.
struct TransformPair {
    JointDistribution minus;
    JointDistribution plus;
};

/// Expands P_A(u1,u2,y1,y2) = P_a(u1⊕u2, y1)·P_b(u2, y2) and groups it into
/// the two children. a and b may differ (compound setting).
TransformPair transform_pair(const JointDistribution& a, const JointDistribution& b,
                             const TransformOptions& opts = {});

/// Node (level, index) of the polarization tree; index is 1-based. Children
/// are 2i-1 (minus) and 2i (plus), so the path from the root is the binary
/// expansion of i-1, most significant bit first, 0 = minus.
class SubchannelIndex {
public:
    SubchannelIndex(int level, std::uint64_t index);

    int level() const { return level_; }
    std::uint64_t index() const { return index_; }
    /// Path bits b1..bn; b1 is the first transform applied to the root.
    std::vector<bool> path() const;

    SubchannelIndex minus_child() const { return {level_ + 1, 2 * index_ - 1}; }
    SubchannelIndex plus_child() const { return {level_ + 1, 2 * index_}; }

private:
    int level_;
    std::uint64_t index_;
};

struct SynthesisOptions {
    bool canonicalize = true;
    std::size_t atom_cap = kDefaultAtomCap;
    std::optional<double> merge_rel_tol;
};

/// Joint distribution of (U^i; Y^{1:N}, U^{1:i-1}) for the given node.
JointDistribution synthesize(const JointDistribution& d, const SubchannelIndex& idx,
                             const SynthesisOptions& opts = {});

/// The four power sums over the expanded P_A (all log2):
///   S1 = Σ_{y1y2} (Σ_{u1u2} P_A)^α
///   S2 = Σ_{y1y2} Σ_{u1} (Σ_{u2} P_A)^α
///   S3 = Σ_{y1y2} Σ_{u1u2} P_A^α
///   S4 = Σ_{y1y2} P_{Y1}(y1)^α · (P_b(0,y2)^α + P_b(1,y2)^α)
struct SQuantities {
    double alpha;
    double log_s1, log_s2, log_s3, log_s4;

    /// H_α(U1|Y1Y2)
    double h_minus() const { return (log_s2 - log_s1) / (1.0 - alpha); }
    /// H_α(U2|Y1Y2U1)
    double h_plus() const { return (log_s3 - log_s2) / (1.0 - alpha); }
    /// H_α(X1|Y1)
    double h_first() const { return (log_s3 - log_s4) / (1.0 - alpha); }
    /// H_α(U1U2|Y1Y2)
    double h_joint() const { return (log_s3 - log_s1) / (1.0 - alpha); }
};

/// Requires finite α > 0, α ≠ 1.
SQuantities s_quantities(const JointDistribution& a, const JointDistribution& b, double alpha);

struct Lemma1Entry {
    Order order;
    double h_a, h_b, h_minus, h_plus;
    /// H⁻ - max(H_a, H_b); relation (minus ≥ max) holds when ≥ -slack.
    double minus_margin;
    /// min(H_a, H_b) - H⁺; relation (plus ≤ min) holds when ≥ -slack.
    double plus_margin;
    /// H⁻ + H⁺ - (H_a + H_b).
    double chain_residual;
    /// For finite α: S2 ≥ S4 when α < 1, S2 ≤ S4 when α > 1 (the Minkowski
    /// step); always true for the special orders.
    bool minkowski_consistent;
};

struct Lemma1Report {
    double slack;
    std::vector<Lemma1Entry> entries;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    /// Smallest of all margins and -|chain residual| across entries.
    double worst_margin() const;
};

Lemma1Report lemma1_check(const JointDistribution& a, const JointDistribution& b,
                          const std::vector<Order>& orders, double slack = 1e-10);

} // namespace polarlens
