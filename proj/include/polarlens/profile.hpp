#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polarlens/joint_distribution.hpp"
#include "polarlens/order.hpp"
#include "polarlens/polar_transform.hpp"
#include "polarlens/renyi.hpp"

namespace polarlens {

/// Conditional entropies H_n(i) for every sub-channel i ∈ [1, 2^n] at one
/// level and every requested order. Indices are stored in natural order;
/// presentation sorting is a separate permutation.
class PolarizationProfile {
public:
    PolarizationProfile(int level, std::vector<Order> orders, std::vector<std::vector<double>> entries);

    int level() const { return level_; }
    std::uint64_t size() const { return std::uint64_t{1} << level_; }
    const std::vector<Order>& orders() const { return orders_; }

    /// H_n(index) for orders()[order_idx]; index is 1-based.
    double entropy(std::size_t order_idx, std::uint64_t index) const {
        return entries_.at(order_idx).at(index - 1);
    }
    std::span<const double> column(std::size_t order_idx) const { return entries_.at(order_idx); }
    std::optional<std::size_t> find_order(Order order) const;
    double mean(std::size_t order_idx) const;

    /// 1-based indices sorted by ascending Shannon entropy (ties by index);
    /// empty when the profile has no order-1 column.
    std::optional<std::vector<std::uint64_t>> shannon_sorted_indices() const;

private:
    int level_;
    std::vector<Order> orders_;
    std::vector<std::vector<double>> entries_;
};

inline constexpr int kDefaultMaxLevel = 8;

struct ProfileOptions {
    int max_level = kDefaultMaxLevel;
    std::size_t atom_cap = kDefaultAtomCap;
    bool canonicalize = true;
    std::optional<double> merge_rel_tol;
    double support_eps = 0.0;
    /// Worker threads for independent subtrees; 0 = hardware concurrency.
    unsigned threads = 1;
};

/// Entropies of the two children of transform_pair(parent, parent), computed
/// without materializing them. Only the minus numerator Σ (a0b0+a1b1)^α + ...
/// couples atom pairs; it is evaluated over atoms grouped by posterior
/// (p0, p1)/(p0+p1), every other power sum factors over the parent.
struct ChildEntropies {
    std::vector<double> minus;
    std::vector<double> plus;
};
ChildEntropies self_transform_entropies(const JointDistribution& parent, std::span<const Order> orders,
                                        const EntropyOptions& opts = {});

/// Full profile at level n. Nodes above the last level are materialized once
/// each (shared prefixes), the last level is streamed from its parents.
PolarizationProfile level_profile(const JointDistribution& d, int n, const std::vector<Order>& orders,
                                  const ProfileOptions& opts = {});

} // namespace polarlens
