#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "polarlens/joint_distribution.hpp"
#include "polarlens/order.hpp"

namespace polarlens {

// All logarithms are base 2.

struct WeightedProb {
    double p = 0.0;
    double weight = 1.0;
};

/// log2 Σ w·p^α; -inf encodes an empty sum.
struct LogPowerSum {
    double log_sum = -std::numeric_limits<double>::infinity();
    bool empty() const { return std::isinf(log_sum) && log_sum < 0; }
};

struct EntropyOptions {
    /// Entries ≤ support_eps count as zero for order 0.
    double support_eps = 0.0;
    /// Mass tolerance for unconditional inputs.
    double normalization_tol = kDefaultNormalizationTol;
};

/// Streaming base-2 log-sum-exp with a running maximum.
class LogSumExp2 {
public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term <= max_) {
            sum_ += std::exp2(log_term - max_);
        } else {
            sum_ = sum_ * std::exp2(max_ - log_term) + 1.0;
            max_ = log_term;
        }
    }
    void merge(const LogSumExp2& other) {
        if (other.sum_ == 0.0) return;
        add(other.max_ + std::log2(other.sum_) );
    }
    double value() const {
        return sum_ == 0.0 ? -std::numeric_limits<double>::infinity() : max_ + std::log2(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

/// log2 Σ w·p^α via a max shift; zero-probability entries are skipped.
LogPowerSum power_sum_log(std::span<const WeightedProb> values, double alpha);

/// Unconditional Rényi entropy of a weighted probability list.
/// Throws NormalizationError when Σ w·p is not 1 within the tolerance.
double renyi_entropy(std::span<const WeightedProb> values, Order order,
                     const EntropyOptions& opts = {});

/// H_α(X|Y) = (1/(1-α))·log2[Σ_{x,y} P(x,y)^α / Σ_y P(y)^α], with Shannon,
/// support-count and min-entropy branches for α = 1, 0, ∞.
double conditional_renyi(const JointDistribution& d, Order order, const EntropyOptions& opts = {});

/// P_Y as weighted values (one entry per atom).
std::vector<WeightedProb> output_marginal(const JointDistribution& d);
/// P_{X,Y} as weighted values (two entries per atom, zeros kept).
std::vector<WeightedProb> joint_values(const JointDistribution& d);

/// H_α(X|Y) + H_α(Y) - H_α(X,Y); algebraically zero for this conditional entropy.
double chain_rule_residual(const JointDistribution& d, Order order, const EntropyOptions& opts = {});

/// Numerator and denominator power sums of the conditional entropy, log2.
struct ConditionalPowerSums {
    double log_numerator;   // log2 Σ w (p0^α + p1^α)
    double log_denominator; // log2 Σ w (p0+p1)^α
};
ConditionalPowerSums conditional_power_sums(const JointDistribution& d, double alpha);

/// Binary entropy function in bits.
double binary_entropy(double p);

} // namespace polarlens
