#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polarlens/joint_distribution.hpp"
#include "polarlens/order.hpp"
#include "polarlens/profile.hpp"

// Ground truth by explicit enumeration. Deliberately shares no code with the
// recursive engine or its entropy kernels.
namespace polarlens::oracle {

inline constexpr int kMaxOracleLevel = 4;

/// G_N = B_N F^{⊗n} over GF(2), N = 2^n.
class GeneratorMatrix {
public:
    GeneratorMatrix(int n, std::vector<std::vector<std::uint8_t>> bits);

    int level() const { return n_; }
    std::size_t size() const { return bits_.size(); }
    std::uint8_t at(std::size_t row, std::size_t col) const { return bits_.at(row).at(col); }
    const std::vector<std::vector<std::uint8_t>>& rows() const { return bits_; }

    GeneratorMatrix operator*(const GeneratorMatrix& rhs) const;
    bool is_identity() const;

    /// u = x·G_N for a row vector x given as bits x[0..N-1].
    std::vector<std::uint8_t> apply(std::span<const std::uint8_t> x) const;

private:
    int n_;
    std::vector<std::vector<std::uint8_t>> bits_;
};

/// Kronecker power of F = [1 0; 1 1] with rows permuted by n-bit reversal of
/// the 0-based row index. Requires 1 ≤ n ≤ kMaxOracleLevel.
GeneratorMatrix generator_matrix(int n);

struct BruteForceOptions {
    /// Upper bound on |Y|^N · 2^N enumerated states.
    std::uint64_t max_states = std::uint64_t{1} << 30;
    double support_eps = 0.0;
};

/// H_α(U^i | Y^{1:N}, U^{1:i-1}) for every i, computed from the exact joint
/// of (U^{1:N}, Y^{1:N}) with U = X·G_N. Atom weights act as symbol
/// multiplicities. Throws CapacityError when the state space exceeds the cap.
PolarizationProfile brute_force_profile(const JointDistribution& d, int n, const std::vector<Order>& orders,
                                        const BruteForceOptions& opts = {});

struct MinkowskiReport {
    double p;
    double lhs; // (Σ (x+y)^p)^{1/p}
    double rhs; // (Σ x^p)^{1/p} + (Σ y^p)^{1/p}
    /// rhs - lhs for p ≥ 1, lhs - rhs for p < 1, scaled by max(1, rhs).
    double slack;
    bool holds;
    bool equality;             // |slack| < 1e-12
    bool positively_dependent; // x = λy (λ ≥ 0) or y = 0
};

/// Minkowski inequality for p ≥ 1 and its reverse for 0 < p < 1.
MinkowskiReport minkowski_check(std::span<const double> x, std::span<const double> y, double p);

} // namespace polarlens::oracle
