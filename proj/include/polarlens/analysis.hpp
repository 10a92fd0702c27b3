#pragma once

#include <cstddef>
#include <vector>

#include "polarlens/joint_distribution.hpp"
#include "polarlens/order.hpp"
#include "polarlens/profile.hpp"

namespace polarlens {

/// Fractions of sub-channels near each extreme for one order, next to the
/// asymptotic fractions the polarization theorem predicts.
struct ExtremalFractions {
    Order order;
    double frac_high;      // |{i : H_n(i) > 1 - δ}| / 2^n
    double frac_low;       // |{i : H_n(i) < δ}| / 2^n
    double predicted_high; // H_α(X|Y)
    double predicted_low;  // 1 - H_α(X|Y)
};

/// One entry per profile order. Predictions use the level mean, which equals
/// the root entropy exactly (telescoped chain rule). Requires 0 < δ < 0.5.
std::vector<ExtremalFractions> extremal_fractions(const PolarizationProfile& profile, double delta);
/// As above with predictions taken from the root distribution directly.
std::vector<ExtremalFractions> extremal_fractions(const PolarizationProfile& profile, double delta,
                                                  const JointDistribution& root);

/// Two-class construction in which orders α0 and α0 + 1 polarize to opposite
/// ends: a fraction 1/L of the M = 2^N output symbols is deterministic, the
/// rest is uniform, with L - 1 = (N-1)^{(α0 - 0.5/α0)/(α0 - 1)} / 2.
class ExtremeExampleParams {
public:
    /// Requires α0 > 1 and N ≥ 2.
    ExtremeExampleParams(double alpha0, int n);

    double alpha0() const { return alpha0_; }
    int n() const { return n_; }
    double l_minus_one() const { return l_minus_one_; }
    double l() const { return l_minus_one_ + 1.0; }
    /// M = 2^N, carried as a real.
    double m() const;

private:
    double alpha0_;
    int n_;
    double l_minus_one_;
};

/// H_α = (1/(1-α))·log2[((L-1)^{α-1} + 2^{1-α}(N-1)^α) / ((L-1)^{α-1} + (N-1)^α)],
/// evaluated in the log domain. Requires finite α > 0, α ≠ 1.
double extreme_example_closed_form(const ExtremeExampleParams& params, double alpha);

/// Deterministic atoms (L/(NM), 0) with weight M/L and uniform atoms with both
/// coordinates (N-1)L/(2NM(L-1)) and weight M(L-1)/L.
JointDistribution extreme_example_distribution(const ExtremeExampleParams& params);

/// The atoms that carry the conditional power sums at one order: the shortest
/// prefix of atoms ranked by combined share (numerator + denominator) whose
/// numerator and denominator shares both exceed 1 - ε.
struct EffectiveSet {
    double alpha;
    double epsilon;
    std::vector<std::size_t> atoms; // indices into d.atoms(), in greedy order
    double numerator_share;
    double denominator_share;
    double subset_entropy; // conditional entropy of the subset, renormalized
    double full_entropy;
};

/// Requires finite α > 0, α ≠ 1 and 0 < ε < 1.
EffectiveSet effective_set(const JointDistribution& d, double alpha, double epsilon = 0.01);

} // namespace polarlens
