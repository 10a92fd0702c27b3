#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace polarlens {

/// One output symbol class: the joint masses P(X=0,y), P(X=1,y) shared by
/// `weight` distinct symbols. Weight is real so analytic constructions with
/// non-integer symbol counts stay exact.
struct JointAtom {
    double p0 = 0.0;
    double p1 = 0.0;
    double weight = 1.0;

    double mass() const { return p0 + p1; }
    friend bool operator==(const JointAtom&, const JointAtom&) = default;
};

inline constexpr double kDefaultNormalizationTol = 1e-9;
inline constexpr double kDefaultMergeRelTol = 1e-12;

/// Weighted multiset of atoms describing P_{X,Y} for binary X over an
/// abstract finite output alphabet.
///
/// Instances are immutable and always valid: entries nonnegative, weights
/// positive, all-zero atoms dropped, and Σ weight·(p0+p1) = 1 within
/// normalization_tol().
class JointDistribution {
public:
    /// Validating constructor; see make_from_atoms.
    explicit JointDistribution(std::vector<JointAtom> atoms,
                               double normalization_tol = kDefaultNormalizationTol);

    std::span<const JointAtom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double normalization_tol() const { return tol_; }

    double total_mass() const;
    /// Σ weight over atoms, i.e. the number of output symbols.
    double symbol_count() const;
    /// P_X(0).
    double prior0() const;

private:
    std::vector<JointAtom> atoms_;
    double tol_;
};

/// Binary symmetric channel with input prior P_X(0) = prior0, stored jointly.
JointDistribution make_bsc(double crossover, double prior0 = 0.5);

/// Binary erasure channel: outputs 0, 1 and erasure.
JointDistribution make_bec(double erasure, double prior0 = 0.5);

/// Builds a distribution from (p0, p1, weight) triples. Zero-mass atoms are
/// dropped; a negative entry, nonpositive weight, empty list or mass off by more
/// than `normalization_tol` throws.
JointDistribution make_from_atoms(std::span<const JointAtom> atoms,
                                  double normalization_tol = kDefaultNormalizationTol);

/// Merges atoms with bitwise-identical (p0, p1) by summing weights. With a
/// relative tolerance, atoms whose coordinates agree within it are also merged
/// into their weighted mean; that mode is approximate.
JointDistribution dedup(const JointDistribution& d,
                        std::optional<double> merge_rel_tol = std::nullopt);

/// Reorients every atom so p0 ≥ p1, then dedups. Changes P_X but leaves every
/// conditional entropy of d and of all its polar descendants unchanged.
JointDistribution canonicalize_orientation(const JointDistribution& d,
                                           std::optional<double> merge_rel_tol = std::nullopt);

} // namespace polarlens
