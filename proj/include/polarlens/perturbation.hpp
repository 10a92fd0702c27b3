#pragma once

#include <vector>

namespace polarlens {

/// Small deviations of a joint law from a uniform or a deterministic reference
/// with the same output marginal Q.
///   Uniform:       P(·, y_i) = (Q_i/2 + δ_i, Q_i/2 - δ_i) against (Q_i/2, Q_i/2)
///   Deterministic: P(·, y_i) = (δ_i, Q_i - δ_i)           against (0, Q_i)
struct PerturbationSpec {
    enum class Mode { Uniform, Deterministic };

    Mode mode = Mode::Uniform;
    std::vector<double> base_weights; // Q(y_i)
    std::vector<double> deltas;       // δ_i
    double alpha = 2.0;

    /// Throws DomainError unless sizes match, Q_i > 0, α is finite, positive and
    /// not 1, and |δ_i| ≤ Q_i/2 (uniform) or 0 ≤ δ_i ≤ Q_i (deterministic).
    void validate() const;
    /// Same spec with every δ_i multiplied by `factor`.
    PerturbationSpec scaled(double factor) const;
};

/// Δ = Σ P^α / Σ Q_ref^α - 1 over joint entries, evaluated with expm1/log1p so
/// small deviations keep full relative precision.
double perturbation_exact(const PerturbationSpec& spec);

/// Uniform:       Δ ≈ 2α(α-1) Σ δ_i² Q_i^{α-2} / Σ Q_i^α
/// Deterministic: Δ ≈ Σ [δ_i^α - α δ_i Q_i^{α-1}] / Σ Q_i^α
double perturbation_approx(const PerturbationSpec& spec);

/// Small-α deterministic regime: Δ ≈ Σ δ_i^α / Σ Q_i^α.
double perturbation_leading_term(const PerturbationSpec& spec);

struct PerturbationComparison {
    double exact;
    double approx;
    double rel_error; // |approx - exact| / |exact|; absolute difference when exact = 0
};
PerturbationComparison compare_perturbation(const PerturbationSpec& spec);

} // namespace polarlens
