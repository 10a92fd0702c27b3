#include "polarlens/perturbation.hpp"

#include <cmath>

#include "polarlens/error.hpp"

namespace polarlens {

void PerturbationSpec::validate() const {
    if (base_weights.empty() || base_weights.size() != deltas.size())
        throw DomainError("perturbation needs matching, nonempty weight and delta lists");
    if (!(alpha > 0.0) || !std::isfinite(alpha) || alpha == 1.0)
        throw DomainError("perturbation order must be finite, positive and different from 1");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double q = base_weights[i], d = deltas[i];
        if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("base weights must be positive");
        if (!std::isfinite(d)) throw DomainError("deltas must be finite");
        if (mode == Mode::Uniform ? std::abs(d) > q / 2.0 : (d < 0.0 || d > q))
            throw DomainError("delta out of range for the perturbation mode");
    }
}

PerturbationSpec PerturbationSpec::scaled(double factor) const {
    PerturbationSpec out = *this;
    for (double& d : out.deltas) d *= factor;
    return out;
}

double perturbation_exact(const PerturbationSpec& spec) {
    spec.validate();
    const double a = spec.alpha;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < spec.deltas.size(); ++i) {
        const double q = spec.base_weights[i], d = spec.deltas[i];
        if (spec.mode == PerturbationSpec::Mode::Uniform) {
            // (h+δ)^α + (h-δ)^α - 2h^α = h^α [expm1(α log1p(δ/h)) + expm1(α log1p(-δ/h))]
            const double h = q / 2.0, ha = std::pow(h, a);
            const double t = d / h;
            const double lo = t == -1.0 ? -1.0 : std::expm1(a * std::log1p(t));
            const double hi = t == 1.0 ? -1.0 : std::expm1(a * std::log1p(-t));
            num += ha * (lo + hi);
            den += 2.0 * ha;
        } else {
            // δ^α + (Q-δ)^α - Q^α
            const double qa = std::pow(q, a);
            const double tail = d == q ? -1.0 : std::expm1(a * std::log1p(-d / q));
            num += std::pow(d, a) + qa * tail;
            den += qa;
        }
    }
    return num / den;
}

double perturbation_approx(const PerturbationSpec& spec) {
    spec.validate();
    const double a = spec.alpha;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < spec.deltas.size(); ++i) {
        const double q = spec.base_weights[i], d = spec.deltas[i];
        if (spec.mode == PerturbationSpec::Mode::Uniform)
            num += 2.0 * a * (a - 1.0) * d * d * std::pow(q, a - 2.0);
        else
            num += std::pow(d, a) - a * d * std::pow(q, a - 1.0);
        den += std::pow(q, a);
    }
    return num / den;
}

double perturbation_leading_term(const PerturbationSpec& spec) {
    spec.validate();
    if (spec.mode != PerturbationSpec::Mode::Deterministic)
        throw DomainError("leading-term form applies to the deterministic case");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < spec.deltas.size(); ++i) {
        num += std::pow(spec.deltas[i], spec.alpha);
        den += std::pow(spec.base_weights[i], spec.alpha);
    }
    return num / den;
}

PerturbationComparison compare_perturbation(const PerturbationSpec& spec) {
    const double exact = perturbation_exact(spec);
    const double approx = perturbation_approx(spec);
    const double diff = std::abs(approx - exact);
    return {exact, approx, exact == 0.0 ? diff : diff / std::abs(exact)};
}

} // namespace polarlens
