#include "polarlens/renyi.hpp"

#include <algorithm>
#include <sstream>

#include "polarlens/error.hpp"

namespace polarlens {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double eta(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

void require_positive_alpha(double alpha) {
    if (!(alpha > 0.0) || std::isinf(alpha))
        throw DomainError("power sums need a finite order α > 0");
}

void require_normalized(std::span<const WeightedProb> values, double tol) {
    double mass = 0.0;
    for (const auto& v : values) {
        if (!(v.p >= 0.0) || !(v.weight >= 0.0))
            throw DomainError("probabilities and weights must be nonnegative");
        mass += v.weight * v.p;
    }
    if (std::abs(mass - 1.0) > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "values sum to " << mass << ", not 1";
        throw NormalizationError(msg.str());
    }
}

} // namespace

LogPowerSum power_sum_log(std::span<const WeightedProb> values, double alpha) {
    require_positive_alpha(alpha);
    double shift = kNegInf;
    for (const auto& v : values) {
        if (v.p > 0.0 && v.weight > 0.0)
            shift = std::max(shift, alpha * std::log2(v.p) + std::log2(v.weight));
    }
    if (shift == kNegInf) return {};
    double sum = 0.0;
    for (const auto& v : values) {
        if (v.p > 0.0 && v.weight > 0.0)
            sum += std::exp2(alpha * std::log2(v.p) + std::log2(v.weight) - shift);
    }
    return {shift + std::log2(sum)};
}

double renyi_entropy(std::span<const WeightedProb> values, Order order, const EntropyOptions& opts) {
    require_normalized(values, opts.normalization_tol);
    switch (order.kind()) {
    case Order::Kind::Zero: {
        double support = 0.0;
        for (const auto& v : values)
            if (v.p > opts.support_eps) support += v.weight;
        return std::log2(support);
    }
    case Order::Kind::One: {
        double h = 0.0;
        for (const auto& v : values) h += v.weight * eta(v.p);
        return h;
    }
    case Order::Kind::Infinity: {
        double pmax = 0.0;
        for (const auto& v : values)
            if (v.weight > 0.0) pmax = std::max(pmax, v.p);
        return -std::log2(pmax);
    }
    case Order::Kind::Finite: break;
    }
    const double alpha = order.alpha();
    return power_sum_log(values, alpha).log_sum / (1.0 - alpha);
}

ConditionalPowerSums conditional_power_sums(const JointDistribution& d, double alpha) {
    require_positive_alpha(alpha);
    const auto joint = joint_values(d);
    const auto marginal = output_marginal(d);
    return {power_sum_log(joint, alpha).log_sum, power_sum_log(marginal, alpha).log_sum};
}

double conditional_renyi(const JointDistribution& d, Order order, const EntropyOptions& opts) {
    switch (order.kind()) {
    case Order::Kind::Zero: {
        double entries = 0.0, symbols = 0.0;
        for (const auto& a : d.atoms()) {
            const int nz = (a.p0 > opts.support_eps) + (a.p1 > opts.support_eps);
            entries += a.weight * nz;
            if (nz > 0) symbols += a.weight;
        }
        if (symbols == 0.0) throw DomainError("no joint entry exceeds the support threshold");
        return std::log2(entries / symbols);
    }
    case Order::Kind::One: {
        double h = 0.0;
        for (const auto& a : d.atoms()) h += a.weight * (eta(a.p0) + eta(a.p1) - eta(a.mass()));
        return h;
    }
    case Order::Kind::Infinity: {
        double ymax = 0.0, xymax = 0.0;
        for (const auto& a : d.atoms()) {
            ymax = std::max(ymax, a.mass());
            xymax = std::max({xymax, a.p0, a.p1});
        }
        return std::log2(ymax / xymax);
    }
    case Order::Kind::Finite: break;
    }
    const double alpha = order.alpha();
    const auto sums = conditional_power_sums(d, alpha);
    return (sums.log_numerator - sums.log_denominator) / (1.0 - alpha);
}

std::vector<WeightedProb> output_marginal(const JointDistribution& d) {
    std::vector<WeightedProb> out;
    out.reserve(d.size());
    for (const auto& a : d.atoms()) out.push_back({a.mass(), a.weight});
    return out;
}

std::vector<WeightedProb> joint_values(const JointDistribution& d) {
    std::vector<WeightedProb> out;
    out.reserve(2 * d.size());
    for (const auto& a : d.atoms()) {
        out.push_back({a.p0, a.weight});
        out.push_back({a.p1, a.weight});
    }
    return out;
}

double chain_rule_residual(const JointDistribution& d, Order order, const EntropyOptions& opts) {
    EntropyOptions unconditional = opts;
    unconditional.normalization_tol = std::max(opts.normalization_tol, d.normalization_tol());
    const double h_cond = conditional_renyi(d, order, opts);
    const double h_y = renyi_entropy(output_marginal(d), order, unconditional);
    const double h_xy = renyi_entropy(joint_values(d), order, unconditional);
    return h_cond + h_y - h_xy;
}

double binary_entropy(double p) { return eta(p) + eta(1.0 - p); }

} // namespace polarlens
