#include "polarlens/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polarlens/error.hpp"
#include "polarlens/renyi.hpp"

namespace polarlens {

namespace {

std::vector<ExtremalFractions> fractions_with(const PolarizationProfile& profile, double delta,
                                              const std::vector<double>& predicted) {
    if (!(delta > 0.0 && delta < 0.5)) throw DomainError("extremal band must satisfy 0 < delta < 0.5");
    std::vector<ExtremalFractions> out;
    const double count = static_cast<double>(profile.size());
    for (std::size_t k = 0; k < profile.orders().size(); ++k) {
        std::uint64_t high = 0, low = 0;
        for (double h : profile.column(k)) {
            if (h > 1.0 - delta) ++high;
            if (h < delta) ++low;
        }
        out.push_back({profile.orders()[k], static_cast<double>(high) / count, static_cast<double>(low) / count,
                       predicted[k], 1.0 - predicted[k]});
    }
    return out;
}

void require_finite_alpha(double alpha) {
    if (!(alpha > 0.0) || std::isinf(alpha) || std::abs(alpha - 1.0) <= Order::kOneBand)
        throw DomainError("order must be finite, positive and different from 1");
}

} // namespace

std::vector<ExtremalFractions> extremal_fractions(const PolarizationProfile& profile, double delta) {
    std::vector<double> predicted;
    for (std::size_t k = 0; k < profile.orders().size(); ++k) predicted.push_back(profile.mean(k));
    return fractions_with(profile, delta, predicted);
}

std::vector<ExtremalFractions> extremal_fractions(const PolarizationProfile& profile, double delta,
                                                  const JointDistribution& root) {
    std::vector<double> predicted;
    for (const Order& o : profile.orders()) predicted.push_back(conditional_renyi(root, o));
    return fractions_with(profile, delta, predicted);
}

ExtremeExampleParams::ExtremeExampleParams(double alpha0, int n) : alpha0_(alpha0), n_(n) {
    if (!(alpha0 > 1.0) || std::isinf(alpha0)) throw DomainError("alpha0 must be finite and > 1");
    if (n < 2) throw DomainError("N must be at least 2");
    const double exponent = (alpha0 - 0.5 / alpha0) / (alpha0 - 1.0);
    l_minus_one_ = 0.5 * std::pow(static_cast<double>(n - 1), exponent);
}

double ExtremeExampleParams::m() const { return std::ldexp(1.0, n_); }

double extreme_example_closed_form(const ExtremeExampleParams& params, double alpha) {
    require_finite_alpha(alpha);
    const double log_l1 = std::log2(params.l_minus_one());
    const double log_n1 = std::log2(static_cast<double>(params.n() - 1));
    LogSumExp2 num, den;
    num.add((alpha - 1.0) * log_l1);
    num.add((1.0 - alpha) + alpha * log_n1);
    den.add((alpha - 1.0) * log_l1);
    den.add(alpha * log_n1);
    return (num.value() - den.value()) / (1.0 - alpha);
}

JointDistribution extreme_example_distribution(const ExtremeExampleParams& params) {
    const double n = params.n(), m = params.m(), l = params.l(), l1 = params.l_minus_one();
    const double deterministic = l / (n * m);
    const double uniform = (n - 1.0) * l / (2.0 * n * m * l1);
    std::vector<JointAtom> atoms{{deterministic, 0.0, m / l}, {uniform, uniform, m * l1 / l}};
    return dedup(JointDistribution(std::move(atoms)));
}

EffectiveSet effective_set(const JointDistribution& d, double alpha, double epsilon) {
    require_finite_alpha(alpha);
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must satisfy 0 < epsilon < 1");

    const auto atoms = d.atoms();
    std::vector<double> log_num(atoms.size()), log_den(atoms.size());
    LogSumExp2 num_total, den_total;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        const auto& a = atoms[j];
        const double lw = std::log2(a.weight);
        LogSumExp2 pair;
        if (a.p0 > 0.0) pair.add(alpha * std::log2(a.p0));
        if (a.p1 > 0.0) pair.add(alpha * std::log2(a.p1));
        log_num[j] = lw + pair.value();
        log_den[j] = lw + alpha * std::log2(a.mass());
        num_total.add(log_num[j]);
        den_total.add(log_den[j]);
    }
    std::vector<double> num_share(atoms.size()), den_share(atoms.size());
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        num_share[j] = std::exp2(log_num[j] - num_total.value());
        den_share[j] = std::exp2(log_den[j] - den_total.value());
    }

    std::vector<std::size_t> rank(atoms.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
        return num_share[a] + den_share[a] > num_share[b] + den_share[b];
    });

    EffectiveSet out{alpha, epsilon, {}, 0.0, 0.0, 0.0, 0.0};
    LogSumExp2 sub_num, sub_den;
    for (std::size_t j : rank) {
        out.atoms.push_back(j);
        out.numerator_share += num_share[j];
        out.denominator_share += den_share[j];
        sub_num.add(log_num[j]);
        sub_den.add(log_den[j]);
        if (out.numerator_share > 1.0 - epsilon && out.denominator_share > 1.0 - epsilon) break;
    }
    // Renormalizing the subset's mass scales both sums by the same c^α.
    out.subset_entropy = (sub_num.value() - sub_den.value()) / (1.0 - alpha);
    out.full_entropy = (num_total.value() - den_total.value()) / (1.0 - alpha);
    return out;
}

} // namespace polarlens
