#include "polarlens/joint_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polarlens/error.hpp"

namespace polarlens {

namespace {

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must lie in [0,1], got " << p;
        throw DomainError(msg.str());
    }
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::vector<JointAtom> merge_sorted(std::vector<JointAtom> atoms, std::optional<double> rel_tol) {
    std::sort(atoms.begin(), atoms.end(), [](const JointAtom& x, const JointAtom& y) {
        return x.p0 != y.p0 ? x.p0 < y.p0 : x.p1 < y.p1;
    });
    std::vector<JointAtom> out;
    out.reserve(atoms.size());
    if (!rel_tol) {
        for (const auto& a : atoms) {
            if (!out.empty() && out.back().p0 == a.p0 && out.back().p1 == a.p1)
                out.back().weight += a.weight;
            else
                out.push_back(a);
        }
        return out;
    }
    // Cluster against the first atom of each run; members collapse to the
    // weight-averaged pair so total mass is kept.
    std::size_t i = 0;
    while (i < atoms.size()) {
        const JointAtom& head = atoms[i];
        double w = 0.0, s0 = 0.0, s1 = 0.0;
        std::size_t j = i;
        for (; j < atoms.size(); ++j) {
            const JointAtom& a = atoms[j];
            if (!close_rel(a.p0, head.p0, *rel_tol) || !close_rel(a.p1, head.p1, *rel_tol)) break;
            w += a.weight;
            s0 += a.weight * a.p0;
            s1 += a.weight * a.p1;
        }
        out.push_back(j == i + 1 ? head : JointAtom{s0 / w, s1 / w, w});
        i = j;
    }
    return out;
}

} // namespace

JointDistribution::JointDistribution(std::vector<JointAtom> atoms, double normalization_tol)
    : tol_(normalization_tol) {
    if (!(normalization_tol >= 0.0))
        throw DomainError("normalization tolerance must be nonnegative");
    if (atoms.empty()) throw DomainError("a distribution needs at least one atom");
    atoms_.reserve(atoms.size());
    for (const auto& a : atoms) {
        if (!(a.p0 >= 0.0) || !(a.p1 >= 0.0) || !std::isfinite(a.p0) || !std::isfinite(a.p1))
            throw DomainError("atom entries must be finite and nonnegative");
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw DomainError("atom weights must be finite and positive");
        if (a.p0 == 0.0 && a.p1 == 0.0) continue;
        atoms_.push_back(a);
    }
    if (atoms_.empty()) throw NormalizationError("all atoms have zero mass");
    const double mass = total_mass();
    if (std::abs(mass - 1.0) > tol_) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "total mass " << mass << " differs from 1 by more than " << tol_;
        throw NormalizationError(msg.str());
    }
}

double JointDistribution::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight * a.mass();
    return m;
}

double JointDistribution::symbol_count() const {
    double w = 0.0;
    for (const auto& a : atoms_) w += a.weight;
    return w;
}

double JointDistribution::prior0() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight * a.p0;
    return m;
}

JointDistribution make_bsc(double crossover, double prior0) {
    require_probability(crossover, "crossover");
    require_probability(prior0, "prior0");
    const double q = 1.0 - prior0;
    return JointDistribution({{prior0 * (1.0 - crossover), q * crossover, 1.0},
                              {prior0 * crossover, q * (1.0 - crossover), 1.0}});
}

JointDistribution make_bec(double erasure, double prior0) {
    require_probability(erasure, "erasure");
    require_probability(prior0, "prior0");
    const double q = 1.0 - prior0;
    return JointDistribution({{prior0 * (1.0 - erasure), 0.0, 1.0},
                              {0.0, q * (1.0 - erasure), 1.0},
                              {prior0 * erasure, q * erasure, 1.0}});
}

JointDistribution make_from_atoms(std::span<const JointAtom> atoms, double normalization_tol) {
    return JointDistribution(std::vector<JointAtom>(atoms.begin(), atoms.end()), normalization_tol);
}

JointDistribution dedup(const JointDistribution& d, std::optional<double> merge_rel_tol) {
    std::vector<JointAtom> atoms(d.atoms().begin(), d.atoms().end());
    return JointDistribution(merge_sorted(std::move(atoms), merge_rel_tol), d.normalization_tol());
}

JointDistribution canonicalize_orientation(const JointDistribution& d,
                                           std::optional<double> merge_rel_tol) {
    std::vector<JointAtom> atoms;
    atoms.reserve(d.size());
    for (auto a : d.atoms()) {
        if (a.p0 < a.p1) std::swap(a.p0, a.p1);
        atoms.push_back(a);
    }
    return JointDistribution(merge_sorted(std::move(atoms), merge_rel_tol), d.normalization_tol());
}

} // namespace polarlens
