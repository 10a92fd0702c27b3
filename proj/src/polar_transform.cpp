#include "polarlens/polar_transform.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include "polarlens/error.hpp"
#include "polarlens/renyi.hpp"

namespace polarlens {

namespace {

using PairKey = std::pair<std::uint64_t, std::uint64_t>;

// Bitwise multiset accumulator for child atoms.
class AtomAccumulator {
public:
    AtomAccumulator(bool canonicalize, std::size_t cap, std::size_t hint)
        : canonicalize_(canonicalize), cap_(cap) {
        map_.reserve(std::min(hint, cap));
    }

    void add(double p0, double p1, double w) {
        if (p0 == 0.0 && p1 == 0.0) return;
        if (canonicalize_ && p0 < p1) std::swap(p0, p1);
        auto [it, inserted] =
            map_.try_emplace(PairKey{std::bit_cast<std::uint64_t>(p0), std::bit_cast<std::uint64_t>(p1)}, 0.0);
        it->second += w;
        if (inserted && map_.size() > cap_) {
            std::ostringstream msg;
            msg << "child distribution exceeds the atom cap of " << cap_;
            throw CapacityError(msg.str());
        }
    }

    JointDistribution finish(double tol, std::optional<double> merge_rel_tol) {
        std::vector<JointAtom> atoms;
        atoms.reserve(map_.size());
        for (const auto& [key, w] : map_)
            atoms.push_back({std::bit_cast<double>(key.first), std::bit_cast<double>(key.second), w});
        map_.clear();
        // dedup() sorts into canonical order, so the hash iteration order never leaks out.
        return dedup(JointDistribution(std::move(atoms), tol), merge_rel_tol);
    }

private:
    bool canonicalize_;
    std::size_t cap_;
    absl::flat_hash_map<PairKey, double> map_;
};

double child_tolerance(const JointDistribution& a, const JointDistribution& b) {
    return std::max(a.normalization_tol(), b.normalization_tol());
}

} // namespace

TransformPair transform_pair(const JointDistribution& a, const JointDistribution& b,
                             const TransformOptions& opts) {
    const std::size_t pairs = a.size() * b.size();
    AtomAccumulator minus(opts.canonicalize, opts.atom_cap, pairs);
    AtomAccumulator plus(opts.canonicalize, opts.atom_cap, 2 * pairs);
    for (const auto& x : a.atoms()) {
        for (const auto& y : b.atoms()) {
            const double w = x.weight * y.weight;
            // u1 = x1 ⊕ x2 with y1, y2 observed; u2 = x2 marginalized.
            minus.add(x.p0 * y.p0 + x.p1 * y.p1, x.p1 * y.p0 + x.p0 * y.p1, w);
            // u1 observed: u1 = 0 pairs (x1,x2) = (0,0),(1,1); u1 = 1 pairs (1,0),(0,1).
            plus.add(x.p0 * y.p0, x.p1 * y.p1, w);
            plus.add(x.p1 * y.p0, x.p0 * y.p1, w);
        }
    }
    const double tol = child_tolerance(a, b);
    auto m = minus.finish(tol, opts.merge_rel_tol);
    auto p = plus.finish(tol, opts.merge_rel_tol);
    return {std::move(m), std::move(p)};
}

SubchannelIndex::SubchannelIndex(int level, std::uint64_t index) : level_(level), index_(index) {
    if (level < 0 || level > 62) throw DomainError("sub-channel level must lie in [0, 62]");
    if (index < 1 || index > (std::uint64_t{1} << level))
        throw DomainError("sub-channel index must lie in [1, 2^level]");
}

std::vector<bool> SubchannelIndex::path() const {
    std::vector<bool> bits(static_cast<std::size_t>(level_));
    const std::uint64_t v = index_ - 1;
    for (int k = 0; k < level_; ++k) bits[static_cast<std::size_t>(k)] = (v >> (level_ - 1 - k)) & 1U;
    return bits;
}

JointDistribution synthesize(const JointDistribution& d, const SubchannelIndex& idx,
                             const SynthesisOptions& opts) {
    const TransformOptions topts{opts.canonicalize, opts.atom_cap, opts.merge_rel_tol};
    JointDistribution node = opts.canonicalize ? canonicalize_orientation(d, opts.merge_rel_tol)
                                               : dedup(d, opts.merge_rel_tol);
    for (bool plus : idx.path()) {
        auto children = transform_pair(node, node, topts);
        node = plus ? std::move(children.plus) : std::move(children.minus);
    }
    return node;
}

SQuantities s_quantities(const JointDistribution& a, const JointDistribution& b, double alpha) {
    if (!(alpha > 0.0) || std::isinf(alpha) || std::abs(alpha - 1.0) <= Order::kOneBand)
        throw DomainError("S-quantities need a finite order α > 0, α ≠ 1");
    LogSumExp2 s1, s2, s3, s4;
    auto add_power = [alpha](LogSumExp2& acc, double log_w, double v) {
        if (v > 0.0) acc.add(log_w + alpha * std::log2(v));
    };
    for (const auto& x : a.atoms()) {
        const double px[2] = {x.p0, x.p1};
        for (const auto& y : b.atoms()) {
            const double py[2] = {y.p0, y.p1};
            const double log_w = std::log2(x.weight) + std::log2(y.weight);
            double pa[2][2]; // pa[u1][u2]
            for (int u1 = 0; u1 < 2; ++u1)
                for (int u2 = 0; u2 < 2; ++u2) pa[u1][u2] = px[u1 ^ u2] * py[u2];
            add_power(s1, log_w, pa[0][0] + pa[0][1] + pa[1][0] + pa[1][1]);
            for (int u1 = 0; u1 < 2; ++u1) add_power(s2, log_w, pa[u1][0] + pa[u1][1]);
            for (int u1 = 0; u1 < 2; ++u1)
                for (int u2 = 0; u2 < 2; ++u2) add_power(s3, log_w, pa[u1][u2]);
            if (x.mass() > 0.0) {
                for (int v = 0; v < 2; ++v)
                    if (py[v] > 0.0) s4.add(log_w + alpha * (std::log2(x.mass()) + std::log2(py[v])));
            }
        }
    }
    return {alpha, s1.value(), s2.value(), s3.value(), s4.value()};
}

double Lemma1Report::worst_margin() const {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& e : entries)
        worst = std::min({worst, e.minus_margin, e.plus_margin, -std::abs(e.chain_residual)});
    return worst;
}

Lemma1Report lemma1_check(const JointDistribution& a, const JointDistribution& b,
                          const std::vector<Order>& orders, double slack) {
    Lemma1Report report{slack, {}, {}};
    const auto children = transform_pair(a, b);
    for (const Order& order : orders) {
        Lemma1Entry e{order, 0, 0, 0, 0, 0, 0, 0, true};
        e.h_a = conditional_renyi(a, order);
        e.h_b = conditional_renyi(b, order);
        e.h_minus = conditional_renyi(children.minus, order);
        e.h_plus = conditional_renyi(children.plus, order);
        e.minus_margin = e.h_minus - std::max(e.h_a, e.h_b);
        e.plus_margin = std::min(e.h_a, e.h_b) - e.h_plus;
        e.chain_residual = e.h_minus + e.h_plus - (e.h_a + e.h_b);
        if (order.is_finite()) {
            const auto s = s_quantities(a, b, order.alpha());
            // Compare in the log domain; a relative slack absorbs rounding at equality.
            const double gap = s.log_s2 - s.log_s4;
            e.minkowski_consistent = order.alpha() < 1.0 ? gap >= -slack : gap <= slack;
        }
        auto flag = [&](const char* what, double value) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "order " << order.str() << ": " << what << " (" << value << ")";
            report.violations.push_back(msg.str());
        };
        if (e.minus_margin < -slack) flag("minus below max of parents", e.minus_margin);
        if (e.plus_margin < -slack) flag("plus above min of parents", e.plus_margin);
        if (std::abs(e.chain_residual) > slack) flag("chain equality broken", e.chain_residual);
        if (!e.minkowski_consistent) flag("S2/S4 ordering contradicts the Minkowski step", 0.0);
        report.entries.push_back(e);
    }
    return report;
}

} // namespace polarlens
