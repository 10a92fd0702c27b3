#include "polarlens/profile.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "polarlens/error.hpp"

namespace polarlens {

PolarizationProfile::PolarizationProfile(int level, std::vector<Order> orders,
                                         std::vector<std::vector<double>> entries)
    : level_(level), orders_(std::move(orders)), entries_(std::move(entries)) {
    if (entries_.size() != orders_.size()) throw DomainError("one entry column per order expected");
    for (const auto& col : entries_)
        if (col.size() != size()) throw DomainError("each column needs 2^level entries");
}

std::optional<std::size_t> PolarizationProfile::find_order(Order order) const {
    auto it = std::find(orders_.begin(), orders_.end(), order);
    if (it == orders_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - orders_.begin());
}

double PolarizationProfile::mean(std::size_t order_idx) const {
    const auto& col = entries_.at(order_idx);
    return std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
}

std::optional<std::vector<std::uint64_t>> PolarizationProfile::shannon_sorted_indices() const {
    const auto k = find_order(Order::one());
    if (!k) return std::nullopt;
    const auto& col = entries_[*k];
    std::vector<std::uint64_t> idx(col.size());
    std::iota(idx.begin(), idx.end(), std::uint64_t{1});
    std::stable_sort(idx.begin(), idx.end(),
                     [&col](std::uint64_t a, std::uint64_t b) { return col[a - 1] < col[b - 1]; });
    return idx;
}

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Atoms sharing a bitwise-identical posterior (q0, q1). For atom pairs
// (i, j) the minus entries are s_i s_j G0 and s_i s_j G1 with
// G0 = q0 q0' + q1 q1', G1 = q1 q0' + q0 q1', so any power sum over
// minus entries only needs per-group aggregates of w and s.
struct PosteriorGroups {
    std::vector<double> q0, q1;
    std::vector<double> weight_share; // Σ w / Σ_all w
    std::vector<double> mass;         // Σ w s
    std::vector<double> max_mass;     // max s
    std::vector<double> log_power;    // [g * K + k] = log2 Σ w s^α_k
    std::size_t size() const { return q0.size(); }
};

PosteriorGroups group_by_posterior(const JointDistribution& d, std::span<const double> alphas) {
    struct Keyed {
        double q0, q1, s, w;
    };
    std::vector<Keyed> rows;
    rows.reserve(d.size());
    for (const auto& a : d.atoms()) {
        const double s = a.mass();
        rows.push_back({a.p0 / s, a.p1 / s, s, a.weight});
    }
    std::sort(rows.begin(), rows.end(), [](const Keyed& x, const Keyed& y) {
        return x.q0 != y.q0 ? x.q0 < y.q0 : x.q1 < y.q1;
    });
    const double total_weight = d.symbol_count();
    const std::size_t K = alphas.size();
    PosteriorGroups g;
    std::vector<LogSumExp2> lse(K);
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        double w = 0.0, m = 0.0, mmax = 0.0;
        for (auto& acc : lse) acc = LogSumExp2{};
        for (; j < rows.size() && rows[j].q0 == rows[i].q0 && rows[j].q1 == rows[i].q1; ++j) {
            w += rows[j].w;
            m += rows[j].w * rows[j].s;
            mmax = std::max(mmax, rows[j].s);
            const double lw = std::log2(rows[j].w), ls = std::log2(rows[j].s);
            for (std::size_t k = 0; k < K; ++k) lse[k].add(lw + alphas[k] * ls);
        }
        g.q0.push_back(rows[i].q0);
        g.q1.push_back(rows[i].q1);
        g.weight_share.push_back(w / total_weight);
        g.mass.push_back(m);
        g.max_mass.push_back(mmax);
        for (std::size_t k = 0; k < K; ++k) g.log_power.push_back(lse[k].value());
        i = j;
    }
    return g;
}

// Order 0 with a positive support threshold: evaluate the thresholds on the
// actual child entries, pair by pair.
std::pair<double, double> thresholded_zero_order(const JointDistribution& d, double eps) {
    const double total = d.symbol_count();
    double minus_entries = 0, minus_symbols = 0, plus_entries = 0, plus_symbols = 0;
    for (const auto& x : d.atoms()) {
        for (const auto& y : d.atoms()) {
            const double w = (x.weight / total) * (y.weight / total);
            const double m0 = x.p0 * y.p0 + x.p1 * y.p1, m1 = x.p1 * y.p0 + x.p0 * y.p1;
            const double c[4] = {x.p0 * y.p0, x.p1 * y.p1, x.p1 * y.p0, x.p0 * y.p1};
            minus_entries += w * ((m0 > eps) + (m1 > eps));
            minus_symbols += w * (m0 > eps || m1 > eps);
            plus_entries += w * ((c[0] > eps) + (c[1] > eps) + (c[2] > eps) + (c[3] > eps));
            plus_symbols += w * ((c[0] > eps || c[1] > eps) + (c[2] > eps || c[3] > eps));
        }
    }
    if (minus_symbols == 0.0 || plus_symbols == 0.0)
        throw DomainError("no child entry exceeds the support threshold");
    return {std::log2(minus_entries / minus_symbols), std::log2(plus_entries / plus_symbols)};
}

} // namespace

ChildEntropies self_transform_entropies(const JointDistribution& parent, std::span<const Order> orders,
                                        const EntropyOptions& opts) {
    std::vector<double> alphas;
    bool want_one = false, want_zero = false, want_inf = false;
    for (const auto& o : orders) {
        switch (o.kind()) {
        case Order::Kind::Finite: alphas.push_back(o.alpha()); break;
        case Order::Kind::One: want_one = true; break;
        case Order::Kind::Zero: want_zero = true; break;
        case Order::Kind::Infinity: want_inf = true; break;
        }
    }
    const std::size_t K = alphas.size();
    const bool grouped_zero = want_zero && opts.support_eps == 0.0;
    const auto groups = group_by_posterior(parent, alphas);
    const std::size_t G = groups.size();

    std::vector<LogSumExp2> minus_numerator(K);
    double shannon = 0.0, missing_entries = 0.0, max_entry = 0.0;
    const bool need_logs = K > 0 || want_one;

    for (std::size_t g = 0; g < G; ++g) {
        const double q0g = groups.q0[g], q1g = groups.q1[g];
        const double* lpg = groups.log_power.data() + g * K;
        for (std::size_t h = g; h < G; ++h) {
            const double q0h = groups.q0[h], q1h = groups.q1[h];
            // Both orders of (g, h) give bitwise-identical G0, G1.
            const double mult = g == h ? 1.0 : 2.0;
            const double g0 = q0g * q0h + q1g * q1h;
            const double g1 = q1g * q0h + q0g * q1h;
            if (need_logs) {
                const double l0 = g0 > 0.0 ? std::log2(g0) : 0.0;
                const double l1 = g1 > 0.0 ? std::log2(g1) : 0.0;
                const double* lph = groups.log_power.data() + h * K;
                const double log_mult = g == h ? 0.0 : 1.0;
                for (std::size_t k = 0; k < K; ++k) {
                    const double base = lpg[k] + lph[k] + log_mult;
                    if (g0 > 0.0) minus_numerator[k].add(base + alphas[k] * l0);
                    if (g1 > 0.0) minus_numerator[k].add(base + alphas[k] * l1);
                }
                if (want_one) {
                    const double t = g0 + g1;
                    const double per_mass = xlog2x(t) - (g0 > 0.0 ? g0 * l0 : 0.0) - (g1 > 0.0 ? g1 * l1 : 0.0);
                    shannon += mult * groups.mass[g] * groups.mass[h] * per_mass;
                }
            }
            // Counting the missing entries keeps full support at exactly 2 per symbol.
            if (grouped_zero && (g0 == 0.0 || g1 == 0.0))
                missing_entries += mult * groups.weight_share[g] * groups.weight_share[h] * ((g0 == 0.0) + (g1 == 0.0));
            if (want_inf)
                max_entry = std::max(max_entry, groups.max_mass[g] * groups.max_mass[h] * std::max(g0, g1));
        }
    }

    ChildEntropies out;
    out.minus.reserve(orders.size());
    out.plus.reserve(orders.size());
    std::size_t k = 0;
    for (const auto& o : orders) {
        switch (o.kind()) {
        case Order::Kind::Finite: {
            const double a = alphas[k];
            const auto parent_sums = conditional_power_sums(parent, a);
            const double minus_num = minus_numerator[k].value();
            // minus: numerator over (m0, m1), denominator Σ (s s')^α = D².
            out.minus.push_back((minus_num - 2.0 * parent_sums.log_denominator) / (1.0 - a));
            // plus: numerator Σ (a_x b_x')^α = N², denominator Σ m^α = minus numerator.
            out.plus.push_back((2.0 * parent_sums.log_numerator - minus_num) / (1.0 - a));
            ++k;
            break;
        }
        case Order::Kind::One: {
            const double h = conditional_renyi(parent, Order::one());
            out.minus.push_back(shannon);
            out.plus.push_back(2.0 * h - shannon);
            break;
        }
        case Order::Kind::Zero: {
            if (!grouped_zero) {
                auto [m, p] = thresholded_zero_order(parent, opts.support_eps);
                out.minus.push_back(m);
                out.plus.push_back(p);
                break;
            }
            double missing = 0.0;
            const double total = parent.symbol_count();
            for (const auto& a : parent.atoms()) missing += (a.weight / total) * ((a.p0 == 0.0) + (a.p1 == 0.0));
            const double nonzero = 2.0 - missing;
            const double zero_entries = 2.0 - missing_entries;
            // Every minus symbol has positive mass, so the symbol share is 1.
            out.minus.push_back(std::log2(zero_entries));
            out.plus.push_back(std::log2(nonzero * nonzero / zero_entries));
            break;
        }
        case Order::Kind::Infinity: {
            double max_y = 0.0, max_xy = 0.0;
            for (const auto& a : parent.atoms()) {
                max_y = std::max(max_y, a.mass());
                max_xy = std::max({max_xy, a.p0, a.p1});
            }
            out.minus.push_back(std::log2(max_y * max_y / max_entry));
            out.plus.push_back(std::log2(max_entry / (max_xy * max_xy)));
            break;
        }
        }
    }
    // Binary input bounds every child entropy by [0, 1]; clip the rounding
    // residue left by near-deterministic children.
    for (auto* side : {&out.minus, &out.plus})
        for (double& h : *side) h = std::clamp(h, 0.0, 1.0);
    return out;
}

namespace {

class ProfileBuilder {
public:
    ProfileBuilder(int n, const std::vector<Order>& orders, const ProfileOptions& opts)
        : n_(n), orders_(orders), opts_(opts),
          topts_{opts.canonicalize, opts.atom_cap, opts.merge_rel_tol},
          entries_(orders.size(), std::vector<double>(std::size_t{1} << n)) {}

    // node sits at `depth` with 0-based position `pos`.
    void visit(const JointDistribution& node, int depth, std::uint64_t pos) {
        if (depth == n_ - 1) {
            EntropyOptions eopts;
            eopts.support_eps = opts_.support_eps;
            const auto children = self_transform_entropies(node, orders_, eopts);
            for (std::size_t k = 0; k < orders_.size(); ++k) {
                entries_[k][2 * pos] = children.minus[k];
                entries_[k][2 * pos + 1] = children.plus[k];
            }
            return;
        }
        auto children = transform_pair(node, node, topts_);
        visit(children.minus, depth + 1, 2 * pos);
        visit(children.plus, depth + 1, 2 * pos + 1);
    }

    void run(const JointDistribution& root, unsigned threads) {
        if (threads <= 1 || n_ < 2) {
            visit(root, 0, 0);
            return;
        }
        // Materialize a frontier wide enough to keep every worker busy.
        int split = 0;
        while ((1U << split) < 4 * threads && split < n_ - 1) ++split;
        std::vector<JointDistribution> frontier{root};
        for (int depth = 0; depth < split; ++depth) {
            std::vector<JointDistribution> next;
            next.reserve(2 * frontier.size());
            for (const auto& node : frontier) {
                auto children = transform_pair(node, node, topts_);
                next.push_back(std::move(children.minus));
                next.push_back(std::move(children.plus));
            }
            frontier = std::move(next);
        }
        std::atomic<std::size_t> next_task{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (std::size_t t = next_task++; t < frontier.size(); t = next_task++) {
                try {
                    visit(frontier[t], split, t);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next_task = frontier.size();
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        }
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<std::vector<double>> take() { return std::move(entries_); }

private:
    int n_;
    const std::vector<Order>& orders_;
    ProfileOptions opts_;
    TransformOptions topts_;
    std::vector<std::vector<double>> entries_;
};

} // namespace

PolarizationProfile level_profile(const JointDistribution& d, int n, const std::vector<Order>& orders,
                                  const ProfileOptions& opts) {
    if (n < 0) throw DomainError("level must be nonnegative");
    if (n > opts.max_level)
        throw CapacityError("level " + std::to_string(n) + " exceeds the configured maximum of " +
                            std::to_string(opts.max_level));
    if (orders.empty()) throw DomainError("at least one order is required");
    EntropyOptions eopts;
    eopts.support_eps = opts.support_eps;
    if (n == 0) {
        std::vector<std::vector<double>> entries;
        for (const auto& o : orders) entries.push_back({conditional_renyi(d, o, eopts)});
        return PolarizationProfile(0, orders, std::move(entries));
    }
    const JointDistribution root =
        opts.canonicalize ? canonicalize_orientation(d, opts.merge_rel_tol) : dedup(d, opts.merge_rel_tol);
    unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
    ProfileBuilder builder(n, orders, opts);
    builder.run(root, threads);
    return PolarizationProfile(n, orders, builder.take());
}

} // namespace polarlens
