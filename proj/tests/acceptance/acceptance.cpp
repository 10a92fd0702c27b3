// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polarlens/analysis.hpp"
#include "polarlens/oracle.hpp"
#include "polarlens/perturbation.hpp"
#include "polarlens/polar_transform.hpp"
#include "polarlens/profile.hpp"
#include "polarlens/renyi.hpp"
#include "polarlens/sampling.hpp"

using namespace polarlens;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s; // wall-clock budget; 0 = none
    std::function<Outcome()> run;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// BSC(0.2) profiles for n = 1..7 over the standard grid plus α = 1.001,
// shared by the level-average, max/min-entropy, trend and stability checks.
struct BscProfiles {
    std::vector<Order> orders;
    std::vector<PolarizationProfile> by_level; // index n - 1
    double level7_seconds = 0.0;

    std::size_t k(double alpha) const {
        const Order o = std::isinf(alpha) ? Order::infinity() : Order::of(alpha);
        return *by_level.front().find_order(o);
    }
    const PolarizationProfile& at(int n) const { return by_level.at(n - 1); }
};

const BscProfiles& bsc_profiles() {
    static const BscProfiles cache = [] {
        BscProfiles p;
        p.orders = standard_order_grid();
        p.orders.push_back(Order::of(1.001));
        const auto d = make_bsc(0.2);
        ProfileOptions opts;
        opts.threads = 1;
        for (int n = 1; n <= 7; ++n) {
            const auto start = std::chrono::steady_clock::now();
            p.by_level.push_back(level_profile(d, n, p.orders, opts));
            if (n == 7)
                p.level7_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        return p;
    }();
    return cache;
}

Outcome chain_rule() {
    Rng rng(1);
    const std::vector<Order> orders{Order::of(0.1), Order::of(0.5), Order::of(2), Order::of(10), Order::of(100)};
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto d = random_distribution(rng);
        for (const auto& o : orders) worst = std::max(worst, std::abs(chain_rule_residual(d, o)));
    }
    return {worst <= 1e-10, "max |residual| = " + fmt(worst) + " over 50 distributions x 5 orders"};
}

Outcome one_step_conservation() {
    const auto d = make_bsc(0.2);
    const auto tp = transform_pair(d, d);
    double worst = 0.0;
    for (const auto& o : experiment_orders())
        worst = std::max(worst, std::abs(conditional_renyi(tp.minus, o) + conditional_renyi(tp.plus, o) -
                                         2 * conditional_renyi(d, o)));
    const Order two = Order::of(2);
    const double hm = conditional_renyi(tp.minus, two), hp = conditional_renyi(tp.plus, two);
    const double h = conditional_renyi(d, two);
    const bool triple = std::abs(hm - 0.8242) <= 1e-3 && std::abs(hp - 0.2886) <= 1e-3 && std::abs(h - 0.5564) <= 1e-3;
    return {worst <= 1e-9 && triple, "max |H- + H+ - 2H| = " + fmt(worst) + "; alpha=2 triple (" + fmt(hm) + ", " +
                                         fmt(hp) + ", " + fmt(h) + ")"};
}

Outcome lemma1_inequalities() {
    Rng rng(3);
    const auto grid = standard_order_grid();
    std::size_t violations = 0, compound = 0;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto a = random_distribution(rng);
        const bool same = t % 4 == 0;
        const auto b = same ? a : random_distribution(rng);
        compound += !same;
        const auto r = lemma1_check(a, b, grid, 1e-12);
        violations += r.violations.size();
        worst = std::min(worst, r.worst_margin());
    }
    return {violations == 0, std::to_string(violations) + " violations over 1000 pairs (" + std::to_string(compound) +
                                 " compound) x 8 orders; worst margin " + fmt(worst)};
}

Outcome oracle_equivalence() {
    const auto grid = standard_order_grid();
    double worst = 0.0;
    auto compare = [&](const JointDistribution& d, int n) {
        const auto engine = level_profile(d, n, grid);
        const auto truth = oracle::brute_force_profile(d, n, grid);
        for (std::size_t k = 0; k < grid.size(); ++k)
            for (std::uint64_t i = 1; i <= engine.size(); ++i)
                worst = std::max(worst, std::abs(engine.entropy(k, i) - truth.entropy(k, i)));
    };
    const auto bsc = make_bsc(0.2);
    compare(bsc, 2);
    compare(bsc, 3);
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        compare(random_distribution(rng, {2, 8}), 2);
        compare(random_distribution(rng, {2, 3}), 3);
    }
    return {worst <= 1e-9, "max |engine - brute force| = " + fmt(worst) + " (BSC(0.2) + 20 random parents, n=2,3)"};
}

Outcome level_average() {
    const auto& p = bsc_profiles();
    const auto d = make_bsc(0.2);
    double worst = 0.0;
    for (const auto& o : experiment_orders()) {
        const double root = conditional_renyi(d, o);
        for (int n = 1; n <= 7; ++n) worst = std::max(worst, std::abs(p.at(n).mean(p.k(o.alpha())) - root));
    }
    const bool fast = p.level7_seconds <= 300.0;
    return {worst <= 1e-6 && fast,
            "max |mean - root| = " + fmt(worst) + " for n<=7; n=7 profile took " + fmt(p.level7_seconds) + " s"};
}

Outcome max_and_min_entropy() {
    const auto& p = bsc_profiles();
    double worst0 = 0.0;
    for (int n = 1; n <= 7; ++n)
        for (double h : p.at(n).column(p.k(0.0))) worst0 = std::max(worst0, std::abs(h - 1.0));
    const auto d = make_bsc(0.2);
    const double hinf = conditional_renyi(d, Order::infinity());
    const double mean100 = std::abs(p.at(7).mean(p.k(100.0)) - conditional_renyi(d, Order::of(100)));
    const bool ok = worst0 <= 1e-12 && std::abs(hinf - std::log2(1.25)) <= 1e-12 && mean100 <= 1e-6;
    return {ok, "max |H0 - 1| = " + fmt(worst0) + "; H_inf = " + fmt(hinf) + "; n=7 alpha=100 mean error " +
                    fmt(mean100)};
}

Outcome polarization_trend() {
    const auto& p = bsc_profiles();
    bool monotone = true;
    std::ostringstream detail;
    for (double a : {0.5, 1.0, 2.0}) {
        double high = -1.0, low = -1.0;
        detail << "alpha=" << a << " high/low:";
        for (int n = 4; n <= 7; ++n) {
            const auto f = extremal_fractions(p.at(n), 0.1)[p.k(a)];
            monotone = monotone && f.frac_high >= high && f.frac_low >= low;
            high = f.frac_high;
            low = f.frac_low;
            detail << ' ' << f.frac_high << '/' << f.frac_low;
        }
        detail << "; ";
    }
    std::set<std::uint64_t> a01, a100;
    const auto& p7 = p.at(7);
    for (std::uint64_t i = 1; i <= p7.size(); ++i) {
        if (p7.entropy(p.k(0.1), i) > 0.5) a01.insert(i);
        if (p7.entropy(p.k(100.0), i) > 0.5) a100.insert(i);
    }
    std::vector<std::uint64_t> sym;
    std::set_symmetric_difference(a01.begin(), a01.end(), a100.begin(), a100.end(), std::back_inserter(sym));
    detail << "|{H>0.5}| alpha=0.1: " << a01.size() << ", alpha=100: " << a100.size()
           << ", symmetric difference " << sym.size();
    return {monotone && !sym.empty(), detail.str()};
}

Outcome extreme_example() {
    bool inc = true, dec = true;
    double prev2 = -1.0, prev3 = 2.0, worst = 0.0;
    for (int n = 8; n <= 28; ++n) {
        const ExtremeExampleParams params(2.0, n);
        const auto d = extreme_example_distribution(params);
        for (double a : {0.5, 2.0, 3.0, 10.0})
            worst = std::max(worst, std::abs(extreme_example_closed_form(params, a) - conditional_renyi(d, Order::of(a))));
        const double h2 = extreme_example_closed_form(params, 2.0), h3 = extreme_example_closed_form(params, 3.0);
        inc = inc && h2 > prev2;
        dec = dec && h3 < prev3;
        prev2 = h2;
        prev3 = h3;
    }
    const ExtremeExampleParams spot(2.0, 16);
    const double h2 = extreme_example_closed_form(spot, 2.0), h3 = extreme_example_closed_form(spot, 3.0);
    const bool spots = std::abs(h2 - 0.7338) <= 1e-3 && std::abs(h3 - 0.3460) <= 1e-3;
    return {inc && dec && worst <= 1e-9 && spots,
            std::string("H2 increasing: ") + (inc ? "yes" : "no") + ", H3 decreasing: " + (dec ? "yes" : "no") +
                "; max |closed - direct| = " + fmt(worst) + "; N-1=15: H2 = " + fmt(h2) + ", H3 = " + fmt(h3)};
}

Outcome perturbation() {
    const PerturbationSpec u2{PerturbationSpec::Mode::Uniform, std::vector<double>(4, 0.25), std::vector<double>(4, 0.01),
                              2.0};
    const auto c2 = compare_perturbation(u2);
    const bool exact2 = c2.rel_error <= 1e-12 && std::abs(c2.exact - 4 * 0.01 * 0.01 / (0.25 * 0.25)) <= 1e-15;

    PerturbationSpec u3 = u2;
    u3.alpha = 3.0;
    std::vector<double> errors;
    for (int h = 0; h <= 5; ++h) errors.push_back(compare_perturbation(u3.scaled(std::ldexp(1.0, -h))).rel_error);
    bool monotone = true;
    for (std::size_t h = 1; h < errors.size(); ++h) monotone = monotone && errors[h] <= errors[h - 1];

    const PerturbationSpec det{PerturbationSpec::Mode::Deterministic, {0.5, 0.5}, {1e-4, 1e-4}, 0.5};
    const auto cd = compare_perturbation(det);
    const bool det_ok = cd.rel_error <= 1e-6 && std::abs(cd.exact - 0.014042) <= 1e-6;

    std::string errs;
    for (double e : errors) errs += (errs.empty() ? "" : ", ") + fmt(e);
    return {exact2 && monotone && det_ok, "alpha=2 rel error " + fmt(c2.rel_error) + "; alpha=3 rel errors [" + errs +
                                              "]; deterministic exact " + fmt(cd.exact) + " approx " +
                                              fmt(cd.approx) + " rel " + fmt(cd.rel_error)};
}

Outcome numerical_stability() {
    const auto& p = bsc_profiles();
    bool in_range = true;
    for (double h : p.at(7).column(p.k(100.0))) in_range = in_range && std::isfinite(h) && h >= 0.0 && h <= 1.0;
    const auto d = make_bsc(0.2);
    const double root_gap = std::abs(conditional_renyi(d, Order::of(1.001)) - conditional_renyi(d, Order::one()));
    double level_gap = 0.0;
    for (std::uint64_t i = 1; i <= p.at(7).size(); ++i)
        level_gap = std::max(level_gap, std::abs(p.at(7).entropy(p.k(1.001), i) - p.at(7).entropy(p.k(1.0), i)));
    return {in_range && root_gap <= 1e-3,
            std::string("alpha=100 entries at n=7 finite in [0,1]: ") + (in_range ? "yes" : "no") +
                "; |H_1.001 - H_1| = " + fmt(root_gap) + " (root), max " + fmt(level_gap) + " over n=7"};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "chain-rule identity", 1.0, chain_rule},
        {2, "one-step conservation", 1.0, one_step_conservation},
        {3, "minus/plus inequalities", 30.0, lemma1_inequalities},
        {4, "oracle equivalence", 60.0, oracle_equivalence},
        {5, "level-average identity", 0.0, level_average},
        {6, "max-/min-entropy endpoints", 0.0, max_and_min_entropy},
        {7, "order-dependent polarization trend", 0.0, polarization_trend},
        {8, "two-class construction sweep", 1.0, extreme_example},
        {9, "perturbation approximations", 1.0, perturbation},
        {10, "numerical stability", 0.0, numerical_stability},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget_s == 0.0 || secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("[%s] %2d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                    secs, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
