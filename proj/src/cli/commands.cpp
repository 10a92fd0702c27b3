#include "polarlens/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "polarlens/analysis.hpp"
#include "polarlens/error.hpp"
#include "polarlens/io.hpp"
#include "polarlens/oracle.hpp"
#include "polarlens/order.hpp"
#include "polarlens/perturbation.hpp"
#include "polarlens/profile.hpp"
#include "polarlens/renyi.hpp"
#include "polarlens/sampling.hpp"

namespace polarlens::cli {

namespace {

// ---- tabular output ---------------------------------------------------------

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return v;
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return std::to_string(v);
        },
        c);
}

nlohmann::json cell_json(const Cell& c) {
    return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

// CSV: one header + rows per table, tables separated by a blank line.
// JSON: {"<table name>": [{column: value, ...}, ...], ...}.
void write_tables(std::ostream& out, Format format, const std::vector<Table>& tables) {
    if (format == Format::Json) {
        nlohmann::json doc = nlohmann::json::object();
        for (const auto& t : tables) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : t.rows) {
                nlohmann::json row = nlohmann::json::object();
                for (std::size_t c = 0; c < t.header.size(); ++c) row[t.header[c]] = cell_json(r[c]);
                rows.push_back(std::move(row));
            }
            doc[t.name] = std::move(rows);
        }
        out << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t k = 0; k < tables.size(); ++k) {
        const auto& t = tables[k];
        if (k) out << '\n';
        for (std::size_t c = 0; c < t.header.size(); ++c) out << (c ? "," : "") << t.header[c];
        out << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << cell_text(r[c]);
            out << '\n';
        }
    }
}

// Writes to cfg.out when set, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::vector<Table>& tables) {
    if (cfg.out.empty()) {
        write_tables(out, cfg.format, tables);
        return;
    }
    std::ofstream file(cfg.out);
    if (!file) throw ParseError("cannot write " + cfg.out);
    write_tables(file, cfg.format, tables);
}

double parse_number(std::string_view text, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
    return v;
}

std::vector<Order> orders_or(const RunConfig& cfg, std::vector<Order> fallback) {
    return cfg.alpha.empty() ? fallback : parse_orders(cfg.alpha);
}

ProfileOptions profile_options(const RunConfig& cfg) {
    ProfileOptions opts;
    opts.atom_cap = cfg.atom_cap;
    if (cfg.merge_tol) opts.merge_rel_tol = kDefaultMergeRelTol;
    opts.threads = effective_threads(cfg.threads);
    return opts;
}

// ---- verify suites ----------------------------------------------------------

struct SuiteResult {
    std::int64_t checks = 0;
    std::int64_t violations = 0;
    double worst = 0.0;    // largest deviation (or most negative margin) observed
    double threshold = 0.0;
    std::vector<std::string> notes;
};

void record(SuiteResult& r, double deviation, const std::string& what) {
    ++r.checks;
    r.worst = std::max(r.worst, deviation);
    if (!(deviation <= r.threshold)) {
        ++r.violations;
        if (r.notes.size() < 10) r.notes.push_back(what + " deviation " + format_double(deviation));
    }
}

SuiteResult suite_chain(const VerifyConfig& v, Rng& rng) {
    SuiteResult r;
    r.threshold = 1e-10;
    const std::vector<Order> orders{Order::of(0.1), Order::of(0.5), Order::one(), Order::of(2),
                                    Order::of(10),  Order::of(100)};
    for (std::size_t t = 0; t < v.trials; ++t) {
        const auto d = random_distribution(rng);
        for (const auto& o : orders)
            record(r, std::abs(chain_rule_residual(d, o)), "trial " + std::to_string(t) + " alpha " + o.str());
    }
    return r;
}

SuiteResult suite_lemma1(const VerifyConfig& v, Rng& rng) {
    SuiteResult r;
    r.threshold = 1e-12;
    const auto grid = standard_order_grid();
    for (std::size_t t = 0; t < v.trials; ++t) {
        const auto a = random_distribution(rng);
        // Every fourth pair is identical; the rest exercise the compound setting.
        const auto b = t % 4 == 0 ? a : random_distribution(rng);
        const auto report = lemma1_check(a, b, grid, r.threshold);
        r.checks += static_cast<std::int64_t>(report.entries.size());
        r.worst = std::max(r.worst, -report.worst_margin());
        r.violations += static_cast<std::int64_t>(report.violations.size());
        for (const auto& msg : report.violations)
            if (r.notes.size() < 10) r.notes.push_back("trial " + std::to_string(t) + ": " + msg);
    }
    return r;
}

SuiteResult suite_martingale(const RunConfig& cfg, const VerifyConfig& v, Rng& rng) {
    SuiteResult r;
    r.threshold = 1e-6;
    const auto grid = standard_order_grid();
    const int n = std::clamp(cfg.n, 1, 3);
    auto check = [&](const JointDistribution& d, int level, const std::string& label) {
        const auto profile = level_profile(d, level, grid, profile_options(cfg));
        for (std::size_t k = 0; k < grid.size(); ++k)
            record(r, std::abs(profile.mean(k) - conditional_renyi(d, grid[k])),
                   label + " n=" + std::to_string(level) + " alpha " + grid[k].str());
    };
    check(make_bsc(0.2), 5, "bsc:0.2");
    for (std::size_t t = 0; t < v.trials; ++t)
        check(random_distribution(rng, {2, 4}), n, "trial " + std::to_string(t));
    return r;
}

SuiteResult suite_oracle(const RunConfig& cfg, const VerifyConfig& v, Rng& rng) {
    SuiteResult r;
    r.threshold = 1e-9;
    const auto grid = standard_order_grid();
    auto compare = [&](const JointDistribution& d, int level, const std::string& label) {
        const auto engine = level_profile(d, level, grid, profile_options(cfg));
        const auto truth = oracle::brute_force_profile(d, level, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            double worst = 0.0;
            for (std::uint64_t i = 1; i <= engine.size(); ++i)
                worst = std::max(worst, std::abs(engine.entropy(k, i) - truth.entropy(k, i)));
            record(r, worst, label + " n=" + std::to_string(level) + " alpha " + grid[k].str());
        }
    };
    const auto bsc = make_bsc(0.2);
    compare(bsc, 2, "bsc:0.2");
    compare(bsc, 3, "bsc:0.2");
    // The oracle enumerates (2|Y|)^N states, so depth-3 parents stay small.
    for (std::size_t t = 0; t < v.trials; ++t) {
        compare(random_distribution(rng, {2, 8}), 2, "trial " + std::to_string(t));
        compare(random_distribution(rng, {2, 3}), 3, "trial " + std::to_string(t));
    }
    return r;
}

SuiteResult suite_minkowski(const VerifyConfig& v, Rng& rng) {
    SuiteResult r;
    r.threshold = 1e-12;
    std::uniform_int_distribution<std::size_t> len(1, 8);
    std::uniform_real_distribution<double> log_p(std::log(0.05), std::log(20.0));
    std::uniform_real_distribution<double> scale(0.0, 5.0);
    for (std::size_t t = 0; t < v.trials; ++t) {
        const std::size_t k = len(rng);
        const double p = std::exp(log_p(rng));
        auto x = random_nonnegative_vector(rng, k);
        const auto y = random_nonnegative_vector(rng, k);
        const bool dependent = t % 10 == 0;
        if (dependent) {
            const double lambda = scale(rng);
            for (std::size_t j = 0; j < k; ++j) x[j] = lambda * y[j];
        }
        const auto rep = oracle::minkowski_check(x, y, p);
        const std::string label = "trial " + std::to_string(t) + " p " + format_double(p);
        record(r, std::max(0.0, -rep.slack), label);
        // Equality must be reported for positively dependent inputs.
        if (dependent) record(r, rep.equality ? 0.0 : std::abs(rep.slack), label + " equality");
    }
    return r;
}

} // namespace

// ---- shared helpers ---------------------------------------------------------

JointDistribution parse_channel(const std::string& spec, std::optional<double> prior0) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("channel must be bsc:p, bec:e or file:PATH");
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "bsc") return make_bsc(parse_number(arg, "crossover"), prior0.value_or(0.5));
    if (kind == "bec") return make_bec(parse_number(arg, "erasure"), prior0.value_or(0.5));
    if (kind == "file") {
        if (prior0) throw ParseError("--prior0 does not apply to file channels");
        return load_distribution(arg);
    }
    throw ParseError("unknown channel kind '" + kind + "'");
}

unsigned effective_threads(unsigned requested) {
    unsigned n = requested ? requested : std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("POLARLENS_THREADS")) {
        unsigned cap = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
    }
    return n;
}

// ---- commands ---------------------------------------------------------------

int cmd_polarize(const RunConfig& cfg, std::ostream& out) {
    const auto d = parse_channel(cfg.channel, cfg.prior0);
    const auto orders = orders_or(cfg, experiment_orders());
    const auto profile = level_profile(d, cfg.n, orders, profile_options(cfg));

    Table rows{"profile", {"n", "index", "alpha", "entropy"}, {}};
    std::vector<std::int64_t> rank;
    if (cfg.sort_shannon) {
        const auto sorted = profile.shannon_sorted_indices();
        if (!sorted) throw ParseError("--sort-shannon needs order 1 in --alpha");
        rows.header.push_back("shannon_rank");
        rank.resize(profile.size());
        for (std::size_t r = 0; r < sorted->size(); ++r) rank[(*sorted)[r] - 1] = static_cast<std::int64_t>(r + 1);
    }
    for (std::uint64_t i = 1; i <= profile.size(); ++i)
        for (std::size_t k = 0; k < orders.size(); ++k) {
            std::vector<Cell> row{std::int64_t{cfg.n}, static_cast<std::int64_t>(i), orders[k].str(),
                                  profile.entropy(k, i)};
            if (cfg.sort_shannon) row.emplace_back(rank[i - 1]);
            rows.rows.push_back(std::move(row));
        }

    Table summary{"summary",
                  {"alpha", "delta", "level_mean", "root_entropy", "frac_high", "frac_low", "predicted_high",
                   "predicted_low"},
                  {}};
    for (double delta : cfg.deltas) {
        const auto fr = extremal_fractions(profile, delta, d);
        for (std::size_t k = 0; k < fr.size(); ++k)
            summary.rows.push_back({orders[k].str(), delta, profile.mean(k), fr[k].predicted_high, fr[k].frac_high,
                                    fr[k].frac_low, fr[k].predicted_high, fr[k].predicted_low});
    }
    emit(cfg, out, {rows, summary});
    return kExitPass;
}

int cmd_verify(const RunConfig& cfg, const VerifyConfig& v, std::ostream& out) {
    Rng rng(cfg.seed);
    SuiteResult r;
    if (v.suite == "chain") r = suite_chain(v, rng);
    else if (v.suite == "lemma1") r = suite_lemma1(v, rng);
    else if (v.suite == "martingale") r = suite_martingale(cfg, v, rng);
    else if (v.suite == "oracle") r = suite_oracle(cfg, v, rng);
    else if (v.suite == "minkowski") r = suite_minkowski(v, rng);
    else throw ParseError("unknown suite '" + v.suite + "'");

    Table report{"report", {"suite", "trials", "seed", "checks", "violations", "worst", "threshold", "status"}, {}};
    report.rows.push_back({v.suite, static_cast<std::int64_t>(v.trials), std::to_string(cfg.seed), r.checks,
                           r.violations, r.worst, r.threshold, std::string(r.violations ? "FAIL" : "PASS")});
    Table notes{"violations", {"detail"}, {}};
    for (const auto& n : r.notes) notes.rows.push_back({n});
    std::vector<Table> tables{report};
    if (!notes.rows.empty()) tables.push_back(notes);
    emit(cfg, out, tables);
    return r.violations ? kExitViolation : kExitPass;
}

int cmd_example_extreme(const RunConfig& cfg, const ExtremeConfig& e, std::ostream& out) {
    if (!(e.alpha0 > 1.0)) throw DomainError("--alpha0 must be greater than 1");
    if (e.n_min < 2 || e.n_min >= e.n_max) throw DomainError("need 2 <= --nmin < --nmax");
    std::vector<Order> orders = cfg.alpha.empty()
                                    ? std::vector<Order>{Order::of(e.alpha0), Order::of(e.alpha0 + 1.0)}
                                    : parse_orders(cfg.alpha);
    constexpr double kAgreeTol = 1e-9;
    Table t{"example_extreme", {"N", "alpha", "closed_form", "direct_eval", "abs_diff", "agree"}, {}};
    bool all_agree = true;
    for (int n = e.n_min; n <= e.n_max; ++n) {
        const ExtremeExampleParams params(e.alpha0, n);
        const auto d = extreme_example_distribution(params);
        for (const auto& o : orders) {
            if (!o.is_finite()) throw DomainError("closed form needs finite orders other than 0 and 1");
            const double closed = extreme_example_closed_form(params, o.alpha());
            const double direct = conditional_renyi(d, o);
            const double diff = std::abs(closed - direct);
            all_agree = all_agree && diff <= kAgreeTol;
            t.rows.push_back({std::int64_t{n}, o.str(), closed, direct, diff, diff <= kAgreeTol});
        }
    }
    emit(cfg, out, {t});
    return all_agree ? kExitPass : kExitViolation;
}

int cmd_perturb(const RunConfig& cfg, const PerturbConfig& p, std::ostream& out) {
    if (p.halvings < 0) throw DomainError("--halvings must be nonnegative");
    const auto spec = load_perturbation_spec(p.spec_path);
    const std::string mode = spec.mode == PerturbationSpec::Mode::Uniform ? "uniform" : "deterministic";
    Table t{"perturb", {"mode", "alpha", "delta_scale", "exact", "approx", "rel_error"}, {}};
    for (int h = 0; h <= p.halvings; ++h) {
        const double scale = std::ldexp(1.0, -h);
        const auto c = compare_perturbation(spec.scaled(scale));
        t.rows.push_back({mode, spec.alpha, scale, c.exact, c.approx, c.rel_error});
    }
    emit(cfg, out, {t});
    return kExitPass;
}

int cmd_entropy(const RunConfig& cfg, std::ostream& out) {
    const auto d = parse_channel(cfg.channel, cfg.prior0);
    const auto orders = orders_or(cfg, standard_order_grid());
    const EntropyOptions opts{0.0, std::max(kDefaultNormalizationTol, d.normalization_tol())};
    Table t{"entropy", {"alpha", "conditional", "output", "joint", "chain_residual"}, {}};
    for (const auto& o : orders)
        t.rows.push_back({o.str(), conditional_renyi(d, o, opts), renyi_entropy(output_marginal(d), o, opts),
                          renyi_entropy(joint_values(d), o, opts), chain_rule_residual(d, o, opts)});
    emit(cfg, out, {t});
    return kExitPass;
}

// ---- argument parsing -------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polarization of conditional Rényi entropies under the Arıkan transform"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "csv";
    std::optional<double> prior0;

    auto common = [&](CLI::App* sub, bool channel) {
        if (channel) {
            sub->add_option("--channel", cfg.channel, "bsc:p | bec:e | file:PATH")->capture_default_str();
            sub->add_option("--prior0", prior0, "P_X(0) for bsc/bec channels");
        }
        sub->add_option("--alpha", cfg.alpha, "comma-separated orders (0, 1 and inf allowed)");
        sub->add_option("--out", cfg.out, "output file (default: stdout)");
        sub->add_option("--format", format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();
        sub->add_option("--atom-cap", cfg.atom_cap, "atom budget per distribution")->capture_default_str();
        sub->add_flag("--merge-tol", cfg.merge_tol, "also merge atoms equal to 1e-12 relative (approximate)");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
    };

    auto* polarize = app.add_subcommand("polarize", "per-sub-channel entropies at level n");
    common(polarize, true);
    polarize->add_option("--n", cfg.n, "level (N = 2^n)")->capture_default_str();
    polarize->add_option("--delta", cfg.deltas, "extremal band widths")->delimiter(',');
    polarize->add_flag("--sort-shannon", cfg.sort_shannon, "add the ascending-Shannon rank column");

    VerifyConfig vcfg;
    auto* verify = app.add_subcommand("verify", "run a property suite; exit 1 on any violation");
    common(verify, false);
    verify->add_option("--suite", vcfg.suite, "lemma1 | chain | martingale | oracle | minkowski")
        ->required()
        ->check(CLI::IsMember({"lemma1", "chain", "martingale", "oracle", "minkowski"}));
    verify->add_option("--trials", vcfg.trials, "random instances")->capture_default_str();
    verify->add_option("--n", cfg.n, "level for the martingale suite (capped at 3)");

    ExtremeConfig ecfg;
    auto* extreme = app.add_subcommand("example-extreme", "two-class construction sweep over N");
    common(extreme, false);
    extreme->add_option("--alpha0", ecfg.alpha0, "design order (> 1)")->capture_default_str();
    extreme->add_option("--nmin", ecfg.n_min)->capture_default_str();
    extreme->add_option("--nmax", ecfg.n_max)->capture_default_str();

    PerturbConfig pcfg;
    auto* perturb = app.add_subcommand("perturb", "exact vs approximate deviation under delta halving");
    common(perturb, false);
    perturb->add_option("--spec", pcfg.spec_path, "perturbation spec JSON")->required();
    perturb->add_option("--halvings", pcfg.halvings)->capture_default_str();

    auto* entropy = app.add_subcommand("entropy", "H(X|Y), H(Y), H(X,Y) and the chain residual");
    common(entropy, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitPass : kExitUsage;
    }
    cfg.format = format == "json" ? Format::Json : Format::Csv;
    cfg.prior0 = prior0;

    try {
        if (*polarize) return cmd_polarize(cfg, out);
        if (*verify) return cmd_verify(cfg, vcfg, out);
        if (*extreme) return cmd_example_extreme(cfg, ecfg, out);
        if (*perturb) return cmd_perturb(cfg, pcfg, out);
        if (*entropy) return cmd_entropy(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace polarlens::cli
