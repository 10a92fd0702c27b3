#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "polarlens/analysis.hpp"
#include "polarlens/error.hpp"
#include "polarlens/profile.hpp"
#include "polarlens/renyi.hpp"

namespace polarlens {
namespace {

TEST(ExtremalFractions, PureNoiseIsAllHigh) {
    const auto p = level_profile(make_bsc(0.5), 4, {Order::one(), Order::of(2)});
    for (const auto& f : extremal_fractions(p, 0.1)) {
        EXPECT_EQ(f.frac_high, 1.0);
        EXPECT_EQ(f.frac_low, 0.0);
        EXPECT_NEAR(f.predicted_high, 1.0, 1e-15);
    }
}

TEST(ExtremalFractions, OrderZeroNeverPolarizesLow) {
    const auto d = make_bsc(0.2);
    for (int n = 1; n <= 6; ++n) {
        const auto f = extremal_fractions(level_profile(d, n, {Order::zero()}), 0.01, d);
        EXPECT_EQ(f[0].frac_high, 1.0);
        EXPECT_EQ(f[0].frac_low, 0.0);
        EXPECT_EQ(f[0].predicted_low, 0.0);
    }
}

TEST(ExtremalFractions, ShannonFractionsGrowWithLevel) {
    const auto d = make_bsc(0.2);
    double high = 0.0, low = 0.0;
    for (int n = 4; n <= 6; ++n) {
        const auto f = extremal_fractions(level_profile(d, n, {Order::one()}), 0.1, d)[0];
        EXPECT_GE(f.frac_high, high) << n;
        EXPECT_GE(f.frac_low, low) << n;
        EXPECT_LE(f.frac_high + f.frac_low, 1.0);
        EXPECT_NEAR(f.predicted_high + f.predicted_low, 1.0, 1e-15);
        high = f.frac_high;
        low = f.frac_low;
    }
}

TEST(ExtremalFractions, PredictionsFromMeanMatchRoot) {
    const auto d = make_bsc(0.2);
    const auto p = level_profile(d, 4, experiment_orders());
    const auto from_mean = extremal_fractions(p, 0.1);
    const auto from_root = extremal_fractions(p, 0.1, d);
    for (std::size_t k = 0; k < from_mean.size(); ++k)
        EXPECT_NEAR(from_mean[k].predicted_high, from_root[k].predicted_high, 1e-9);
}

TEST(ExtremalFractions, BandChecked) {
    const auto p = level_profile(make_bsc(0.2), 1, {Order::one()});
    EXPECT_THROW(extremal_fractions(p, 0.0), DomainError);
    EXPECT_THROW(extremal_fractions(p, 0.5), DomainError);
}

TEST(ExtremeExample, ParameterL) {
    const ExtremeExampleParams params(2.0, 16);
    EXPECT_NEAR(params.l_minus_one(), 0.5 * std::pow(15.0, 1.75), 1e-12);
    EXPECT_NEAR(params.l_minus_one(), 57.17, 0.01);
    EXPECT_EQ(params.m(), 65536.0);
    EXPECT_THROW(ExtremeExampleParams(1.0, 16), DomainError);
    EXPECT_THROW(ExtremeExampleParams(2.0, 1), DomainError);
}

TEST(ExtremeExample, SpotValues) {
    const ExtremeExampleParams params(2.0, 16);
    EXPECT_NEAR(extreme_example_closed_form(params, 2.0), 0.73385028538032594, 1e-12);
    EXPECT_NEAR(extreme_example_closed_form(params, 3.0), 0.34605256723193279, 1e-12);
    EXPECT_THROW(extreme_example_closed_form(params, 1.0), DomainError);
    EXPECT_THROW(extreme_example_closed_form(params, 0.0), DomainError);
}

TEST(ExtremeExample, SweepReferenceValues) {
    struct Row {
        int n;
        double alpha, value;
    };
    const std::vector<Row> rows{{8, 0.5, 0.92400846},   {16, 0.5, 0.97195673}, {28, 0.5, 0.98730306},
                                {8, 2.0, 0.69534916},   {16, 2.0, 0.73385029}, {28, 2.0, 0.76135007},
                                {8, 3.0, 0.43310808},   {16, 3.0, 0.34605257}, {28, 3.0, 0.28482887},
                                {8, 10.0, 0.0011285053}};
    for (const auto& r : rows)
        EXPECT_NEAR(extreme_example_closed_form(ExtremeExampleParams(2.0, r.n), r.alpha), r.value, 1e-8)
            << r.n << " " << r.alpha;
    EXPECT_NEAR(extreme_example_closed_form(ExtremeExampleParams(2.0, 16), 10.0), 1.4151711e-5, 1e-12);
    EXPECT_NEAR(extreme_example_closed_form(ExtremeExampleParams(2.0, 28), 10.0), 4.8195959e-7, 1e-14);
}

TEST(ExtremeExample, DistributionIsNormalizedTwoAtomLaw) {
    for (int n = 2; n <= 28; ++n) {
        const auto d = extreme_example_distribution(ExtremeExampleParams(2.0, n));
        EXPECT_EQ(d.size(), 2u);
        EXPECT_NEAR(d.total_mass(), 1.0, 1e-14);
        EXPECT_NEAR(d.symbol_count(), std::ldexp(1.0, n), std::ldexp(1.0, n) * 1e-14);
    }
}

TEST(ExtremeExample, ClosedFormMatchesDirectEvaluation) {
    for (double alpha0 : {1.5, 2.0, 4.0})
        for (int n = 8; n <= 28; ++n) {
            const ExtremeExampleParams params(alpha0, n);
            const auto d = extreme_example_distribution(params);
            for (double a : {0.5, 2.0, 3.0, 10.0})
                EXPECT_NEAR(conditional_renyi(d, Order::of(a)), extreme_example_closed_form(params, a), 1e-9)
                    << alpha0 << " " << n << " " << a;
        }
}

TEST(ExtremeExample, OppositeTrends) {
    double prev2 = -1.0, prev3 = 2.0;
    for (int n = 8; n <= 28; ++n) {
        const ExtremeExampleParams params(2.0, n);
        const double h2 = extreme_example_closed_form(params, 2.0);
        const double h3 = extreme_example_closed_form(params, 3.0);
        EXPECT_GT(h2, prev2) << n;
        EXPECT_LT(h3, prev3) << n;
        prev2 = h2;
        prev3 = h3;
    }
    // Far out the two orders sit at opposite ends.
    const ExtremeExampleParams far(2.0, 1 << 20);
    EXPECT_GT(extreme_example_closed_form(far, 2.0), 0.85);
    EXPECT_LT(extreme_example_closed_form(far, 3.0), 0.05);
}

TEST(ExtremeExample, ShannonValueBetweenExtremes) {
    const auto d = extreme_example_distribution(ExtremeExampleParams(2.0, 16));
    const double h1 = conditional_renyi(d, Order::one());
    const double h2 = conditional_renyi(d, Order::of(2));
    const double h3 = conditional_renyi(d, Order::of(3));
    EXPECT_GT(h1, h3);
    EXPECT_LT(h1, 1.0);
    EXPECT_GT(h1, 0.0);
    EXPECT_GT(h2, h3);
}

TEST(EffectiveSet, SingleAtom) {
    const std::vector<JointAtom> atoms{{0.3, 0.7, 1}};
    const auto r = effective_set(make_from_atoms(atoms), 2.0, 0.1);
    EXPECT_EQ(r.atoms, (std::vector<std::size_t>{0}));
    EXPECT_NEAR(r.numerator_share, 1.0, 1e-15);
    EXPECT_NEAR(r.subset_entropy, r.full_entropy, 1e-15);
}

TEST(EffectiveSet, DominantClassFlipsWithOrder) {
    const auto d = extreme_example_distribution(ExtremeExampleParams(2.0, 16));
    // Atom 0 is the deterministic class (p1 = 0), atom 1 the uniform class.
    std::size_t deterministic = d.atoms()[0].p1 == 0.0 ? 0 : 1;
    const auto at3 = effective_set(d, 3.0, 0.1);
    const auto at2 = effective_set(d, 2.0, 0.1);
    ASSERT_FALSE(at3.atoms.empty());
    ASSERT_FALSE(at2.atoms.empty());
    EXPECT_EQ(at3.atoms.front(), deterministic);
    EXPECT_EQ(at2.atoms.front(), 1 - deterministic);
    for (const auto& r : {at2, at3}) {
        EXPECT_GT(r.numerator_share, 0.9);
        EXPECT_GT(r.denominator_share, 0.9);
    }
}

TEST(EffectiveSet, CoverSharesExceedThreshold) {
    const auto d = make_bec(0.3, 0.4);
    for (double eps : {0.5, 0.1, 0.01}) {
        const auto r = effective_set(d, 2.0, eps);
        EXPECT_GT(r.numerator_share, 1 - eps);
        EXPECT_GT(r.denominator_share, 1 - eps);
        EXPECT_NEAR(r.full_entropy, conditional_renyi(d, Order::of(2)), 1e-12);
    }
    EXPECT_THROW(effective_set(d, 2.0, 0.0), DomainError);
    EXPECT_THROW(effective_set(d, 1.0, 0.1), DomainError);
}

} // namespace
} // namespace polarlens
