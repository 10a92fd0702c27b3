#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "polarlens/error.hpp"
#include "polarlens/perturbation.hpp"

namespace polarlens {
namespace {

PerturbationSpec uniform(std::size_t m, double delta, double alpha) {
    return {PerturbationSpec::Mode::Uniform, std::vector<double>(m, 1.0 / m), std::vector<double>(m, delta), alpha};
}

PerturbationSpec deterministic(std::size_t m, double delta, double alpha) {
    return {PerturbationSpec::Mode::Deterministic, std::vector<double>(m, 1.0 / m), std::vector<double>(m, delta),
            alpha};
}

TEST(PerturbationExact, UniformOrderTwo) {
    const auto s = uniform(4, 0.01, 2.0);
    EXPECT_NEAR(perturbation_exact(s), 4 * 0.01 * 0.01 / (0.25 * 0.25), 1e-15);
    EXPECT_NEAR(perturbation_exact(s), 0.0064, 1e-15);
}

TEST(PerturbationExact, NoDeviation) {
    EXPECT_EQ(perturbation_exact(uniform(5, 0.0, 3.0)), 0.0);
    EXPECT_EQ(perturbation_exact(deterministic(5, 0.0, 0.5)), 0.0);
}

TEST(PerturbationExact, DeterministicSmallOrder) {
    const auto s = deterministic(2, 1e-4, 0.5);
    EXPECT_NEAR(perturbation_exact(s), 0.014042130623230888, 1e-15);
    // Direct arithmetic: (δ^0.5 + (Q-δ)^0.5) / Q^0.5 - 1.
    EXPECT_NEAR(perturbation_exact(s), (std::sqrt(1e-4) + std::sqrt(0.5 - 1e-4)) / std::sqrt(0.5) - 1, 1e-13);
}

TEST(PerturbationExact, UniformCubicIsExactlyQuadraticInDelta) {
    // (h+δ)^3 + (h-δ)^3 = 2h^3 + 6hδ^2.
    const auto s = uniform(4, 0.01, 3.0);
    EXPECT_NEAR(perturbation_exact(s), 3 * 0.01 * 0.01 / (0.125 * 0.125), 1e-14);
}

TEST(PerturbationApprox, UniformOrderTwoIsExact) {
    const auto c = compare_perturbation(uniform(4, 0.01, 2.0));
    EXPECT_NEAR(c.approx, 0.0064, 1e-15);
    EXPECT_LE(c.rel_error, 1e-12);
}

TEST(PerturbationApprox, DeterministicSmallOrder) {
    const auto c = compare_perturbation(deterministic(2, 1e-4, 0.5));
    EXPECT_NEAR(c.approx, 0.014042135623730950, 1e-15);
    EXPECT_LT(c.rel_error, 1e-6);
}

TEST(PerturbationApprox, UniformErrorShrinksUnderHalving) {
    // At α = 0.5 the neglected fourth-order term makes the relative error O(δ²).
    const auto base = uniform(4, 0.01, 0.5);
    double prev = compare_perturbation(base).rel_error;
    for (int h = 1; h <= 5; ++h) {
        const double err = compare_perturbation(base.scaled(std::ldexp(1.0, -h))).rel_error;
        EXPECT_LT(err, prev) << h;
        EXPECT_LE(err, prev / 3.9) << h;
        prev = err;
    }
}

TEST(PerturbationApprox, UnequalDeltas) {
    const PerturbationSpec s{PerturbationSpec::Mode::Uniform, {0.5, 0.3, 0.2}, {0.001, -0.002, 0.0005}, 4.0};
    const auto c = compare_perturbation(s);
    EXPECT_GT(c.exact, 0.0);
    EXPECT_LT(c.rel_error, 1e-3);
}

TEST(PerturbationLeadingTerm, DominatesForSmallOrders) {
    const auto s = deterministic(2, 1e-4, 0.05);
    EXPECT_NEAR(perturbation_leading_term(s) / perturbation_exact(s), 1.0, 0.01);
    EXPECT_THROW(perturbation_leading_term(uniform(2, 0.01, 0.5)), DomainError);
}

TEST(PerturbationSpec, Validation) {
    EXPECT_THROW(perturbation_exact(uniform(2, 0.3, 2.0)), DomainError); // |δ| > Q/2
    EXPECT_THROW(perturbation_exact(deterministic(2, -0.1, 0.5)), DomainError);
    EXPECT_THROW(perturbation_exact(deterministic(2, 0.6, 0.5)), DomainError);
    EXPECT_THROW(perturbation_exact(uniform(2, 0.01, 1.0)), DomainError);
    EXPECT_THROW(perturbation_exact(uniform(2, 0.01, 0.0)), DomainError);
    PerturbationSpec mismatched = uniform(2, 0.01, 2.0);
    mismatched.deltas.pop_back();
    EXPECT_THROW(perturbation_exact(mismatched), DomainError);
    // Boundary deviations are allowed.
    EXPECT_NO_THROW(perturbation_exact(uniform(2, 0.25, 2.0)));
    EXPECT_NO_THROW(perturbation_exact(deterministic(2, 0.5, 2.0)));
}

} // namespace
} // namespace polarlens
