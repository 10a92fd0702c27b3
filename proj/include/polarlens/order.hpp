#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polarlens {

/// Entropy order α on [0, ∞]. Zero, One and Infinity get dedicated branches;
/// any α within kOneBand of 1 is routed to One.
class Order {
public:
    enum class Kind { Zero, Finite, One, Infinity };

    static constexpr double kOneBand = 1e-9;

    /// Classifies a real α ≥ 0 (or +inf). Throws DomainError for negative or NaN.
    static Order of(double alpha);
    static Order zero() { return Order(Kind::Zero, 0.0); }
    static Order one() { return Order(Kind::One, 1.0); }
    static Order infinity();

    /// Accepts decimal strings plus "inf"/"infinity".
    static Order parse(std::string_view token);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    /// α itself: 0, 1 or +inf for the special branches.
    double alpha() const { return alpha_; }

    /// Shortest round-trip text ("0", "0.1", "1", "inf").
    std::string str() const;

    friend bool operator==(const Order&, const Order&) = default;

private:
    Order(Kind k, double a) : kind_(k), alpha_(a) {}
    Kind kind_;
    double alpha_;
};

/// Comma-separated list of order tokens.
std::vector<Order> parse_orders(std::string_view csv);

/// The six orders of the BSC(0.2) polarization experiment.
std::vector<Order> experiment_orders();

/// {0, 0.1, 0.5, 1, 2, 10, 100, ∞}, used by property checks.
std::vector<Order> standard_order_grid();

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

} // namespace polarlens
