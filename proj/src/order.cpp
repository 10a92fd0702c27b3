#include "polarlens/order.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "polarlens/error.hpp"

namespace polarlens {

Order Order::of(double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) throw DomainError("entropy order must be nonnegative");
    if (alpha == 0.0) return zero();
    if (std::isinf(alpha)) return infinity();
    if (std::abs(alpha - 1.0) <= kOneBand) return one();
    return Order(Kind::Finite, alpha);
}

Order Order::infinity() {
    return Order(Kind::Infinity, std::numeric_limits<double>::infinity());
}

Order Order::parse(std::string_view token) {
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token == "inf" || token == "infinity" || token == "Inf" || token == "INF")
        return infinity();
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
        throw ParseError("invalid entropy order '" + std::string(token) + "'");
    try {
        return of(value);
    } catch (const DomainError& e) {
        throw ParseError("invalid entropy order '" + std::string(token) + "': " + e.what());
    }
}

std::string Order::str() const {
    switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::One: return "1";
    case Kind::Infinity: return "inf";
    case Kind::Finite: break;
    }
    return format_double(alpha_);
}

std::vector<Order> parse_orders(std::string_view csv) {
    std::vector<Order> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto end = csv.find(',', start);
        if (end == std::string_view::npos) end = csv.size();
        out.push_back(Order::parse(csv.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

std::vector<Order> experiment_orders() {
    return {Order::of(0.1), Order::of(0.5), Order::one(), Order::of(2), Order::of(10), Order::of(100)};
}

std::vector<Order> standard_order_grid() {
    return {Order::zero(), Order::of(0.1), Order::of(0.5), Order::one(),
            Order::of(2),  Order::of(10),  Order::of(100), Order::infinity()};
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace polarlens
