#include "polarlens/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polarlens/error.hpp"

namespace polarlens::oracle {

GeneratorMatrix::GeneratorMatrix(int n, std::vector<std::vector<std::uint8_t>> bits)
    : n_(n), bits_(std::move(bits)) {
    for (const auto& row : bits_)
        if (row.size() != bits_.size()) throw DomainError("generator matrix must be square");
}

GeneratorMatrix GeneratorMatrix::operator*(const GeneratorMatrix& rhs) const {
    const std::size_t N = size();
    if (rhs.size() != N) throw DomainError("generator matrix sizes differ");
    std::vector<std::vector<std::uint8_t>> out(N, std::vector<std::uint8_t>(N, 0));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) {
            std::uint8_t acc = 0;
            for (std::size_t k = 0; k < N; ++k) acc ^= bits_[r][k] & rhs.bits_[k][c];
            out[r][c] = acc;
        }
    return GeneratorMatrix(n_, std::move(out));
}

bool GeneratorMatrix::is_identity() const {
    for (std::size_t r = 0; r < size(); ++r)
        for (std::size_t c = 0; c < size(); ++c)
            if (bits_[r][c] != (r == c ? 1 : 0)) return false;
    return true;
}

std::vector<std::uint8_t> GeneratorMatrix::apply(std::span<const std::uint8_t> x) const {
    const std::size_t N = size();
    if (x.size() != N) throw DomainError("input length must equal N");
    std::vector<std::uint8_t> u(N, 0);
    for (std::size_t k = 0; k < N; ++k)
        if (x[k] & 1U)
            for (std::size_t j = 0; j < N; ++j) u[j] ^= bits_[k][j];
    return u;
}

GeneratorMatrix generator_matrix(int n) {
    if (n < 1 || n > kMaxOracleLevel) throw DomainError("oracle generator matrix needs 1 <= n <= 4");
    const std::size_t N = std::size_t{1} << n;
    auto reverse = [n](std::size_t i) {
        std::size_t r = 0;
        for (int b = 0; b < n; ++b) r |= ((i >> b) & 1U) << (n - 1 - b);
        return r;
    };
    // F^{⊗n}[i][j] = Π_b F[i_b][j_b] = 1 exactly when the bits of j are a subset of those of i.
    std::vector<std::vector<std::uint8_t>> bits(N, std::vector<std::uint8_t>(N));
    for (std::size_t r = 0; r < N; ++r) {
        const std::size_t src = reverse(r);
        for (std::size_t c = 0; c < N; ++c) bits[r][c] = (c & ~src) == 0 ? 1 : 0;
    }
    return GeneratorMatrix(n, std::move(bits));
}

namespace {

using real = long double;

// Per sub-channel, per order running sums of the conditional entropy.
struct Accumulator {
    real numerator = 0;   // finite α: Σ W (p0^α + p1^α); zero: nonzero entries; one: H(X,Y)-H(Y) terms
    real denominator = 0; // finite α: Σ W (p0+p1)^α; zero: symbols
    real max_y = 0, max_xy = 0;
};

} // namespace

PolarizationProfile brute_force_profile(const JointDistribution& d, int n, const std::vector<Order>& orders,
                                        const BruteForceOptions& opts) {
    const auto G = generator_matrix(n);
    const std::size_t N = G.size();
    const std::size_t Y = d.size();
    const auto atoms = d.atoms();

    // |Y|^N · 2^N with overflow guard.
    long double states = std::pow(static_cast<long double>(Y), static_cast<long double>(N)) *
                         std::pow(2.0L, static_cast<long double>(N));
    if (states > static_cast<long double>(opts.max_states)) {
        std::ostringstream msg;
        msg << "oracle state space " << static_cast<double>(states) << " exceeds cap " << opts.max_states;
        throw CapacityError(msg.str());
    }

    // Row masks with u_1 as the most significant bit so prefixes are u >> (N - i).
    std::vector<std::uint32_t> row_mask(N, 0);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j)
            if (G.at(k, j)) row_mask[k] |= std::uint32_t{1} << (N - 1 - j);

    const std::size_t U = std::size_t{1} << N;
    std::vector<std::vector<Accumulator>> acc(N, std::vector<Accumulator>(orders.size()));
    std::vector<real> joint(U);
    std::vector<std::vector<real>> prefix(N + 1);
    for (std::size_t i = 0; i <= N; ++i) prefix[i].resize(std::size_t{1} << i);

    std::vector<std::size_t> ys(N, 0);
    while (true) {
        real tuple_weight = 1;
        for (std::size_t k = 0; k < N; ++k) tuple_weight *= static_cast<real>(atoms[ys[k]].weight);

        std::fill(joint.begin(), joint.end(), real{0});
        for (std::size_t x = 0; x < U; ++x) {
            real p = 1;
            std::uint32_t u = 0;
            for (std::size_t k = 0; k < N; ++k) {
                const bool bit = (x >> (N - 1 - k)) & 1U; // x_{k+1}
                const auto& a = atoms[ys[k]];
                p *= static_cast<real>(bit ? a.p1 : a.p0);
                if (bit) u ^= row_mask[k];
            }
            joint[u] += p;
        }
        // prefix[i][v] = P(U^{1:i} = v, y): sum out the trailing bits.
        prefix[N] = joint;
        for (std::size_t i = N; i-- > 0;)
            for (std::size_t v = 0; v < prefix[i].size(); ++v)
                prefix[i][v] = prefix[i + 1][2 * v] + prefix[i + 1][2 * v + 1];

        for (std::size_t i = 1; i <= N; ++i) {
            const auto& level = prefix[i];
            for (std::size_t v = 0; v < level.size() / 2; ++v) {
                const real p0 = level[2 * v], p1 = level[2 * v + 1], py = p0 + p1;
                if (py == 0) continue;
                // Logs once per entry; each finite order then costs one exp2 per term.
                const real l0 = p0 > 0 ? std::log2(p0) : 0, l1 = p1 > 0 ? std::log2(p1) : 0;
                const real ly = std::log2(py);
                for (std::size_t k = 0; k < orders.size(); ++k) {
                    Accumulator& a = acc[i - 1][k];
                    const Order& o = orders[k];
                    switch (o.kind()) {
                    case Order::Kind::Zero: {
                        const real eps = opts.support_eps;
                        const int nz = (p0 > eps) + (p1 > eps);
                        a.numerator += tuple_weight * nz;
                        if (nz) a.denominator += tuple_weight;
                        break;
                    }
                    case Order::Kind::One:
                        a.numerator += tuple_weight * (-(p0 > 0 ? p0 * l0 : 0) - (p1 > 0 ? p1 * l1 : 0) + py * ly);
                        break;
                    case Order::Kind::Infinity:
                        a.max_y = std::max(a.max_y, py);
                        a.max_xy = std::max({a.max_xy, p0, p1});
                        break;
                    case Order::Kind::Finite: {
                        const real alpha = o.alpha();
                        const real t0 = p0 > 0 ? std::exp2(alpha * l0) : 0;
                        const real t1 = p1 > 0 ? std::exp2(alpha * l1) : 0;
                        a.numerator += tuple_weight * (t0 + t1);
                        a.denominator += tuple_weight * std::exp2(alpha * ly);
                        break;
                    }
                    }
                }
            }
        }

        std::size_t k = 0;
        while (k < N && ++ys[k] == Y) ys[k++] = 0;
        if (k == N) break;
    }

    std::vector<std::vector<double>> entries(orders.size(), std::vector<double>(N));
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t k = 0; k < orders.size(); ++k) {
            const Accumulator& a = acc[i][k];
            const Order& o = orders[k];
            real h = 0;
            switch (o.kind()) {
            case Order::Kind::Zero: h = std::log2(a.numerator / a.denominator); break;
            case Order::Kind::One: h = a.numerator; break;
            case Order::Kind::Infinity: h = std::log2(a.max_y / a.max_xy); break;
            case Order::Kind::Finite:
                if (a.numerator <= 0 || a.denominator <= 0)
                    throw CapacityError("oracle power sum underflowed extended precision");
                h = std::log2(a.numerator / a.denominator) / (1 - static_cast<real>(o.alpha()));
                break;
            }
            entries[k][i] = static_cast<double>(h);
        }
    }
    return PolarizationProfile(n, orders, std::move(entries));
}

MinkowskiReport minkowski_check(std::span<const double> x, std::span<const double> y, double p) {
    if (!(p > 0.0) || std::isinf(p)) throw DomainError("Minkowski exponent must be finite and positive");
    if (x.size() != y.size()) throw DomainError("Minkowski vectors must have equal length");
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!(x[k] >= 0.0) || !(y[k] >= 0.0)) throw DomainError("Minkowski vectors must be nonnegative");

    real sx = 0, sy = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += std::pow(static_cast<real>(x[k]), static_cast<real>(p));
        sy += std::pow(static_cast<real>(y[k]), static_cast<real>(p));
        sxy += std::pow(static_cast<real>(x[k]) + static_cast<real>(y[k]), static_cast<real>(p));
    }
    const real inv = 1 / static_cast<real>(p);
    const double lhs = static_cast<double>(std::pow(sxy, inv));
    const double rhs = static_cast<double>(std::pow(sx, inv) + std::pow(sy, inv));

    MinkowskiReport r{p, lhs, rhs, 0.0, true, false, false};
    r.slack = (p >= 1.0 ? rhs - lhs : lhs - rhs) / std::max(1.0, rhs);
    r.holds = r.slack >= -1e-12;
    r.equality = std::abs(r.slack) < 1e-12;

    // Positive linear dependence: y = 0, or x_k = λ y_k with one λ ≥ 0.
    const bool y_zero = std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; });
    if (y_zero) {
        r.positively_dependent = true;
    } else {
        std::size_t ref = 0;
        while (y[ref] == 0.0) ++ref;
        const double lambda = x[ref] / y[ref];
        r.positively_dependent = true;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (std::abs(x[k] - lambda * y[k]) > 1e-12 * std::max({1.0, x[k], lambda * y[k]}))
                r.positively_dependent = false;
    }
    return r;
}

} // namespace polarlens::oracle
