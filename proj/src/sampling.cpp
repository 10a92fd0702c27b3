#include "polarlens/sampling.hpp"

#include "polarlens/error.hpp"

namespace polarlens {

JointDistribution random_distribution(Rng& rng, const RandomDistributionOptions& opts) {
    if (opts.min_symbols < 1 || opts.min_symbols > opts.max_symbols)
        throw DomainError("random distribution needs 1 <= min_symbols <= max_symbols");
    std::uniform_int_distribution<std::size_t> symbols(opts.min_symbols, opts.max_symbols);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    const std::size_t k = symbols(rng);

    std::vector<double> draws(2 * k);
    double total = 0.0;
    for (double& g : draws) {
        // A zero draw would turn into an exact zero entry; redraw to keep full support.
        do g = gamma(rng);
        while (g <= 0.0);
        total += g;
    }
    std::vector<JointAtom> atoms;
    atoms.reserve(k);
    for (std::size_t j = 0; j < k; ++j) atoms.push_back({draws[2 * j] / total, draws[2 * j + 1] / total, 1.0});
    return JointDistribution(std::move(atoms));
}

std::vector<double> random_nonnegative_vector(Rng& rng, std::size_t size, double scale) {
    std::uniform_real_distribution<double> u(0.0, scale);
    std::vector<double> out(size);
    for (double& v : out) v = u(rng);
    return out;
}

} // namespace polarlens
