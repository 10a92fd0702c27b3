#include "polarlens/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "polarlens/error.hpp"

namespace polarlens {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad field '") + key + "': " + e.what());
    }
}

} // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

JointDistribution parse_distribution_json(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("distribution file must be a JSON object");
    const auto rows = field<std::vector<std::vector<double>>>(j, "atoms");
    std::vector<JointAtom> atoms;
    atoms.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != 3) throw ParseError("each atom must be [p0, p1, weight]");
        atoms.push_back({r[0], r[1], r[2]});
    }
    const double tol = j.contains("normalization_tol") ? field<double>(j, "normalization_tol")
                                                       : kDefaultNormalizationTol;
    return make_from_atoms(atoms, tol);
}

JointDistribution load_distribution(const std::filesystem::path& path) {
    return parse_distribution_json(read_text_file(path));
}

std::string distribution_to_json(const JointDistribution& d) {
    json atoms = json::array();
    for (const auto& a : d.atoms()) atoms.push_back({a.p0, a.p1, a.weight});
    return json{{"atoms", atoms}, {"normalization_tol", d.normalization_tol()}}.dump(2);
}

void save_distribution(const std::filesystem::path& path, const JointDistribution& d) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << distribution_to_json(d) << '\n';
}

PerturbationSpec parse_perturbation_json(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("perturbation spec must be a JSON object");
    PerturbationSpec spec;
    const auto mode = field<std::string>(j, "mode");
    if (mode == "uniform")
        spec.mode = PerturbationSpec::Mode::Uniform;
    else if (mode == "deterministic")
        spec.mode = PerturbationSpec::Mode::Deterministic;
    else
        throw ParseError("mode must be 'uniform' or 'deterministic'");
    spec.base_weights = field<std::vector<double>>(j, "base_weights");
    spec.deltas = field<std::vector<double>>(j, "deltas");
    spec.alpha = field<double>(j, "alpha");
    spec.validate();
    return spec;
}

PerturbationSpec load_perturbation_spec(const std::filesystem::path& path) {
    return parse_perturbation_json(read_text_file(path));
}

void write_profile_csv(std::ostream& out, const PolarizationProfile& profile, bool shannon_rank) {
    std::vector<std::uint64_t> rank;
    if (shannon_rank) {
        const auto sorted = profile.shannon_sorted_indices();
        if (!sorted) throw DomainError("Shannon ranking needs order 1 in the profile");
        rank.resize(profile.size());
        for (std::size_t r = 0; r < sorted->size(); ++r) rank[(*sorted)[r] - 1] = r + 1;
    }
    out << "n,index,alpha,entropy" << (shannon_rank ? ",shannon_rank" : "") << '\n';
    for (std::uint64_t i = 1; i <= profile.size(); ++i)
        for (std::size_t k = 0; k < profile.orders().size(); ++k) {
            out << profile.level() << ',' << i << ',' << profile.orders()[k].str() << ','
                << format_double(profile.entropy(k, i));
            if (shannon_rank) out << ',' << rank[i - 1];
            out << '\n';
        }
}

std::string profile_to_json(const PolarizationProfile& profile) {
    json orders = json::array(), entries = json::array();
    for (std::size_t k = 0; k < profile.orders().size(); ++k) {
        orders.push_back(profile.orders()[k].str());
        const auto col = profile.column(k);
        entries.push_back(std::vector<double>(col.begin(), col.end()));
    }
    return json{{"level", profile.level()}, {"orders", orders}, {"entries", entries}}.dump();
}

PolarizationProfile parse_profile_json(std::string_view text) {
    const json j = parse_json(text);
    std::vector<Order> orders;
    for (const auto& token : field<std::vector<std::string>>(j, "orders")) orders.push_back(Order::parse(token));
    return PolarizationProfile(field<int>(j, "level"), std::move(orders),
                               field<std::vector<std::vector<double>>>(j, "entries"));
}

} // namespace polarlens
