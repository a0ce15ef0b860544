#include "affwalk/io.hpp"

#include "affwalk/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace affwalk {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

json big_to_json(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

BigInt big_from_json(const json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    throw ConfigError("expected an integer, got " + j.dump());
}

json optional_to_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::uint64_t> optional_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<std::uint64_t>();
}

json modvector_to_json(const ModVector& v) { return json(std::vector<std::int64_t>(v.values().begin(), v.values().end())); }

ModVector modvector_from_json(const json& j, std::int64_t p) { return ModVector(p, j.get<std::vector<std::int64_t>>()); }

template <class F>
json wrap(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON document: ") + e.what());
    }
}

bool skip_line(const std::string& line) { return line.empty() || line[0] == '#'; }

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field += ch;
        }
    }
    out.push_back(field);
    return out;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

double parse_double(const std::string& s) {
    // from_chars, unlike stod, accepts subnormals such as a late-n bound of 1e-320
    double v = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec == std::errc::invalid_argument || s.empty()) throw ConfigError("invalid number '" + s + "'");
    if (ec == std::errc::result_out_of_range && std::abs(v) > 1) throw ConfigError("number out of range '" + s + "'");
    if (ptr != end) throw ConfigError("trailing characters in number '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.starts_with('-')) throw ConfigError("invalid non-negative integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("invalid non-negative integer '" + s + "'");
    }
}

std::vector<std::string> expect_header(std::istream& is, std::string* header_line = nullptr) {
    std::string line;
    while (std::getline(is, line)) {
        if (skip_line(line)) continue;
        if (header_line) *header_line = line;
        return split_csv(line);
    }
    throw ConfigError("CSV input has no header row");
}

}  // namespace

json parse_json(const std::string& text) {
    try {
        return json::parse(text, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

json to_json(const SpectrumReport& r) {
    json j;
    json coeffs = json::array();
    for (const auto& c : r.charpoly.coeffs()) coeffs.push_back(big_to_json(c));
    j["charpoly"] = coeffs;
    j["determinant"] = big_to_json(r.determinant);
    json ev = json::array();
    for (const auto& e : r.eigenvalues) ev.push_back({e.value.real(), e.value.imag(), e.multiplicity});
    j["eigenvalues"] = ev;
    j["moduli"] = r.moduli;
    j["classification"] = to_string(r.classification);
    j["m"] = r.order ? json(*r.order) : json(nullptr);
    j["tolerance"] = r.tolerance;
    return j;
}

SpectrumReport spectrum_from_json(const json& j) {
    SpectrumReport r;
    wrap([&] {
        std::vector<BigInt> coeffs;
        for (const auto& c : j.at("charpoly")) coeffs.push_back(big_from_json(c));
        r.charpoly = CharPoly(IntPoly(std::move(coeffs)));
        r.determinant = big_from_json(j.at("determinant"));
        for (const auto& e : j.at("eigenvalues"))
            r.eigenvalues.push_back({{e.at(0).get<double>(), e.at(1).get<double>()}, e.at(2).get<unsigned>()});
        r.moduli = j.at("moduli").get<std::vector<double>>();
        r.classification = spectrum_class_from_string(j.at("classification").get<std::string>());
        if (!j.at("m").is_null()) r.order = j.at("m").get<unsigned>();
        r.tolerance = j.at("tolerance").get<double>();
        return json();
    });
    return r;
}

json to_json(const OrbitRecord& r) {
    json j;
    j["p"] = r.c.modulus();
    j["c"] = modvector_to_json(r.c);
    json orbit = json::array();
    for (const auto& v : r.orbit) orbit.push_back(modvector_to_json(v));
    j["orbit"] = orbit;
    j["max_centered"] = r.max_centered;
    j["cycle_start"] = optional_to_json(r.cycle_start);
    j["cycle_length"] = optional_to_json(r.cycle_length);
    j["first_large_l"] = optional_to_json(r.first_large);
    j["c1"] = r.large_fraction;
    j["l_max"] = r.l_max;
    return j;
}

OrbitRecord orbit_from_json(const json& j) {
    OrbitRecord r;
    wrap([&] {
        const auto p = j.at("p").get<std::int64_t>();
        r.c = modvector_from_json(j.at("c"), p);
        for (const auto& v : j.at("orbit")) r.orbit.push_back(modvector_from_json(v, p));
        r.max_centered = j.at("max_centered").get<std::vector<std::int64_t>>();
        r.cycle_start = optional_from_json(j.at("cycle_start"));
        r.cycle_length = optional_from_json(j.at("cycle_length"));
        r.first_large = optional_from_json(j.at("first_large_l"));
        r.large_fraction = j.at("c1").get<double>();
        r.l_max = j.at("l_max").get<std::uint64_t>();
        return json();
    });
    return r;
}

json to_json(const OrbitSweep& s) {
    json j;
    j["characters"] = s.characters;
    j["misses"] = s.misses;
    j["max_first_large_l"] = s.max_first_large;
    j["worst_c"] = s.worst ? modvector_to_json(*s.worst) : json(nullptr);
    j["fitted_c2"] = s.fitted_log_constant;
    return j;
}

json to_json(const ProjectionReport& r) {
    json j;
    j["p"] = r.p;
    j["m"] = r.m;
    j["v"] = modvector_to_json(r.v);
    json inc = json::array();
    for (const auto& [res, prob] : r.increments) inc.push_back({res, prob});
    j["increments"] = inc;
    j["u"] = r.support();
    j["nullity_mod_p"] = r.nullity_mod_p;
    j["nullity_rational"] = r.nullity_rational;
    j["degenerate"] = r.degenerate;
    return j;
}

ProjectionReport projection_from_json(const json& j) {
    ProjectionReport r;
    wrap([&] {
        r.p = j.at("p").get<std::int64_t>();
        r.m = j.at("m").get<unsigned>();
        r.v = modvector_from_json(j.at("v"), r.p);
        for (const auto& e : j.at("increments")) r.increments.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<double>());
        r.nullity_mod_p = j.at("nullity_mod_p").get<std::size_t>();
        r.nullity_rational = j.at("nullity_rational").get<std::size_t>();
        r.degenerate = j.at("degenerate").get<bool>();
        return json();
    });
    return r;
}

json to_json(const ScalingFit& f) {
    json j;
    j["matrix_tag"] = f.tag;
    j["law"] = f.law;
    j["parameter"] = f.parameter ? json(*f.parameter) : json(nullptr);
    j["residuals"] = f.residuals;
    j["points"] = f.points;
    return j;
}

ScalingFit fit_from_json(const json& j) {
    ScalingFit f;
    wrap([&] {
        f.tag = j.at("matrix_tag").get<std::string>();
        f.law = j.at("law").get<std::string>();
        if (!j.at("parameter").is_null()) f.parameter = j.at("parameter").get<double>();
        f.residuals = j.at("residuals").get<std::vector<double>>();
        f.points = j.at("points").get<std::size_t>();
        return json();
    });
    return f;
}

// ---------------------------------------------------------------------------

void write_bound_series_csv(std::ostream& os, const BoundSeries& s) {
    os << "n,ub,lb" << (s.tv_exact ? ",tv_exact" : "") << '\n';
    for (std::size_t i = 0; i < s.n.size(); ++i) {
        os << s.n[i] << ',' << format_double(s.ub[i]) << ',' << format_double(s.lb[i]);
        if (s.tv_exact) os << ',' << format_double((*s.tv_exact)[i]);
        os << '\n';
    }
}

BoundSeries read_bound_series_csv(std::istream& is) {
    const auto header = expect_header(is);
    const bool exact = header.size() == 4 && header[3] == "tv_exact";
    if (header.size() < 3 || header[0] != "n" || header[1] != "ub" || header[2] != "lb" || (header.size() == 4 && !exact) ||
        header.size() > 4)
        throw ConfigError("unexpected bound series header");
    BoundSeries s;
    if (exact) s.tv_exact.emplace();
    std::string line;
    while (std::getline(is, line)) {
        if (skip_line(line)) continue;
        const auto f = split_csv(line);
        if (f.size() != header.size()) throw ConfigError("bound series row has the wrong number of columns");
        s.n.push_back(parse_u64(f[0]));
        s.ub.push_back(parse_double(f[1]));
        s.lb.push_back(parse_double(f[2]));
        if (exact) s.tv_exact->push_back(parse_double(f[3]));
    }
    return s;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
    os << "matrix_tag,p,n_mix,method,error\n";
    for (const auto& c : cells) {
        os << quote_csv(c.tag) << ',' << c.p << ',';
        if (c.n_mix) os << *c.n_mix;
        os << ',' << to_string(c.method) << ',' << quote_csv(c.error) << '\n';
    }
}

std::vector<SweepCell> read_sweep_csv(std::istream& is) {
    const auto header = expect_header(is);
    if (header != std::vector<std::string>{"matrix_tag", "p", "n_mix", "method", "error"})
        throw ConfigError("unexpected sweep header");
    std::vector<SweepCell> cells;
    std::string line;
    while (std::getline(is, line)) {
        if (skip_line(line)) continue;
        const auto f = split_csv(line);
        if (f.size() != 5) throw ConfigError("sweep row has the wrong number of columns");
        SweepCell c;
        c.tag = f[0];
        c.p = static_cast<std::int64_t>(parse_u64(f[1]));
        if (!f[2].empty()) c.n_mix = parse_u64(f[2]);
        c.method = sweep_method_from_string(f[3]);
        c.error = f[4];
        cells.push_back(std::move(c));
    }
    return cells;
}

void write_distribution_csv(std::ostream& os, const DenseDistribution& dist, std::uint64_t n) {
    os << "p,d,n\n" << dist.modulus() << ',' << dist.dim() << ',' << n << '\n';
    os << "index,mass\n";
    for (std::size_t i = 0; i < dist.size(); ++i) os << i << ',' << format_double(dist[i]) << '\n';
}

std::pair<DenseDistribution, std::uint64_t> read_distribution_csv(std::istream& is) {
    if (expect_header(is) != std::vector<std::string>{"p", "d", "n"}) throw ConfigError("unexpected distribution header");
    const auto shape = expect_header(is);
    if (shape.size() != 3) throw ConfigError("distribution shape row needs p,d,n");
    const auto p = static_cast<std::int64_t>(parse_u64(shape[0]));
    const auto d = static_cast<std::size_t>(parse_u64(shape[1]));
    const auto n = parse_u64(shape[2]);
    if (expect_header(is) != std::vector<std::string>{"index", "mass"}) throw ConfigError("expected index,mass columns");
    std::vector<double> masses;
    std::string line;
    while (std::getline(is, line)) {
        if (skip_line(line)) continue;
        const auto f = split_csv(line);
        if (f.size() != 2 || parse_u64(f[0]) != masses.size()) throw ConfigError("distribution rows must be in index order");
        masses.push_back(parse_double(f[1]));
    }
    return {DenseDistribution(p, d, std::move(masses)), n};
}

void write_states_csv(std::ostream& os, const TrajectoryBatch& batch) {
    const std::size_t d = batch.cfg.dim();
    for (std::size_t r = 0; r < d; ++r) os << (r ? "," : "") << 'x' << r;
    os << '\n';
    for (std::size_t i = 0; i < batch.samples; ++i) {
        for (std::size_t r = 0; r < d; ++r) os << (r ? "," : "") << batch.coords[i * d + r];
        os << '\n';
    }
}

}  // namespace affwalk
