#include "affwalk/cli.hpp"

#include "affwalk/error.hpp"
#include "affwalk/philox.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace affwalk {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

long long parse_integer(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ConfigError("invalid integer '" + s + "' in " + what);
}

std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    for (const auto& item : split(s, ',')) out.push_back(parse_integer(item, what));
    return out;
}

std::vector<std::vector<long long>> matrix_rows_from_json(const json& j) {
    try {
        return j.get<std::vector<std::vector<long long>>>();
    } catch (const json::exception&) {
        throw ConfigError("matrix must be an array of integer rows, got " + j.dump());
    }
}

SweepMatrix matrix_from_json(const json& j, std::size_t index) {
    if (j.is_string()) return parse_matrix_spec(j.get<std::string>(), index);
    if (j.is_object()) {
        SweepMatrix m = matrix_from_json(j.at("matrix"), index);
        if (j.contains("tag")) m.tag = j.at("tag").get<std::string>();
        return m;
    }
    const auto rows = matrix_rows_from_json(j);
    SweepMatrix m{"", IntMatrix::from_rows(rows)};
    m.tag = m.t.to_string();
    return m;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field '") + key + "' has the wrong type: " + j.at(key).dump());
    }
}

}  // namespace

SweepMatrix parse_matrix_spec(const std::string& text, std::size_t index) {
    std::string body = trim(text);
    std::string tag;
    if (auto colon = body.find(':'); colon != std::string::npos) {
        tag = trim(body.substr(0, colon));
        body = trim(body.substr(colon + 1));
    }
    if (body.empty()) throw ConfigError("empty matrix specification");
    std::vector<std::vector<long long>> rows;
    for (const auto& row : split(body, ';')) {
        std::vector<long long> r;
        for (const auto& item : split(row, ',')) r.push_back(parse_integer(item, "matrix '" + text + "'"));
        rows.push_back(std::move(r));
    }
    SweepMatrix m{tag, IntMatrix::from_rows(rows)};
    if (m.tag.empty()) m.tag = index == 0 && tag.empty() ? m.t.to_string() : m.t.to_string();
    return m;
}

ExperimentConfig config_from_json(const std::string& command, const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    ExperimentConfig c;
    c.command = command;

    if (j.contains("matrices")) {
        const auto& list = j.at("matrices");
        if (!list.is_array()) throw ConfigError("'matrices' must be an array");
        for (std::size_t i = 0; i < list.size(); ++i) c.matrices.push_back(matrix_from_json(list[i], i));
    } else if (j.contains("matrix")) {
        c.matrices.push_back(matrix_from_json(j.at("matrix"), 0));
    }

    if (j.contains("p")) {
        const auto& p = j.at("p");
        if (p.is_number_integer())
            c.ps = {p.get<std::int64_t>()};
        else if (p.is_string())
            c.ps = parse_int_list(p.get<std::string>(), "p");
        else
            c.ps = get_or<std::vector<std::int64_t>>(j, "p", {});
    }
    for (auto p : c.ps) check_modulus(p);

    c.epsilon = get_or(j, "epsilon", c.epsilon);
    if (!(c.epsilon > 0)) throw ConfigError("epsilon must be positive");

    if (j.contains("n_range")) {
        const auto& r = j.at("n_range");
        std::vector<std::int64_t> v;
        if (r.is_string()) {
            const auto parts = split(r.get<std::string>(), ':');
            for (const auto& part : parts) v.push_back(parse_integer(part, "n_range"));
        } else if (r.is_number_integer()) {
            v = {r.get<std::int64_t>()};
        } else {
            v = get_or<std::vector<std::int64_t>>(j, "n_range", {});
        }
        if (v.size() == 1) v.insert(v.begin(), 0);
        if (v.size() != 2 || v[0] < 0 || v[1] < 0) throw ConfigError("n_range must be 'last' or 'first:last' with non-negative bounds");
        c.n_first = static_cast<std::uint64_t>(v[0]);
        c.n_last = static_cast<std::uint64_t>(v[1]);
    }
    c.n = get_or(j, "n", c.n);
    c.n_max = get_or(j, "n_max", c.n_max);
    c.seed = get_or(j, "seed", c.seed);
    c.method = get_or(j, "method", c.method);
    c.output = get_or(j, "output", c.output);
    c.state_cap = get_or(j, "state_cap", c.state_cap);
    c.character_cap = get_or(j, "character_cap", c.character_cap);
    if (j.contains("l_max") && !j.at("l_max").is_null()) c.l_max = get_or<std::uint64_t>(j, "l_max", 0);
    c.c1 = get_or(j, "c1", c.c1);
    if (!(c.c1 > 0 && c.c1 <= 0.5)) throw ConfigError("c1 must lie in (0, 1/2]");
    if (j.contains("c")) {
        const auto& cv = j.at("c");
        c.c = cv.is_string() ? parse_int_list(cv.get<std::string>(), "c") : get_or<std::vector<std::int64_t>>(j, "c", {});
    }
    c.all = get_or(j, "all", c.all);
    c.samples = get_or(j, "samples", c.samples);
    if (j.contains("blocks") && !j.at("blocks").is_null()) c.blocks = get_or<std::uint64_t>(j, "blocks", 0);
    if (j.contains("m") && !j.at("m").is_null()) {
        c.m = get_or<unsigned>(j, "m", 1);
        if (*c.m == 0) throw ConfigError("m must be positive");
    }
    c.tol = get_or(j, "tol", c.tol);
    if (!(c.tol > 0)) throw ConfigError("tol must be positive");
    c.dump_states = get_or(j, "dump_states", c.dump_states);
    c.fit_output = get_or(j, "fit_output", c.fit_output);
    c.threads = get_or<std::size_t>(j, "threads", c.threads);
    if (c.threads == 0) throw ConfigError("threads must be at least 1");
    return c;
}

json to_json(const ExperimentConfig& c) {
    json j;
    json mats = json::array();
    for (const auto& m : c.matrices) mats.push_back({{"tag", m.tag}, {"matrix", m.t.to_string()}});
    j["matrices"] = mats;
    j["p"] = c.ps;
    j["epsilon"] = c.epsilon;
    j["n_range"] = {c.n_first, c.n_last};
    j["n"] = c.n;
    j["n_max"] = c.n_max;
    j["seed"] = c.seed;
    j["method"] = c.method;
    j["state_cap"] = c.state_cap;
    j["character_cap"] = c.character_cap;
    j["l_max"] = c.l_max ? json(*c.l_max) : json(nullptr);
    j["c1"] = c.c1;
    j["c"] = c.c;
    j["all"] = c.all;
    j["samples"] = c.samples;
    j["blocks"] = c.blocks ? json(*c.blocks) : json(nullptr);
    j["m"] = c.m ? json(*c.m) : json(nullptr);
    j["tol"] = c.tol;
    return j;
}

namespace {

std::string provenance(const ExperimentConfig& c) {
    return std::string(kToolName) + " " + kToolVersion + " schema=" + std::to_string(kCsvSchemaVersion) +
           " command=" + c.command + " config=" + to_json(c).dump();
}

std::string csv_comment(const ExperimentConfig& c) { return "# " + provenance(c) + "\n"; }
std::string json_comment(const ExperimentConfig& c) { return "// " + provenance(c) + "\n"; }

// The single writer for a command's primary output.
class Sink {
public:
    Sink(const ExperimentConfig& c, std::ostream& fallback) : path_(c.output), fallback_(fallback) {}
    std::ostream& stream() { return buf_; }
    ~Sink() { flush(); }
    void flush() {
        if (flushed_) return;
        flushed_ = true;
        if (path_.empty()) {
            fallback_ << buf_.str();
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        f << buf_.str();
    }

private:
    std::string path_;
    std::ostream& fallback_;
    std::ostringstream buf_;
    bool flushed_ = false;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    f << content;
}

const SweepMatrix& single_matrix(const ExperimentConfig& c) {
    if (c.matrices.size() != 1) throw ConfigError("command '" + c.command + "' needs exactly one matrix");
    return c.matrices.front();
}

std::int64_t single_p(const ExperimentConfig& c) {
    if (c.ps.size() != 1) throw ConfigError("command '" + c.command + "' needs exactly one modulus p");
    return c.ps.front();
}

int cmd_classify(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
    const auto& mat = single_matrix(c);
    const auto report = classify(mat.t, c.tol);
    json j = to_json(report);
    json adm = json::object();
    for (auto p : c.ps) adm[std::to_string(p)] = is_admissible(mat.t, p);
    j["admissible"] = adm;
    Sink sink(c, out);
    sink.stream() << json_comment(c) << j.dump(2) << '\n';
    sink.flush();
    if (report.classification == SpectrumClass::Singular) {
        err << "error: matrix " << mat.t.to_string() << " is singular\n";
        return static_cast<int>(ErrorKind::Math);
    }
    return 0;
}

int cmd_bounds(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
    const WalkConfig cfg(single_matrix(c).t, single_p(c));
    cfg.require_admissible();
    Sink sink(c, out);
    sink.stream() << csv_comment(c);
    bool with_exact = true;
    try {
        checked_state_count(cfg.modulus(), cfg.dim(), c.state_cap);
    } catch (const BudgetError&) {
        with_exact = false;
    }
    try {
        const auto series =
            bound_series(cfg, c.n_first, c.n_last, with_exact, {c.character_cap, c.threads}, c.state_cap);
        write_bound_series_csv(sink.stream(), series);
    } catch (const BudgetError& e) {
        sink.stream() << "n,ub,lb\n";
        sink.flush();
        err << "error: " << e.what() << "; raise --character-cap or use 'orbit --samples' for sampled characters\n";
        return static_cast<int>(ErrorKind::Budget);
    }
    return 0;
}

int cmd_mixtime(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
    const WalkConfig cfg(single_matrix(c).t, single_p(c));
    const auto method = mix_method_from_string(c.method);
    const auto res = mixing_time(cfg, c.epsilon, method, c.n_max, {c.character_cap, c.threads}, c.state_cap);
    json j;
    j["method"] = to_string(method);
    j["epsilon"] = c.epsilon;
    j["mixed"] = res.n.has_value();
    j["n_mix"] = res.n ? json(*res.n) : json(nullptr);
    j["n_max"] = res.n_max;
    j["value"] = res.value;
    Sink sink(c, out);
    sink.stream() << json_comment(c) << j.dump(2) << '\n';
    sink.flush();
    if (!res.n) {
        err << "error: not mixed by n_max = " << res.n_max << '\n';
        return static_cast<int>(ErrorKind::Budget);
    }
    return 0;
}

int cmd_orbit(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
    const WalkConfig cfg(single_matrix(c).t, single_p(c));
    const std::uint64_t l_max = c.l_max.value_or(default_orbit_length(cfg.modulus()));
    json j;
    if (c.all || c.samples > 0) {
        std::vector<CharacterIndex> chars;
        if (c.all) {
            chars = all_nonzero_characters(cfg.modulus(), cfg.dim(), c.character_cap);
        } else {
            Philox4x64 rng(c.seed, 0);
            while (chars.size() < c.samples) {
                std::vector<std::int64_t> v(cfg.dim());
                for (auto& x : v) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cfg.modulus())));
                ModVector cv(cfg.modulus(), std::move(v));
                if (!cv.is_zero()) chars.push_back(std::move(cv));
            }
        }
        j = to_json(orbit_sweep(cfg, chars, c.c1, l_max, c.threads));
        j["c1"] = c.c1;
        j["l_max"] = l_max;
    } else {
        if (c.c.size() != cfg.dim()) throw ConfigError("orbit needs a character c with " + std::to_string(cfg.dim()) + " entries");
        j = to_json(orbit_analysis(ModVector(cfg.modulus(), c.c), cfg, c.c1, l_max));
    }
    Sink sink(c, out);
    sink.stream() << json_comment(c) << j.dump(2) << '\n';
    return 0;
}

int cmd_project(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
    const auto& mat = single_matrix(c);
    const std::int64_t p = single_p(c);
    unsigned m = 0;
    if (c.m) {
        m = *c.m;
    } else {
        const auto spec = classify(mat.t, c.tol);
        if (spec.classification != SpectrumClass::RootOfUnity)
            throw MathError("matrix has no root-of-unity eigenvalue (classification " + to_string(spec.classification) + ")");
        m = *spec.order;
    }
    const auto rep = projection_functional(mat.t, p, m);
    json j = to_json(rep);
    if (c.blocks) {
        j["blocks"] = *c.blocks;
        j["steps"] = *c.blocks * rep.m;
        j["projected_tv"] = tv_to_uniform(projected_walk_dist(rep, *c.blocks));
    }
    Sink sink(c, out);
    sink.stream() << json_comment(c) << j.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
    const WalkConfig cfg(single_matrix(c).t, single_p(c));
    cfg.require_admissible();
    if (c.samples == 0) throw ConfigError("simulate needs samples > 0");
    const auto batch = simulate(cfg, c.n, c.samples, c.seed, c.threads);
    json j;
    j["n"] = c.n;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    try {
        j["empirical_tv"] = empirical_tv(batch, c.state_cap);
    } catch (const BudgetError&) {
        j["empirical_tv"] = nullptr;
    }
    if (!c.dump_states.empty()) {
        std::ostringstream os;
        os << csv_comment(c);
        write_states_csv(os, batch);
        write_file(c.dump_states, os.str());
    }
    Sink sink(c, out);
    sink.stream() << json_comment(c) << j.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
    if (c.matrices.empty()) throw ConfigError("sweep needs at least one matrix");
    SweepOptions opts{c.n_max, c.state_cap, c.character_cap, c.threads};
    const auto report = scaling_sweep(c.matrices, c.ps, c.epsilon, sweep_method_from_string(c.method), opts);
    Sink sink(c, out);
    sink.stream() << csv_comment(c);
    write_sweep_csv(sink.stream(), report.cells);
    std::string fit_path = c.fit_output;
    if (fit_path.empty() && !c.output.empty()) fit_path = c.output + ".fit.json";
    if (!fit_path.empty()) {
        json fits = json::array();
        for (const auto& f : report.fits) fits.push_back(to_json(f));
        write_file(fit_path, json_comment(c) + fits.dump(2) + "\n");
    }
    return 0;
}

struct Flags {
    std::string config;
    std::vector<std::string> matrix;
    std::string p, n_range, c, method, output, dump_states, fit_output;
    double epsilon = 0, c1 = 0, tol = 0;
    std::uint64_t n = 0, n_max = 0, seed = 0, state_cap = 0, character_cap = 0, l_max = 0, samples = 0, blocks = 0;
    unsigned m = 0;
    std::size_t threads = 0;
    bool all = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mixing analysis of affine random walks X' = T X + B (mod p)", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    Flags f;
    std::map<std::string, CLI::Option*> given;
    auto common = [&](CLI::App* sub) {
        given["config"] = sub->add_option("--config", f.config, "JSON config file; flags override its values");
        given["matrix"] = sub->add_option("--matrix", f.matrix, "row-major matrix 'a,b;c,d' (sweep: repeatable, 'tag:a,b;c,d')");
        given["output"] = sub->add_option("-o,--output", f.output, "output file (default stdout)");
        given["tol"] = sub->add_option("--tol", f.tol, "spectral tolerance");
        given["threads"] = sub->add_option("--threads", f.threads, "worker threads (default $AFFWALK_THREADS or all cores)");
    };
    auto with_p = [&](CLI::App* sub) { given["p"] = sub->add_option("--p", f.p, "modulus, or comma-separated list"); };
    auto with_caps = [&](CLI::App* sub) {
        given["state_cap"] = sub->add_option("--state-cap", f.state_cap, "dense state budget");
        given["character_cap"] = sub->add_option("--character-cap", f.character_cap, "character budget");
    };

    auto* classify_cmd = app.add_subcommand("classify", "spectral classification of T");
    auto* bounds_cmd = app.add_subcommand("bounds", "Fourier upper/lower bounds and exact TV per step");
    auto* mixtime_cmd = app.add_subcommand("mixtime", "least n with distance to uniform <= epsilon");
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit of a character under T^t");
    auto* project_cmd = app.add_subcommand("project", "projection functional for a root-of-unity eigenvalue");
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo trajectories");
    auto* sweep_cmd = app.add_subcommand("sweep", "mixing time across moduli with scaling fits");

    // Per-subcommand option maps: CLI11 options belong to one subcommand each.
    std::map<CLI::App*, std::map<std::string, CLI::Option*>> opts;
    auto register_for = [&](CLI::App* sub, auto&& extra) {
        given.clear();
        common(sub);
        extra(sub);
        opts[sub] = given;
    };
    register_for(classify_cmd, [&](CLI::App* s) { with_p(s); });
    register_for(bounds_cmd, [&](CLI::App* s) {
        with_p(s);
        with_caps(s);
        given["n_range"] = s->add_option("--n-range", f.n_range, "'last' or 'first:last'");
    });
    register_for(mixtime_cmd, [&](CLI::App* s) {
        with_p(s);
        with_caps(s);
        given["epsilon"] = s->add_option("--epsilon", f.epsilon, "target distance");
        given["method"] = s->add_option("--method", f.method, "exact | ub");
        given["n_max"] = s->add_option("--n-max", f.n_max, "search cap");
    });
    register_for(orbit_cmd, [&](CLI::App* s) {
        with_p(s);
        given["character_cap"] = s->add_option("--character-cap", f.character_cap, "character budget");
        given["c"] = s->add_option("--c", f.c, "character 'c1,c2,...'");
        given["c1"] = s->add_option("--c1", f.c1, "large-coordinate fraction");
        given["l_max"] = s->add_option("--l-max", f.l_max, "orbit length cap");
        given["all"] = s->add_flag("--all", f.all, "sweep every non-zero character");
        given["samples"] = s->add_option("--samples", f.samples, "sweep this many random characters");
        given["seed"] = s->add_option("--seed", f.seed, "seed for sampled characters");
    });
    register_for(project_cmd, [&](CLI::App* s) {
        with_p(s);
        given["m"] = s->add_option("--m", f.m, "root-of-unity order (default: detected)");
        given["blocks"] = s->add_option("--blocks", f.blocks, "also report projected TV after this many m-step blocks");
    });
    register_for(simulate_cmd, [&](CLI::App* s) {
        with_p(s);
        given["state_cap"] = s->add_option("--state-cap", f.state_cap, "histogram budget");
        given["n"] = s->add_option("--n", f.n, "steps per trajectory");
        given["samples"] = s->add_option("--samples", f.samples, "trajectories");
        given["seed"] = s->add_option("--seed", f.seed, "64-bit seed");
        given["dump_states"] = s->add_option("--dump-states", f.dump_states, "write final states as CSV");
    });
    register_for(sweep_cmd, [&](CLI::App* s) {
        with_p(s);
        with_caps(s);
        given["epsilon"] = s->add_option("--epsilon", f.epsilon, "target distance");
        given["method"] = s->add_option("--method", f.method, "exact | ub | projected");
        given["n_max"] = s->add_option("--n-max", f.n_max, "search cap per cell");
        given["fit_output"] = s->add_option("--fit-output", f.fit_output, "JSON fit summary path");
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolName << ' ' << kToolVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Config);
    }

    CLI::App* sub = app.get_subcommands().front();
    const auto& o = opts[sub];
    auto set = [&](const char* key) { return o.count(key) && o.at(key)->count() > 0; };

    try {
        json j = json::object();
        if (set("config")) {
            std::ifstream in(f.config);
            if (!in) throw ConfigError("cannot read config file '" + f.config + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            j = parse_json(ss.str());
            if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
        }
        if (set("matrix")) {
            if (f.matrix.size() == 1 && sub != sweep_cmd) {
                j.erase("matrices");
                j["matrix"] = f.matrix.front();
            } else {
                j.erase("matrix");
                j["matrices"] = f.matrix;
            }
        }
        if (set("p")) j["p"] = f.p;
        if (set("n_range")) j["n_range"] = f.n_range;
        if (set("c")) j["c"] = f.c;
        if (set("method")) j["method"] = f.method;
        if (set("output")) j["output"] = f.output;
        if (set("dump_states")) j["dump_states"] = f.dump_states;
        if (set("fit_output")) j["fit_output"] = f.fit_output;
        if (set("epsilon")) j["epsilon"] = f.epsilon;
        if (set("c1")) j["c1"] = f.c1;
        if (set("tol")) j["tol"] = f.tol;
        if (set("n")) j["n"] = f.n;
        if (set("n_max")) j["n_max"] = f.n_max;
        if (set("seed")) j["seed"] = f.seed;
        if (set("state_cap")) j["state_cap"] = f.state_cap;
        if (set("character_cap")) j["character_cap"] = f.character_cap;
        if (set("l_max")) j["l_max"] = f.l_max;
        if (set("samples")) j["samples"] = f.samples;
        if (set("blocks")) j["blocks"] = f.blocks;
        if (set("m")) j["m"] = f.m;
        if (set("threads")) j["threads"] = f.threads;
        if (set("all")) j["all"] = f.all;

        const ExperimentConfig c = config_from_json(sub->get_name(), j);
        if (c.matrices.empty()) throw ConfigError("a matrix is required (--matrix or config 'matrix')");
        if (sub != classify_cmd && sub != sweep_cmd && c.ps.empty()) throw ConfigError("a modulus is required (--p)");

        if (sub == classify_cmd) return cmd_classify(c, out, err);
        if (sub == bounds_cmd) return cmd_bounds(c, out, err);
        if (sub == mixtime_cmd) return cmd_mixtime(c, out, err);
        if (sub == orbit_cmd) return cmd_orbit(c, out, err);
        if (sub == project_cmd) return cmd_project(c, out, err);
        if (sub == simulate_cmd) return cmd_simulate(c, out, err);
        return cmd_sweep(c, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    }
}

}  // namespace affwalk
