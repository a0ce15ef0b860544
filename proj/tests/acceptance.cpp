// Acceptance suite: one PASS/FAIL line per criterion, with measured runtime
// against its budget. Exit status is non-zero if any criterion fails.

#include "affwalk/cli.hpp"
#include "affwalk/exactdist.hpp"
#include "affwalk/fourier.hpp"
#include "affwalk/montecarlo.hpp"
#include "affwalk/philox.hpp"
#include "affwalk/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace affwalk;

namespace {

const IntMatrix kGolden{{2, 1}, {1, 1}};
const IntMatrix kShear{{1, 1}, {0, 2}};
const IntMatrix kRotation{{0, -1}, {1, 0}};
const IntMatrix kGrid[] = {kGolden, kShear, kRotation};
const std::int64_t kGridP[] = {5, 7};

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.ok && secs < limit_s;
    if (!ok) ++failures;
    std::printf("[%s] %d %s (%.2f s, limit %.0f s) %s\n", ok ? "PASS" : "FAIL", id, name, secs, limit_s,
                o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string cli_output(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (code != 0) throw std::runtime_error("cli exited " + std::to_string(code) + ": " + err.str());
    return out.str();
}

}  // namespace

int main() {
    criterion(1, "product formula equals DFT of dense distribution", 10, [] {
        double worst = 0;
        for (const auto& t : kGrid)
            for (auto p : kGridP) {
                const WalkConfig cfg(t, p);
                DenseEvolver dense(cfg);
                for (std::uint64_t n = 0; n <= 15; ++n, dense.step()) {
                    const auto exact = dft(dense.current());
                    std::vector<std::int64_t> c(2);
                    for (std::uint64_t i = 0; i < exact.size(); ++i) {
                        decode_state(i, p, c);
                        worst = std::max(worst, std::abs(fourier_n(ModVector(p, c), n, cfg) - exact[i]));
                    }
                }
            }
        return Outcome{worst <= 1e-9, "max deviation " + fmt("%.3g", worst)};
    });

    criterion(2, "lower bound <= exact TV <= upper bound", 10, [] {
        double worst = -1e300;
        int rows = 0;
        for (const auto& t : kGrid)
            for (auto p : kGridP) {
                const auto s = bound_series(WalkConfig(t, p), 0, 15, true);
                for (std::size_t i = 0; i < s.n.size(); ++i, ++rows) {
                    worst = std::max(worst, s.lb[i] - (*s.tv_exact)[i]);
                    worst = std::max(worst, (*s.tv_exact)[i] - s.ub[i]);
                }
            }
        return Outcome{worst <= 1e-12 && rows == 96, std::to_string(rows) + " rows, worst violation " + fmt("%.3g", worst)};
    });

    criterion(3, "ub mixing time grows like (log p)^2", 300, [] {
        const std::int64_t ps[] = {11, 31, 101, 211, 401};
        std::vector<std::uint64_t> n;
        std::vector<double> ratio;
        std::string detail = "n_mix/(ln p)^2:";
        for (auto p : ps) {
            const auto r = mixing_time(WalkConfig(kGolden, p), 0.25, MixMethod::Ub);
            if (!r.n) return Outcome{false, "p=" + std::to_string(p) + " not mixed"};
            const double lp = std::log(static_cast<double>(p));
            n.push_back(*r.n);
            ratio.push_back(static_cast<double>(*r.n) / (lp * lp));
            detail += " " + std::to_string(p) + ":" + std::to_string(*r.n) + "/" + fmt("%.3f", ratio.back());
        }
        bool ok = true;
        for (std::size_t i = 0; i < n.size(); ++i) {
            ok &= ratio[i] <= 2 * ratio[0];
            if (i) ok &= n[i] >= n[i - 1];
        }
        return Outcome{ok, detail};
    });

    criterion(4, "eigenvalue-1 matrix mixes slowly", 30, [] {
        const std::int64_t p = 101;
        const auto rep = projection_functional(kShear, p, 1);
        const double projected = tv_to_uniform(projected_walk_dist(rep, static_cast<std::uint64_t>(p)));
        const auto n_late = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(p), 1.5)));
        const std::vector<CharacterIndex> witness{ModVector(p, {1, -1})};
        const double lb = char_lower_bound(n_late, WalkConfig(kShear, p), witness);
        // (1,-1) is fixed by T^t, so the transform is just f(c)^n.
        const double f = (1 + 2 * std::cos(2 * M_PI / p)) / 3;
        const double lb_closed = std::pow(f, static_cast<double>(n_late)) / 2;
        const bool golden = std::abs(projected - 0.63586028068420375) <= 1e-12 && std::abs(lb - lb_closed) <= 1e-12;
        return Outcome{projected >= 0.5 && lb >= 0.1 && n_late == 1016 && golden,
                       "projected TV at n=101: " + fmt("%.17g", projected) + ", lower bound at n=" +
                           std::to_string(n_late) + ": " + fmt("%.17g", lb)};
    });

    criterion(5, "Jordan power closed form equals iterated product", 1, [] {
        std::mt19937_64 rng(20240917);
        const std::complex<double> eigs[] = {2.0, -2.0, 0.5, -0.5, {0, 1}, {1, 1}, 3.0};
        std::uniform_int_distribution<std::size_t> pick(0, 6), size(1, 4);
        std::uniform_int_distribution<std::uint64_t> ell(0, 64);
        double worst = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const JordanBlockSpec b{eigs[pick(rng)], size(rng)};
            const auto l = ell(rng);
            const ComplexMatrix closed = jordan_power(b, l);
            ComplexMatrix iter = ComplexMatrix::identity(b.size);
            const ComplexMatrix j = jordan_block(b);
            for (std::uint64_t k = 0; k < l; ++k) iter = iter * j;
            double scale = 0, err = 0;
            for (std::size_t r = 0; r < b.size; ++r)
                for (std::size_t c = 0; c < b.size; ++c) {
                    scale = std::max(scale, std::abs(iter(r, c)));
                    err = std::max(err, std::abs(closed(r, c) - iter(r, c)));
                }
            worst = std::max(worst, err / scale);
        }
        return Outcome{worst <= 1e-10, "200 blocks, max relative error " + fmt("%.3g", worst)};
    });

    criterion(6, "orbits reach a large coordinate within 4 log2 p steps", 30, [] {
        std::string detail;
        bool ok = true;
        {
            const WalkConfig cfg(kGolden, 101);
            const auto chars = all_nonzero_characters(101, 2);
            const auto s = orbit_sweep(cfg, chars, 0.125, default_orbit_length(101));
            const double bound = 4 * std::log2(101.0);
            ok &= s.characters == 10200 && s.misses == 0 && static_cast<double>(s.max_first_large) <= bound;
            detail += "p=101 all " + std::to_string(s.characters) + ": max " + std::to_string(s.max_first_large) +
                      " <= " + fmt("%.2f", bound) + ", misses " + std::to_string(s.misses);
        }
        {
            const WalkConfig cfg(kGolden, 499);
            Philox4x64 rng(kDefaultSeed, 499);
            std::vector<CharacterIndex> chars;
            while (chars.size() < 10000) {
                ModVector c(499, {static_cast<std::int64_t>(rng.below(499)), static_cast<std::int64_t>(rng.below(499))});
                if (!c.is_zero()) chars.push_back(std::move(c));
            }
            const auto s = orbit_sweep(cfg, chars, 0.125, default_orbit_length(499));
            const double bound = 4 * std::log2(499.0);
            ok &= s.misses == 0 && static_cast<double>(s.max_first_large) <= bound;
            detail += "; p=499 sampled " + std::to_string(s.characters) + ": max " +
                      std::to_string(s.max_first_large) + " <= " + fmt("%.2f", bound) + ", misses " +
                      std::to_string(s.misses);
        }
        return Outcome{ok, detail};
    });

    criterion(7, "classification exact and tolerance independent", 10, [] {
        bool ok = true;
        std::string detail;
        for (double tol : {1e-6, 1e-12}) {
            const auto a = classify(kGolden, tol), b = classify(kShear, tol), c = classify(kRotation, tol);
            ok &= a.classification == SpectrumClass::AllOffUnitCircle && !a.order;
            ok &= b.classification == SpectrumClass::RootOfUnity && b.order == 1u;
            ok &= c.classification == SpectrumClass::RootOfUnity && c.order == 4u;
            ok &= divides(cyclotomic(1), b.charpoly.poly()) && divides(cyclotomic(4), c.charpoly.poly());
            detail += fmt("tol=%.0e: ", tol) + to_string(a.classification) + ", " + to_string(b.classification) + "(" +
                      std::to_string(b.order.value_or(0)) + "), " + to_string(c.classification) + "(" +
                      std::to_string(c.order.value_or(0)) + ")" + (tol > 1e-9 ? "; " : "");
        }
        return Outcome{ok, detail};
    });

    criterion(8, "dense TV non-increasing and mass conserved", 10, [] {
        double worst_rise = -1e300, worst_mass = 0;
        for (const auto& t : kGrid)
            for (auto p : kGridP) {
                DenseEvolver ev(WalkConfig(t, p));
                double prev = tv_to_uniform(ev.current());
                for (int n = 1; n <= 15; ++n) {
                    ev.step();
                    const double tv = tv_to_uniform(ev.current());
                    worst_rise = std::max(worst_rise, tv - prev);
                    worst_mass = std::max(worst_mass, std::abs(ev.current().total_mass() - 1.0));
                    prev = tv;
                }
            }
        return Outcome{worst_rise <= 1e-12 && worst_mass <= 1e-12,
                       "max TV increase " + fmt("%.3g", worst_rise) + ", max mass drift " + fmt("%.3g", worst_mass)};
    });

    criterion(9, "reproducible outputs and thread-count agreement", 60, [] {
        const std::vector<std::string> sim{"simulate", "--matrix", "2,1;1,1", "--p", "11", "--n", "20",
                                           "--samples", "20000", "--seed", "12345"};
        const std::vector<std::string> sweep{"sweep", "--matrix", "g:2,1;1,1", "--matrix", "s:1,1;0,2",
                                             "--p", "11,31,101"};
        auto with_threads = [](std::vector<std::string> a, const char* t) {
            a.insert(a.end(), {"--threads", t});
            return a;
        };
        const bool sim_same = cli_output(with_threads(sim, "1")) == cli_output(with_threads(sim, "1")) &&
                              cli_output(with_threads(sim, "1")) == cli_output(with_threads(sim, "4"));
        const bool sweep_same = cli_output(with_threads(sweep, "1")) == cli_output(with_threads(sweep, "1")) &&
                                cli_output(with_threads(sweep, "1")) == cli_output(with_threads(sweep, "4"));
        double worst = 0;
        for (std::int64_t p : {31, 101, 211})
            for (std::uint64_t n : {0u, 3u, 10u, 25u}) {
                const WalkConfig cfg(kGolden, p);
                worst = std::max(worst, std::abs(ub_bound(n, cfg, {kDefaultCharacterCap, 1}) -
                                                 ub_bound(n, cfg, {kDefaultCharacterCap, 4})));
            }
        return Outcome{sim_same && sweep_same && worst <= 1e-12,
                       std::string("simulate ") + (sim_same ? "identical" : "DIFFERS") + ", sweep " +
                           (sweep_same ? "identical" : "DIFFERS") + ", ub threads 1 vs 4 max diff " + fmt("%.3g", worst)};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
