#include "affwalk/fourier.hpp"

#include "affwalk/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace affwalk {

namespace {

constexpr std::size_t kChunk = 4096;

std::complex<double> unit_root(std::int64_t k, std::int64_t p) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
    return {std::cos(angle), std::sin(angle)};
}

// |z|^k * (z/|z|)^k with the magnitude taken in log space.
std::complex<double> complex_power(std::complex<double> z, std::uint64_t k) {
    if (k == 0) return 1.0;
    const double mag = std::abs(z);
    if (mag == 0.0) return 0.0;
    std::complex<double> phase = z / mag, acc = 1.0;
    for (std::uint64_t e = k; e; e >>= 1) {
        if (e & 1) acc *= phase;
        phase *= phase;
    }
    return std::exp(static_cast<double>(k) * std::log(mag)) * acc / std::abs(acc);
}

void require_same_group(const CharacterIndex& c, const WalkConfig& cfg) {
    if (c.modulus() != cfg.modulus() || c.size() != cfg.dim())
        throw ConfigError("character index does not match the walk's group");
}

}  // namespace

std::complex<double> step_factor(const CharacterIndex& c) {
    std::complex<double> acc = 1.0;
    for (auto r : c.values()) acc += unit_root(r, c.modulus());
    return acc / static_cast<double>(c.size() + 1);
}

double contraction_gap(std::size_t d, double fraction) {
    return (1.0 - std::cos(2.0 * std::numbers::pi * fraction)) / (2.0 * static_cast<double>(d + 1));
}

std::complex<double> fourier_n(const CharacterIndex& c, std::uint64_t n, const WalkConfig& cfg) {
    cfg.require_admissible();
    require_same_group(c, cfg);
    if (n == 0) return 1.0;

    const std::int64_t p = cfg.modulus();
    std::vector<std::complex<double>> factors;
    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    std::vector<std::int64_t> cur(c.values().begin(), c.values().end()), next(cur.size());
    std::optional<std::uint64_t> cycle_start;
    while (factors.size() < n) {
        const std::uint64_t key = encode_state(cur, p);
        if (auto it = seen.find(key); it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(key, factors.size());
        factors.push_back(step_factor(ModVector(p, cur)));
        cfg.transpose_mod().apply(cur, next);
        std::swap(cur, next);
    }

    std::complex<double> prefix = 1.0;
    if (!cycle_start) {
        for (const auto& f : factors) prefix *= f;
        return prefix;
    }
    const std::uint64_t start = *cycle_start;
    const std::uint64_t period = factors.size() - start;
    for (std::uint64_t j = 0; j < start; ++j) prefix *= factors[j];
    std::complex<double> cycle = 1.0;
    for (std::uint64_t j = start; j < factors.size(); ++j) cycle *= factors[j];
    const std::uint64_t remaining = n - start;
    std::complex<double> tail = 1.0;
    for (std::uint64_t j = 0; j < remaining % period; ++j) tail *= factors[start + j];
    return prefix * complex_power(cycle, remaining / period) * tail;
}

// ---------------------------------------------------------------------------

FourierEvolver::FourierEvolver(const WalkConfig& cfg, FourierOptions opts)
    : p_(cfg.modulus()), d_(cfg.dim()), threads_(std::max<std::size_t>(opts.threads, 1)) {
    cfg.require_admissible();
    const std::uint64_t n = checked_state_count(p_, d_, opts.character_cap, "characters");
    pull_.resize(n);
    factor_.resize(n);
    values_.assign(n, 1.0);

    std::vector<std::complex<double>> roots(static_cast<std::size_t>(p_));
    for (std::int64_t k = 0; k < p_; ++k) roots[static_cast<std::size_t>(k)] = unit_root(k, p_);

    parallel_chunks(n, kChunk, threads_, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> c(d_), tc(d_);
        for (std::size_t i = begin; i < end; ++i) {
            decode_state(i, p_, c);
            cfg.transpose_mod().apply(c, tc);
            pull_[i] = encode_state(tc, p_);
            std::complex<double> acc = 1.0;
            for (auto r : c) acc += roots[static_cast<std::size_t>(r)];
            factor_[i] = acc / static_cast<double>(d_ + 1);
        }
    });
}

void FourierEvolver::step() {
    std::vector<std::complex<double>> next(values_.size());
    parallel_chunks(values_.size(), kChunk, threads_, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) next[i] = factor_[i] * values_[pull_[i]];
    });
    values_ = std::move(next);
    ++steps_;
}

double FourierEvolver::upper_bound() const {
    const std::size_t n = values_.size();
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    parallel_chunks(n, kChunk, threads_, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        std::vector<double> sq(end - begin);
        for (std::size_t i = begin; i < end; ++i) sq[i - begin] = i == 0 ? 0.0 : std::norm(values_[i]);
        partial[chunk] = pairwise_sum(sq.data(), sq.size());
    });
    return 0.5 * std::sqrt(pairwise_sum(partial.data(), partial.size()));
}

double FourierEvolver::lower_bound() const {
    double best = 0.0;
    for (std::size_t i = 1; i < values_.size(); ++i) best = std::max(best, std::abs(values_[i]));
    return 0.5 * best;
}

double ub_bound(std::uint64_t n, const WalkConfig& cfg, FourierOptions opts) {
    cfg.require_admissible();
    try {
        FourierEvolver ev(cfg, opts);
        for (std::uint64_t i = 0; i < n; ++i) ev.step();
        return ev.upper_bound();
    } catch (const BudgetError& e) {
        throw BudgetError(std::string(e.what()) +
                          "; the character sum is not enumerable, use char_lower_bound on sampled characters instead");
    }
}

double char_lower_bound(std::uint64_t n, const WalkConfig& cfg, std::span<const CharacterIndex> candidates) {
    if (candidates.empty()) throw ConfigError("character lower bound needs at least one candidate");
    double best = 0.0;
    for (const auto& c : candidates) {
        require_same_group(c, cfg);
        if (c.is_zero()) throw ConfigError("the trivial character cannot witness a lower bound");
        best = std::max(best, std::abs(fourier_n(c, n, cfg)));
    }
    return 0.5 * best;
}

// ---------------------------------------------------------------------------

std::uint64_t default_orbit_length(std::int64_t p) {
    return static_cast<std::uint64_t>(std::ceil(10.0 * std::log2(static_cast<double>(p))));
}

OrbitRecord orbit_analysis(const CharacterIndex& c, const WalkConfig& cfg, double fraction, std::uint64_t l_max) {
    require_same_group(c, cfg);
    if (c.is_zero()) throw ConfigError("orbit analysis needs a non-zero character");
    if (!(fraction > 0.0 && fraction <= 0.5)) throw ConfigError("large-coordinate fraction must lie in (0, 1/2]");

    const std::int64_t p = cfg.modulus();
    const long double threshold = static_cast<long double>(fraction) * static_cast<long double>(p);
    OrbitRecord rec;
    rec.c = c;
    rec.large_fraction = fraction;
    rec.l_max = l_max;

    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    ModVector cur = c;
    for (std::uint64_t l = 0; l <= l_max; ++l) {
        const std::uint64_t key = encode_state(cur.values(), p);
        if (auto it = seen.find(key); it != seen.end()) {
            rec.cycle_start = it->second;
            rec.cycle_length = l - it->second;
            break;
        }
        seen.emplace(key, l);
        const std::int64_t m = center(cur).max_abs();
        rec.max_centered.push_back(m);
        if (!rec.first_large && static_cast<long double>(m) >= threshold) rec.first_large = l;
        rec.orbit.push_back(cur);
        cur = cfg.transpose_mod().apply(cur);
    }
    return rec;
}

OrbitSweep orbit_sweep(const WalkConfig& cfg, std::span<const CharacterIndex> chars, double fraction,
                       std::uint64_t l_max, std::size_t threads) {
    const std::size_t chunk = 256;
    const std::size_t chunks = (chars.size() + chunk - 1) / chunk;
    std::vector<OrbitSweep> partial(chunks);
    parallel_chunks(chars.size(), chunk, threads, [&](std::size_t k, std::size_t begin, std::size_t end) {
        OrbitSweep& s = partial[k];
        for (std::size_t i = begin; i < end; ++i) {
            const auto rec = orbit_analysis(chars[i], cfg, fraction, l_max);
            ++s.characters;
            if (!rec.first_large) {
                ++s.misses;
                continue;
            }
            if (!s.worst || *rec.first_large > s.max_first_large) {
                s.max_first_large = *rec.first_large;
                s.worst = chars[i];
            }
        }
    });
    OrbitSweep total;
    for (const auto& s : partial) {
        total.characters += s.characters;
        total.misses += s.misses;
        if (s.worst && (!total.worst || s.max_first_large > total.max_first_large)) {
            total.max_first_large = s.max_first_large;
            total.worst = s.worst;
        }
    }
    total.fitted_log_constant =
        static_cast<double>(total.max_first_large) / std::log(static_cast<double>(cfg.modulus()));
    return total;
}

std::vector<CharacterIndex> all_nonzero_characters(std::int64_t p, std::size_t d, std::uint64_t cap) {
    const std::uint64_t n = checked_state_count(p, d, cap, "characters");
    std::vector<CharacterIndex> out;
    out.reserve(n - 1);
    std::vector<std::int64_t> c(d);
    for (std::uint64_t i = 1; i < n; ++i) {
        decode_state(i, p, c);
        out.emplace_back(p, c);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(MixMethod m) { return m == MixMethod::Exact ? "exact" : "ub"; }

MixMethod mix_method_from_string(const std::string& s) {
    if (s == "exact") return MixMethod::Exact;
    if (s == "ub") return MixMethod::Ub;
    throw ConfigError("unknown mixing method '" + s + "' (expected exact or ub)");
}

MixingResult mixing_time(const WalkConfig& cfg, double eps, MixMethod method, std::uint64_t n_max,
                         FourierOptions opts, std::uint64_t state_cap) {
    if (!(eps > 0.0)) throw ConfigError("epsilon must be positive");
    cfg.require_admissible();

    // TV to uniform never exceeds 1 - 1/p^d.
    const double trivial = 1.0 - std::pow(static_cast<double>(cfg.modulus()), -static_cast<double>(cfg.dim()));
    MixingResult result;
    result.n_max = n_max;
    if (eps >= trivial) {
        result.n = 0;
        result.value = trivial;
        return result;
    }

    if (method == MixMethod::Exact) {
        DenseEvolver ev(cfg, state_cap);
        for (std::uint64_t n = 0;; ++n) {
            result.value = tv_to_uniform(ev.current());
            if (result.value <= eps) {
                result.n = n;
                return result;
            }
            if (n == n_max) return result;
            ev.step();
        }
    }
    FourierEvolver ev(cfg, opts);
    for (std::uint64_t n = 0;; ++n) {
        result.value = std::min(ev.upper_bound(), trivial);
        if (result.value <= eps) {
            result.n = n;
            return result;
        }
        if (n == n_max) return result;
        ev.step();
    }
}

BoundSeries bound_series(const WalkConfig& cfg, std::uint64_t n_first, std::uint64_t n_last, bool with_exact,
                         FourierOptions opts, std::uint64_t state_cap) {
    cfg.require_admissible();
    BoundSeries out;
    if (with_exact) out.tv_exact.emplace();
    if (n_first > n_last) return out;

    FourierEvolver fev(cfg, opts);
    std::optional<DenseEvolver> dev;
    if (with_exact) dev.emplace(cfg, state_cap);
    for (std::uint64_t n = 0; n <= n_last; ++n) {
        if (n >= n_first) {
            out.n.push_back(n);
            out.ub.push_back(fev.upper_bound());
            out.lb.push_back(fev.lower_bound());
            if (dev) out.tv_exact->push_back(tv_to_uniform(dev->current()));
        }
        if (n == n_last) break;
        fev.step();
        if (dev) dev->step();
    }
    return out;
}

}  // namespace affwalk
