#include "affwalk/montecarlo.hpp"

#include "affwalk/error.hpp"
#include "affwalk/parallel.hpp"
#include "affwalk/philox.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace affwalk {

ModVector TrajectoryBatch::state(std::size_t i) const {
    const std::size_t d = cfg.dim();
    return ModVector(cfg.modulus(), std::vector<std::int64_t>(coords.begin() + static_cast<std::ptrdiff_t>(i * d),
                                                              coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)));
}

TrajectoryBatch simulate(const WalkConfig& cfg, std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                         std::size_t threads) {
    const std::size_t d = cfg.dim();
    const std::int64_t p = cfg.modulus();
    TrajectoryBatch batch{cfg, n, seed, samples, std::vector<std::int64_t>(samples * d, 0)};
    parallel_chunks(samples, 1024, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> x(d), y(d);
        for (std::size_t i = begin; i < end; ++i) {
            Philox4x64 rng(seed, i);
            std::fill(x.begin(), x.end(), 0);
            for (std::uint64_t step = 0; step < n; ++step) {
                cfg.matrix_mod().apply(x, y);
                const std::uint64_t b = rng.below(d + 1);
                if (b > 0) y[b - 1] = y[b - 1] + 1 == p ? 0 : y[b - 1] + 1;
                std::swap(x, y);
            }
            std::copy(x.begin(), x.end(), batch.coords.begin() + static_cast<std::ptrdiff_t>(i * d));
        }
    });
    return batch;
}

double empirical_tv(const TrajectoryBatch& batch, std::uint64_t cap) {
    const std::int64_t p = batch.cfg.modulus();
    const std::size_t d = batch.cfg.dim();
    const std::uint64_t states = checked_state_count(p, d, cap);
    if (batch.samples == 0) throw ConfigError("empirical TV needs at least one sample");
    std::vector<std::uint64_t> counts(states, 0);
    for (std::size_t i = 0; i < batch.samples; ++i)
        ++counts[encode_state(std::span<const std::int64_t>(batch.coords.data() + i * d, d), p)];
    std::vector<double> diff(states);
    const double u = 1.0 / static_cast<double>(states);
    for (std::uint64_t s = 0; s < states; ++s)
        diff[s] = std::abs(static_cast<double>(counts[s]) / static_cast<double>(batch.samples) - u);
    return 0.5 * pairwise_sum(diff.data(), diff.size());
}

// ---------------------------------------------------------------------------

namespace {

IntMatrix int_pow(const IntMatrix& t, unsigned k) {
    IntMatrix out = IntMatrix::identity(t.dim());
    for (unsigned i = 0; i < k; ++i) out = out * t;
    return out;
}

}  // namespace

ProjectionReport projection_functional(const IntMatrix& t, std::int64_t p, unsigned m) {
    if (m == 0) throw ConfigError("root-of-unity order must be positive");
    check_modulus(p);
    if (!is_prime(p)) throw MathError("projection analysis is restricted to prime moduli; " + std::to_string(p) + " is composite");
    if (!is_admissible(t, p))
        throw MathError("modulus " + std::to_string(p) + " is not coprime to det(T)");
    const CharPoly cp = char_poly(t);
    bool has_root = false;
    for (unsigned k = 1; k <= m && !has_root; ++k)
        if (m % k == 0 && divide(cp.poly(), cyclotomic(k)).exact) has_root = true;
    if (!has_root)
        throw MathError("T has no eigenvalue whose order divides " + std::to_string(m) + "; T^" + std::to_string(m) +
                        " does not have eigenvalue 1");

    const std::size_t d = t.dim();
    const IntMatrix tm = int_pow(t, m);
    const ModMatrix tm_mod(tm, p);
    const auto basis = nullspace_mod_prime(tm_mod.transpose() - ModMatrix::identity(p, d));
    if (basis.empty())
        throw MathError("degenerate prime " + std::to_string(p) + ": (T^m)^t has no fixed vector mod p");

    ProjectionReport rep;
    rep.p = p;
    rep.m = m;
    rep.v = basis.front();
    rep.nullity_mod_p = basis.size();
    rep.nullity_rational = d - rank_rational(tm.transpose() - IntMatrix::identity(d));
    rep.degenerate = rep.nullity_mod_p != rep.nullity_rational;

    // Block increment sum_{j<m} pi(T^j B_j'); pi(T^j e_r) = ((T^j)^t v)_r.
    std::map<std::int64_t, BigInt> counts{{0, BigInt(1)}};
    ModVector w = rep.v;
    const ModMatrix tt = ModMatrix(t, p).transpose();
    for (unsigned j = 0; j < m; ++j) {
        std::map<std::int64_t, BigInt> next;
        for (const auto& [s, cnt] : counts) {
            next[s] += cnt;  // B = 0
            for (std::size_t r = 0; r < d; ++r) next[reduce_mod(s + w[r], p)] += cnt;
        }
        counts = std::move(next);
        w = tt.apply(w);
    }
    BigInt total = 1;
    for (unsigned j = 0; j < m; ++j) total *= static_cast<unsigned>(d + 1);
    const double denom = total.convert_to<double>();
    for (const auto& [s, cnt] : counts) rep.increments.emplace_back(s, cnt.convert_to<double>() / denom);
    return rep;
}

std::vector<double> projected_walk_dist(const ProjectionReport& report, std::uint64_t blocks) {
    const auto p = static_cast<std::size_t>(report.p);
    std::vector<double> cur(p, 0.0), next(p);
    cur[0] = 1.0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s < p; ++s) {
            if (cur[s] == 0.0) continue;
            for (const auto& [inc, prob] : report.increments) next[(s + static_cast<std::size_t>(inc)) % p] += cur[s] * prob;
        }
        std::swap(cur, next);
    }
    return cur;
}

std::optional<std::uint64_t> projected_mixing_blocks(const ProjectionReport& report, double eps,
                                                     std::uint64_t max_blocks) {
    const auto p = static_cast<std::size_t>(report.p);
    std::vector<double> cur(p, 0.0), next(p);
    cur[0] = 1.0;
    for (std::uint64_t b = 0;; ++b) {
        if (tv_to_uniform(cur) <= eps) return b;
        if (b == max_blocks) return std::nullopt;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s < p; ++s) {
            if (cur[s] == 0.0) continue;
            for (const auto& [inc, prob] : report.increments) next[(s + static_cast<std::size_t>(inc)) % p] += cur[s] * prob;
        }
        std::swap(cur, next);
    }
}

// ---------------------------------------------------------------------------

std::string to_string(SweepMethod m) {
    switch (m) {
        case SweepMethod::Exact: return "exact";
        case SweepMethod::Ub: return "ub";
        case SweepMethod::Projected: return "projected";
    }
    return "ub";
}

SweepMethod sweep_method_from_string(const std::string& s) {
    if (s == "exact") return SweepMethod::Exact;
    if (s == "ub") return SweepMethod::Ub;
    if (s == "projected") return SweepMethod::Projected;
    throw ConfigError("unknown sweep method '" + s + "' (expected exact, ub or projected)");
}

namespace {

SweepCell run_cell(const SweepMatrix& mat, const SpectrumReport& spec, std::int64_t p, double eps, SweepMethod method,
                   const SweepOptions& opts) {
    SweepCell cell{mat.tag, p, method, std::nullopt, ""};
    try {
        if (method == SweepMethod::Projected) {
            if (spec.classification != SpectrumClass::RootOfUnity)
                throw MathError("projected sweeps need a root-of-unity eigenvalue; matrix is " +
                                to_string(spec.classification));
            const auto rep = projection_functional(mat.t, p, *spec.order);
            const auto blocks = projected_mixing_blocks(rep, eps, opts.n_max / rep.m);
            if (!blocks) throw BudgetError("not mixed by n_max = " + std::to_string(opts.n_max));
            cell.n_mix = *blocks * rep.m;
            return cell;
        }
        const WalkConfig cfg(mat.t, p);
        FourierOptions fopts{opts.character_cap, 1};
        const auto res = mixing_time(cfg, eps, method == SweepMethod::Exact ? MixMethod::Exact : MixMethod::Ub,
                                     opts.n_max, fopts, opts.state_cap);
        if (!res.n) throw BudgetError("not mixed by n_max = " + std::to_string(opts.n_max));
        cell.n_mix = res.n;
    } catch (const Error& e) {
        cell.error = e.what();
    }
    return cell;
}

ScalingFit fit_cells(const std::string& tag, const SpectrumReport& spec, const std::vector<SweepCell>& cells) {
    ScalingFit fit;
    fit.tag = tag;
    std::vector<double> lp, ln;
    for (const auto& c : cells)
        if (c.tag == tag && c.n_mix && *c.n_mix > 0) {
            lp.push_back(std::log(static_cast<double>(c.p)));
            ln.push_back(std::log(static_cast<double>(*c.n_mix)));
        }
    fit.points = lp.size();
    if (spec.classification == SpectrumClass::AllOffUnitCircle) {
        fit.law = "log2";
        if (lp.empty()) return fit;
        // ln n = ln C + 2 ln ln p
        double acc = 0;
        for (std::size_t i = 0; i < lp.size(); ++i) acc += ln[i] - 2.0 * std::log(lp[i]);
        const double log_c = acc / static_cast<double>(lp.size());
        fit.parameter = std::exp(log_c);
        for (std::size_t i = 0; i < lp.size(); ++i) fit.residuals.push_back(ln[i] - log_c - 2.0 * std::log(lp[i]));
    } else if (spec.classification == SpectrumClass::RootOfUnity) {
        fit.law = "power";
        if (lp.size() < 2) return fit;
        // ln n = ln a + b ln p, ordinary least squares
        const double mx = std::accumulate(lp.begin(), lp.end(), 0.0) / static_cast<double>(lp.size());
        const double my = std::accumulate(ln.begin(), ln.end(), 0.0) / static_cast<double>(ln.size());
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lp.size(); ++i) {
            sxx += (lp[i] - mx) * (lp[i] - mx);
            sxy += (lp[i] - mx) * (ln[i] - my);
        }
        if (sxx == 0) return fit;
        const double b = sxy / sxx;
        const double a = my - b * mx;
        fit.parameter = b;
        for (std::size_t i = 0; i < lp.size(); ++i) fit.residuals.push_back(ln[i] - a - b * lp[i]);
    } else {
        fit.law = "none";
    }
    return fit;
}

}  // namespace

ScalingReport scaling_sweep(const std::vector<SweepMatrix>& matrices, const std::vector<std::int64_t>& ps, double eps,
                            SweepMethod method, SweepOptions opts) {
    ScalingReport report;
    if (ps.empty() || matrices.empty()) return report;

    std::vector<SpectrumReport> spectra;
    spectra.reserve(matrices.size());
    for (const auto& m : matrices) spectra.push_back(classify(m.t));

    const std::size_t cells = matrices.size() * ps.size();
    report.cells.resize(cells);
    parallel_chunks(cells, 1, opts.threads, [&](std::size_t k, std::size_t, std::size_t) {
        const std::size_t mi = k / ps.size();
        report.cells[k] = run_cell(matrices[mi], spectra[mi], ps[k % ps.size()], eps, method, opts);
    });
    for (std::size_t mi = 0; mi < matrices.size(); ++mi)
        report.fits.push_back(fit_cells(matrices[mi].tag, spectra[mi], report.cells));
    return report;
}

}  // namespace affwalk
