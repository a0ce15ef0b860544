#include "affwalk/exactdist.hpp"

#include "affwalk/error.hpp"
#include "affwalk/parallel.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace affwalk {

WalkConfig::WalkConfig(IntMatrix t, std::int64_t p)
    : t_(std::move(t)), p_(p), t_mod_((check_modulus(p), ModMatrix(t_, p))), tt_mod_(t_mod_.transpose()),
      admissible_(is_admissible(t_, p)) {
    if (t_.dim() == 0) throw ConfigError("matrix must be non-empty");
}

void WalkConfig::require_admissible() const {
    if (admissible_) return;
    const BigInt det = int_det(t_);
    if (det == 0) throw MathError("matrix " + t_.to_string() + " is singular (det = 0)");
    throw MathError("modulus " + std::to_string(p_) + " shares a factor with det(T) = " + det.str() +
                    "; choose p coprime to the determinant");
}

std::uint64_t checked_state_count(std::int64_t p, std::size_t d, std::uint64_t cap, const char* unit) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (n > cap / static_cast<std::uint64_t>(p))
            throw BudgetError(std::to_string(p) + "^" + std::to_string(d) + " " + unit + " exceed the cap of " +
                              std::to_string(cap));
        n *= static_cast<std::uint64_t>(p);
    }
    if (n > cap)
        throw BudgetError(std::to_string(p) + "^" + std::to_string(d) + " " + unit + " exceed the cap of " +
                          std::to_string(cap));
    return n;
}

std::uint64_t encode_state(std::span<const std::int64_t> x, std::int64_t p) {
    std::uint64_t idx = 0;
    for (std::size_t i = x.size(); i-- > 0;) idx = idx * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(x[i]);
    return idx;
}

void decode_state(std::uint64_t index, std::int64_t p, std::span<std::int64_t> x) {
    const auto up = static_cast<std::uint64_t>(p);
    for (auto& xi : x) {
        xi = static_cast<std::int64_t>(index % up);
        index /= up;
    }
}

DenseDistribution::DenseDistribution(std::int64_t p, std::size_t d, std::vector<double> masses)
    : p_(p), d_(d), m_(std::move(masses)) {
    check_modulus(p);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < d; ++i) expected *= static_cast<std::uint64_t>(p);
    if (m_.size() != expected)
        throw ConfigError("distribution has " + std::to_string(m_.size()) + " masses, expected p^d = " +
                          std::to_string(expected));
    for (double x : m_)
        if (!(x >= 0)) throw ConfigError("distribution masses must be non-negative");
}

double DenseDistribution::total_mass() const { return pairwise_sum(m_.data(), m_.size()); }

DenseDistribution delta_at_zero(std::int64_t p, std::size_t d, std::uint64_t cap) {
    check_modulus(p);
    std::vector<double> m(checked_state_count(p, d, cap), 0.0);
    m[0] = 1.0;
    return DenseDistribution(p, d, std::move(m));
}

DenseDistribution uniform_distribution(std::int64_t p, std::size_t d, std::uint64_t cap) {
    check_modulus(p);
    const auto n = checked_state_count(p, d, cap);
    return DenseDistribution(p, d, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

namespace {

std::vector<std::uint64_t> strides(std::int64_t p, std::size_t d) {
    std::vector<std::uint64_t> s(d);
    std::uint64_t acc = 1;
    for (std::size_t r = 0; r < d; ++r) {
        s[r] = acc;
        acc *= static_cast<std::uint64_t>(p);
    }
    return s;
}

// Adds `mass` to y + b for every b in {0, e_1, ..., e_d}.
inline void scatter(std::vector<double>& out, std::uint64_t y, double mass, std::int64_t p,
                    const std::vector<std::uint64_t>& stride) {
    const auto up = static_cast<std::uint64_t>(p);
    out[y] += mass;
    for (std::size_t r = 0; r < stride.size(); ++r) {
        const std::uint64_t digit = (y / stride[r]) % up;
        const std::uint64_t target = digit + 1 < up ? y + stride[r] : y - (up - 1) * stride[r];
        out[target] += mass;
    }
}

void check_same_shape(const DenseDistribution& dist, const WalkConfig& cfg) {
    if (dist.modulus() != cfg.modulus() || dist.dim() != cfg.dim())
        throw ConfigError("distribution shape does not match the walk configuration");
}

}  // namespace

DenseDistribution step_exact(const DenseDistribution& dist, const WalkConfig& cfg) {
    cfg.require_admissible();
    check_same_shape(dist, cfg);
    const std::int64_t p = cfg.modulus();
    const std::size_t d = cfg.dim();
    const auto stride = strides(p, d);
    const double share = 1.0 / static_cast<double>(d + 1);

    std::vector<double> out(dist.size(), 0.0);
    std::vector<std::int64_t> x(d), y(d);
    for (std::uint64_t i = 0; i < dist.size(); ++i) {
        if (dist[i] == 0.0) continue;
        decode_state(i, p, x);
        cfg.matrix_mod().apply(x, y);
        scatter(out, encode_state(y, p), dist[i] * share, p, stride);
    }
    return DenseDistribution(p, d, std::move(out));
}

DenseEvolver::DenseEvolver(const WalkConfig& cfg, std::uint64_t cap)
    : p_(cfg.modulus()), d_(cfg.dim()), stride_(strides(cfg.modulus(), cfg.dim())),
      dist_(delta_at_zero(cfg.modulus(), cfg.dim(), cap)) {
    cfg.require_admissible();
    image_.resize(dist_.size());
    std::vector<std::int64_t> x(d_, 0), y(d_);
    for (std::uint64_t i = 0; i < image_.size(); ++i) {
        cfg.matrix_mod().apply(x, y);
        image_[i] = encode_state(y, p_);
        // odometer increment of x
        for (std::size_t r = 0; r < d_; ++r) {
            if (++x[r] < p_) break;
            x[r] = 0;
        }
    }
}

void DenseEvolver::step() {
    const double share = 1.0 / static_cast<double>(d_ + 1);
    std::vector<double> next(image_.size(), 0.0);
    const auto masses = dist_.masses();
    for (std::uint64_t i = 0; i < image_.size(); ++i) {
        if (masses[i] == 0.0) continue;
        scatter(next, image_[i], masses[i] * share, p_, stride_);
    }
    dist_ = DenseDistribution(p_, d_, std::move(next));
    ++steps_;
}

DenseDistribution evolve(const WalkConfig& cfg, std::uint64_t n, std::uint64_t cap) {
    DenseEvolver ev(cfg, cap);
    for (std::uint64_t i = 0; i < n; ++i) ev.step();
    return ev.current();
}

double tv_distance(const DenseDistribution& a, const DenseDistribution& b) {
    if (a.modulus() != b.modulus() || a.dim() != b.dim())
        throw ConfigError("total variation requires distributions on the same group");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = std::abs(a[i] - b[i]);
    return 0.5 * pairwise_sum(diff.data(), diff.size());
}

double tv_to_uniform(std::span<const double> masses) {
    const double u = 1.0 / static_cast<double>(masses.size());
    std::vector<double> diff(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i) diff[i] = std::abs(masses[i] - u);
    return 0.5 * pairwise_sum(diff.data(), diff.size());
}

double tv_to_uniform(const DenseDistribution& dist) { return tv_to_uniform(dist.masses()); }

std::vector<std::complex<double>> dft(const DenseDistribution& dist) {
    const std::int64_t p = dist.modulus();
    const auto up = static_cast<std::uint64_t>(p);
    std::vector<std::complex<double>> roots(up);
    for (std::uint64_t j = 0; j < up; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p);
        roots[j] = {std::cos(angle), std::sin(angle)};
    }

    std::vector<std::complex<double>> data(dist.masses().begin(), dist.masses().end());
    std::vector<std::complex<double>> line(up), transformed(up);
    const auto stride = strides(p, dist.dim());
    const std::uint64_t n = data.size();
    for (std::size_t axis = 0; axis < dist.dim(); ++axis) {
        const std::uint64_t s = stride[axis];
        for (std::uint64_t base = 0; base < n; ++base) {
            if ((base / s) % up != 0) continue;  // first element of each line along `axis`
            for (std::uint64_t k = 0; k < up; ++k) line[k] = data[base + k * s];
            for (std::uint64_t c = 0; c < up; ++c) {
                std::complex<double> acc = 0;
                for (std::uint64_t k = 0; k < up; ++k) acc += line[k] * roots[(k * c) % up];
                transformed[c] = acc;
            }
            for (std::uint64_t c = 0; c < up; ++c) data[base + c * s] = transformed[c];
        }
    }
    return data;
}

std::vector<double> pushforward(const DenseDistribution& dist, const ModVector& v) {
    const std::int64_t p = dist.modulus();
    if (v.modulus() != p || v.size() != dist.dim())
        throw ConfigError("functional does not match the distribution's group");
    std::vector<double> out(static_cast<std::size_t>(p), 0.0);
    std::vector<std::int64_t> x(dist.dim(), 0);
    for (std::uint64_t i = 0; i < dist.size(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t r = 0; r < x.size(); ++r) acc = reduce_mod(acc + mul_mod(v[r], x[r], p), p);
        out[static_cast<std::size_t>(acc)] += dist[i];
        for (std::size_t r = 0; r < x.size(); ++r) {
            if (++x[r] < p) break;
            x[r] = 0;
        }
    }
    return out;
}

}  // namespace affwalk
