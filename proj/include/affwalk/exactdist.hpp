#pragma once

// Exact dense evolution of the affine walk X_{n+1} = T X_n + B_n (mod p) on
// (Z/pZ)^d, where B_n is uniform on {0, e_1, ..., e_d} and X_0 = 0.
//
// States are indexed in mixed radix with coordinate 0 least significant:
// index(x) = x_0 + x_1 p + ... + x_{d-1} p^{d-1}.

#include "affwalk/modmath.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace affwalk {

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

/// The walk (T, p); d is the dimension of T.
class WalkConfig {
public:
    WalkConfig(IntMatrix t, std::int64_t p);

    const IntMatrix& matrix() const noexcept { return t_; }
    std::int64_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return t_.dim(); }
    /// T mod p and its transpose.
    const ModMatrix& matrix_mod() const noexcept { return t_mod_; }
    const ModMatrix& transpose_mod() const noexcept { return tt_mod_; }

    bool admissible() const noexcept { return admissible_; }
    /// Throws MathError with an actionable message when det(T) shares a factor with p.
    void require_admissible() const;

private:
    IntMatrix t_;
    std::int64_t p_;
    ModMatrix t_mod_;
    ModMatrix tt_mod_;
    bool admissible_;
};

/// p^d, throwing BudgetError when it exceeds `cap`.
std::uint64_t checked_state_count(std::int64_t p, std::size_t d, std::uint64_t cap, const char* unit = "states");

std::uint64_t encode_state(std::span<const std::int64_t> x, std::int64_t p);
void decode_state(std::uint64_t index, std::int64_t p, std::span<std::int64_t> x);

class DenseDistribution {
public:
    /// Throws ConfigError on a length mismatch or a negative mass.
    DenseDistribution(std::int64_t p, std::size_t d, std::vector<double> masses);

    std::int64_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return m_.size(); }
    double operator[](std::size_t i) const { return m_[i]; }
    std::span<const double> masses() const noexcept { return m_; }
    double total_mass() const;

private:
    std::int64_t p_;
    std::size_t d_;
    std::vector<double> m_;
};

DenseDistribution delta_at_zero(std::int64_t p, std::size_t d, std::uint64_t cap = kDefaultStateCap);
DenseDistribution uniform_distribution(std::int64_t p, std::size_t d, std::uint64_t cap = kDefaultStateCap);

/// One step of the walk, scattering P(x)/(d+1) onto T x + b.
DenseDistribution step_exact(const DenseDistribution& dist, const WalkConfig& cfg);

/// Repeated stepping from the point mass at 0, reusing the state map x -> T x.
class DenseEvolver {
public:
    explicit DenseEvolver(const WalkConfig& cfg, std::uint64_t cap = kDefaultStateCap);

    const DenseDistribution& current() const noexcept { return dist_; }
    std::uint64_t steps() const noexcept { return steps_; }
    void step();

private:
    std::int64_t p_;
    std::size_t d_;
    std::vector<std::uint64_t> image_;   // index(T x) for every x
    std::vector<std::uint64_t> stride_;  // p^r
    DenseDistribution dist_;
    std::uint64_t steps_ = 0;
};

DenseDistribution evolve(const WalkConfig& cfg, std::uint64_t n, std::uint64_t cap = kDefaultStateCap);

/// Half the L1 distance. Throws ConfigError on a shape mismatch.
double tv_distance(const DenseDistribution& a, const DenseDistribution& b);
double tv_to_uniform(const DenseDistribution& dist);
/// TV between a distribution on Z/pZ and uniform.
double tv_to_uniform(std::span<const double> masses);

/// P^(c) = sum_s P(s) q^(s.c), q = exp(2 pi i / p), one length-p transform per axis.
std::vector<std::complex<double>> dft(const DenseDistribution& dist);

/// Distribution of v . X on Z/pZ for X ~ dist.
std::vector<double> pushforward(const DenseDistribution& dist, const ModVector& v);

}  // namespace affwalk
