#pragma once

// Fourier analysis of the affine walk on (Z/pZ)^d.
//
// Characters are indexed by c in (Z/pZ)^d, rho_c(b) = q^(b.c) with
// q = exp(2 pi i / p). The transform obeys
//     P^_{n+1}(c) = f(c) P^_n(T^t c),   f(c) = (1 + sum_r q^(c_r)) / (d + 1),
// so P^_n(c) is the product of f along the orbit c, T^t c, (T^t)^2 c, ...

#include "affwalk/exactdist.hpp"
#include "affwalk/modmath.hpp"
#include "affwalk/parallel.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace affwalk {

using CharacterIndex = ModVector;

inline constexpr std::uint64_t kDefaultCharacterCap = 1'000'000;
inline constexpr double kDefaultLargeFraction = 0.125;

struct FourierOptions {
    std::uint64_t character_cap = kDefaultCharacterCap;
    std::size_t threads = default_threads();
};

/// Single-step multiplier f(c).
std::complex<double> step_factor(const CharacterIndex& c);

/// Certified contraction: |f(c)| <= 1 - gap whenever some centered |c_r| >= fraction * p.
double contraction_gap(std::size_t d, double fraction);

/// P^_n(c) via the orbit of c under T^t. Once the orbit closes, the cycle
/// product is raised to the number of full periods (log-magnitude, so large n
/// cannot underflow spuriously). Requires an admissible configuration.
std::complex<double> fourier_n(const CharacterIndex& c, std::uint64_t n, const WalkConfig& cfg);

/// P^_n(c) for every character at once, advanced one step at a time.
class FourierEvolver {
public:
    explicit FourierEvolver(const WalkConfig& cfg, FourierOptions opts = {});

    std::uint64_t steps() const noexcept { return steps_; }
    std::span<const std::complex<double>> values() const noexcept { return values_; }
    void step();

    /// (1/2) sqrt(sum over c != 0 of |P^_n(c)|^2). Bit-identical for any thread count.
    double upper_bound() const;
    /// max over c != 0 of |P^_n(c)| / 2.
    double lower_bound() const;

private:
    std::int64_t p_;
    std::size_t d_;
    std::size_t threads_;
    std::vector<std::uint64_t> pull_;  // index of T^t c
    std::vector<std::complex<double>> factor_;
    std::vector<std::complex<double>> values_;
    std::uint64_t steps_ = 0;
};

/// Upper bound on TV(P_n, U) from the squared character sum. Throws
/// BudgetError when p^d exceeds the character cap.
double ub_bound(std::uint64_t n, const WalkConfig& cfg, FourierOptions opts = {});

/// max over candidates of |P^_n(c)| / 2, a lower bound on TV(P_n, U).
/// Throws ConfigError for an empty list or a zero candidate.
double char_lower_bound(std::uint64_t n, const WalkConfig& cfg, std::span<const CharacterIndex> candidates);

// ---------------------------------------------------------------------------
// Orbit analysis

struct OrbitRecord {
    CharacterIndex c;
    std::vector<ModVector> orbit;                 // (T^t)^l c for l = 0, 1, ... until l_max or a repeat
    std::vector<std::int64_t> max_centered;       // max |center(orbit[l])_i|
    std::optional<std::uint64_t> cycle_start;     // set once a repeat is seen
    std::optional<std::uint64_t> cycle_length;
    std::optional<std::uint64_t> first_large;     // least l with max_centered[l] >= fraction * p
    double large_fraction = kDefaultLargeFraction;
    std::uint64_t l_max = 0;
};

/// ceil(10 log2 p)
std::uint64_t default_orbit_length(std::int64_t p);

/// Throws ConfigError for c = 0 or fraction outside (0, 1/2].
OrbitRecord orbit_analysis(const CharacterIndex& c, const WalkConfig& cfg, double fraction, std::uint64_t l_max);

struct OrbitSweep {
    std::uint64_t characters = 0;
    std::uint64_t misses = 0;                     // characters never reaching the threshold within l_max
    std::uint64_t max_first_large = 0;            // over characters that did reach it
    std::optional<CharacterIndex> worst;          // a character attaining max_first_large
    double fitted_log_constant = 0;               // max_first_large / ln p
};

OrbitSweep orbit_sweep(const WalkConfig& cfg, std::span<const CharacterIndex> chars, double fraction,
                       std::uint64_t l_max, std::size_t threads = default_threads());

/// Every non-zero character in index order. Throws BudgetError above `cap`.
std::vector<CharacterIndex> all_nonzero_characters(std::int64_t p, std::size_t d,
                                                   std::uint64_t cap = kDefaultCharacterCap);

// ---------------------------------------------------------------------------
// Mixing time and bound series

enum class MixMethod { Exact, Ub };

std::string to_string(MixMethod m);
MixMethod mix_method_from_string(const std::string& s);

struct MixingResult {
    std::optional<std::uint64_t> n;  // absent: not mixed by n_max
    std::uint64_t n_max = 0;
    double value = 0;                // distance (or bound) at n, or at n_max when unmixed
};

inline constexpr std::uint64_t kDefaultMixingCap = 100'000;

/// Least n whose distance to uniform (exact TV, or the Fourier upper bound
/// clipped at the trivial value 1 - p^-d) is at most eps.
MixingResult mixing_time(const WalkConfig& cfg, double eps, MixMethod method,
                         std::uint64_t n_max = kDefaultMixingCap, FourierOptions opts = {},
                         std::uint64_t state_cap = kDefaultStateCap);

struct BoundSeries {
    std::vector<std::uint64_t> n;
    std::vector<double> ub;
    std::vector<double> lb;
    std::optional<std::vector<double>> tv_exact;
    bool operator==(const BoundSeries&) const = default;
};

/// Rows for n in [n_first, n_last] (empty when n_first > n_last). The lower
/// bound uses every non-zero character; tv_exact is filled when `with_exact`.
BoundSeries bound_series(const WalkConfig& cfg, std::uint64_t n_first, std::uint64_t n_last, bool with_exact,
                         FourierOptions opts = {}, std::uint64_t state_cap = kDefaultStateCap);

}  // namespace affwalk
