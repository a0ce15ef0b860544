#pragma once

// Trajectory simulation, the projected walk pi(X_{km}) used to exhibit slow
// mixing when T has a root-of-unity eigenvalue, and scaling sweeps of the
// mixing time across moduli.

#include "affwalk/exactdist.hpp"
#include "affwalk/fourier.hpp"
#include "affwalk/modmath.hpp"
#include "affwalk/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace affwalk {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct TrajectoryBatch {
    WalkConfig cfg;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::vector<std::int64_t> coords;  // samples x d, row-major

    ModVector state(std::size_t i) const;
};

/// Trajectory i starts at 0 and draws its steps from Philox4x64(seed, i).
TrajectoryBatch simulate(const WalkConfig& cfg, std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                         std::size_t threads = default_threads());

/// Plug-in TV between the empirical histogram and uniform. Biased upward by
/// roughly sqrt(p^d / samples). Throws BudgetError when p^d exceeds `cap`.
double empirical_tv(const TrajectoryBatch& batch, std::uint64_t cap = kDefaultStateCap);

struct ProjectionReport {
    std::int64_t p = 0;
    unsigned m = 1;
    ModVector v;  // (T^m)^t v = v mod p
    std::vector<std::pair<std::int64_t, double>> increments;  // residue -> probability of one m-step block
    std::size_t support() const noexcept { return increments.size(); }
    std::size_t nullity_mod_p = 0;
    std::size_t nullity_rational = 0;
    /// The mod-p eigenspace is larger than the rational one.
    bool degenerate = false;
};

/// Linear functional pi(x) = v . x fixed by (T^m)^t and the exact law of
/// pi(T^{m-1} B_0 + ... + B_{m-1}) over all (d+1)^m step tuples.
/// Requires p prime and coprime to det T, and some Phi_k (k | m) dividing the
/// characteristic polynomial; throws MathError when the mod-p eigenspace is empty.
ProjectionReport projection_functional(const IntMatrix& t, std::int64_t p, unsigned m);

/// Exact law of pi(X_{blocks m}) on Z/pZ, starting from the point mass at 0.
std::vector<double> projected_walk_dist(const ProjectionReport& report, std::uint64_t blocks);

/// Least number of blocks after which the projected walk is within eps of uniform.
std::optional<std::uint64_t> projected_mixing_blocks(const ProjectionReport& report, double eps,
                                                     std::uint64_t max_blocks);

// ---------------------------------------------------------------------------
// Scaling sweeps

enum class SweepMethod { Exact, Ub, Projected };

std::string to_string(SweepMethod m);
SweepMethod sweep_method_from_string(const std::string& s);

struct SweepMatrix {
    std::string tag;
    IntMatrix t;
};

struct SweepCell {
    std::string tag;
    std::int64_t p = 0;
    SweepMethod method = SweepMethod::Ub;
    std::optional<std::uint64_t> n_mix;
    std::string error;  // empty on success
    bool operator==(const SweepCell&) const = default;
};

struct ScalingFit {
    std::string tag;
    std::string law;                  // "log2": n = C (ln p)^2; "power": n = a p^b; "none"
    std::optional<double> parameter;  // C or b
    std::vector<double> residuals;    // in log space, one per fitted point
    std::size_t points = 0;
    bool operator==(const ScalingFit&) const = default;
};

struct ScalingReport {
    std::vector<SweepCell> cells;
    std::vector<ScalingFit> fits;
};

struct SweepOptions {
    std::uint64_t n_max = kDefaultMixingCap;
    std::uint64_t state_cap = kDefaultStateCap;
    std::uint64_t character_cap = kDefaultCharacterCap;
    std::size_t threads = default_threads();
};

/// n_mix for every (matrix, p) cell; a failing cell records its error and the
/// sweep continues. Matrices classified AllOffUnitCircle get the (ln p)^2 fit,
/// RootOfUnity matrices the power-law fit.
ScalingReport scaling_sweep(const std::vector<SweepMatrix>& matrices, const std::vector<std::int64_t>& ps,
                            double eps, SweepMethod method, SweepOptions opts = {});

}  // namespace affwalk
