#pragma once

// Spectral classification of an integer matrix T: the eigenvalue dichotomy
// (no unit-modulus eigenvalues vs. a root-of-unity eigenvalue) that decides
// between fast and slow mixing, plus closed-form powers of Jordan blocks.

#include "affwalk/modmath.hpp"
#include "affwalk/poly.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace affwalk {

/// Monic characteristic polynomial det(xI - T), ascending coefficients.
class CharPoly {
public:
    CharPoly() = default;
    /// Throws ConfigError if `poly` is not monic.
    explicit CharPoly(IntPoly poly);

    std::size_t degree() const noexcept { return static_cast<std::size_t>(poly_.degree()); }
    const IntPoly& poly() const noexcept { return poly_; }
    const std::vector<BigInt>& coeffs() const noexcept { return poly_.coeffs(); }
    bool operator==(const CharPoly& rhs) const = default;

private:
    IntPoly poly_;
};

struct Eigenvalue {
    std::complex<double> value;
    unsigned multiplicity = 1;
};

enum class SpectrumClass {
    Singular,
    AllOffUnitCircle,
    RootOfUnity,
    UnitModulusNonCyclotomic,
    Borderline,
};

std::string to_string(SpectrumClass c);
/// Throws ConfigError on an unknown tag.
SpectrumClass spectrum_class_from_string(const std::string& tag);

struct SpectrumReport {
    CharPoly charpoly;
    BigInt determinant;
    std::vector<Eigenvalue> eigenvalues;  // empty for Singular matrices only when roots were not requested
    std::vector<double> moduli;           // parallel to eigenvalues
    SpectrumClass classification = SpectrumClass::Borderline;
    std::optional<unsigned> order;        // root-of-unity order m when classification == RootOfUnity
    double tolerance = 1e-9;
};

inline constexpr double kDefaultSpectralTolerance = 1e-9;

CharPoly char_poly(const IntMatrix& t);

/// All roots of `cp` with multiplicities. Multiplicities come from an exact
/// square-free decomposition; each square-free factor is solved by Aberth
/// iteration with residual certification, doubling the working precision
/// (double, long double, 50 and 100 decimal digits) until certified. Roots
/// closer than `tol` are merged. Throws MathError if no precision certifies.
std::vector<Eigenvalue> complex_roots(const CharPoly& cp, double tol);
std::vector<Eigenvalue> complex_roots(const IntPoly& f, double tol);

/// Smallest m with Phi_m | cp over Z, searching every k <= 2 d^2 with phi(k) <= d.
std::optional<unsigned> cyclotomic_order(const CharPoly& cp);

SpectrumReport classify(const IntMatrix& t, double tol = kDefaultSpectralTolerance);

// ---------------------------------------------------------------------------
// Jordan blocks

struct JordanBlockSpec {
    std::complex<double> eigenvalue;
    std::size_t size = 1;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    std::complex<double>& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::complex<double>> a_;
};

/// Explicit upper bidiagonal block: eigenvalue on the diagonal, ones above it.
ComplexMatrix jordan_block(const JordanBlockSpec& block);

/// Closed form for J^l: entry (i, j) is binom(l, j-i) a^(l-(j-i)) for i <= j, else 0.
/// Binomials are computed exactly before conversion.
ComplexMatrix jordan_power(const JordanBlockSpec& block, std::uint64_t exponent);

}  // namespace affwalk
