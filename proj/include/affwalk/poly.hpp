#pragma once

// Dense univariate polynomials with exact integer coefficients, stored in
// ascending order of degree. The zero polynomial has no coefficients.

#include "affwalk/modmath.hpp"

#include <complex>
#include <string>
#include <vector>

namespace affwalk {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> ascending);
    IntPoly(std::initializer_list<long long> ascending);

    /// x^n - 1
    static IntPoly x_pow_minus_one(unsigned n);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<BigInt>& coeffs() const noexcept { return c_; }
    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    const BigInt& leading() const { return c_.back(); }

    IntPoly derivative() const;
    /// x^deg * f(1/x)
    IntPoly reciprocal() const;
    BigInt content() const;
    /// Divides by the content and makes the leading coefficient positive.
    IntPoly primitive() const;

    IntPoly operator*(const IntPoly& rhs) const;
    IntPoly operator-(const IntPoly& rhs) const;
    bool operator==(const IntPoly& rhs) const = default;

    std::complex<double> eval(std::complex<double> x) const;
    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> c_;
};

struct PolyDivision {
    IntPoly quotient;
    IntPoly remainder;
    bool exact = false;  // true iff the division was exact over Z with zero remainder
};

/// Division over Z; succeeds exactly only when every step's leading
/// coefficient division is exact.
PolyDivision divide(const IntPoly& num, const IntPoly& den);
/// Throws MathError unless den divides num exactly over Z.
IntPoly divide_exact(const IntPoly& num, const IntPoly& den);
/// True iff den divides num in Q[x].
bool divides(const IntPoly& den, const IntPoly& num);
/// Primitive gcd over Q[x], normalised to a primitive polynomial with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
/// n-th cyclotomic polynomial.
IntPoly cyclotomic(unsigned n);
unsigned euler_phi(unsigned n);

}  // namespace affwalk
