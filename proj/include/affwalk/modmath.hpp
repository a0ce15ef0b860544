#pragma once

// Exact integer and modular linear algebra over Z and Z/pZ.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace affwalk {

using BigInt = boost::multiprecision::cpp_int;

/// Square matrix of exact signed integers.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t dim);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    /// Throws ConfigError unless the rows form a non-empty square matrix.
    static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
    static IntMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    std::vector<std::vector<BigInt>> rows() const;
    /// "a,b;c,d" with rows separated by ';'.
    std::string to_string() const;

private:
    std::size_t dim_ = 0;
    std::vector<BigInt> a_;
};

/// Vector over Z/pZ; every entry lives in [0, p).
class ModVector {
public:
    ModVector() = default;
    ModVector(std::int64_t modulus, std::vector<std::int64_t> values);

    std::int64_t modulus() const noexcept { return p_; }
    std::size_t size() const noexcept { return v_.size(); }
    std::int64_t operator[](std::size_t i) const { return v_[i]; }
    std::span<const std::int64_t> values() const noexcept { return v_; }
    bool is_zero() const;

    bool operator==(const ModVector& rhs) const = default;
    auto operator<=>(const ModVector& rhs) const = default;

private:
    std::int64_t p_ = 0;
    std::vector<std::int64_t> v_;
};

/// Integer representatives in (-p/2, p/2].
class CenteredVector {
public:
    std::int64_t modulus() const noexcept { return p_; }
    std::size_t size() const noexcept { return v_.size(); }
    std::int64_t operator[](std::size_t i) const { return v_[i]; }
    std::span<const std::int64_t> values() const noexcept { return v_; }
    /// Largest |entry|; 0 for the empty vector.
    std::int64_t max_abs() const;

private:
    friend CenteredVector center(const ModVector& v);
    std::int64_t p_ = 0;
    std::vector<std::int64_t> v_;
};

/// Square matrix of residues mod p.
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(std::int64_t modulus, std::size_t dim);
    ModMatrix(const IntMatrix& m, std::int64_t modulus);

    static ModMatrix identity(std::int64_t modulus, std::size_t dim);

    std::int64_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    /// Stores value reduced into [0, p).
    void set(std::size_t i, std::size_t j, std::int64_t value);

    ModMatrix transpose() const;
    ModMatrix operator*(const ModMatrix& rhs) const;
    ModMatrix operator-(const ModMatrix& rhs) const;
    ModVector apply(const ModVector& v) const;
    /// In-place y = A x on raw residues; x and y must not alias.
    void apply(std::span<const std::int64_t> x, std::span<std::int64_t> y) const;

    bool operator==(const ModMatrix& rhs) const = default;

private:
    std::int64_t p_ = 0;
    std::size_t dim_ = 0;
    std::vector<std::int64_t> a_;
};

// Scalar residue helpers. Moduli are limited to [2, 2^62].
void check_modulus(std::int64_t p);
std::int64_t reduce_mod(std::int64_t x, std::int64_t p);
std::int64_t reduce_mod(const BigInt& x, std::int64_t p);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p);
std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p);
/// Throws MathError when gcd(a, p) != 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t p);
/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::int64_t n);

BigInt int_det(const IntMatrix& t);
bool is_admissible(const IntMatrix& t, std::int64_t p);
ModMatrix mat_pow_mod(const IntMatrix& t, std::uint64_t k, std::int64_t p);
ModMatrix mat_pow_mod(const ModMatrix& t, std::uint64_t k);
CenteredVector center(const ModVector& v);

/// Basis of {v : A v = 0 mod p}, one vector per free column in column order,
/// each scaled so its first non-zero entry is 1. Throws MathError if p is not prime.
std::vector<ModVector> nullspace_mod_prime(const ModMatrix& a);
std::size_t rank_mod_prime(const ModMatrix& a);
/// Rank over the rationals (fraction-free elimination).
std::size_t rank_rational(const IntMatrix& a);

}  // namespace affwalk
