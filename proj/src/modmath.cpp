#include "affwalk/modmath.hpp"

#include "affwalk/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace affwalk {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 62;

using u128 = unsigned __int128;

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> r;
    for (const auto& row : rows) r.emplace_back(row);
    *this = from_rows(r);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
    const std::size_t d = rows.size();
    if (d == 0) throw ConfigError("matrix must have at least one row");
    IntMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d)
            throw ConfigError("matrix must be square: row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(d));
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<BigInt>> big;
    big.reserve(rows.size());
    for (const auto& row : rows) big.emplace_back(row.begin(), row.end());
    return from_rows(big);
}

IntMatrix IntMatrix::identity(std::size_t dim) {
    IntMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    IntMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const BigInt& aik = (*this)(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    IntMatrix out(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    IntMatrix out(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x == 0; });
}

std::vector<std::vector<BigInt>> IntMatrix::rows() const {
    std::vector<std::vector<BigInt>> r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) r[i].assign(a_.begin() + i * dim_, a_.begin() + (i + 1) * dim_);
    return r;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (i) os << ';';
        for (std::size_t j = 0; j < dim_; ++j) {
            if (j) os << ',';
            os << (*this)(i, j);
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Residues

void check_modulus(std::int64_t p) {
    if (p < 2 || p > kMaxModulus)
        throw ConfigError("modulus must lie in [2, 2^62], got " + std::to_string(p));
}

std::int64_t reduce_mod(std::int64_t x, std::int64_t p) {
    std::int64_t r = x % p;
    return r < 0 ? r + p : r;
}

std::int64_t reduce_mod(const BigInt& x, std::int64_t p) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return r.convert_to<std::int64_t>();
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<u128>(a) * static_cast<u128>(b) % static_cast<u128>(p));
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t p) {
    std::int64_t result = 1 % p;
    std::int64_t base = reduce_mod(a, p);
    while (e) {
        if (e & 1) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t r0 = p, r1 = reduce_mod(a, p);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    if (r0 != 1) throw MathError(std::to_string(a) + " is not invertible mod " + std::to_string(p));
    return reduce_mod(s0, p);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = static_cast<std::uint64_t>(n) - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses are sufficient for every n < 2^64.
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

ModVector::ModVector(std::int64_t modulus, std::vector<std::int64_t> values) : p_(modulus), v_(std::move(values)) {
    check_modulus(p_);
    for (auto& x : v_) x = reduce_mod(x, p_);
}

bool ModVector::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t CenteredVector::max_abs() const {
    std::int64_t m = 0;
    for (auto x : v_) m = std::max(m, x < 0 ? -x : x);
    return m;
}

CenteredVector center(const ModVector& v) {
    CenteredVector out;
    out.p_ = v.modulus();
    out.v_.reserve(v.size());
    for (auto r : v.values()) {
        // r <= p/2 stays; the half-open range keeps +p/2 for even p.
        out.v_.push_back(2 * r <= out.p_ ? r : r - out.p_);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ModMatrix

ModMatrix::ModMatrix(std::int64_t modulus, std::size_t dim) : p_(modulus), dim_(dim), a_(dim * dim, 0) {
    check_modulus(p_);
}

ModMatrix::ModMatrix(const IntMatrix& m, std::int64_t modulus) : ModMatrix(modulus, m.dim()) {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) a_[i * dim_ + j] = reduce_mod(m(i, j), p_);
}

ModMatrix ModMatrix::identity(std::int64_t modulus, std::size_t dim) {
    ModMatrix m(modulus, dim);
    for (std::size_t i = 0; i < dim; ++i) m.a_[i * dim + i] = 1 % modulus;
    return m;
}

void ModMatrix::set(std::size_t i, std::size_t j, std::int64_t value) {
    a_[i * dim_ + j] = reduce_mod(value, p_);
}

ModMatrix ModMatrix::transpose() const {
    ModMatrix t(p_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) t.a_[j * dim_ + i] = a_[i * dim_ + j];
    return t;
}

ModMatrix ModMatrix::operator*(const ModMatrix& rhs) const {
    ModMatrix out(p_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            u128 acc = 0;
            for (std::size_t k = 0; k < dim_; ++k) {
                acc += static_cast<u128>(a_[i * dim_ + k]) * static_cast<u128>(rhs.a_[k * dim_ + j]);
                acc %= static_cast<u128>(p_);
            }
            out.a_[i * dim_ + j] = static_cast<std::int64_t>(acc);
        }
    return out;
}

ModMatrix ModMatrix::operator-(const ModMatrix& rhs) const {
    ModMatrix out(p_, dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = reduce_mod(a_[i] - rhs.a_[i], p_);
    return out;
}

ModVector ModMatrix::apply(const ModVector& v) const {
    std::vector<std::int64_t> y(dim_);
    apply(v.values(), y);
    return ModVector(p_, std::move(y));
}

void ModMatrix::apply(std::span<const std::int64_t> x, std::span<std::int64_t> y) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        u128 acc = 0;
        for (std::size_t k = 0; k < dim_; ++k) {
            acc += static_cast<u128>(a_[i * dim_ + k]) * static_cast<u128>(x[k]);
            acc %= static_cast<u128>(p_);
        }
        y[i] = static_cast<std::int64_t>(acc);
    }
}

// ---------------------------------------------------------------------------
// Integer linear algebra

BigInt int_det(const IntMatrix& t) {
    const std::size_t d = t.dim();
    if (d == 0) return 1;
    // Bareiss fraction-free elimination: every division below is exact.
    std::vector<BigInt> m(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i * d + j] = t(i, j);
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (m[k * d + k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < d && m[swap_row * d + k] == 0) ++swap_row;
            if (swap_row == d) return 0;
            for (std::size_t j = 0; j < d; ++j) std::swap(m[k * d + j], m[swap_row * d + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i) {
            for (std::size_t j = k + 1; j < d; ++j)
                m[i * d + j] = (m[k * d + k] * m[i * d + j] - m[i * d + k] * m[k * d + j]) / prev;
            m[i * d + k] = 0;
        }
        prev = m[k * d + k];
    }
    BigInt det = m[d * d - 1];
    return sign < 0 ? BigInt(-det) : det;
}

bool is_admissible(const IntMatrix& t, std::int64_t p) {
    check_modulus(p);
    BigInt det = int_det(t);
    if (det == 0) return false;
    if (det < 0) det = -det;
    return boost::multiprecision::gcd(det, BigInt(p)) == 1;
}

ModMatrix mat_pow_mod(const ModMatrix& t, std::uint64_t k) {
    ModMatrix result = ModMatrix::identity(t.modulus(), t.dim());
    ModMatrix base = t;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

ModMatrix mat_pow_mod(const IntMatrix& t, std::uint64_t k, std::int64_t p) {
    return mat_pow_mod(ModMatrix(t, p), k);
}

namespace {

// Reduced row echelon form in place; returns pivot column of each pivot row.
std::vector<std::size_t> rref_mod_prime(std::vector<std::int64_t>& m, std::size_t rows, std::size_t cols,
                                        std::int64_t p) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m[r * cols + j], m[piv * cols + j]);
        const std::int64_t inv = inv_mod(m[r * cols + c], p);
        for (std::size_t j = 0; j < cols; ++j) m[r * cols + j] = mul_mod(m[r * cols + j], inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const std::int64_t f = m[i * cols + c];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                m[i * cols + j] = reduce_mod(m[i * cols + j] - mul_mod(f, m[r * cols + j], p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::int64_t> entries_of(const ModMatrix& a) {
    std::vector<std::int64_t> m(a.dim() * a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m[i * a.dim() + j] = a(i, j);
    return m;
}

void require_prime(std::int64_t p) {
    if (!is_prime(p))
        throw MathError("modulus " + std::to_string(p) +
                        " is not prime; nullspace computations require a field");
}

}  // namespace

std::vector<ModVector> nullspace_mod_prime(const ModMatrix& a) {
    const std::int64_t p = a.modulus();
    require_prime(p);
    const std::size_t d = a.dim();
    auto m = entries_of(a);
    const auto pivots = rref_mod_prime(m, d, d, p);

    std::vector<bool> is_pivot(d, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<ModVector> basis;
    for (std::size_t free = 0; free < d; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::int64_t> v(d, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = reduce_mod(-m[r * d + free], p);
        auto lead = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
        const std::int64_t scale = inv_mod(*lead, p);
        for (auto& x : v) x = mul_mod(x, scale, p);
        basis.emplace_back(p, std::move(v));
    }
    return basis;
}

std::size_t rank_mod_prime(const ModMatrix& a) {
    require_prime(a.modulus());
    auto m = entries_of(a);
    return rref_mod_prime(m, a.dim(), a.dim(), a.modulus()).size();
}

std::size_t rank_rational(const IntMatrix& a) {
    const std::size_t d = a.dim();
    auto rows = a.rows();
    std::size_t r = 0;
    for (std::size_t c = 0; c < d && r < d; ++c) {
        std::size_t piv = r;
        while (piv < d && rows[piv][c] == 0) ++piv;
        if (piv == d) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < d; ++i) {
            if (rows[i][c] == 0) continue;
            const BigInt f = rows[i][c];
            const BigInt g = rows[r][c];
            BigInt content = 0;
            for (std::size_t j = 0; j < d; ++j) {
                rows[i][j] = g * rows[i][j] - f * rows[r][j];
                content = boost::multiprecision::gcd(content, rows[i][j]);
            }
            if (content > 1)
                for (auto& x : rows[i]) x /= content;
        }
        ++r;
    }
    return r;
}

}  // namespace affwalk
