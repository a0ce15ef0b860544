#include "affwalk/poly.hpp"

#include "affwalk/error.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace affwalk {

IntPoly::IntPoly(std::vector<BigInt> ascending) : c_(std::move(ascending)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> ascending) : c_(ascending.begin(), ascending.end()) { trim(); }

IntPoly IntPoly::x_pow_minus_one(unsigned n) {
    std::vector<BigInt> c(n + 1, 0);
    c[0] = -1;
    c[n] += 1;
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long long>(i);
    return IntPoly(std::move(d));
}

IntPoly IntPoly::reciprocal() const {
    return IntPoly(std::vector<BigInt>(c_.rbegin(), c_.rend()));
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const auto& x : c_) g = boost::multiprecision::gcd(g, x);
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return {};
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> out(c_);
    for (auto& x : out) x /= g;
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return {};
    std::vector<BigInt> out(c_.size() + rhs.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const {
    std::vector<BigInt> out(std::max(c_.size(), rhs.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) out[i] -= rhs.c_[i];
    return IntPoly(std::move(out));
}

std::complex<double> IntPoly::eval(std::complex<double> x) const {
    std::complex<double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<double>();
    return acc;
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& a = c_[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        BigInt mag = a < 0 ? BigInt(-a) : a;
        if (first)
            os << (a < 0 ? "-" : "");
        else
            os << (a < 0 ? " - " : " + ");
        first = false;
        if (mag != 1 || i == 0) os << mag;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

PolyDivision divide(const IntPoly& num, const IntPoly& den) {
    if (den.is_zero()) throw MathError("polynomial division by zero");
    PolyDivision out;
    std::vector<BigInt> rem = num.coeffs();
    const int dd = den.degree();
    if (num.degree() < dd) {
        out.remainder = num;
        out.exact = num.is_zero();
        return out;
    }
    std::vector<BigInt> quot(static_cast<std::size_t>(num.degree() - dd + 1), 0);
    bool exact = true;
    for (int k = num.degree(); k >= dd; --k) {
        const BigInt& top = rem[static_cast<std::size_t>(k)];
        if (top == 0) continue;
        BigInt q, r;
        boost::multiprecision::divide_qr(top, den.leading(), q, r);
        if (r != 0) {
            exact = false;
            break;
        }
        quot[static_cast<std::size_t>(k - dd)] = q;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k - dd + j)] -= q * den[static_cast<std::size_t>(j)];
    }
    out.quotient = IntPoly(std::move(quot));
    out.remainder = IntPoly(std::move(rem));
    out.exact = exact && out.remainder.is_zero();
    return out;
}

IntPoly divide_exact(const IntPoly& num, const IntPoly& den) {
    auto res = divide(num, den);
    if (!res.exact) throw MathError("polynomial " + den.to_string() + " does not divide " + num.to_string());
    return res.quotient;
}

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r = a.coeffs();
    const int db = b.degree();
    const BigInt& lb = b.leading();
    int dr = a.degree();
    while (dr >= db && dr >= 0) {
        const BigInt top = r[static_cast<std::size_t>(dr)];
        for (auto& x : r) x *= lb;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= top * b[static_cast<std::size_t>(j)];
        IntPoly trimmed(r);
        r = trimmed.coeffs();
        dr = trimmed.degree();
    }
    return IntPoly(std::move(r));
}

}  // namespace

bool divides(const IntPoly& den, const IntPoly& num) {
    if (den.is_zero()) return num.is_zero();
    return pseudo_remainder(num, den).is_zero();
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    IntPoly x = a.primitive();
    IntPoly y = b.primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_remainder(x, y).primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x.primitive();
}

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        while (n % q == 0) n /= q;
        result -= result / q;
    }
    if (n > 1) result -= result / n;
    return result;
}

IntPoly cyclotomic(unsigned n) {
    if (n == 0) throw ConfigError("cyclotomic index must be positive");
    static std::mutex mu;
    static std::map<unsigned, IntPoly> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    // x^n - 1 = prod over divisors k of n of Phi_k.
    IntPoly phi = IntPoly::x_pow_minus_one(n);
    for (unsigned k = 1; k < n; ++k)
        if (n % k == 0) phi = divide_exact(phi, cyclotomic(k));
    std::lock_guard lock(mu);
    cache.emplace(n, phi);
    return phi;
}

}  // namespace affwalk
