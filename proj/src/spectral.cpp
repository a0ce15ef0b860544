#include "affwalk/spectral.hpp"

#include "affwalk/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <type_traits>

namespace affwalk {

CharPoly::CharPoly(IntPoly poly) : poly_(std::move(poly)) {
    if (poly_.is_zero() || poly_.leading() != 1) throw ConfigError("characteristic polynomial must be monic");
}

std::string to_string(SpectrumClass c) {
    switch (c) {
        case SpectrumClass::Singular: return "Singular";
        case SpectrumClass::AllOffUnitCircle: return "AllOffUnitCircle";
        case SpectrumClass::RootOfUnity: return "RootOfUnity";
        case SpectrumClass::UnitModulusNonCyclotomic: return "UnitModulusNonCyclotomic";
        case SpectrumClass::Borderline: return "Borderline";
    }
    return "Borderline";
}

SpectrumClass spectrum_class_from_string(const std::string& tag) {
    for (auto c : {SpectrumClass::Singular, SpectrumClass::AllOffUnitCircle, SpectrumClass::RootOfUnity,
                   SpectrumClass::UnitModulusNonCyclotomic, SpectrumClass::Borderline})
        if (to_string(c) == tag) return c;
    throw ConfigError("unknown spectrum classification '" + tag + "'");
}

// Faddeev-LeVerrier: M_k = T M_{k-1} + c_{d-k+1} I, c_{d-k} = -tr(T M_k) / k.
// The division by k is exact over Z.
CharPoly char_poly(const IntMatrix& t) {
    const std::size_t d = t.dim();
    std::vector<BigInt> c(d + 1, 0);
    c[d] = 1;
    IntMatrix m(d);
    const IntMatrix id = IntMatrix::identity(d);
    for (std::size_t k = 1; k <= d; ++k) {
        IntMatrix scaled_id = id;
        for (std::size_t i = 0; i < d; ++i) scaled_id(i, i) = c[d - k + 1];
        m = t * m + scaled_id;
        const IntMatrix tm = t * m;
        BigInt trace = 0;
        for (std::size_t i = 0; i < d; ++i) trace += tm(i, i);
        BigInt q, r;
        boost::multiprecision::divide_qr(BigInt(-trace), BigInt(k), q, r);
        if (r != 0) throw MathError("internal error: non-integral Faddeev-LeVerrier coefficient");
        c[d - k] = q;
    }
    return CharPoly(IntPoly(std::move(c)));
}

namespace {

// Minimal complex type usable with multiprecision reals.
template <class R>
struct Cx {
    R re{0}, im{0};

    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator/(const Cx& o) const {
        R den = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
    }
    R abs() const {
        using std::sqrt;
        return sqrt(re * re + im * im);
    }
};

template <class R>
R to_real(const BigInt& x) {
    if constexpr (std::is_floating_point_v<R>)
        return x.template convert_to<R>();
    else
        return R(x);
}

template <class R>
double to_double(const R& x) {
    if constexpr (std::is_floating_point_v<R>)
        return static_cast<double>(x);
    else
        return x.template convert_to<double>();
}

template <class R>
R machine_epsilon() {
    return std::numeric_limits<R>::epsilon();
}

// Certified Aberth iteration on a square-free polynomial. Returns false if
// the iteration did not converge or a residual failed certification.
template <class R>
bool aberth(const IntPoly& f, std::vector<std::complex<double>>& out) {
    using std::abs;
    using std::cos;
    using std::sin;
    const int n = f.degree();
    std::vector<R> a(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = to_real<R>(f[static_cast<std::size_t>(i)]);

    auto eval = [&](const Cx<R>& z, Cx<R>& value, Cx<R>& deriv, R& scale) {
        value = {a[static_cast<std::size_t>(n)], R(0)};
        deriv = {R(0), R(0)};
        scale = abs(a[static_cast<std::size_t>(n)]);
        const R mod = z.abs();
        for (int i = n - 1; i >= 0; --i) {
            deriv = deriv * z + value;
            value = value * z + Cx<R>{a[static_cast<std::size_t>(i)], R(0)};
            scale = scale * mod + abs(a[static_cast<std::size_t>(i)]);
        }
    };

    // Cauchy bound on root moduli.
    R bound(0);
    for (int i = 0; i < n; ++i) bound = std::max(bound, R(abs(a[static_cast<std::size_t>(i)]) / abs(a[static_cast<std::size_t>(n)])));
    bound += R(1);

    std::vector<Cx<R>> z(static_cast<std::size_t>(n));
    const R two_pi = R(2) * R(std::numbers::pi_v<double>);
    for (int k = 0; k < n; ++k) {
        R angle = two_pi * R(k) / R(n) + R(0.4);
        R radius = bound * R(0.5) + R(0.1) * R(k + 1) / R(n);
        z[static_cast<std::size_t>(k)] = {radius * cos(angle), radius * sin(angle)};
    }

    const R eps = machine_epsilon<R>();
    const int max_iter = 2000;
    bool converged = false;
    for (int iter = 0; iter < max_iter && !converged; ++iter) {
        converged = true;
        for (int k = 0; k < n; ++k) {
            Cx<R>& zk = z[static_cast<std::size_t>(k)];
            Cx<R> value, deriv;
            R scale;
            eval(zk, value, deriv, scale);
            if (value.abs() <= R(4) * eps * scale) continue;
            Cx<R> ratio = value / deriv;
            Cx<R> sum{R(0), R(0)};
            for (int j = 0; j < n; ++j)
                if (j != k) sum = sum + Cx<R>{R(1), R(0)} / (zk - z[static_cast<std::size_t>(j)]);
            Cx<R> corr = ratio / (Cx<R>{R(1), R(0)} - ratio * sum);
            zk = zk - corr;
            if (corr.abs() > R(4) * eps * std::max(zk.abs(), R(1))) converged = false;
        }
    }

    // Residual certification: backward error within a small multiple of eps.
    const R certify = R(16) * R(n + 1) * eps;
    out.clear();
    for (const auto& zk : z) {
        Cx<R> value, deriv;
        R scale;
        eval(zk, value, deriv, scale);
        if (!(value.abs() <= certify * scale)) return false;
        out.emplace_back(to_double(zk.re), to_double(zk.im));
    }
    // Square-free input: two iterates sharing a root means one root was missed.
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if ((z[i] - z[j]).abs() <= R(1e3) * eps * std::max(z[i].abs(), R(1))) return false;
    return true;
}

// Simple distinct roots of a square-free polynomial, with precision escalation.
std::vector<std::complex<double>> squarefree_roots(const IntPoly& f) {
    std::vector<std::complex<double>> out;
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        out.emplace_back(-(f[0].convert_to<double>() / f[1].convert_to<double>()), 0.0);
        return out;
    }
    using boost::multiprecision::cpp_bin_float_50;
    using boost::multiprecision::cpp_bin_float_100;
    if (aberth<double>(f, out)) return out;
    if (aberth<long double>(f, out)) return out;
    if (aberth<cpp_bin_float_50>(f, out)) return out;
    if (aberth<cpp_bin_float_100>(f, out)) return out;
    throw MathError("root finder failed to certify roots of " + f.to_string());
}

}  // namespace

std::vector<Eigenvalue> complex_roots(const IntPoly& f, double tol) {
    if (!(tol > 0)) throw ConfigError("root tolerance must be positive");
    if (f.is_zero()) throw MathError("the zero polynomial has no finite root set");

    // Exact square-free decomposition: with A_1 = f / gcd(f, f'), f_1 = gcd(f, f'),
    // A_{k+1} = f_k / gcd(f_k, f_k'), the roots of multiplicity exactly k are
    // the roots of A_k / A_{k+1}.
    std::vector<IntPoly> radicals;
    IntPoly current = f.primitive();
    while (current.degree() >= 1) {
        IntPoly g = gcd(current, current.derivative());
        radicals.push_back(divide_exact(current, g).primitive());
        current = g;
    }

    std::vector<Eigenvalue> roots;
    for (std::size_t k = 0; k < radicals.size(); ++k) {
        IntPoly exact_k = radicals[k];
        if (k + 1 < radicals.size()) exact_k = divide_exact(radicals[k], radicals[k + 1]).primitive();
        auto zs = squarefree_roots(exact_k);
        // Roots of a real square-free polynomial come in distinct conjugate
        // pairs; a root that is its own nearest conjugate partner is real.
        for (auto& z : zs) {
            const auto conj_z = std::conj(z);
            const auto nearest = std::min_element(zs.begin(), zs.end(), [&](const auto& a, const auto& b) {
                return std::abs(a - conj_z) < std::abs(b - conj_z);
            });
            if (&*nearest == &z && z.imag() != 0 && std::abs(z.imag()) < 1e-6 * std::max(1.0, std::abs(z))) z.imag(0.0);
        }
        for (const auto& z : zs) roots.push_back({z, static_cast<unsigned>(k + 1)});
    }

    std::sort(roots.begin(), roots.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });

    // Merge clusters closer than tol, keeping summed multiplicity.
    std::vector<Eigenvalue> merged;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        Eigenvalue acc = roots[i];
        std::complex<double> weighted = roots[i].value * static_cast<double>(roots[i].multiplicity);
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j] || std::abs(roots[j].value - roots[i].value) >= tol) continue;
            used[j] = true;
            acc.multiplicity += roots[j].multiplicity;
            weighted += roots[j].value * static_cast<double>(roots[j].multiplicity);
        }
        acc.value = weighted / static_cast<double>(acc.multiplicity);
        merged.push_back(acc);
    }
    return merged;
}

std::vector<Eigenvalue> complex_roots(const CharPoly& cp, double tol) { return complex_roots(cp.poly(), tol); }

std::optional<unsigned> cyclotomic_order(const CharPoly& cp) {
    const unsigned d = static_cast<unsigned>(cp.degree());
    const unsigned limit = std::max(2u, 2 * d * d);
    for (unsigned k = 1; k <= limit; ++k) {
        if (euler_phi(k) > d) continue;
        if (divide(cp.poly(), cyclotomic(k)).exact) return k;
    }
    return std::nullopt;
}

SpectrumReport classify(const IntMatrix& t, double tol) {
    if (!(tol > 0)) throw ConfigError("classification tolerance must be positive");
    SpectrumReport report;
    report.tolerance = tol;
    report.charpoly = char_poly(t);
    report.determinant = int_det(t);
    report.eigenvalues = complex_roots(report.charpoly, tol);
    for (const auto& ev : report.eigenvalues) report.moduli.push_back(std::abs(ev.value));

    if (report.determinant == 0) {
        report.classification = SpectrumClass::Singular;
        return report;
    }
    if (auto m = cyclotomic_order(report.charpoly)) {
        report.classification = SpectrumClass::RootOfUnity;
        report.order = m;
        return report;
    }
    const bool near_unit = std::any_of(report.moduli.begin(), report.moduli.end(),
                                       [tol](double r) { return std::abs(r - 1.0) < tol; });
    if (!near_unit) {
        report.classification = SpectrumClass::AllOffUnitCircle;
        return report;
    }
    // A unit-circle root z of a real polynomial pairs with 1/z = conj(z), so
    // it must be a root of gcd(f, reciprocal(f)).
    const IntPoly& f = report.charpoly.poly();
    const IntPoly shared = gcd(f, f.reciprocal());
    bool confirmed = false;
    if (shared.degree() >= 1)
        for (const auto& ev : complex_roots(shared, tol))
            if (std::abs(std::abs(ev.value) - 1.0) < tol) confirmed = true;
    report.classification = confirmed ? SpectrumClass::UnitModulusNonCyclotomic : SpectrumClass::Borderline;
    return report;
}

// ---------------------------------------------------------------------------
// Jordan blocks

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k)
            for (std::size_t j = 0; j < dim_; ++j) out(i, j) += (*this)(i, k) * rhs(k, j);
    return out;
}

ComplexMatrix jordan_block(const JordanBlockSpec& block) {
    if (block.size == 0) throw ConfigError("Jordan block size must be at least 1");
    ComplexMatrix j(block.size);
    for (std::size_t i = 0; i < block.size; ++i) {
        j(i, i) = block.eigenvalue;
        if (i + 1 < block.size) j(i, i + 1) = 1.0;
    }
    return j;
}

ComplexMatrix jordan_power(const JordanBlockSpec& block, std::uint64_t exponent) {
    if (block.size == 0) throw ConfigError("Jordan block size must be at least 1");
    const std::size_t c = block.size;
    // powers[k] = a^(l - k) for the k-th superdiagonal, k < c.
    std::vector<std::complex<double>> powers(c, 0.0);
    std::vector<BigInt> binom(c, 0);
    binom[0] = 1;
    for (std::size_t k = 1; k < c && k <= exponent; ++k)
        binom[k] = binom[k - 1] * BigInt(exponent - k + 1) / BigInt(k);
    for (std::size_t k = 0; k < c && k <= exponent; ++k) {
        std::complex<double> base = block.eigenvalue, acc = 1.0;
        for (std::uint64_t e = exponent - k; e; e >>= 1) {
            if (e & 1) acc *= base;
            base *= base;
        }
        powers[k] = acc;
    }
    ComplexMatrix out(c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = i; j < c; ++j) {
            const std::size_t k = j - i;
            if (k > exponent) continue;  // binom(l, k) = 0 when l < k
            out(i, j) = binom[k].convert_to<double>() * powers[k];
        }
    return out;
}

}  // namespace affwalk
