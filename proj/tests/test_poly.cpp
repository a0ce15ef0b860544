#include "affwalk/error.hpp"
#include "affwalk/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace affwalk;

TEST(IntPoly, TrimsAndReportsDegree) {
    EXPECT_EQ(IntPoly({1, 2, 0, 0}).degree(), 1);
    EXPECT_EQ(IntPoly({0, 0}).degree(), -1);
    EXPECT_TRUE(IntPoly().is_zero());
}

TEST(IntPoly, Arithmetic) {
    const IntPoly a{-1, 1};  // x - 1
    const IntPoly b{1, 1};   // x + 1
    EXPECT_EQ(a * b, IntPoly({-1, 0, 1}));
    EXPECT_EQ(IntPoly({-1, 0, 1}) - a * b, IntPoly());
    EXPECT_EQ(IntPoly({5, 3, 2}).derivative(), IntPoly({3, 4}));
    EXPECT_EQ(IntPoly({1, 2, 3}).reciprocal(), IntPoly({3, 2, 1}));
    EXPECT_EQ(IntPoly({4, 6, -8}).content(), 2);
    EXPECT_EQ(IntPoly({4, 6, -8}).primitive(), IntPoly({-2, -3, 4}));
}

TEST(IntPoly, Division) {
    const auto r = divide(IntPoly({-1, 0, 0, 1}), IntPoly({-1, 1}));
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.quotient, IntPoly({1, 1, 1}));
    EXPECT_FALSE(divide(IntPoly({1, 0, 1}), IntPoly({-1, 1})).exact);
    EXPECT_THROW(divide_exact(IntPoly({1, 0, 1}), IntPoly({-1, 1})), MathError);
    // 2x + 2 = 2 (x + 1) but x + 1 does not divide 2x + 1 over Z
    EXPECT_FALSE(divide(IntPoly({1, 2}), IntPoly({1, 1})).exact);
    EXPECT_TRUE(divides(IntPoly({1, 1}), IntPoly({2, 2})));
}

TEST(IntPoly, Gcd) {
    const IntPoly f = IntPoly({-1, 1}) * IntPoly({1, 1}) * IntPoly({1, 0, 1});
    const IntPoly g = IntPoly({-1, 1}) * IntPoly({2, 0, 1});
    EXPECT_EQ(gcd(f, g), IntPoly({-1, 1}));
    EXPECT_EQ(gcd(IntPoly({1, 1}), IntPoly({1, 0, 1})).degree(), 0);
}

TEST(Cyclotomic, KnownPolynomials) {
    EXPECT_EQ(cyclotomic(1), IntPoly({-1, 1}));
    EXPECT_EQ(cyclotomic(2), IntPoly({1, 1}));
    EXPECT_EQ(cyclotomic(3), IntPoly({1, 1, 1}));
    EXPECT_EQ(cyclotomic(4), IntPoly({1, 0, 1}));
    EXPECT_EQ(cyclotomic(6), IntPoly({1, -1, 1}));
    EXPECT_EQ(cyclotomic(12), IntPoly({1, 0, -1, 0, 1}));
    // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
    const IntPoly c105 = cyclotomic(105);
    EXPECT_EQ(c105.degree(), 48);
    bool has_minus_two = false;
    for (const auto& c : c105.coeffs()) has_minus_two |= c == -2;
    EXPECT_TRUE(has_minus_two);
}

TEST(Cyclotomic, ProductOverDivisorsIsXnMinusOne) {
    for (unsigned n = 1; n <= 60; ++n) {
        IntPoly prod{1};
        for (unsigned k = 1; k <= n; ++k)
            if (n % k == 0) prod = prod * cyclotomic(k);
        EXPECT_EQ(prod, IntPoly::x_pow_minus_one(n)) << n;
        EXPECT_EQ(cyclotomic(n).degree(), static_cast<int>(euler_phi(n))) << n;
    }
}

TEST(EulerPhi, Values) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(12), 4u);
    EXPECT_EQ(euler_phi(97), 96u);
    EXPECT_EQ(euler_phi(100), 40u);
}
