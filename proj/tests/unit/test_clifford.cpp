#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "clifft/clifford.hpp"

using namespace clifft;

namespace {

// e_{i1}...e_{ik} e_{j1}...e_{jl} reduced by explicit swaps and e_i e_i = -1
int brute_force_sign(Blade a, Blade b, int m) {
    std::vector<int> word;
    for (int j = 0; j < m; ++j)
        if (a & (Blade{1} << j)) word.push_back(j);
    for (int j = 0; j < m; ++j)
        if (b & (Blade{1} << j)) word.push_back(j);
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p + 1 < word.size(); ++p) {
            if (word[p] > word[p + 1]) {
                std::swap(word[p], word[p + 1]);
                sign = -sign;
                changed = true;
            } else if (word[p] == word[p + 1]) {
                word.erase(word.begin() + static_cast<long>(p), word.begin() + static_cast<long>(p) + 2);
                sign = -sign;
                changed = true;
                break;
            }
        }
    }
    return sign;
}

Multivector random_multivector(int m, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Multivector r(m);
    for (Blade a = 0; a < r.size(); ++a) r[a] = Complex(u(rng), u(rng));
    return r;
}

double max_diff(const Multivector& a, const Multivector& b) {
    double d = 0.0;
    for (Blade i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST(Clifford, GeneratorRelations) {
    const int m = 3;
    const int i1[] = {1}, i2[] = {2}, i12[] = {1, 2};
    auto e1 = Multivector::from_indices(m, i1);
    auto e2 = Multivector::from_indices(m, i2);
    auto e12 = Multivector::from_indices(m, i12);
    EXPECT_EQ(e1 * e2, e12);
    EXPECT_EQ(e2 * e1, -e12);
    EXPECT_EQ(e1 * e1, Multivector::scalar(m, -1.0));
    EXPECT_EQ(e12 * e12, Multivector::scalar(m, -1.0));
}

TEST(Clifford, SignTableMatchesBruteForce) {
    for (Blade a = 0; a < 64; ++a)
        for (Blade b = 0; b < 64; ++b) ASSERT_EQ(product_sign(a, b), brute_force_sign(a, b, 6)) << a << " " << b;
    std::mt19937 rng(7);
    std::uniform_int_distribution<Blade> pick(0, (1u << 12) - 1);
    for (int n = 0; n < 2000; ++n) {
        const Blade a = pick(rng), b = pick(rng);
        ASSERT_EQ(product_sign(a, b), brute_force_sign(a, b, 12));
    }
}

TEST(Clifford, AssociativeAndDistributive) {
    std::mt19937 rng(11);
    for (int m : {2, 3, 4, 5}) {
        auto a = random_multivector(m, rng), b = random_multivector(m, rng), c = random_multivector(m, rng);
        EXPECT_LT(max_diff((a * b) * c, a * (b * c)), 1e-12);
        EXPECT_LT(max_diff(a * (b + c), a * b + a * c), 1e-12);
    }
}

TEST(Clifford, MainAntiInvolution) {
    const int i12[] = {1, 2};
    auto e12 = Multivector::from_indices(3, i12);
    EXPECT_EQ(main_anti_involution(e12), -e12);
    for (Blade a = 0; a < 16; ++a) {
        auto ea = Multivector::blade(4, a);
        EXPECT_EQ(main_anti_involution(ea) * ea, Multivector::scalar(4, 1.0));
    }
    std::mt19937 rng(3);
    auto a = random_multivector(4, rng), b = random_multivector(4, rng);
    EXPECT_LT(max_diff(main_anti_involution(a * b), main_anti_involution(b) * main_anti_involution(a)), 1e-12);
}

TEST(Clifford, L2PairingIsPositive) {
    std::mt19937 rng(5);
    auto f = random_multivector(4, rng);
    const Complex via_product = scalar_part(main_anti_involution(complex_conjugate(f)) * f);
    EXPECT_NEAR(via_product.real(), norm(f) * norm(f), 1e-12);
    EXPECT_NEAR(via_product.imag(), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(l2_pairing(f, f) - via_product), 0.0, 1e-12);
}

TEST(Clifford, VectorProductSplitsIntoDotAndWedge) {
    VectorM x{1.0, 2.0, -0.5}, y{0.3, -1.0, 2.0};
    auto xy = to_multivector(x) * to_multivector(y);
    auto expected = Multivector::scalar(3, -dot(x, y)) + wedge(x, y);
    EXPECT_LT(max_diff(xy, expected), 1e-14);
    EXPECT_TRUE(wedge(x, x).is_zero());
    EXPECT_LT(max_diff(wedge(x, y), -wedge(y, x)), 1e-15);
}

TEST(Clifford, ParaBivectorLayout) {
    VectorM x{1.0, 0.0}, y{0.0, 1.0};
    auto p = ParaBivector::from_wedge(2.0, 3.0, x, y);
    EXPECT_EQ(p.bivector(0, 1), Complex(3.0));
    EXPECT_EQ(p.bivector(1, 0), Complex(-3.0));
    auto mv = p.to_multivector();
    EXPECT_EQ(mv[0], Complex(2.0));
    EXPECT_EQ(mv[3], Complex(3.0));
}

TEST(Clifford, Invariants) {
    VectorM x{1.0, 2.0, 2.0}, y{-1.0, 0.5, 3.0};
    auto g = invariants_of(x, y);
    EXPECT_NEAR(g.s * g.s + g.t * g.t, g.z * g.z, 1e-12);
    ASSERT_TRUE(g.w.has_value());
    EXPECT_NEAR(*g.w, g.s / g.z, 1e-15);
    auto zero = invariants_of(VectorM(3), y);
    EXPECT_FALSE(zero.w.has_value());
}

TEST(Clifford, DimensionMismatchThrows) {
    EXPECT_THROW(Multivector(3) * Multivector(4), DimensionError);
    EXPECT_THROW(Multivector(13), DimensionError);
    EXPECT_THROW(dot(VectorM{1.0, 2.0}, VectorM{1.0, 2.0, 3.0}), DimensionError);
    const int bad[] = {2, 1};
    EXPECT_THROW(Multivector::from_indices(3, bad), DimensionError);
}

TEST(Clifford, RationalMultivectorsAreExact) {
    auto a = RationalMultivector::blade(3, 0b011, make_rational(1, 3));
    auto b = RationalMultivector::blade(3, 0b110, make_rational(3, 2));
    auto ab = a * b;
    // e12 e23 = e1 e2 e2 e3 = -e13
    EXPECT_EQ(ab[0b101], make_rational(-1, 2));
}
