#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clifft/quadrature.hpp"

using namespace clifft;

namespace {

// E[x^{2a}] under the standard normal, times sqrt(2 pi)
double gaussian_even_moment(int a) {
    double r = std::sqrt(2.0 * std::numbers::pi);
    for (int t = 1; t < 2 * a; t += 2) r *= t;
    return r;
}

}  // namespace

TEST(GaussHermite, MomentsExactUpToDegree) {
    for (int n : {1, 2, 5, 12, 32}) {
        auto g = gauss_hermite(n);
        ASSERT_EQ(g.nodes.size(), static_cast<std::size_t>(n));
        for (int d = 0; d <= 2 * n - 1 && d <= 30; ++d) {
            double s = 0.0, scale = 0.0;
            for (int j = 0; j < n; ++j) {
                const double t = g.weights[static_cast<std::size_t>(j)] * std::pow(g.nodes[static_cast<std::size_t>(j)], d);
                s += t;
                scale += std::abs(t);
            }
            const double want = d % 2 ? 0.0 : gaussian_even_moment(d / 2);
            EXPECT_NEAR(s, want, 1e-12 * std::max(1.0, scale)) << n << " " << d;
        }
    }
}

TEST(GaussHermite, NodesSortedAndSymmetric) {
    auto g = gauss_hermite(9);
    for (std::size_t j = 1; j < g.nodes.size(); ++j) EXPECT_LT(g.nodes[j - 1], g.nodes[j]);
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        EXPECT_NEAR(g.nodes[j], -g.nodes[g.nodes.size() - 1 - j], 1e-14);
        EXPECT_NEAR(g.weights[j], g.weights[g.nodes.size() - 1 - j], 1e-14);
    }
    EXPECT_EQ(g.nodes[4], 0.0);
    EXPECT_THROW(gauss_hermite(0), std::invalid_argument);
}

TEST(FullGrid, SelfTest) {
    for (int m = 1; m <= 4; ++m) {
        auto q = full_grid_scheme(m, 16);
        EXPECT_TRUE(quadrature_self_test(q).pass()) << m;
        EXPECT_EQ(q.exactness_degree, 31);
    }
    EXPECT_THROW(full_grid_scheme(5, 8), std::invalid_argument);
}

TEST(FullGrid, PruningShrinksGrid) {
    auto full = full_grid_scheme(3, 24, 0.0);
    auto pruned = full_grid_scheme(3, 24, 1e-12);
    EXPECT_EQ(full.size(), 24u * 24u * 24u);
    EXPECT_LT(pruned.size(), full.size());
    EXPECT_TRUE(quadrature_self_test(pruned).pass());
}

TEST(FullGrid, LebesgueIntegralOfGaussianPolynomial) {
    // integral of x1^2 x2^2 e^{-|x|^2} over R^2 = pi / 4
    auto q = full_grid_scheme(2, 30);
    double s = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n) {
        const auto& x = q.nodes[n];
        s += q.weights[n] * x[0] * x[0] * x[1] * x[1] * std::exp(-x.norm_squared());
    }
    EXPECT_NEAR(s, std::numbers::pi / 4.0, 1e-10);
}

TEST(Radial, OscillatoryIntegral) {
    // integral_0^inf e^{-r^2/2} cos(rho r) dr = sqrt(pi/2) e^{-rho^2/2}
    for (double rho : {0.0, 1.0, 4.0, 9.0}) {
        const double got = radial_integral([&](double r) { return std::exp(-0.5 * r * r) * std::cos(rho * r); }, rho);
        EXPECT_NEAR(got, std::sqrt(std::numbers::pi / 2.0) * std::exp(-0.5 * rho * rho), 1e-13) << rho;
    }
}
