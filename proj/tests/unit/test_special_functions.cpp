#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/chebyshev.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <numbers>

#include "clifft/special_functions.hpp"

using namespace clifft;

namespace {

bool close(double got, double want, double rel, double abs) {
    return std::abs(got - want) <= rel * std::abs(want) + abs;
}

}  // namespace

TEST(Bessel, HalfOrderClosedForm) {
    const double want = std::sqrt(2.0 / std::numbers::pi) * std::sin(1.0);
    EXPECT_NEAR(bessel_j(BesselOrder::from_twice(1), 1.0), 0.6713967071418031, 1e-15);
    EXPECT_NEAR(bessel_j(BesselOrder::from_twice(1), 1.0), want, 1e-15);
}

TEST(Bessel, HalfIntegerClosedForms) {
    for (double x : {0.3, 1.0, 1.7, 4.0, 12.5, 47.0, 99.0}) {
        const double p = std::sqrt(2.0 / (std::numbers::pi * x));
        const double jm = p * std::cos(x);
        const double j1 = p * std::sin(x);
        const double j3 = p * (std::sin(x) / x - std::cos(x));
        const double j5 = p * ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x);
        auto seq = bessel_j_sequence(BesselOrder::from_twice(-1), 4, x);
        EXPECT_TRUE(close(seq[0], jm, 1e-13, 1e-15)) << x;
        EXPECT_TRUE(close(seq[1], j1, 1e-13, 1e-15)) << x;
        EXPECT_TRUE(close(seq[2], j3, 1e-12, 1e-15)) << x;
        EXPECT_TRUE(close(seq[3], j5, 1e-11, 1e-15)) << x;
    }
}

TEST(Bessel, AgreesWithBoostOracle) {
    for (int twice = -1; twice <= 80; ++twice) {
        for (double x : {1e-6, 0.02, 0.5, 0.999, 1.0, 1.001, 2.0, 5.5, 10.0, 23.0, 41.0, 64.0, 100.0}) {
            const double want = boost::math::cyl_bessel_j(0.5 * twice, x);
            const double got = bessel_j(BesselOrder::from_twice(twice), x);
            ASSERT_TRUE(close(got, want, 1e-12, 1e-15)) << "nu=" << 0.5 * twice << " x=" << x << " got " << got
                                                        << " want " << want;
        }
    }
}

TEST(Bessel, SequenceMatchesSingles) {
    for (int first : {-1, 0, 1, 4, 7}) {
        auto seq = bessel_j_sequence(BesselOrder::from_twice(first), 30, 7.3);
        for (int r = 0; r < 30; ++r)
            EXPECT_TRUE(close(seq[static_cast<std::size_t>(r)],
                              bessel_j(BesselOrder::from_twice(first + 2 * r), 7.3), 1e-13, 1e-300));
    }
}

TEST(Bessel, UnsupportedOrderAndArgument) {
    EXPECT_THROW(bessel_j(BesselOrder::from_twice(-2), 1.0), std::domain_error);
    EXPECT_THROW(bessel_j(BesselOrder::from_twice(-3), 1.0), std::domain_error);
    EXPECT_THROW(bessel_j(BesselOrder::integer(0), -1.0), std::domain_error);
}

TEST(Bessel, ZeroArgument) {
    EXPECT_EQ(bessel_j(BesselOrder::integer(0), 0.0), 1.0);
    EXPECT_EQ(bessel_j(BesselOrder::integer(3), 0.0), 0.0);
    EXPECT_EQ(bessel_j(BesselOrder::from_twice(1), 0.0), 0.0);
}

TEST(BesselTilde, RemovableSingularity) {
    for (int twice = -1; twice <= 12; ++twice) {
        const double a = 0.5 * twice;
        const double at_zero = std::pow(2.0, -a) / std::tgamma(a + 1.0);
        EXPECT_TRUE(close(bessel_jtilde(BesselOrder::from_twice(twice), 0.0), at_zero, 1e-15, 0.0));
        EXPECT_TRUE(close(bessel_jtilde(BesselOrder::from_twice(twice), 1e-7), at_zero, 1e-12, 0.0));
    }
    EXPECT_NEAR(bessel_jtilde(BesselOrder::from_twice(-1), 0.0), std::sqrt(2.0 / std::numbers::pi), 1e-15);
}

TEST(BesselTilde, ContinuousAcrossSeriesSwitch) {
    for (int twice = -1; twice <= 20; ++twice) {
        const double below = bessel_jtilde(BesselOrder::from_twice(twice), 1.0);
        const double above = bessel_jtilde(BesselOrder::from_twice(twice), std::nextafter(1.0, 2.0));
        EXPECT_TRUE(close(above, below, 1e-14, 0.0)) << twice;
    }
}

TEST(BesselTilde, DerivativeLowersToNextOrder) {
    // t^{-1} d/dt Jt_a = -Jt_{a+1}
    const double h = 1e-4;
    for (int twice = -1; twice <= 8; ++twice) {
        for (double t : {0.4, 1.3, 3.0, 8.0}) {
            auto nu = BesselOrder::from_twice(twice);
            const double d = (bessel_jtilde(nu, t + h) - bessel_jtilde(nu, t - h)) / (2.0 * h);
            EXPECT_NEAR(d / t, -bessel_jtilde(nu.shifted(1), t), 1e-7);
        }
    }
}

TEST(Gegenbauer, LowDegrees) {
    const double lam = 1.5, w = 0.3;
    EXPECT_NEAR(gegenbauer(2, lam, w), 2.0 * lam * (lam + 1.0) * w * w - lam, 1e-15);
    EXPECT_NEAR(gegenbauer(5, 0.5, w), boost::math::legendre_p(5, w), 1e-14);
    EXPECT_NEAR(gegenbauer(4, 1.0, w), boost::math::chebyshev_u(4, w), 1e-13);
}

TEST(Gegenbauer, ZonalLimitIsChebyshev) {
    for (int k = 0; k <= 10; ++k) {
        const double want = k == 0 ? 1.0 : 2.0 * boost::math::chebyshev_t(static_cast<unsigned>(k), 0.37);
        EXPECT_NEAR(zonal_gegenbauer(k, 0.0, 0.37), want, 1e-13);
        EXPECT_NEAR(zonal_gegenbauer(k, 1e-9, 0.37), want, 1e-6);
    }
    EXPECT_THROW(gegenbauer(2, -0.5, 0.1), std::domain_error);
}

TEST(Laguerre, AgreesWithBoostAndCoefficients) {
    for (int j = 0; j <= 6; ++j) {
        for (unsigned a = 0; a <= 3; ++a)
            EXPECT_NEAR(laguerre(j, a, 1.7), boost::math::laguerre(static_cast<unsigned>(j), a, 1.7), 1e-12);
        const Rational alpha = make_rational(3, 2);
        auto c = laguerre_coefficients(j, alpha);
        double v = 0.0, p = 1.0;
        for (const auto& cr : c) {
            v += to_double(cr) * p;
            p *= 2.2;
        }
        EXPECT_NEAR(v, laguerre(j, 1.5, 2.2), 1e-12);
    }
}

TEST(DoubleFactorial, Values) {
    EXPECT_EQ(double_factorial(-1), 1);
    EXPECT_EQ(double_factorial(0), 1);
    EXPECT_EQ(double_factorial(7), 105);
    EXPECT_EQ(double_factorial(8), 384);
    EXPECT_EQ(double_factorial_ratio(5, 3), make_rational(5));
    EXPECT_THROW(double_factorial(-3), std::domain_error);
}

TEST(Gamma, Domain) {
    EXPECT_NEAR(gamma_function(5.0), 24.0, 1e-12);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-14);
    EXPECT_THROW(gamma_function(0.0), std::domain_error);
    EXPECT_THROW(log_gamma(-1.0), std::domain_error);
}

TEST(Identities, GegenbauerLowering) {
    const auto r = verify_gegenbauer_lowering();
    EXPECT_TRUE(r.pass()) << r.max_abs_error();
    EXPECT_EQ(r.cases().size(), 5u * 19u);
}

TEST(Identities, GegenbauerShift) { EXPECT_TRUE(verify_gegenbauer_shift().pass()); }

TEST(Identities, BesselThreeTerm) {
    const auto r = verify_bessel_identity();
    EXPECT_TRUE(r.pass()) << r.to_json().dump();
    const auto j = bessel_j_sequence(BesselOrder::from_twice(1), 3, 2.0);
    EXPECT_LT(std::abs(j[1] - 2.0 / 3.0 * (j[2] + j[0])), 1e-12);
}

TEST(Identities, GammaRecurrenceAndBound) {
    EXPECT_TRUE(verify_gamma_recurrence().pass());
    for (double lam : {0.0, 0.5, 1.0, 2.5}) EXPECT_TRUE(verify_bessel_bound(lam).pass()) << lam;
}
