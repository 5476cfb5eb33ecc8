#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifft/rational.hpp"
#include "clifft/report.hpp"

namespace clifft {

// Bessel order stored as twice its value; integer and half-odd-integer orders only.
class BesselOrder {
public:
    constexpr BesselOrder() = default;
    static constexpr BesselOrder from_twice(int twice) { return BesselOrder(twice); }
    static constexpr BesselOrder integer(int n) { return BesselOrder(2 * n); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr BesselOrder shifted(int steps) const { return BesselOrder(twice_ + 2 * steps); }

    friend constexpr auto operator<=>(BesselOrder, BesselOrder) = default;

private:
    constexpr explicit BesselOrder(int twice) : twice_(twice) {}
    int twice_ = 0;
};

namespace detail {

inline void check_bessel_order(BesselOrder nu) {
    if (nu.twice() < -1)
        throw std::domain_error("unsupported Bessel order " + std::to_string(nu.value()));
}

inline double inverse_gamma_scaled(double nu) {
    // 2^{-nu} / Gamma(nu + 1)
    if (nu < 150.0) return std::pow(2.0, -nu) / std::tgamma(nu + 1.0);
    return std::exp(-std::lgamma(nu + 1.0) - nu * std::numbers::ln2);
}

// t^{-nu} J_nu(t) by its power series, used for t <= 1
inline double jtilde_series(double nu, double t) {
    const double q = -0.25 * t * t;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum * inverse_gamma_scaled(nu);
}

inline constexpr double kSmallArgument = 1.0;

// J_{first}, ..., J_{first+count-1} at x > kSmallArgument
inline std::vector<double> bessel_sequence_large(BesselOrder first, int count, double x) {
    const int top_index = first.twice() / 2 + count;
    const int reach = std::max(top_index, static_cast<int>(x));
    const int start = 2 * ((reach + 16 + static_cast<int>(std::sqrt(40.0 * reach))) / 2);
    std::vector<double> out(static_cast<std::size_t>(count), 0.0);
    constexpr double kBig = 1e250;

    if (first.is_integer()) {
        const int n0 = first.twice() / 2;
        double above = 0.0, cur = 1e-300, norm = 0.0;
        for (int k = start; k > 0; --k) {
            const double below = 2.0 * k / x * cur - above;
            above = cur;
            cur = below;
            const int idx = k - 1;
            if (std::abs(cur) > kBig) {
                cur /= kBig;
                above /= kBig;
                norm /= kBig;
                for (auto& v : out) v /= kBig;
            }
            if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
            if (idx >= n0 && idx < n0 + count) out[static_cast<std::size_t>(idx - n0)] = cur;
        }
        norm += cur;
        for (auto& v : out) v /= norm;
        return out;
    }

    // half-odd orders n + 1/2 with n >= -1
    const int n0 = (first.twice() - 1) / 2;
    const double pref = std::sqrt(2.0 / (std::numbers::pi * x));
    const double j_minus = pref * std::cos(x);
    const double j_plus = pref * std::sin(x);
    const int top = n0 + count - 1;
    if (x > top + 1.5) {
        double prev = j_minus, cur = j_plus;
        for (int n = -1; n <= top; ++n) {
            if (n >= n0) out[static_cast<std::size_t>(n - n0)] = (n == -1) ? prev : cur;
            if (n >= 0) {
                const double next = (2.0 * (n + 0.5) / x) * cur - prev;
                prev = cur;
                cur = next;
            }
        }
        return out;
    }
    double above = 0.0, cur = 1e-300, at_half = 0.0, at_minus_half = 0.0;
    for (int n = start; n >= 0; --n) {
        // cur holds order n + 1/2, produce n - 1/2
        const double below = (2.0 * (n + 0.5) / x) * cur - above;
        if (n >= n0 && n < n0 + count) out[static_cast<std::size_t>(n - n0)] = cur;
        above = cur;
        cur = below;
        if (std::abs(cur) > kBig) {
            cur /= kBig;
            above /= kBig;
            for (auto& v : out) v /= kBig;
        }
        if (n == 0) {
            at_half = above;
            at_minus_half = cur;
        }
    }
    if (n0 == -1) out[0] = at_minus_half;
    const double scale =
        std::abs(j_plus) > std::abs(j_minus) ? j_plus / at_half : j_minus / at_minus_half;
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace detail

inline std::vector<double> bessel_j_sequence(BesselOrder first, int count, double x) {
    detail::check_bessel_order(first);
    if (count <= 0) return {};
    if (!(x >= 0.0)) throw std::domain_error("Bessel argument must be non-negative");
    std::vector<double> out(static_cast<std::size_t>(count));
    if (x <= detail::kSmallArgument) {
        for (int r = 0; r < count; ++r) {
            const double nu = first.shifted(r).value();
            if (x == 0.0)
                out[static_cast<std::size_t>(r)] =
                    nu == 0.0 ? 1.0 : (nu < 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
            else
                out[static_cast<std::size_t>(r)] = std::pow(x, nu) * detail::jtilde_series(nu, x);
        }
        return out;
    }
    return detail::bessel_sequence_large(first, count, x);
}

inline double bessel_j(BesselOrder nu, double x) { return bessel_j_sequence(nu, 1, x)[0]; }

// t^{-a} J_a(t), continuous at t = 0
inline std::vector<double> bessel_jtilde_sequence(BesselOrder first, int count, double t) {
    detail::check_bessel_order(first);
    if (count <= 0) return {};
    if (!(t >= 0.0)) throw std::domain_error("Bessel argument must be non-negative");
    std::vector<double> out(static_cast<std::size_t>(count));
    if (t <= detail::kSmallArgument) {
        for (int r = 0; r < count; ++r)
            out[static_cast<std::size_t>(r)] = detail::jtilde_series(first.shifted(r).value(), t);
        return out;
    }
    out = detail::bessel_sequence_large(first, count, t);
    double scale = std::pow(t, -first.value());
    for (auto& v : out) {
        v *= scale;
        scale /= t;
    }
    return out;
}

inline double bessel_jtilde(BesselOrder alpha, double t) { return bessel_jtilde_sequence(alpha, 1, t)[0]; }

inline double gamma_function(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_function requires x > 0");
    return std::tgamma(x);
}

inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
    return std::lgamma(x);
}

// C_0^lambda .. C_n^lambda at w; lambda = 0 gives the degenerate 1, 0, 0, ...
inline std::vector<double> gegenbauer_sequence(int n, double lambda, double w) {
    if (n < 0) throw std::domain_error("gegenbauer degree must be non-negative");
    if (lambda < 0.0) throw std::domain_error("gegenbauer parameter must be non-negative");
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1.0;
    if (n >= 1) c[1] = 2.0 * lambda * w;
    for (int k = 2; k <= n; ++k)
        c[static_cast<std::size_t>(k)] =
            (2.0 * w * (k + lambda - 1.0) * c[static_cast<std::size_t>(k - 1)] -
             (k + 2.0 * lambda - 2.0) * c[static_cast<std::size_t>(k - 2)]) / k;
    return c;
}

inline double gegenbauer(int k, double lambda, double w) { return gegenbauer_sequence(k, lambda, w).back(); }

// (lambda + k) / lambda C_k^lambda(w), with the lambda -> 0 limit 2 T_k(w) for k >= 1
inline std::vector<double> zonal_gegenbauer_sequence(int n, double lambda, double w) {
    if (lambda > 0.0) {
        auto c = gegenbauer_sequence(n, lambda, w);
        for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] *= (lambda + k) / lambda;
        return c;
    }
    if (lambda < 0.0) throw std::domain_error("gegenbauer parameter must be non-negative");
    std::vector<double> z(static_cast<std::size_t>(n) + 1);
    double prev = 1.0, cur = w;
    z[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        z[static_cast<std::size_t>(k)] = 2.0 * cur;
        const double next = 2.0 * w * cur - prev;
        prev = cur;
        cur = next;
    }
    return z;
}

inline double zonal_gegenbauer(int k, double lambda, double w) {
    return zonal_gegenbauer_sequence(k, lambda, w).back();
}

inline double laguerre(int j, double alpha, double x) {
    if (j < 0) throw std::domain_error("laguerre degree must be non-negative");
    if (alpha <= -1.0) throw std::domain_error("laguerre parameter must exceed -1");
    double prev = 1.0;
    if (j == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int n = 1; n < j; ++n) {
        const double next = ((2.0 * n + 1.0 + alpha - x) * cur - (n + alpha) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

// coefficients c_r of L_j^alpha(u) = sum_r c_r u^r
inline std::vector<Rational> laguerre_coefficients(int j, const Rational& alpha) {
    if (j < 0) throw std::domain_error("laguerre degree must be non-negative");
    std::vector<Rational> c(static_cast<std::size_t>(j) + 1);
    // c_j = (-1)^j / j!, c_{r-1} = -c_r r (alpha + r) / (j - r + 1)
    Rational v = 1;
    for (int r = 1; r <= j; ++r) v /= r;
    if (j % 2 != 0) v = -v;
    c[static_cast<std::size_t>(j)] = v;
    for (int r = j; r >= 1; --r) {
        v = -v * r * (alpha + r) / (j - r + 1);
        c[static_cast<std::size_t>(r - 1)] = v;
    }
    return c;
}

inline Integer double_factorial(int n) {
    if (n < -1) throw std::domain_error("double factorial of " + std::to_string(n));
    Integer r = 1;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

inline Rational double_factorial_ratio(int a, int b) {
    return Rational(double_factorial(a), double_factorial(b));
}

namespace detail {

inline CaseResult residual_case(std::string name, double residual, double scale, double tol) {
    CaseResult c;
    c.name = std::move(name);
    c.expected = 0.0;
    c.got = residual;
    c.abs_error = residual;
    c.pass = residual <= tol * std::max(1.0, scale);
    c.detail = "max term " + std::to_string(scale);
    return c;
}

inline std::vector<double> w_grid(int points) {
    std::vector<double> w;
    for (int a = 0; a < points; ++a) w.push_back(-1.0 + 2.0 * a / (points - 1));
    return w;
}

}  // namespace detail

// ((lambda+n)/lambda) C_n^lambda - C_n^{lambda+1} + C_{n-2}^{lambda+1} = 0, worst case per (lambda, n)
inline Report verify_gegenbauer_lowering(int n_max = 20, int points = 41, double tol = 1e-11) {
    Report rep("gegenbauer-lowering", {{"n_max", n_max}, {"points", points}, {"tol", tol}});
    for (double lam : {0.5, 1.0, 1.5, 2.0, 3.0})
        for (int n = 2; n <= n_max; ++n) {
            double worst = 0.0, scale = 0.0;
            for (double w : detail::w_grid(points)) {
                const auto a = gegenbauer_sequence(n, lam, w), b = gegenbauer_sequence(n, lam + 1.0, w);
                const double t1 = (lam + n) / lam * a.back(), t2 = b[static_cast<std::size_t>(n)],
                             t3 = b[static_cast<std::size_t>(n - 2)];
                worst = std::max(worst, std::abs(t1 - t2 + t3));
                scale = std::max({scale, std::abs(t1), std::abs(t2), std::abs(t3)});
            }
            rep.add(detail::residual_case("lambda=" + std::to_string(lam) + ",n=" + std::to_string(n), worst, scale, tol));
        }
    return rep;
}

// w C_{n-1}^{lambda+1} = n/(2(n+lambda)) C_n^{lambda+1} + (n+2 lambda)/(2(n+lambda)) C_{n-2}^{lambda+1}
inline Report verify_gegenbauer_shift(int n_max = 20, int points = 41, double tol = 1e-11) {
    Report rep("gegenbauer-shift", {{"n_max", n_max}, {"points", points}, {"tol", tol}});
    for (double lam : {0.5, 1.0, 1.5, 2.0, 3.0})
        for (int n = 2; n <= n_max; ++n) {
            double worst = 0.0, scale = 0.0;
            for (double w : detail::w_grid(points)) {
                const auto b = gegenbauer_sequence(n, lam + 1.0, w);
                const double lhs = w * b[static_cast<std::size_t>(n - 1)];
                const double t1 = n / (2.0 * (n + lam)) * b[static_cast<std::size_t>(n)];
                const double t2 = (n + 2.0 * lam) / (2.0 * (n + lam)) * b[static_cast<std::size_t>(n - 2)];
                worst = std::max(worst, std::abs(lhs - t1 - t2));
                scale = std::max({scale, std::abs(lhs), std::abs(t1), std::abs(t2)});
            }
            rep.add(detail::residual_case("lambda=" + std::to_string(lam) + ",n=" + std::to_string(n), worst, scale, tol));
        }
    return rep;
}

// J_nu(z) - z/(2 nu) (J_{nu+1}(z) + J_{nu-1}(z)) over z in (0, z_max], worst case per order
inline Report verify_bessel_identity(double z_max = 50.0, int points = 500, double tol = 1e-11) {
    Report rep("bessel-identity", {{"z_max", z_max}, {"points", points}, {"tol", tol}});
    std::vector<int> twice;
    for (int t = 1; t <= 9; t += 2) twice.push_back(t);
    for (int t = 2; t <= 12; t += 2) twice.push_back(t);
    for (int tw : twice) {
        const double nu = 0.5 * tw;
        double worst = 0.0, scale = 0.0;
        for (int a = 1; a <= points; ++a) {
            const double z = z_max * a / points;
            const auto j = bessel_j_sequence(BesselOrder::from_twice(tw - 2), 3, z);
            const double t = z / (2.0 * nu) * (j[2] + j[0]);
            worst = std::max(worst, std::abs(j[1] - t));
            scale = std::max({scale, std::abs(j[1]), std::abs(t), z / (2.0 * nu) * std::max(std::abs(j[0]), std::abs(j[2]))});
        }
        rep.add(detail::residual_case("nu=" + std::to_string(nu), worst, scale, tol));
    }
    return rep;
}

// Gamma(x+1) - x Gamma(x), relative, x = 0.5, 1, ..., 10
inline Report verify_gamma_recurrence(double tol = 1e-13) {
    Report rep("gamma-recurrence", {{"tol", tol}});
    for (int a = 1; a <= 20; ++a) {
        const double x = 0.5 * a;
        const double lhs = gamma_function(x + 1.0), rhs = x * gamma_function(x);
        CaseResult c;
        c.name = "x=" + std::to_string(x);
        c.expected = rhs;
        c.got = lhs;
        c.abs_error = std::abs(lhs - rhs);
        c.pass = c.abs_error <= tol * std::abs(rhs);
        rep.add(std::move(c));
    }
    return rep;
}

// |(z/2)^{-a} J_a(z)| <= 1/Gamma(a+1), a = k + lambda, z in [0, 50]
inline Report verify_bessel_bound(double lambda, int k_max = 40, int points = 201) {
    Report rep("bessel-bound", {{"lambda", lambda}, {"k_max", k_max}, {"points", points}});
    const int twice_lambda = static_cast<int>(std::lround(2.0 * lambda));
    for (int k = 0; k <= k_max; ++k) {
        const double a = k + lambda;
        const double bound = 1.0 / gamma_function(a + 1.0);
        double worst = 0.0;
        for (int p = 0; p < points; ++p) {
            const double z = 50.0 * p / (points - 1);
            worst = std::max(worst, std::pow(2.0, a) * std::abs(bessel_jtilde(BesselOrder::from_twice(2 * k + twice_lambda), z)));
        }
        CaseResult c;
        c.name = "k=" + std::to_string(k);
        c.expected = bound;
        c.got = worst;
        c.abs_error = std::max(0.0, worst - bound);
        c.pass = worst <= bound * (1.0 + 1e-13);
        rep.add(std::move(c));
    }
    return rep;
}

}  // namespace clifft
