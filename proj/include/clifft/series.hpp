#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifft/clifford.hpp"
#include "clifft/kernels.hpp"
#include "clifft/rational.hpp"
#include "clifft/report.hpp"
#include "clifft/special_functions.hpp"

namespace clifft {

// Coefficients are kept in the normalized form
//   a_k = P lambda/(lambda+k) alpha_k,  b_k = P beta_k,  P = 2^{-lambda}/Gamma(lambda+1)
// so that A = sum_k a_k (z^{-lambda} J_{k+lambda}(z)) Z_k(w) / P with Z_k the zonal Gegenbauer
// polynomial (lambda+k)/lambda C_k^lambda, which stays finite at lambda = 0.

inline double transform_normalization(int m) { return std::pow(2.0 * std::numbers::pi, -0.5 * m); }

inline double sphere_normalization(int m) {
    return std::tgamma(0.5 * m) / (2.0 * std::pow(std::numbers::pi, 0.5 * m));
}

// 2^{1-m/2} / Gamma(m/2)
inline double eigen_bridge(int m) { return std::pow(2.0, 1.0 - 0.5 * m) / std::tgamma(0.5 * m); }

inline Rational series_lambda(int m) { return make_rational(m - 2, 2); }

// e * e_part + i conj(e) * ie_part; only e_part is used for even m
struct ExactCoefficient {
    Rational e_part;
    Rational ie_part;

    Complex value(Complex e = {1.0, 0.0}) const {
        return e * to_double(e_part) + Complex(0.0, 1.0) * std::conj(e) * to_double(ie_part);
    }
    bool is_zero() const { return e_part == 0 && ie_part == 0; }
    friend bool operator==(const ExactCoefficient&, const ExactCoefficient&) = default;
};

inline ExactCoefficient operator+(const ExactCoefficient& a, const ExactCoefficient& b) {
    return {a.e_part + b.e_part, a.ie_part + b.ie_part};
}
inline ExactCoefficient operator-(const ExactCoefficient& a, const ExactCoefficient& b) {
    return {a.e_part - b.e_part, a.ie_part - b.ie_part};
}
inline ExactCoefficient operator*(const Rational& c, const ExactCoefficient& a) { return {c * a.e_part, c * a.ie_part}; }

inline std::string to_string(const ExactCoefficient& c) {
    if (c.ie_part == 0) return to_string(c.e_part);
    return to_string(c.e_part) + " e + (" + to_string(c.ie_part) + ") i e^c";
}

namespace detail {

inline int hat_sign(int m) { return m % 2 == 0 ? sign_power(m / 2) : sign_power((m + 1) / 2); }

inline ExactCoefficient place(int m, bool hat, Rational v) {
    if (m % 2 != 0 && hat) return {0, std::move(v)};
    return {std::move(v), 0};
}

}  // namespace detail

// normalized a_k of K^i_{+,m}
inline ExactCoefficient exact_alpha(int m, int i, int k) {
    validate(KernelId{m, i});
    if (k < 0) throw std::invalid_argument("series index must be non-negative");
    const int sigma = detail::hat_sign(m);
    if (i % 2 == 0) {
        if (k % 2 == 0) {
            const int j = k / 2;
            return detail::place(m, true, sigma * double_factorial_ratio(2 * j + i - 1, 2 * j - i + m - 3));
        }
        const int j = (k - 1) / 2;
        return detail::place(m, false, -i * double_factorial_ratio(2 * j + i - 1, 2 * j + m - i - 1));
    }
    if (k % 2 == 0) {
        const int j = k / 2;
        return detail::place(m, false, -i * double_factorial_ratio(2 * j + i - 2, 2 * j + m - i - 2));
    }
    const int j = (k - 1) / 2;
    return detail::place(m, true, -sigma * double_factorial_ratio(2 * j + i, 2 * j + m - i - 2));
}

// normalized b_k of K^i_{+,m}; b_0 = 0
inline ExactCoefficient exact_beta(int m, int i, int k) {
    validate(KernelId{m, i});
    if (k < 0) throw std::invalid_argument("series index must be non-negative");
    const Rational weight = 2 * (Rational(k) + series_lambda(m));
    if (i % 2 == 0) {
        if (k % 2 == 0) return {};
        const int j = (k - 1) / 2;
        return detail::place(m, false, weight * double_factorial_ratio(2 * j + i - 1, 2 * j + m - i - 1));
    }
    if (k % 2 != 0 || k == 0) return {};
    const int j = (k - 2) / 2;
    return detail::place(m, false, weight * double_factorial_ratio(2 * j + i, 2 * j + m - i));
}

struct SeriesCoefficients {
    int m = 2;
    double lambda = 0.0;
    std::function<Complex(int)> alpha;  // normalized a_k
    std::function<Complex(int)> beta;   // normalized b_k
    KernelId provenance;

    // 1 / P = Gamma(lambda+1) 2^lambda
    double scale() const { return std::tgamma(lambda + 1.0) * std::pow(2.0, lambda); }

    // alpha_k as it multiplies z^{-lambda} J_{k+lambda}(z) C_k^lambda(w); undefined for m = 2
    Complex raw_alpha(int k) const {
        if (lambda == 0.0) throw std::domain_error("raw alpha_k is undefined for m = 2; use the normalized form");
        return alpha(k) * (scale() * (lambda + k) / lambda);
    }
    Complex raw_beta(int k) const { return k == 0 ? Complex{} : beta(k) * scale(); }
};

inline SeriesCoefficients make_series(int m, std::function<Complex(int)> alpha, std::function<Complex(int)> beta,
                                      KernelSign sign = KernelSign::plus) {
    detail::check_dimension(m);
    SeriesCoefficients c;
    c.m = m;
    c.lambda = 0.5 * (m - 2);
    c.alpha = std::move(alpha);
    c.beta = [b = std::move(beta)](int k) { return k == 0 ? Complex{} : b(k); };
    c.provenance = KernelId{m, 0, sign};
    return c;
}

// alpha^-_k = (-1)^k conj alpha^+_k, same for beta
inline SeriesCoefficients reflect_coefficients(const SeriesCoefficients& c) {
    SeriesCoefficients r = c;
    r.alpha = [a = c.alpha](int k) { return double(sign_power(k)) * std::conj(a(k)); };
    r.beta = [b = c.beta](int k) { return double(sign_power(k)) * std::conj(b(k)); };
    r.provenance.sign = c.provenance.sign == KernelSign::plus ? KernelSign::minus : KernelSign::plus;
    return r;
}

inline SeriesCoefficients series_coefficients(const KernelId& id) {
    validate(id);
    const int m = id.m, i = id.i;
    const Complex e = id.odd() ? id.e : Complex{1.0, 0.0};
    SeriesCoefficients c;
    c.m = m;
    c.lambda = 0.5 * (m - 2);
    c.alpha = [m, i, e](int k) { return exact_alpha(m, i, k).value(e); };
    c.beta = [m, i, e](int k) { return exact_beta(m, i, k).value(e); };
    c.provenance = id;
    c.provenance.sign = KernelSign::plus;
    if (id.sign == KernelSign::minus) return reflect_coefficients(c);
    return c;
}

// A multiplies 1, B multiplies x ^ y
inline ScalarPair eval_series_fg(const SeriesCoefficients& c, double z, double w, int n) {
    if (n < 0) throw std::invalid_argument("truncation order must be non-negative");
    const double lam = c.lambda;
    const auto jt = bessel_jtilde_sequence(BesselOrder::from_twice(c.m - 2), n + 1, z);
    const auto zk = zonal_gegenbauer_sequence(n, lam, w);
    const auto ck = gegenbauer_sequence(std::max(n - 1, 0), lam + 1.0, w);
    ScalarPair r;
    double zp = 1.0;  // z^{k-1}
    for (int k = 0; k <= n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (k == 0) {
            r.f += c.alpha(0) * jt[0];
            continue;
        }
        r.f += c.alpha(k) * (zp * z * jt[ku] * zk[ku]);
        r.g += c.beta(k) * (zp * jt[ku] * ck[ku - 1]);
        zp *= z;
    }
    const double s = c.scale();
    return {r.f * s, r.g * s};
}

inline ParaBivector eval_series(const SeriesCoefficients& c, const VectorM& x, const VectorM& y, int n) {
    if (x.dimension() != c.m || y.dimension() != c.m) throw DimensionError("series dimension mismatch");
    const auto g = invariants_of(x, y);
    const auto v = eval_series_fg(c, g.z, g.w.value_or(0.0), n);
    return ParaBivector::from_wedge(v.f, v.g, x, y);
}

namespace detail {

// log of the k-th term of the majorant; -inf when the coefficients vanish
inline double log_majorant_term(const SeriesCoefficients& c, int k, double log_half_z) {
    const double lam = c.lambda;
    double zonal_sup = 1.0;
    if (k >= 1) {
        zonal_sup = lam > 0.0 ? (lam + k) / lam * std::exp(std::lgamma(2.0 * lam + k) - std::lgamma(2.0 * lam) -
                                                         std::lgamma(k + 1.0))
                              : 2.0;
    }
    const double geg_sup =
        k >= 1 ? std::exp(std::lgamma(2.0 * lam + 1.0 + k) - std::lgamma(2.0 * lam + 2.0) - std::lgamma(double(k)))
               : 0.0;
    const double mag = std::abs(c.alpha(k)) * zonal_sup + std::abs(c.beta(k)) * geg_sup;
    if (mag == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(c.scale()) - lam * std::numbers::ln2 + k * log_half_z - std::lgamma(k + lam + 1.0) +
           std::log(mag);
}

}  // namespace detail

// smallest N with sum_{k>N} T_k < eps, where T_k bounds the k-th term of A and |x^y| B for z <= z_max
inline int truncation_bound(const SeriesCoefficients& c, double z_max, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("truncation tolerance must be positive");
    if (!(z_max > 0.0)) return 0;
    const double lhz = std::log(0.5 * z_max);
    const double log_eps = std::log(eps);
    const int floor_k = static_cast<int>(std::ceil(std::numbers::e * z_max)) + 4 * c.m + 8;
    std::vector<double> terms;
    for (int k = 0;; ++k) {
        const double lt = detail::log_majorant_term(c, k, lhz);
        terms.push_back(std::exp(lt));
        if (k >= floor_k && (lt < log_eps - 60.0 || !std::isfinite(lt))) {
            // beyond e z_max the ratio of successive terms stays below 1/2
            terms.back() *= 2.0;
            break;
        }
        if (k > 100000) throw std::runtime_error("truncation_bound did not converge");
    }
    double tail = 0.0;
    int n = static_cast<int>(terms.size()) - 1;
    while (n >= 1 && tail + terms[static_cast<std::size_t>(n)] < eps) {
        tail += terms[static_cast<std::size_t>(n)];
        --n;
    }
    return n;
}

struct EigenvaluePair {
    Complex even_branch;
    Complex odd_branch;
};

inline EigenvaluePair eigenvalues_from_coefficients(const SeriesCoefficients& c, int k) {
    if (k < 0) throw std::invalid_argument("degree must be non-negative");
    const double lam = c.lambda;
    const Complex bk = k == 0 ? Complex{} : c.beta(k);
    EigenvaluePair r;
    r.even_branch = c.alpha(k) - (k == 0 ? 0.0 : k / (2.0 * (lam + k))) * bk;
    r.odd_branch = c.alpha(k + 1) + (k + 1 + 2.0 * lam) / (2.0 * (lam + k + 1)) * c.beta(k + 1);
    return r;
}

struct ExactEigenvalues {
    ExactCoefficient even_branch;
    ExactCoefficient odd_branch;
};

inline ExactEigenvalues exact_eigenvalues(int m, int i, int k) {
    const Rational lam = series_lambda(m);
    ExactEigenvalues r;
    r.even_branch = exact_alpha(m, i, k);
    if (k > 0) r.even_branch = r.even_branch - (Rational(k) / (2 * (lam + k))) * exact_beta(m, i, k);
    r.odd_branch = exact_alpha(m, i, k + 1) + ((k + 1 + 2 * lam) / (2 * (lam + k + 1))) * exact_beta(m, i, k + 1);
    return r;
}

struct InverseCoefficients {
    SeriesCoefficients coefficients;
    std::vector<int> non_invertible;
};

// coefficients whose eigenvalues are the reciprocals of those of c, checked for k <= k_max
inline InverseCoefficients inverse_coefficients(const SeriesCoefficients& c, int k_max = 50) {
    const double lam = c.lambda;
    auto parts = [a = c.alpha, b = c.beta, lam](int k) {
        const Complex ak = a(k), bk = k == 0 ? Complex{} : b(k);
        const double w_even = k == 0 ? 0.0 : k / (2.0 * (lam + k));
        const double w_odd = k == 0 ? 1.0 : (k + 2.0 * lam) / (2.0 * (lam + k));
        const double w_alpha = k == 0 ? 0.0 : lam / (lam + k);
        struct P {
            Complex ak, bk, n, num_alpha;
            double scale;
        };
        const Complex even = ak - w_even * bk, odd = ak + w_odd * bk;
        return P{ak, bk, even * odd, ak + w_alpha * bk, std::max(std::abs(ak), std::abs(bk))};
    };
    auto invertible = [](const auto& p) { return std::abs(p.n) > 1e-13 * p.scale * p.scale; };
    InverseCoefficients r;
    for (int k = 0; k <= k_max; ++k)
        if (!invertible(parts(k))) r.non_invertible.push_back(k);
    r.coefficients = c;
    r.coefficients.alpha = [parts, invertible](int k) {
        const auto p = parts(k);
        return invertible(p) ? p.num_alpha / p.n : Complex{};
    };
    r.coefficients.beta = [parts, invertible](int k) {
        if (k == 0) return Complex{};
        const auto p = parts(k);
        return invertible(p) ? -p.bk / p.n : Complex{};
    };
    return r;
}

// conj(O^-_k) = (-i)^m (-1)^{k+1} E^-_k on the coefficients of K_-
inline Report check_cf_constraint(const SeriesCoefficients& c, int k_max = 50, double tol = 1e-10) {
    const SeriesCoefficients minus = c.provenance.sign == KernelSign::minus ? c : reflect_coefficients(c);
    const Complex factor = system_factor(c.m);
    Report rep("constraint", {{"m", c.m}, {"k_max", k_max}, {"tol", tol}});
    for (int k = 0; k <= k_max; ++k) {
        const auto ev = eigenvalues_from_coefficients(minus, k);
        const Complex lhs = std::conj(ev.odd_branch);
        const Complex rhs = factor * double(sign_power(k + 1)) * ev.even_branch;
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        CaseResult cr;
        cr.name = "k=" + std::to_string(k);
        cr.expected = complex_json(rhs);
        cr.got = complex_json(lhs);
        cr.abs_error = std::abs(lhs - rhs);
        cr.pass = cr.abs_error <= tol * scale;
        rep.add(std::move(cr));
    }
    return rep;
}

// k, Re a_k, Im a_k, Re b_k, Im b_k; raw = true emits alpha_k, beta_k instead
inline void write_coefficients_csv(std::ostream& os, const SeriesCoefficients& c, int k_max, bool raw = false) {
    os << (raw ? "k,re_alpha,im_alpha,re_beta,im_beta\n" : "k,re_a,im_a,re_b,im_b\n");
    os.precision(17);
    for (int k = 0; k <= k_max; ++k) {
        const Complex a = raw ? c.raw_alpha(k) : c.alpha(k);
        const Complex b = raw ? c.raw_beta(k) : c.beta(k);
        os << k << ',' << a.real() << ',' << a.imag() << ',' << b.real() << ',' << b.imag() << '\n';
    }
}

// max |eval_kernel - eval_series| over random (x, y) in the ball, N = truncation_bound(eps) at the largest z
inline Report verify_series_agreement(int m, const std::vector<int>& indices, int points = 500, double radius = 3.0,
                                      double eps = 1e-9, double tol = 1e-8, Complex e = {1.0, 0.0},
                                      std::uint64_t seed = 20240612) {
    Report rep("series", {{"m", m}, {"points", points}, {"radius", radius}, {"eps", eps}, {"tol", tol},
                          {"seed", seed}, {"e", complex_json(e)}});
    for (int i : indices)
        for (auto sign : {KernelSign::plus, KernelSign::minus}) {
            const KernelId id{m, i, sign, e};
            validate(id);
            const KernelEvaluator ev(build_kernel(id));
            const auto c = series_coefficients(id);
            const int n = truncation_bound(c, radius * radius, eps);
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
            double worst = 0.0;
            for (int p = 0; p < points; ++p) {
                const auto x = random_ball_point(m, radius, rng), y = random_ball_point(m, radius, rng);
                const auto a = ev(x, y).to_multivector(), b = eval_series(c, x, y, n).to_multivector();
                worst = std::max(worst, norm(a - b));
            }
            CaseResult cr;
            cr.name = "m=" + std::to_string(m) + ",i=" + std::to_string(i) + (sign == KernelSign::plus ? ",+" : ",-");
            cr.expected = 0.0;
            cr.got = worst;
            cr.abs_error = worst;
            cr.pass = worst <= tol;
            cr.detail = "N=" + std::to_string(n);
            rep.add(std::move(cr));
        }
    return rep;
}

}  // namespace clifft
