#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "clifft/clifford.hpp"
#include "clifft/rational.hpp"
#include "clifft/report.hpp"
#include "clifft/special_functions.hpp"

namespace clifft {

inline const double kSqrtPiOver2 = std::sqrt(std::numbers::pi / 2.0);

// c s^p Jt_{twice/2}(t) with an exact rational coefficient
struct ExactTerm {
    Rational coeff;
    int s_power = 0;
    int twice_order = 0;

    friend bool operator==(const ExactTerm&, const ExactTerm&) = default;
};

using ExactSeries = std::vector<ExactTerm>;

inline ExactSeries canonicalize(ExactSeries terms) {
    std::sort(terms.begin(), terms.end(), [](const ExactTerm& a, const ExactTerm& b) {
        return std::tie(a.s_power, a.twice_order) < std::tie(b.s_power, b.twice_order);
    });
    ExactSeries out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().s_power == t.s_power && out.back().twice_order == t.twice_order)
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
    }
    std::erase_if(out, [](const ExactTerm& t) { return t.coeff == 0; });
    return out;
}

inline ExactSeries operator+(const ExactSeries& a, const ExactSeries& b) {
    ExactSeries r = a;
    r.insert(r.end(), b.begin(), b.end());
    return canonicalize(std::move(r));
}

inline ExactSeries scale(ExactSeries a, const Rational& c) {
    for (auto& t : a) t.coeff *= c;
    return canonicalize(std::move(a));
}

inline ExactSeries operator-(const ExactSeries& a, const ExactSeries& b) { return a + scale(b, -1); }

inline ExactSeries multiply_by_s(ExactSeries a, int power = 1) {
    for (auto& t : a) t.s_power += power;
    return a;
}

// requires every term to carry s_power >= 1
inline ExactSeries divide_by_s(ExactSeries a) {
    for (auto& t : a) {
        if (t.s_power < 1) throw std::logic_error("divide_by_s: term without a factor s");
        --t.s_power;
    }
    return a;
}

// z^{-1} d/dw: Jt_a -> s Jt_{a+1}, s^a -> a s^{a-1}
inline ExactSeries apply_zinv_dw(const ExactSeries& terms) {
    ExactSeries r;
    r.reserve(2 * terms.size());
    for (const auto& t : terms) {
        if (t.s_power != 0) r.push_back({t.coeff * t.s_power, t.s_power - 1, t.twice_order});
        r.push_back({t.coeff, t.s_power + 1, t.twice_order + 2});
    }
    return canonicalize(std::move(r));
}

struct TermMismatch {
    int s_power = 0;
    int twice_order = 0;
    Rational expected;
    Rational got;

    std::string describe() const {
        std::ostringstream os;
        os << "s_power=" << s_power << " twice_order=" << twice_order << " expected=" << expected
           << " got=" << got;
        return os.str();
    }
};

inline std::optional<TermMismatch> first_mismatch(const ExactSeries& expected, const ExactSeries& got) {
    const auto a = canonicalize(expected);
    const auto b = canonicalize(got);
    std::size_t p = 0, q = 0;
    auto key = [](const ExactTerm& t) { return std::make_pair(t.s_power, t.twice_order); };
    while (p < a.size() || q < b.size()) {
        if (q == b.size() || (p < a.size() && key(a[p]) < key(b[q]))) {
            return TermMismatch{a[p].s_power, a[p].twice_order, a[p].coeff, 0};
        }
        if (p == a.size() || key(b[q]) < key(a[p])) {
            return TermMismatch{b[q].s_power, b[q].twice_order, 0, b[q].coeff};
        }
        if (a[p].coeff != b[q].coeff)
            return TermMismatch{a[p].s_power, a[p].twice_order, a[p].coeff, b[q].coeff};
        ++p;
        ++q;
    }
    return std::nullopt;
}

enum class KernelSign { plus, minus };

struct KernelId {
    int m = 2;
    int i = 0;
    KernelSign sign = KernelSign::plus;
    Complex e{1.0, 0.0};

    bool odd() const { return m % 2 != 0; }
};

inline void validate(const KernelId& id) {
    if (id.m < 2 || id.m > kMaxDimension)
        throw std::invalid_argument("kernel dimension must lie in [2, " + std::to_string(kMaxDimension) + "]");
    if (id.i < 0 || id.i > id.m - 2)
        throw std::invalid_argument("kernel index i=" + std::to_string(id.i) + " outside [0, m-2] for m=" +
                                    std::to_string(id.m));
}

// real component functions of K^i_{+,m}; the even family carries an overall sqrt(pi/2)
struct KernelComponents {
    int m = 2;
    int i = 0;
    bool sqrt_pi_over_2 = true;
    ExactSeries f_tilde;
    ExactSeries f_hat;
    ExactSeries g;
};

namespace detail {

inline Integer factorial(int n) {
    Integer r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// i! / (2^l l! (n)!)
inline Rational hermite_weight(int i, int l, int n) {
    Integer den = factorial(l) * factorial(n);
    den <<= l;
    return Rational(factorial(i), den);
}

inline int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0)) ? 1 : 0); }

}  // namespace detail

inline KernelComponents kernel_components(int m, int i) {
    validate(KernelId{m, i});
    KernelComponents c;
    c.m = m;
    c.i = i;
    c.sqrt_pi_over_2 = (m % 2 == 0);
    const int hat_sign = (m % 2 == 0) ? sign_power(m / 2 + i) : sign_power((m + 1) / 2 + i);
    if (i >= 1)
        for (int l = 0; l <= (i - 1) / 2; ++l)
            c.f_tilde.push_back({-detail::hermite_weight(i, l, i - 1 - 2 * l), i - 1 - 2 * l, m - 2 * l - 3});
    for (int l = 0; l <= i / 2; ++l) {
        const Rational w = detail::hermite_weight(i, l, i - 2 * l);
        c.f_hat.push_back({w * hat_sign, i - 2 * l, m - 2 * l - 3});
        c.g.push_back({w, i - 2 * l, m - 2 * l - 1});
    }
    c.f_tilde = canonicalize(std::move(c.f_tilde));
    c.f_hat = canonicalize(std::move(c.f_hat));
    c.g = canonicalize(std::move(c.g));
    return c;
}

struct KernelTerm {
    Complex coeff;
    bool sqrt_pi_over_2 = false;
    int s_power = 0;
    BesselOrder order;

    double value_factor() const { return sqrt_pi_over_2 ? kSqrtPiOver2 : 1.0; }
    friend bool operator==(const KernelTerm&, const KernelTerm&) = default;
};

struct KernelExpr {
    int m = 2;
    int i = 0;
    KernelSign sign = KernelSign::plus;
    std::vector<KernelTerm> scalar;
    std::vector<KernelTerm> bivector;

    friend bool operator==(const KernelExpr&, const KernelExpr&) = default;
};

inline std::vector<KernelTerm> canonicalize(std::vector<KernelTerm> terms) {
    auto key = [](const KernelTerm& t) { return std::make_tuple(t.s_power, t.order.twice(), t.sqrt_pi_over_2); };
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::vector<KernelTerm> out;
    for (auto& t : terms) {
        if (!out.empty() && key(out.back()) == key(t))
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const KernelTerm& t) { return t.coeff == Complex{}; });
    return out;
}

namespace detail {

inline void append_terms(std::vector<KernelTerm>& out, const ExactSeries& s, Complex factor, bool sqrt_flag) {
    for (const auto& t : s)
        out.push_back({factor * to_double(t.coeff), sqrt_flag, t.s_power, BesselOrder::from_twice(t.twice_order)});
}

}  // namespace detail

inline KernelExpr build_kernel_even(int m, int i) {
    if (m % 2 != 0) throw std::invalid_argument("build_kernel_even requires even m");
    const auto c = kernel_components(m, i);
    KernelExpr k{m, i, KernelSign::plus, {}, {}};
    detail::append_terms(k.scalar, c.f_tilde, 1.0, true);
    detail::append_terms(k.scalar, c.f_hat, 1.0, true);
    detail::append_terms(k.bivector, c.g, 1.0, true);
    k.scalar = canonicalize(std::move(k.scalar));
    k.bivector = canonicalize(std::move(k.bivector));
    return k;
}

// scalar e f~ + I conj(e) f^, bivector e g
inline KernelExpr build_kernel_odd(int m, int i, Complex e = {1.0, 0.0}) {
    if (m % 2 == 0) throw std::invalid_argument("build_kernel_odd requires odd m");
    const auto c = kernel_components(m, i);
    KernelExpr k{m, i, KernelSign::plus, {}, {}};
    const Complex ie = Complex(0.0, 1.0) * std::conj(e);
    detail::append_terms(k.scalar, c.f_tilde, e, false);
    detail::append_terms(k.scalar, c.f_hat, ie, false);
    detail::append_terms(k.bivector, c.g, e, false);
    k.scalar = canonicalize(std::move(k.scalar));
    k.bivector = canonicalize(std::move(k.bivector));
    return k;
}

// K(x,-y)^c
inline KernelExpr minus_counterpart(KernelExpr k) {
    for (auto& t : k.scalar) t.coeff = std::conj(t.coeff) * static_cast<double>(sign_power(t.s_power));
    for (auto& t : k.bivector) t.coeff = -std::conj(t.coeff) * static_cast<double>(sign_power(t.s_power));
    k.sign = k.sign == KernelSign::plus ? KernelSign::minus : KernelSign::plus;
    k.scalar = canonicalize(std::move(k.scalar));
    k.bivector = canonicalize(std::move(k.bivector));
    return k;
}

inline KernelExpr build_kernel(const KernelId& id) {
    validate(id);
    KernelExpr k = id.odd() ? build_kernel_odd(id.m, id.i, id.e) : build_kernel_even(id.m, id.i);
    return id.sign == KernelSign::plus ? k : minus_counterpart(std::move(k));
}

// even-dimensional Clifford-Fourier kernel K_+ = sqrt(pi/2) (A + B + (x ^ y) C)
inline KernelExpr build_cf_kernel(int m) {
    if (m % 2 != 0 || m < 2) throw std::invalid_argument("build_cf_kernel requires even m >= 2");
    const int h = m / 2;
    ExactSeries scalar, biv;
    for (int l = 0; l <= detail::floor_div(m - 3, 4); ++l) {
        Integer den = detail::factorial(l) * detail::factorial(h - 2 * l - 2);
        den <<= l;
        scalar.push_back({Rational(detail::factorial(h - 1), den), h - 2 - 2 * l, m - 2 * l - 3});
    }
    for (int l = 0; l <= detail::floor_div(m - 2, 4); ++l) {
        Integer den = detail::factorial(l) * detail::factorial(h - 2 * l - 1);
        den <<= l;
        const Rational w(detail::factorial(h - 1), den);
        scalar.push_back({w, h - 1 - 2 * l, m - 2 * l - 3});
        biv.push_back({-w, h - 1 - 2 * l, m - 2 * l - 1});
    }
    KernelExpr k{m, h - 1, KernelSign::plus, {}, {}};
    detail::append_terms(k.scalar, canonicalize(scalar), 1.0, true);
    detail::append_terms(k.bivector, canonicalize(biv), 1.0, true);
    k.scalar = canonicalize(std::move(k.scalar));
    k.bivector = canonicalize(std::move(k.bivector));
    return k;
}

inline KernelExpr negate(KernelExpr k) {
    for (auto& t : k.scalar) t.coeff = -t.coeff;
    for (auto& t : k.bivector) t.coeff = -t.coeff;
    return k;
}

struct ScalarPair {
    Complex f;
    Complex g;
};

// precomputes the Bessel order range of a kernel for repeated evaluation
class KernelEvaluator {
public:
    explicit KernelEvaluator(KernelExpr k) : k_(std::move(k)) {
        int lo = 1 << 20, hi = -(1 << 20);
        for (const auto* part : {&k_.scalar, &k_.bivector})
            for (const auto& t : *part) {
                lo = std::min(lo, t.order.twice());
                hi = std::max(hi, t.order.twice());
                max_power_ = std::max(max_power_, t.s_power);
            }
        if (lo <= hi) {
            first_ = lo;
            count_ = (hi - lo) / 2 + 1;
        }
        // orders of one kernel share the parity of twice_order
        for (const auto* part : {&k_.scalar, &k_.bivector})
            for (const auto& t : *part)
                if ((t.order.twice() - first_) % 2 != 0) throw std::invalid_argument("mixed Bessel order parity");
    }

    const KernelExpr& kernel() const { return k_; }
    int dimension() const { return k_.m; }

    ScalarPair eval(double s, double t) const {
        if (count_ == 0) return {};
        const auto jt = bessel_jtilde_sequence(BesselOrder::from_twice(first_), count_, t);
        return combine(s, jt.data());
    }

    // jt holds Jt_{first}, Jt_{first+1}, ... at the current t
    ScalarPair combine(double s, const double* jt) const {
        double pw[64];
        pw[0] = 1.0;
        for (int p = 1; p <= max_power_; ++p) pw[p] = pw[p - 1] * s;
        ScalarPair r;
        for (const auto& t : k_.scalar)
            r.f += t.coeff * (t.value_factor() * pw[t.s_power] * jt[(t.order.twice() - first_) / 2]);
        for (const auto& t : k_.bivector)
            r.g += t.coeff * (t.value_factor() * pw[t.s_power] * jt[(t.order.twice() - first_) / 2]);
        return r;
    }

    BesselOrder first_order() const { return BesselOrder::from_twice(first_); }
    int order_count() const { return count_; }

    ParaBivector operator()(const VectorM& x, const VectorM& y) const {
        const auto g = invariants_of(x, y);
        const auto v = eval(g.s, g.t);
        return ParaBivector::from_wedge(v.f, v.g, x, y);
    }

private:
    KernelExpr k_;
    int first_ = 0;
    int count_ = 0;
    int max_power_ = 0;
};

inline ScalarPair eval_kernel_fg(const KernelExpr& k, double s, double t) { return KernelEvaluator(k).eval(s, t); }

inline ParaBivector eval_kernel(const KernelExpr& k, const VectorM& x, const VectorM& y) {
    if (x.dimension() != k.m || y.dimension() != k.m) throw DimensionError("kernel and vector dimensions differ");
    return KernelEvaluator(k)(x, y);
}

namespace detail {

inline CaseResult series_case(const std::string& name, const ExactSeries& expected, const ExactSeries& got) {
    CaseResult c;
    c.name = name;
    const auto mm = first_mismatch(expected, got);
    c.pass = !mm.has_value();
    c.expected = static_cast<long long>(canonicalize(expected).size());
    c.got = static_cast<long long>(canonicalize(got).size());
    if (mm) {
        c.detail = mm->describe();
        c.abs_error = std::abs(to_double(mm->expected - mm->got));
    }
    return c;
}

inline std::string tag(int m, int i) { return "m=" + std::to_string(m) + ",i=" + std::to_string(i); }

}  // namespace detail

// checks the components of (m+2, i+1) against z^{-1} d/dw applied to (m, i)
inline Report verify_recursion_step(const KernelComponents& lower, const KernelComponents& upper) {
    const int m = lower.m, i = lower.i;
    Report r("recursion");
    const std::string t = detail::tag(m, i) + "->" + detail::tag(upper.m, upper.i);
    if (upper.m != m + 2 || upper.i != i + 1) throw std::invalid_argument("recursion step needs (m,i) -> (m+2,i+1)");
    const auto hat = apply_zinv_dw(lower.f_hat);
    r.add(detail::series_case(t + " f_hat", upper.f_hat, hat));
    if (i == 0) {
        // every term of f^1_{m+2} carries s, so the s^{-1} step is exact
        const int boundary = sign_power((m - 1) / 2);
        r.add(detail::series_case(t + " f_tilde (s^-1 boundary)", upper.f_tilde, scale(divide_by_s(hat), boundary)));
        r.add(detail::series_case(t + " g", upper.g, scale(apply_zinv_dw(upper.f_tilde), -1)));
    } else {
        r.add(detail::series_case(t + " f_tilde", upper.f_tilde,
                                  scale(apply_zinv_dw(lower.f_tilde), Rational(i + 1, i))));
        r.add(detail::series_case(t + " g", upper.g,
                                  scale(apply_zinv_dw(upper.f_tilde), Rational(-1, i + 1))));
    }
    return r;
}

inline Report verify_recursion_even(int m, int i) {
    if (m % 2 != 0) throw std::invalid_argument("verify_recursion_even requires even m");
    return verify_recursion_step(kernel_components(m, i), kernel_components(m + 2, i + 1));
}

inline Report verify_recursion_odd(int m, int i) {
    if (m % 2 == 0) throw std::invalid_argument("verify_recursion_odd requires odd m");
    return verify_recursion_step(kernel_components(m, i), kernel_components(m + 2, i + 1));
}

inline Report verify_structural_identities(int m) {
    if (m % 2 != 0 || m < 4) throw std::invalid_argument("structural identities are stated for even m >= 4");
    Report r("structural");
    const auto tag = "m=" + std::to_string(m);
    {
        const auto k0 = kernel_components(m, 0), k1 = kernel_components(m, 1);
        r.add(detail::series_case(tag + " f_hat^0 = -(-1)^{m/2} f_tilde^1", k0.f_hat,
                                  scale(k1.f_tilde, -sign_power(m / 2))));
        r.add(detail::series_case(tag + " g^0 = s^-1 g^1", k0.g, divide_by_s(k1.g)));
    }
    {
        const auto top = kernel_components(m, m - 2), next = kernel_components(m, m - 3);
        const auto low = kernel_components(m - 2, m - 4);
        r.add(detail::series_case(tag + " g^{m-2}", top.g, multiply_by_s(next.g) + scale(low.g, m - 3)));
        r.add(detail::series_case(tag + " f_hat^{m-2}", top.f_hat,
                                  scale(multiply_by_s(next.f_hat), -1) + scale(low.f_hat, -(m - 3))));
        r.add(detail::series_case(tag + " f_tilde^{m-2}", top.f_tilde,
                                  scale(multiply_by_s(next.f_tilde), Rational(m - 2, m - 3)) +
                                      scale(low.f_tilde, m - 2)));
    }
    return r;
}

// (-I)^m: a for even m, I a for odd m
inline Complex system_factor(int m) {
    switch (m % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

struct PdeResidual {
    double first = 0.0;
    double second = 0.0;
    double scale = 1.0;
    double relative() const { return std::max(first, second) / scale; }
};

namespace detail {

template <class F>
Multivector central_derivative(F&& f, const VectorM& at, int j, double h) {
    VectorM p1 = at, m1 = at, p2 = at, m2 = at;
    p1[j] += h;
    m1[j] -= h;
    p2[j] += 2.0 * h;
    m2[j] -= 2.0 * h;
    Multivector d = (f(m2) - f(p2)) + (f(p1) - f(m1)) * Complex(8.0);
    return d * Complex(1.0 / (12.0 * h));
}

}  // namespace detail

// d_y[K+] - c K- x and [K+] d_x - c y K-, c = (-I)^m, by fourth-order central differences
inline PdeResidual pde_residual(const KernelExpr& kplus, const VectorM& x, const VectorM& y, double h = 1e-3) {
    const int m = kplus.m;
    const KernelEvaluator plus(kplus), minus(minus_counterpart(kplus));
    const Complex c = system_factor(m);
    auto Ky = [&](const VectorM& yy) { return plus(x, yy).to_multivector(); };
    auto Kx = [&](const VectorM& xx) { return plus(xx, y).to_multivector(); };
    Multivector dy(m), dx(m);
    for (int j = 0; j < m; ++j) {
        const auto ej = Multivector::blade(m, Blade{1} << j);
        dy += ej * detail::central_derivative(Ky, y, j, h);
        dx += detail::central_derivative(Kx, x, j, h) * ej;
    }
    const auto km = minus(x, y).to_multivector();
    const auto rhs1 = c * (km * to_multivector(x));
    const auto rhs2 = c * (to_multivector(y) * km);
    PdeResidual r;
    r.first = norm(dy - rhs1);
    r.second = norm(dx - rhs2);
    r.scale = std::max({1.0, norm(rhs1), norm(rhs2), norm(dy), norm(dx)});
    return r;
}

// the scalar form of the system in (s, t), f_-(s,t) = conj f(-s,t), g_- = -conj g(-s,t)
inline PdeResidual scalar_system_residual(const KernelExpr& kplus, double s, double t, double h = 1e-3) {
    const KernelEvaluator ev(kplus);
    const int m = kplus.m;
    const Complex c = system_factor(m);
    auto d = [&](auto&& fn, bool in_s) {
        auto at = [&](double o) { return in_s ? fn(s + o, t) : fn(s, t + o); };
        return (at(-2.0 * h) - at(2.0 * h) + 8.0 * (at(h) - at(-h))) / (12.0 * h);
    };
    auto f = [&](double ss, double tt) { return ev.eval(ss, tt).f; };
    auto g = [&](double ss, double tt) { return ev.eval(ss, tt).g; };
    const auto here = ev.eval(s, t), mirrored = ev.eval(-s, t);
    const Complex e1 = d(f, true) + t * d(g, false) + double(m - 1) * here.g - c * std::conj(mirrored.f);
    const Complex e2 = d(g, true) - d(f, false) / t - c * std::conj(mirrored.g);
    PdeResidual r;
    r.first = std::abs(e1);
    r.second = std::abs(e2);
    r.scale = std::max({1.0, std::abs(here.f), std::abs(here.g), std::abs(mirrored.f), std::abs(mirrored.g)});
    return r;
}

// max(|scalar|, max |b_jk|) / ((1+|x|)^i (1+|y|)^i)
inline double kernel_growth_ratio(const KernelExpr& k, const VectorM& x, const VectorM& y) {
    const auto v = eval_kernel(k, x, y);
    const double w = std::pow((1.0 + x.norm()) * (1.0 + y.norm()), k.i);
    return v.max_abs() / w;
}

// point in the ball of the given radius, direction and radius fraction drawn from rng
inline VectorM random_ball_point(int m, double radius, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    VectorM v(m);
    for (int j = 0; j < m; ++j) v[j] = n(rng);
    return v * (radius * u(rng) / v.norm());
}

// max relative residual of both equations over random (x, y) in the ball, one case per kernel index
inline Report verify_pde(int m, const std::vector<int>& indices, int points = 200, double radius = 3.0,
                         double tol = 1e-6, Complex e = {1.0, 0.0}, std::uint64_t seed = 20240611) {
    Report rep("pde", {{"m", m}, {"points", points}, {"radius", radius}, {"tol", tol}, {"h", 1e-3},
                       {"seed", seed}, {"e", complex_json(e)}});
    for (int i : indices) {
        const KernelId id{m, i, KernelSign::plus, e};
        validate(id);
        const auto k = build_kernel(id);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        double worst = 0.0;
        for (int n = 0; n < points; ++n) {
            const auto x = random_ball_point(m, radius, rng), y = random_ball_point(m, radius, rng);
            worst = std::max(worst, pde_residual(k, x, y).relative());
        }
        CaseResult c;
        c.name = detail::tag(m, i);
        c.expected = 0.0;
        c.got = worst;
        c.abs_error = worst;
        c.pass = worst <= tol;
        c.detail = "max relative residual over " + std::to_string(points) + " points";
        rep.add(std::move(c));
    }
    return rep;
}

}  // namespace clifft
