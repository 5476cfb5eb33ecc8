#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clifft/clifford.hpp"
#include "clifft/rational.hpp"
#include "clifft/report.hpp"
#include "clifft/special_functions.hpp"

namespace clifft {

using Exponent = std::vector<int>;

// sum over (exponent, blade) of c x^a e_A, exact
class CliffordPolynomial {
public:
    using Key = std::pair<Exponent, Blade>;

    CliffordPolynomial() : m_(1) {}
    explicit CliffordPolynomial(int m) : m_(detail::check_dimension(m)) {}

    static CliffordPolynomial constant(const RationalMultivector& c) {
        CliffordPolynomial p(c.dimension());
        p.add_term(Exponent(static_cast<std::size_t>(c.dimension()), 0), c);
        return p;
    }
    static CliffordPolynomial scalar_constant(int m, const Rational& c) {
        return constant(RationalMultivector::scalar(m, c));
    }
    static CliffordPolynomial monomial(int m, Exponent a, const Rational& c = 1, Blade blade = 0) {
        CliffordPolynomial p(m);
        if (static_cast<int>(a.size()) != m) throw DimensionError("exponent length must equal the dimension");
        p.add(std::move(a), blade, c);
        return p;
    }
    // x_j, 1-based
    static CliffordPolynomial coordinate(int m, int j) {
        if (j < 1 || j > m) throw DimensionError("coordinate index outside 1..m");
        Exponent a(static_cast<std::size_t>(m), 0);
        a[static_cast<std::size_t>(j - 1)] = 1;
        return monomial(m, std::move(a));
    }
    // x = sum_j x_j e_j
    static CliffordPolynomial vector_variable(int m) {
        CliffordPolynomial p(m);
        for (int j = 0; j < m; ++j) {
            Exponent a(static_cast<std::size_t>(m), 0);
            a[static_cast<std::size_t>(j)] = 1;
            p.add(std::move(a), Blade{1} << j, 1);
        }
        return p;
    }
    // |x|^2
    static CliffordPolynomial radius_squared(int m) {
        CliffordPolynomial p(m);
        for (int j = 0; j < m; ++j) {
            Exponent a(static_cast<std::size_t>(m), 0);
            a[static_cast<std::size_t>(j)] = 2;
            p.add(std::move(a), 0, 1);
        }
        return p;
    }

    int dimension() const { return m_; }
    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(Exponent a, Blade blade, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(Key{std::move(a), blade}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add_term(const Exponent& a, const RationalMultivector& c) {
        require(c.dimension());
        for (Blade b = 0; b < c.size(); ++b) add(a, b, c[b]);
    }

    RationalMultivector coefficient(const Exponent& a) const {
        RationalMultivector r(m_);
        for (Blade b = 0; b < r.size(); ++b) {
            auto it = terms_.find(Key{a, b});
            if (it != terms_.end()) r[b] = it->second;
        }
        return r;
    }

    // -1 for the zero polynomial
    int degree() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, total_degree(k.first));
        return d;
    }
    std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        for (const auto& [k, c] : terms_) {
            const int t = total_degree(k.first);
            if (d && *d != t) return std::nullopt;
            d = t;
        }
        return d;
    }

    CliffordPolynomial& operator+=(const CliffordPolynomial& o) {
        require(o.m_);
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    CliffordPolynomial& operator-=(const CliffordPolynomial& o) {
        require(o.m_);
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
        return *this;
    }
    CliffordPolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend CliffordPolynomial operator+(CliffordPolynomial a, const CliffordPolynomial& b) { return a += b; }
    friend CliffordPolynomial operator-(CliffordPolynomial a, const CliffordPolynomial& b) { return a -= b; }
    friend CliffordPolynomial operator*(CliffordPolynomial a, const Rational& s) { return a *= s; }
    friend CliffordPolynomial operator*(const Rational& s, CliffordPolynomial a) { return a *= s; }
    friend bool operator==(const CliffordPolynomial& a, const CliffordPolynomial& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    // Clifford product, left factor first
    friend CliffordPolynomial operator*(const CliffordPolynomial& a, const CliffordPolynomial& b) {
        a.require(b.m_);
        CliffordPolynomial r(a.m_);
        Exponent e(static_cast<std::size_t>(a.m_));
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                for (std::size_t j = 0; j < e.size(); ++j) e[j] = ka.first[j] + kb.first[j];
                r.add(e, ka.second ^ kb.second, product_sign(ka.second, kb.second) * ca * cb);
            }
        return r;
    }

    // d / dx_j, 1-based
    CliffordPolynomial derivative(int j) const {
        if (j < 1 || j > m_) throw DimensionError("coordinate index outside 1..m");
        const auto u = static_cast<std::size_t>(j - 1);
        CliffordPolynomial r(m_);
        for (const auto& [k, c] : terms_) {
            if (k.first[u] == 0) continue;
            Exponent a = k.first;
            const int p = a[u]--;
            r.add(std::move(a), k.second, c * p);
        }
        return r;
    }

    // e_A p
    CliffordPolynomial left_multiply_blade(Blade blade) const {
        CliffordPolynomial r(m_);
        for (const auto& [k, c] : terms_) r.add(k.first, blade ^ k.second, product_sign(blade, k.second) * c);
        return r;
    }

    Multivector evaluate(const VectorM& x) const;

    static int total_degree(const Exponent& a) {
        int d = 0;
        for (int v : a) d += v;
        return d;
    }

private:
    void require(int m) const {
        if (m != m_) throw DimensionError("polynomial dimensions differ");
    }

    int m_;
    std::map<Key, Rational> terms_;
};

// floating-point form for repeated evaluation
class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const CliffordPolynomial& p) : m_(p.dimension()) {
        for (const auto& [k, c] : p.terms()) {
            terms_.push_back({k.first, k.second, to_double(c)});
            for (int v : k.first) max_power_ = std::max(max_power_, v);
        }
    }

    int dimension() const { return m_; }

    Multivector operator()(const VectorM& x) const {
        Multivector r(m_);
        accumulate(x, 1.0, r);
        return r;
    }

    // r += scale * p(x)
    void accumulate(const VectorM& x, double scale, Multivector& r) const {
        if (x.dimension() != m_) throw DimensionError("evaluation point has the wrong dimension");
        const auto stride = static_cast<std::size_t>(max_power_ + 1);
        thread_local std::vector<double> pow_;
        pow_.assign(stride * static_cast<std::size_t>(m_), 1.0);
        for (int j = 0; j < m_; ++j)
            for (int d = 1; d <= max_power_; ++d)
                pow_[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(d)] =
                    pow_[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(d - 1)] * x[j];
        for (const auto& t : terms_) {
            double v = t.c * scale;
            for (int j = 0; j < m_; ++j)
                v *= pow_[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(t.a[static_cast<std::size_t>(j)])];
            r[t.blade] += v;
        }
    }

private:
    struct Term {
        Exponent a;
        Blade blade;
        double c;
    };
    int m_ = 1;
    int max_power_ = 0;
    std::vector<Term> terms_;
};

inline Multivector CliffordPolynomial::evaluate(const VectorM& x) const { return CompiledPolynomial(*this)(x); }

// sum_j e_j d/dx_j, acting from the left
inline CliffordPolynomial dirac(const CliffordPolynomial& p) {
    CliffordPolynomial r(p.dimension());
    for (int j = 1; j <= p.dimension(); ++j) r += p.derivative(j).left_multiply_blade(Blade{1} << (j - 1));
    return r;
}

inline CliffordPolynomial laplace(const CliffordPolynomial& p) {
    CliffordPolynomial r(p.dimension());
    for (int j = 1; j <= p.dimension(); ++j) r += p.derivative(j).derivative(j);
    return r;
}

// exponents of total degree k, lexicographically descending
inline std::vector<Exponent> monomials(int m, int k) {
    std::vector<Exponent> out;
    if (k < 0) return out;
    Exponent a(static_cast<std::size_t>(m), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == m - 1) {
            a[static_cast<std::size_t>(pos)] = left;
            out.push_back(a);
            return;
        }
        for (int v = left; v >= 0; --v) {
            a[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, k);
    return out;
}

inline Integer binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

inline int harmonic_dimension(int m, int k) {
    if (k < 0) return 0;
    return static_cast<int>(binomial(k + m - 1, m - 1) - binomial(k + m - 3, m - 1));
}

// nullspace of the Laplacian on degree-k monomials, one vector per free column
inline std::vector<CliffordPolynomial> harmonic_basis(int m, int k) {
    detail::check_dimension(m);
    if (k < 0) throw std::invalid_argument("degree must be non-negative");
    const auto cols = monomials(m, k);
    const auto rows = monomials(m, k - 2);
    std::map<Exponent, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    const std::size_t nc = cols.size();
    std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(nc));
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
            const int p = cols[c][j];
            if (p < 2) continue;
            Exponent e = cols[c];
            e[j] -= 2;
            a[row_of.at(e)][c] += p * (p - 1);
        }
    // reduced row echelon form
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t q = 0; q < a.size(); ++q) {
            if (q == r || a[q][c] == 0) continue;
            const Rational f = a[q][c];
            for (std::size_t t = c; t < nc; ++t) a[q][t] -= f * a[r][t];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(nc, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<CliffordPolynomial> basis;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        CliffordPolynomial h(m);
        h.add(cols[f], 0, 1);
        for (std::size_t q = 0; q < pivot_col.size(); ++q) h.add(cols[pivot_col[q]], 0, -a[q][f]);
        basis.push_back(std::move(h));
    }
    return basis;
}

// mean of x^a over the unit sphere
inline Rational sphere_moment(int m, const Exponent& a) {
    int total = 0;
    Integer num = 1;
    for (int v : a) {
        if (v % 2 != 0) return 0;
        num *= double_factorial(v - 1);
        total += v;
    }
    Integer den = 1;
    for (int r = 0; r < total / 2; ++r) den *= m + 2 * r;
    return Rational(num, den);
}

// sum_A mean over the sphere of p_A q_A (real coefficients)
inline Rational sphere_inner_product(const CliffordPolynomial& p, const CliffordPolynomial& q) {
    Rational s = 0;
    Exponent e(static_cast<std::size_t>(p.dimension()));
    for (const auto& [kp, cp] : p.terms())
        for (const auto& [kq, cq] : q.terms()) {
            if (kp.second != kq.second) continue;
            for (std::size_t j = 0; j < e.size(); ++j) e[j] = kp.first[j] + kq.first[j];
            s += cp * cq * sphere_moment(p.dimension(), e);
        }
    return s;
}

// Gram-Schmidt of harmonic_basis(m, k) under the sphere inner product; first `count` members
inline std::vector<CliffordPolynomial> orthogonal_harmonic_basis(int m, int k, int count = -1) {
    auto h = harmonic_basis(m, k);
    const std::size_t n = count < 0 ? h.size() : std::min(h.size(), static_cast<std::size_t>(count));
    std::vector<CliffordPolynomial> u;
    std::vector<Rational> norms;
    for (std::size_t l = 0; l < n; ++l) {
        CliffordPolynomial v = h[l];
        for (std::size_t j = 0; j < u.size(); ++j) {
            const Rational c = sphere_inner_product(h[l], u[j]) / norms[j];
            if (c != 0) v -= c * u[j];
        }
        norms.push_back(sphere_inner_product(v, v));
        u.push_back(std::move(v));
    }
    return u;
}

struct SphericalMonogenic {
    int k = 0;
    CliffordPolynomial poly;
};

struct FischerSplit {
    SphericalMonogenic upper;  // M_k
    SphericalMonogenic lower;  // M_{k-1}, H = M_k + x M_{k-1}
};

inline FischerSplit fischer_split(int m, int k, const CliffordPolynomial& h) {
    if (h.dimension() != m) throw DimensionError("polynomial dimension differs from m");
    if (!h.is_zero() && h.homogeneous_degree() != k)
        throw std::invalid_argument("polynomial is not homogeneous of degree " + std::to_string(k));
    if (!laplace(h).is_zero()) throw std::invalid_argument("polynomial is not harmonic");
    FischerSplit s;
    s.upper.k = k;
    s.lower.k = k - 1;
    if (k == 0) {
        s.upper.poly = h;
        s.lower.poly = CliffordPolynomial(m);
        return s;
    }
    s.lower.poly = dirac(h) * make_rational(-1, m + 2 * k - 2);
    s.upper.poly = h - CliffordPolynomial::vector_variable(m) * s.lower.poly;
    return s;
}

// M = (1 + x D / (m + 2k - 2)) H
inline SphericalMonogenic monogenic_projection(int m, int k, const CliffordPolynomial& h) {
    return fischer_split(m, k, h).upper;
}

inline int monogenic_basis_size(int m, int k) { return harmonic_dimension(m, k); }

// Fischer images of the orthogonal harmonics; pairwise orthogonal on the sphere
inline std::vector<SphericalMonogenic> monogenic_basis(int m, int k, int count = -1) {
    std::vector<SphericalMonogenic> out;
    for (const auto& h : orthogonal_harmonic_basis(m, k, count)) out.push_back(monogenic_projection(m, k, h));
    return out;
}

// P(x) exp(-|x|^2 / 2)
struct GaussianFunction {
    CliffordPolynomial poly;

    int dimension() const { return poly.dimension(); }
    Multivector operator()(const VectorM& x) const {
        auto v = poly.evaluate(x);
        v *= Complex(std::exp(-0.5 * x.norm_squared()));
        return v;
    }
};

// (D - x)[P e^{-r^2/2}] = (D P - 2 x P) e^{-r^2/2}
inline GaussianFunction apply_dirac_minus_x(const GaussianFunction& f) {
    const int m = f.dimension();
    return {dirac(f.poly) - Rational(2) * (CliffordPolynomial::vector_variable(m) * f.poly)};
}

inline CliffordPolynomial laguerre_polynomial_in_r2(int m, int j, const Rational& alpha) {
    const auto c = laguerre_coefficients(j, alpha);
    const auto r2 = CliffordPolynomial::radius_squared(m);
    CliffordPolynomial out(m), power = CliffordPolynomial::scalar_constant(m, 1);
    for (std::size_t p = 0; p < c.size(); ++p) {
        out += c[p] * power;
        if (p + 1 < c.size()) power = power * r2;
    }
    return out;
}

enum class Parity { even, odd };

struct BasisFunction {
    int j = 0;
    int k = 0;
    int ell = 1;
    int m = 2;
    SphericalMonogenic monogenic;
    Parity parity = Parity::even;
    GaussianFunction function;
};

// psi_{j,k,ell}, ell counted from 1
inline BasisFunction psi(int j, int k, int ell, int m) {
    detail::check_dimension(m);
    if (j < 0 || k < 0) throw std::invalid_argument("basis indices must be non-negative");
    const int dim = monogenic_basis_size(m, k);
    if (ell < 1 || ell > dim)
        throw std::invalid_argument("ell=" + std::to_string(ell) + " outside 1.." + std::to_string(dim));
    auto mono = monogenic_basis(m, k, ell).back();
    BasisFunction b;
    b.j = j;
    b.k = k;
    b.ell = ell;
    b.m = m;
    b.parity = j % 2 == 0 ? Parity::even : Parity::odd;
    const int p = j / 2;
    CliffordPolynomial poly = mono.poly;
    Rational alpha = make_rational(m + 2 * k - 2, 2);
    if (b.parity == Parity::odd) {
        poly = CliffordPolynomial::vector_variable(m) * poly;
        alpha += 1;
    }
    b.function = {laguerre_polynomial_in_r2(m, p, alpha) * poly};
    b.monogenic = std::move(mono);
    return b;
}

inline Multivector eval_psi(const BasisFunction& b, const VectorM& x) {
    if (x.dimension() != b.m) throw DimensionError("evaluation point has the wrong dimension");
    return b.function(x);
}

// ((-1)^j 2^{-j} / floor(j/2)!) (D - x)^j [M e^{-r^2/2}]
inline GaussianFunction creation_form(const SphericalMonogenic& mono, int j) {
    GaussianFunction f{mono.poly};
    for (int r = 0; r < j; ++r) f = apply_dirac_minus_x(f);
    Integer fact = 1;
    for (int r = 2; r <= j / 2; ++r) fact *= r;
    Rational c = Rational(sign_power(j)) / (Rational(Integer(1) << j) * Rational(fact));
    f.poly *= c;
    return f;
}

// integral of x^a exp(-|x|^2) over R^m divided by pi^{m/2}
inline Rational gaussian_moment(const Exponent& a) {
    Rational r = 1;
    for (int v : a) {
        if (v % 2 != 0) return 0;
        r *= Rational(double_factorial(v - 1), Integer(1) << (v / 2));
    }
    return r;
}

// <f, g> = integral of sum_A f_A g_A for real P e^{-r^2/2} functions, divided by pi^{m/2}
inline Rational gaussian_inner_product(const GaussianFunction& f, const GaussianFunction& g) {
    Rational s = 0;
    Exponent e(static_cast<std::size_t>(f.dimension()));
    for (const auto& [kp, cp] : f.poly.terms())
        for (const auto& [kq, cq] : g.poly.terms()) {
            if (kp.second != kq.second) continue;
            for (std::size_t j = 0; j < e.size(); ++j) e[j] = kp.first[j] + kq.first[j];
            s += cp * cq * gaussian_moment(e);
        }
    return s;
}

inline Json to_json(const CliffordPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [k, c] : p.terms()) {
        Json blade = Json::array();
        for (int j = 0; j < p.dimension(); ++j)
            if (k.second & (Blade{1} << j)) blade.push_back(j + 1);
        terms.push_back({{"exponent", k.first}, {"blade", blade}, {"coeff", to_string(c)}});
    }
    return {{"m", p.dimension()}, {"terms", terms}};
}

}  // namespace clifft
