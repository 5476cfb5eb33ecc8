#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifft/rational.hpp"

namespace clifft {

using Complex = std::complex<double>;
using Blade = std::uint32_t;

inline constexpr int kMaxDimension = 12;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

constexpr int product_parity(Blade a, Blade b) {
    int swaps = 0;
    for (Blade x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
    // common generators square to -1
    return (swaps + std::popcount(a & b)) & 1;
}

inline constexpr int kTableBits = 8;

constexpr std::array<std::int8_t, (1u << (2 * kTableBits))> make_sign_table() {
    std::array<std::int8_t, (1u << (2 * kTableBits))> table{};
    for (Blade a = 0; a < (1u << kTableBits); ++a)
        for (Blade b = 0; b < (1u << kTableBits); ++b)
            table[(a << kTableBits) | b] = product_parity(a, b) ? -1 : 1;
    return table;
}

inline constexpr auto kSignTable = make_sign_table();

inline int check_dimension(int m) {
    if (m < 1 || m > kMaxDimension)
        throw DimensionError("dimension must lie in [1, " + std::to_string(kMaxDimension) +
                             "], got " + std::to_string(m));
    return m;
}

}  // namespace detail

// e_a e_b = product_sign(a, b) e_{a ^ b}
constexpr int product_sign(Blade a, Blade b) {
    if (a < (1u << detail::kTableBits) && b < (1u << detail::kTableBits))
        return detail::kSignTable[(a << detail::kTableBits) | b];
    return detail::product_parity(a, b) ? -1 : 1;
}

constexpr int grade_of(Blade b) { return std::popcount(b); }

template <class T>
class BasicMultivector {
public:
    using value_type = T;

    explicit BasicMultivector(int m)
        : m_(detail::check_dimension(m)), coeffs_(std::size_t{1} << m, T{}) {}

    static BasicMultivector scalar(int m, T value) {
        BasicMultivector r(m);
        r.coeffs_[0] = std::move(value);
        return r;
    }

    static BasicMultivector blade(int m, Blade b, T value = T{1}) {
        BasicMultivector r(m);
        if (b >= r.size()) throw DimensionError("blade outside the algebra");
        r.coeffs_[b] = std::move(value);
        return r;
    }

    // indices are 1-based and strictly increasing
    static BasicMultivector from_indices(int m, std::span<const int> indices, T value = T{1}) {
        return blade(m, blade_from_indices(m, indices), std::move(value));
    }

    static Blade blade_from_indices(int m, std::span<const int> indices) {
        Blade b = 0;
        int prev = 0;
        for (int j : indices) {
            if (j <= prev || j > m) throw DimensionError("blade indices must be increasing and within 1..m");
            b |= Blade{1} << (j - 1);
            prev = j;
        }
        return b;
    }

    int dimension() const { return m_; }
    std::size_t size() const { return coeffs_.size(); }

    const T& operator[](Blade b) const { return coeffs_[b]; }
    T& operator[](Blade b) { return coeffs_[b]; }

    std::span<const T> coefficients() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != T{}) return false;
        return true;
    }

    BasicMultivector& operator+=(const BasicMultivector& o) {
        require_same(o);
        for (std::size_t a = 0; a < size(); ++a) coeffs_[a] += o.coeffs_[a];
        return *this;
    }
    BasicMultivector& operator-=(const BasicMultivector& o) {
        require_same(o);
        for (std::size_t a = 0; a < size(); ++a) coeffs_[a] -= o.coeffs_[a];
        return *this;
    }
    BasicMultivector& operator*=(const T& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend BasicMultivector operator+(BasicMultivector a, const BasicMultivector& b) { return a += b; }
    friend BasicMultivector operator-(BasicMultivector a, const BasicMultivector& b) { return a -= b; }
    friend BasicMultivector operator-(BasicMultivector a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend BasicMultivector operator*(BasicMultivector a, const T& s) { return a *= s; }
    friend BasicMultivector operator*(const T& s, BasicMultivector a) { return a *= s; }
    friend bool operator==(const BasicMultivector& a, const BasicMultivector& b) {
        return a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
    }

    void require_same(const BasicMultivector& o) const {
        if (o.m_ != m_)
            throw DimensionError("multivector dimensions differ: " + std::to_string(m_) + " vs " +
                                 std::to_string(o.m_));
    }

private:
    int m_;
    std::vector<T> coeffs_;
};

using Multivector = BasicMultivector<Complex>;
using RationalMultivector = BasicMultivector<Rational>;

template <class T>
BasicMultivector<T> geometric_product(const BasicMultivector<T>& a, const BasicMultivector<T>& b) {
    a.require_same(b);
    BasicMultivector<T> r(a.dimension());
    const T zero{};
    for (Blade i = 0; i < a.size(); ++i) {
        if (a[i] == zero) continue;
        for (Blade j = 0; j < b.size(); ++j) {
            if (b[j] == zero) continue;
            if (product_sign(i, j) > 0)
                r[i ^ j] += a[i] * b[j];
            else
                r[i ^ j] -= a[i] * b[j];
        }
    }
    return r;
}

template <class T>
BasicMultivector<T> operator*(const BasicMultivector<T>& a, const BasicMultivector<T>& b) {
    return geometric_product(a, b);
}

inline Multivector complex_conjugate(Multivector a) {
    for (Blade i = 0; i < a.size(); ++i) a[i] = std::conj(a[i]);
    return a;
}

// bar(e_A) e_A = 1
template <class T>
BasicMultivector<T> main_anti_involution(BasicMultivector<T> a) {
    for (Blade i = 0; i < a.size(); ++i) {
        const int k = grade_of(i);
        if ((k * (k + 1) / 2) % 2 != 0) a[i] = -a[i];
    }
    return a;
}

template <class T>
BasicMultivector<T> grade_project(const BasicMultivector<T>& a, int k) {
    BasicMultivector<T> r(a.dimension());
    for (Blade i = 0; i < a.size(); ++i)
        if (grade_of(i) == k) r[i] = a[i];
    return r;
}

template <class T>
T scalar_part(const BasicMultivector<T>& a) {
    return a[0];
}

inline double norm(const Multivector& a) {
    double s = 0.0;
    for (const auto& c : a.coefficients()) s += std::norm(c);
    return std::sqrt(s);
}

inline Multivector to_complex(const RationalMultivector& a) {
    Multivector r(a.dimension());
    for (Blade i = 0; i < a.size(); ++i)
        if (a[i] != 0) r[i] = to_double(a[i]);
    return r;
}

// [bar(a^c) b]_0
inline Complex l2_pairing(const Multivector& a, const Multivector& b) {
    a.require_same(b);
    Complex s{};
    for (Blade i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

class VectorM {
public:
    VectorM() = default;
    explicit VectorM(int m) : c_(static_cast<std::size_t>(detail::check_dimension(m)), 0.0) {}
    explicit VectorM(std::vector<double> c) : c_(std::move(c)) {
        detail::check_dimension(static_cast<int>(c_.size()));
    }
    VectorM(std::initializer_list<double> c) : VectorM(std::vector<double>(c)) {}

    int dimension() const { return static_cast<int>(c_.size()); }
    double operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
    double& operator[](int j) { return c_[static_cast<std::size_t>(j)]; }
    std::span<const double> components() const { return c_; }

    double norm_squared() const {
        double s = 0.0;
        for (double v : c_) s += v * v;
        return s;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    VectorM& operator+=(const VectorM& o) {
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
        return *this;
    }
    VectorM& operator-=(const VectorM& o) {
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
        return *this;
    }
    VectorM& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }
    friend VectorM operator+(VectorM a, const VectorM& b) { return a += b; }
    friend VectorM operator-(VectorM a, const VectorM& b) { return a -= b; }
    friend VectorM operator*(VectorM a, double s) { return a *= s; }
    friend VectorM operator*(double s, VectorM a) { return a *= s; }
    friend VectorM operator-(VectorM a) { return a *= -1.0; }

private:
    std::vector<double> c_;
};

inline double dot(const VectorM& x, const VectorM& y) {
    if (x.dimension() != y.dimension()) throw DimensionError("vector dimensions differ");
    double s = 0.0;
    for (int j = 0; j < x.dimension(); ++j) s += x[j] * y[j];
    return s;
}

inline Multivector to_multivector(const VectorM& x) {
    Multivector r(x.dimension());
    for (int j = 0; j < x.dimension(); ++j) r[Blade{1} << j] = x[j];
    return r;
}

inline int bivector_count(int m) { return m * (m - 1) / 2; }

// packed position of e_{j+1} e_{k+1}, 0 <= j < k < m
inline int bivector_index(int m, int j, int k) { return j * (2 * m - j - 1) / 2 + (k - j - 1); }

inline std::vector<double> wedge_components(const VectorM& x, const VectorM& y) {
    const int m = x.dimension();
    if (y.dimension() != m) throw DimensionError("vector dimensions differ");
    std::vector<double> w(static_cast<std::size_t>(bivector_count(m)));
    std::size_t p = 0;
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) w[p++] = x[j] * y[k] - x[k] * y[j];
    return w;
}

inline Multivector wedge(const VectorM& x, const VectorM& y) {
    const int m = x.dimension();
    const auto w = wedge_components(x, y);
    Multivector r(m);
    std::size_t p = 0;
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) r[(Blade{1} << j) | (Blade{1} << k)] = w[p++];
    return r;
}

// scalar plus bivector
class ParaBivector {
public:
    explicit ParaBivector(int m)
        : m_(detail::check_dimension(m)), b_(static_cast<std::size_t>(bivector_count(m))) {}
    ParaBivector(int m, Complex scalar, std::vector<Complex> bivector)
        : m_(detail::check_dimension(m)), s_(scalar), b_(std::move(bivector)) {
        if (b_.size() != static_cast<std::size_t>(bivector_count(m)))
            throw DimensionError("bivector part has wrong length");
    }

    // scalar + g (x ^ y)
    static ParaBivector from_wedge(Complex scalar, Complex g, const VectorM& x, const VectorM& y) {
        const auto w = wedge_components(x, y);
        std::vector<Complex> b(w.size());
        for (std::size_t p = 0; p < w.size(); ++p) b[p] = g * w[p];
        return ParaBivector(x.dimension(), scalar, std::move(b));
    }

    int dimension() const { return m_; }
    Complex scalar() const { return s_; }
    std::span<const Complex> bivector_coefficients() const { return b_; }

    // coefficient of e_{j+1} e_{k+1}
    Complex bivector(int j, int k) const {
        if (j == k) return {};
        if (j > k) return -b_[static_cast<std::size_t>(bivector_index(m_, k, j))];
        return b_[static_cast<std::size_t>(bivector_index(m_, j, k))];
    }

    Multivector to_multivector() const {
        Multivector r = Multivector::scalar(m_, s_);
        std::size_t p = 0;
        for (int j = 0; j < m_; ++j)
            for (int k = j + 1; k < m_; ++k) r[(Blade{1} << j) | (Blade{1} << k)] = b_[p++];
        return r;
    }

    double max_abs() const {
        double v = std::abs(s_);
        for (const auto& c : b_) v = std::max(v, std::abs(c));
        return v;
    }

private:
    int m_;
    Complex s_{};
    std::vector<Complex> b_;
};

struct GeometricInvariants {
    double s = 0.0;
    double t = 0.0;
    double z = 0.0;
    std::optional<double> w;
};

inline GeometricInvariants invariants_of(const VectorM& x, const VectorM& y) {
    GeometricInvariants g;
    g.s = dot(x, y);
    double t2 = 0.0;
    for (double c : wedge_components(x, y)) t2 += c * c;
    g.t = std::sqrt(t2);
    g.z = x.norm() * y.norm();
    if (g.z > 0.0) g.w = std::clamp(g.s / g.z, -1.0, 1.0);
    return g;
}

}  // namespace clifft
