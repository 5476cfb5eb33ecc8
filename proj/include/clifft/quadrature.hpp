#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clifft/clifford.hpp"
#include "clifft/report.hpp"

namespace clifft {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// nodes and weights for the weight function exp(-x^2 / 2) on the real line
inline GaussRule gauss_hermite(int n) {
    if (n < 1 || n > 400) throw std::invalid_argument("Gauss-Hermite order must lie in [1, 400]");
    // physicists' rule for exp(-t^2) by Newton on orthonormal Hermite functions, then x = sqrt(2) t
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    std::vector<double> t(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * t[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * t[1];
        else
            z = 2.0 * z - t[static_cast<std::size_t>(i - 2)];
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        t[static_cast<std::size_t>(i)] = z;
        t[static_cast<std::size_t>(n - 1 - i)] = -z;
        w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(n - 1 - i)] = 2.0 / (pp * pp);
    }
    GaussRule r;
    for (int i = n - 1; i >= 0; --i) {
        r.nodes.push_back(std::numbers::sqrt2 * t[static_cast<std::size_t>(i)]);
        r.weights.push_back(std::numbers::sqrt2 * w[static_cast<std::size_t>(i)]);
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

enum class SchemeKind { full_grid, radial_bochner };

struct QuadratureScheme {
    SchemeKind kind = SchemeKind::full_grid;
    int m = 2;
    int per_axis = 0;
    int exactness_degree = 0;  // per axis, against exp(-x^2/2)
    double prune_tol = 0.0;
    std::vector<VectorM> nodes;
    std::vector<double> weights;         // Lebesgue weights
    std::vector<double> gaussian_weights;  // weights against exp(-|x|^2/2)

    std::size_t size() const { return nodes.size(); }
};

// tensor Gauss-Hermite grid; nodes with W (1+|x|)^4 <= prune_tol max W are dropped
inline QuadratureScheme full_grid_scheme(int m, int n, double prune_tol = 1e-12) {
    detail::check_dimension(m);
    if (m > 4) throw std::invalid_argument("full-grid quadrature is limited to m <= 4");
    const auto rule = gauss_hermite(n);
    QuadratureScheme q;
    q.kind = SchemeKind::full_grid;
    q.m = m;
    q.per_axis = n;
    q.exactness_degree = 2 * n - 1;
    q.prune_tol = prune_tol;
    std::size_t total = 1;
    for (int j = 0; j < m; ++j) total *= static_cast<std::size_t>(n);
    const double wmax = std::pow(*std::max_element(rule.weights.begin(), rule.weights.end()), m);
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    for (std::size_t c = 0; c < total; ++c) {
        std::size_t r = c;
        for (int j = m - 1; j >= 0; --j) {
            idx[static_cast<std::size_t>(j)] = static_cast<int>(r % static_cast<std::size_t>(n));
            r /= static_cast<std::size_t>(n);
        }
        VectorM x(m);
        double w = 1.0;
        for (int j = 0; j < m; ++j) {
            x[j] = rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        }
        const double rad = x.norm();
        if (prune_tol > 0.0 && w * std::pow(1.0 + rad, 4) <= prune_tol * wmax) continue;
        q.gaussian_weights.push_back(w);
        q.weights.push_back(w * std::exp(0.5 * rad * rad));
        q.nodes.push_back(std::move(x));
    }
    return q;
}

// integral of exp(-|x|^2/2) against (2 pi)^{m/2}
inline Report quadrature_self_test(const QuadratureScheme& q, double tol = 1e-10) {
    double s = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n) s += q.weights[n] * std::exp(-0.5 * q.nodes[n].norm_squared());
    const double want = std::pow(2.0 * std::numbers::pi, 0.5 * q.m);
    Report r("quadrature", {{"m", q.m}, {"per_axis", q.per_axis}, {"nodes", q.size()}, {"prune_tol", q.prune_tol}});
    CaseResult c;
    c.name = "gaussian mass";
    c.expected = want;
    c.got = s;
    c.abs_error = std::abs(s - want);
    c.pass = c.abs_error <= tol * want;
    r.add(std::move(c));
    return r;
}

struct RadialOptions {
    double upper = 15.0;
    double max_panel = 1.0;
};

// integral over [0, upper] of fn(r), panels no wider than min(max_panel, pi / rho)
template <class F>
double radial_integral(F&& fn, double rho, const RadialOptions& opt = {}) {
    const double width = rho > 0.0 ? std::min(opt.max_panel, std::numbers::pi / rho) : opt.max_panel;
    const int panels = std::max(1, static_cast<int>(std::ceil(opt.upper / width)));
    const double h = opt.upper / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p)
        s += boost::math::quadrature::gauss<double, 20>::integrate(fn, p * h, (p + 1) * h);
    return s;
}

}  // namespace clifft
