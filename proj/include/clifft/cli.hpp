#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifft/kernels.hpp"
#include "clifft/report.hpp"
#include "clifft/series.hpp"
#include "clifft/transform.hpp"

namespace clifft::cli {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suites() {
    static const std::vector<std::string> s{"pde",   "recursion", "structural", "series",    "eigen",
                                            "inversion", "diff",  "l2",         "constraint"};
    return s;
}

struct RunConfig {
    std::string command;
    std::string suite;
    int m = 2;
    int i = -1;  // -1: every index 0..m-2
    std::string sign = "plus";
    double e_re = 1.0, e_im = 0.0;
    double s_min = -3.0, s_max = 3.0;
    int s_count = 50;
    double t_min = 0.0, t_max = 3.0;
    int t_count = 50;
    double eps = 1e-9;
    double tol = -1.0;  // negative: suite default
    int k_min = 0;
    int k_max = -1;  // negative: command default
    int j_max = 1;
    int points = -1;
    int nodes = 0;
    bool compare_series = false;
    bool inverse = false;
    bool raw = false;
    bool numeric = true;
    bool parallel = false;

    Complex e() const { return {e_re, e_im}; }
    KernelSign kernel_sign() const { return sign == "minus" ? KernelSign::minus : KernelSign::plus; }

    std::vector<int> indices() const {
        if (i >= 0) return {i};
        std::vector<int> r;
        for (int a = 0; a <= m - 2; ++a) r.push_back(a);
        return r;
    }

    Json to_json() const {
        return {{"command", command}, {"suite", suite}, {"m", m}, {"i", i}, {"sign", sign},
                {"e", complex_json(e())}, {"parallel", parallel}};
    }
};

inline void validate(const RunConfig& c) {
    if (c.m < 2 || c.m > kMaxDimension)
        throw UsageError("--m must lie in [2, " + std::to_string(kMaxDimension) + "]");
    if (c.i < -1 || c.i > c.m - 2)
        throw UsageError("--i must lie in [0, m-2] = [0, " + std::to_string(c.m - 2) + "]");
    if (c.sign != "plus" && c.sign != "minus") throw UsageError("--sign must be plus or minus");
    if (c.s_count < 0 || c.t_count < 0) throw UsageError("grid counts must be non-negative");
    if (c.t_min < 0.0) throw UsageError("t = |x ^ y| is non-negative");
    if (c.eps <= 0.0) throw UsageError("--eps must be positive");
    if (c.k_min < 0) throw UsageError("--k-min must be non-negative");
    if (c.j_max < 0) throw UsageError("--j-max must be non-negative");
    if (c.command == "verify" && std::find(suites().begin(), suites().end(), c.suite) == suites().end())
        throw UsageError("unknown suite '" + c.suite + "'");
    if (c.command == "verify" && c.suite == "diff" && c.m > 4)
        throw UsageError("the diff suite uses full-grid quadrature, m <= 4");
    if (c.command == "verify" && c.suite == "inversion" && c.m % 2 != 0)
        throw UsageError("the inversion suite is stated for even m");
    if (c.command == "verify" && c.suite == "structural" && (c.m % 2 != 0 || c.m < 4))
        throw UsageError("the structural suite needs even m >= 4");
}

namespace detail {

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> r;
    for (int j = 0; j < n; ++j) r.push_back(n == 1 ? a : a + (b - a) * j / (n - 1));
    return r;
}

}  // namespace detail

// s,t,scalar_re,scalar_im,g_re,g_im[,series_scalar_re,series_scalar_im,series_g_re,series_g_im,abs_diff]
inline void cmd_kernel_eval(const RunConfig& c, std::ostream& os) {
    validate(c);
    const KernelId id{c.m, c.i < 0 ? 0 : c.i, c.kernel_sign(), c.e()};
    const KernelEvaluator ev(build_kernel(id));
    const auto ss = detail::linspace(c.s_min, c.s_max, c.s_count);
    const auto ts = detail::linspace(c.t_min, c.t_max, c.t_count);
    os << "s,t,scalar_re,scalar_im,g_re,g_im";
    if (c.compare_series) os << ",series_scalar_re,series_scalar_im,series_g_re,series_g_im,abs_diff";
    os << '\n';
    if (ss.empty() || ts.empty()) return;
    const auto coeffs = series_coefficients(id);
    double z_max = 0.0;
    for (double s : {ss.front(), ss.back()})
        for (double t : {ts.front(), ts.back()}) z_max = std::max(z_max, std::hypot(s, t));
    const int n = c.compare_series ? truncation_bound(coeffs, z_max, c.eps) : 0;
    std::vector<std::string> rows(ss.size());
    run_chunks(ss.size(), thread_count(c.parallel), [&](std::size_t a) {
        std::ostringstream row;
        row.precision(17);
        for (double t : ts) {
            const double s = ss[a];
            const auto v = ev.eval(s, t);
            row << s << ',' << t << ',' << v.f.real() << ',' << v.f.imag() << ',' << v.g.real() << ','
                << v.g.imag();
            if (c.compare_series) {
                const double z = std::hypot(s, t);
                const auto w = eval_series_fg(coeffs, z, z > 0.0 ? s / z : 0.0, n);
                const double d = std::max(std::abs(w.f - v.f), std::abs(w.g - v.g));
                row << ',' << w.f.real() << ',' << w.f.imag() << ',' << w.g.real() << ',' << w.g.imag() << ',' << d;
            }
            row << '\n';
        }
        rows[a] = row.str();
    });
    for (const auto& r : rows) os << r;
}

inline void cmd_eigentable(const RunConfig& c, std::ostream& os) {
    validate(c);
    write_eigentable_csv(os, c.m, c.indices(), c.k_min, c.k_max < 0 ? 10 : c.k_max, c.e());
}

// k,re_a,im_a,re_b,im_b[,inverse columns,eigenvalue products]
inline void cmd_coeffs(const RunConfig& c, std::ostream& os) {
    validate(c);
    if (c.i < 0) throw UsageError("coeffs needs a single --i");
    const KernelId id{c.m, c.i, c.kernel_sign(), c.e()};
    const auto coeffs = series_coefficients(id);
    const int k_max = c.k_max < 0 ? 20 : c.k_max;
    if (c.raw && c.m == 2) throw UsageError("raw coefficients are undefined at m = 2 (lambda = 0); drop --raw");
    if (!c.inverse) {
        write_coefficients_csv(os, coeffs, k_max, c.raw);
        return;
    }
    if (c.raw) throw UsageError("--inverse reports normalized coefficients; drop --raw");
    const auto inv = inverse_coefficients(coeffs, k_max);
    os << "k,re_a,im_a,re_b,im_b,re_inv_a,im_inv_a,re_inv_b,im_inv_b,"
          "re_product_even,im_product_even,re_product_odd,im_product_odd\n";
    os.precision(17);
    for (int k = 0; k <= k_max; ++k) {
        const Complex a = coeffs.alpha(k), b = coeffs.beta(k);
        const Complex ia = inv.coefficients.alpha(k), ib = inv.coefficients.beta(k);
        const auto e1 = eigenvalues_from_coefficients(coeffs, k);
        const auto e2 = eigenvalues_from_coefficients(inv.coefficients, k);
        const Complex pe = e1.even_branch * e2.even_branch, po = e1.odd_branch * e2.odd_branch;
        os << k << ',' << a.real() << ',' << a.imag() << ',' << b.real() << ',' << b.imag() << ',' << ia.real()
           << ',' << ia.imag() << ',' << ib.real() << ',' << ib.imag() << ',' << pe.real() << ',' << pe.imag()
           << ',' << po.real() << ',' << po.imag() << '\n';
    }
}

inline Report run_suite(const RunConfig& c) {
    validate(c);
    const int m = c.m;
    const auto idx = c.indices();
    auto tol_or = [&](double d) { return c.tol > 0.0 ? c.tol : d; };
    Report rep(c.suite, c.to_json());
    Json runs = Json::array();
    auto take = [&](const Report& r) {
        runs.push_back(r.config());
        rep.append(r);
    };
    if (c.suite == "pde") {
        take(verify_pde(m, idx, c.points > 0 ? c.points : 200, 3.0, tol_or(1e-6), c.e()));
    } else if (c.suite == "recursion") {
        for (int i : idx) take(m % 2 == 0 ? verify_recursion_even(m, i) : verify_recursion_odd(m, i));
    } else if (c.suite == "structural") {
        take(verify_structural_identities(m));
    } else if (c.suite == "series") {
        take(verify_series_agreement(m, idx, c.points > 0 ? c.points : 500, 3.0, c.eps, tol_or(1e-8), c.e()));
    } else if (c.suite == "eigen") {
        EigenOptions opt;
        opt.nodes_per_axis = c.nodes;
        opt.parallel = c.parallel;
        opt.e = c.e();
        take(verify_eigen_suite(m, idx, c.j_max, c.k_max < 0 ? 2 : c.k_max, opt));
    } else if (c.suite == "inversion") {
        InversionOptions opt;
        opt.k_max = c.k_max < 0 ? 100 : c.k_max;
        opt.numeric = false;
        opt.parallel = c.parallel;
        opt.tol = tol_or(1e-5);
        for (int i : idx) take(verify_inversion(m, i, opt));
        if (c.numeric && m <= 4) take(inversion_composition(m, idx, opt));
    } else if (c.suite == "diff") {
        DiffOptions opt;
        opt.nodes_per_axis = c.nodes;
        opt.tol = tol_or(1e-5);
        opt.parallel = c.parallel;
        for (int i : idx) take(verify_diff_relations(m, i, opt));
    } else if (c.suite == "l2") {
        for (int i : idx) take(l2_bound_scan(m, i, c.k_max < 0 ? 200 : c.k_max));
    } else if (c.suite == "constraint") {
        for (int i : idx)
            for (auto s : {KernelSign::plus, KernelSign::minus})
                take(check_cf_constraint(series_coefficients(KernelId{m, i, s, c.e()}), c.k_max < 0 ? 50 : c.k_max,
                                         tol_or(1e-10)));
    }
    rep.config()["runs"] = std::move(runs);
    return rep;
}

// exit code 0 iff every case passes
inline int cmd_verify(const RunConfig& c, std::ostream& os) {
    const auto rep = run_suite(c);
    os << rep.to_json().dump(2) << '\n';
    return rep.pass() ? 0 : 1;
}

}  // namespace clifft::cli
