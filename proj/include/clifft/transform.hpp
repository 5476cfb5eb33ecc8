#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "clifft/clifford.hpp"
#include "clifft/kernels.hpp"
#include "clifft/monogenic.hpp"
#include "clifft/quadrature.hpp"
#include "clifft/report.hpp"
#include "clifft/series.hpp"
#include "clifft/special_functions.hpp"

namespace clifft {

// ---- closed-form eigenvalues -------------------------------------------------------------

// eigenvalue of F^i_{+,m} on psi_{2p,k} (even) or psi_{2p+1,k} (odd), divided by (-1)^p
inline ExactCoefficient closed_form_eigenvalue_exact(int m, int i, int k, Parity parity) {
    validate(KernelId{m, i});
    if (k < 0) throw std::invalid_argument("degree must be non-negative");
    const bool odd_m = m % 2 != 0;
    const int sa = odd_m ? sign_power((m + 1) / 2) : sign_power(m / 2);
    auto a_entry = [&](Rational v) {
        return odd_m ? ExactCoefficient{0, sa * v} : ExactCoefficient{sa * v, 0};
    };
    auto u_entry = [](Rational v) { return ExactCoefficient{std::move(v), 0}; };
    auto r = [](int a, int b) { return double_factorial_ratio(a, b); };
    const bool even_branch = parity == Parity::even;
    if (i % 2 == 0 && k % 2 == 0)
        return even_branch ? a_entry(r(k + i - 1, k - i + m - 3)) : u_entry(r(k + i - 1, k + m - i - 3));
    if (i % 2 == 0)
        return even_branch ? u_entry(-r(k + i, k + m - i - 2)) : a_entry(r(k + i, k - i + m - 2));
    if (k % 2 == 0)
        return even_branch ? u_entry(-r(k + i, k + m - i - 2)) : a_entry(-r(k + i, k + m - i - 2));
    return even_branch ? a_entry(-r(k + i - 1, k + m - i - 3)) : u_entry(r(k + i - 1, k + m - i - 3));
}

inline Complex closed_form_eigenvalue(int m, int i, int k, Parity parity, int p = 0, Complex e = {1.0, 0.0}) {
    const Complex ee = m % 2 ? e : Complex{1.0, 0.0};
    return double(sign_power(p)) * closed_form_eigenvalue_exact(m, i, k, parity).value(ee);
}

// eigenvalue of the transform with kernel id, from its series coefficients
inline Complex series_eigenvalue(const KernelId& id, int k, Parity parity, int p = 0) {
    const auto ev = eigenvalues_from_coefficients(series_coefficients(id), k);
    return double(sign_power(p)) * (parity == Parity::even ? ev.even_branch : ev.odd_branch);
}

inline std::string parity_label(Parity p) { return p == Parity::even ? "2p" : "2p+1"; }

// m,i,k,parity,re,im,sign_factor,magnitude; values at p = 0, the full eigenvalue is (-1)^p times re + i im
inline void write_eigentable_csv(std::ostream& os, int m, const std::vector<int>& indices, int k_min, int k_max,
                                 Complex e = {1.0, 0.0}) {
    os << "m,i,k,parity,re,im,sign_factor,magnitude\n";
    os.precision(17);
    for (int i : indices)
        for (int k = k_min; k <= k_max; ++k)
            for (auto par : {Parity::even, Parity::odd}) {
                const Complex v = closed_form_eigenvalue(m, i, k, par, 0, e);
                os << m << ',' << i << ',' << k << ',' << parity_label(par) << ',' << v.real() << ',' << v.imag()
                   << ",(-1)^p," << std::abs(v) << '\n';
            }
}

// ---- threading -------------------------------------------------------------------------

// 1 unless parallel; CLIFFT_THREADS caps the hardware count
inline int thread_count(bool parallel) {
    if (!parallel) return 1;
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("CLIFFT_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return n;
}

// runs fn(c) for c in [0, chunks); the caller merges per-chunk results in index order
template <class F>
void run_chunks(std::size_t chunks, int threads, F&& fn) {
    if (threads <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) fn(c);
        });
    for (auto& th : pool) th.join();
}

// ---- quadrature transform --------------------------------------------------------------

using FunctionHandle = std::function<Multivector(const VectorM&)>;

inline FunctionHandle as_handle(const GaussianFunction& g) {
    return [cp = CompiledPolynomial(g.poly)](const VectorM& x) {
        auto v = cp(x);
        v *= Complex(std::exp(-0.5 * x.norm_squared()));
        return v;
    };
}

inline FunctionHandle as_handle(const BasisFunction& b) { return as_handle(b.function); }

struct TransformOptions {
    bool parallel = false;
    std::size_t chunks = 32;
};

namespace detail {

// e_A s, blade A on the left
inline void add_blade_product(Blade a, const Complex* s, std::size_t dim, Multivector& out) {
    for (Blade b = 0; b < dim; ++b)
        if (s[b] != Complex{}) out[a ^ b] += double(product_sign(a, b)) * s[b];
}

}  // namespace detail

// (2 pi)^{-m/2} sum_n w_n K(x_n, y) f(x_n) for every kernel, sampled function and y;
// sampler(n, values) fills one Multivector per function at node n.
// Result index: (y * kernels + kernel) * functions + function.
template <class Sampler>
std::vector<Multivector> transform_core(const std::vector<KernelExpr>& kernels, std::size_t functions,
                                        Sampler&& sampler, const std::vector<VectorM>& ys, const QuadratureScheme& q,
                                        const TransformOptions& opt = {}) {
    const int m = q.m;
    for (const auto& k : kernels)
        if (k.m != m) throw DimensionError("kernel and quadrature dimensions differ");
    for (const auto& y : ys)
        if (y.dimension() != m) throw DimensionError("evaluation point and quadrature dimensions differ");
    const std::size_t nk = kernels.size(), ny = ys.size(), nf = functions;
    const std::size_t nb = static_cast<std::size_t>(bivector_count(m));
    const std::size_t dim = std::size_t{1} << m;
    std::vector<KernelEvaluator> evs;
    int lo = 1 << 20, hi = -(1 << 20);
    for (const auto& k : kernels) {
        evs.emplace_back(k);
        if (evs.back().order_count() == 0) continue;
        lo = std::min(lo, evs.back().first_order().twice());
        hi = std::max(hi, evs.back().first_order().twice() + 2 * (evs.back().order_count() - 1));
    }
    const int count = lo <= hi ? (hi - lo) / 2 + 1 : 0;
    std::vector<int> offset(nk, 0);
    for (std::size_t k = 0; k < nk; ++k)
        if (evs[k].order_count() > 0) offset[k] = (evs[k].first_order().twice() - lo) / 2;

    const std::size_t slot = (1 + nb) * dim;
    const std::size_t acc_size = ny * nk * nf * slot;
    const std::size_t chunks = std::max<std::size_t>(1, std::min(opt.chunks, q.size()));
    std::vector<std::vector<Complex>> partial(chunks);
    run_chunks(chunks, thread_count(opt.parallel), [&](std::size_t c) {
        auto& acc = partial[c];
        acc.assign(acc_size, Complex{});
        const std::size_t begin = q.size() * c / chunks, end = q.size() * (c + 1) / chunks;
        std::vector<Multivector> vals(nf, Multivector(m));
        std::vector<double> w(nb);
        for (std::size_t n = begin; n < end; ++n) {
            const VectorM& x = q.nodes[n];
            sampler(n, vals);
            for (auto& v : vals) v *= Complex(q.weights[n]);
            for (std::size_t iy = 0; iy < ny; ++iy) {
                const VectorM& y = ys[iy];
                const double s = dot(x, y);
                std::size_t p = 0;
                double t2 = 0.0;
                for (int a = 0; a < m; ++a)
                    for (int b = a + 1; b < m; ++b) {
                        w[p] = x[a] * y[b] - x[b] * y[a];
                        t2 += w[p] * w[p];
                        ++p;
                    }
                const auto jt = count > 0 ? bessel_jtilde_sequence(BesselOrder::from_twice(lo), count, std::sqrt(t2))
                                          : std::vector<double>{};
                for (std::size_t k = 0; k < nk; ++k) {
                    if (evs[k].order_count() == 0) continue;
                    const auto fg = evs[k].combine(s, jt.data() + offset[k]);
                    for (std::size_t f = 0; f < nf; ++f) {
                        Complex* base = acc.data() + ((iy * nk + k) * nf + f) * slot;
                        const auto coeffs = vals[f].coefficients();
                        for (std::size_t a = 0; a < dim; ++a) {
                            const Complex v = coeffs[a];
                            if (v == Complex{}) continue;
                            base[a] += fg.f * v;
                            const Complex gv = fg.g * v;
                            for (std::size_t b = 0; b < nb; ++b) base[(1 + b) * dim + a] += w[b] * gv;
                        }
                    }
                }
            }
        }
    });
    std::vector<Complex> total(acc_size, Complex{});
    for (const auto& acc : partial)
        for (std::size_t a = 0; a < acc_size; ++a) total[a] += acc[a];

    std::vector<Blade> blades;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) blades.push_back((Blade{1} << a) | (Blade{1} << b));
    const double norm_c = transform_normalization(m);
    std::vector<Multivector> out;
    out.reserve(ny * nk * nf);
    for (std::size_t r = 0; r < ny * nk * nf; ++r) {
        const Complex* base = total.data() + r * slot;
        Multivector v(m);
        for (std::size_t a = 0; a < dim; ++a) v[static_cast<Blade>(a)] = base[a];
        for (std::size_t b = 0; b < nb; ++b) detail::add_blade_product(blades[b], base + (1 + b) * dim, dim, v);
        v *= Complex(norm_c);
        out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<Multivector> transform_batch(const std::vector<KernelExpr>& kernels,
                                                const std::vector<FunctionHandle>& fs, const std::vector<VectorM>& ys,
                                                const QuadratureScheme& q, const TransformOptions& opt = {}) {
    auto sampler = [&](std::size_t n, std::vector<Multivector>& vals) {
        for (std::size_t f = 0; f < fs.size(); ++f) vals[f] = fs[f](q.nodes[n]);
    };
    return transform_core(kernels, fs.size(), sampler, ys, q, opt);
}

// F[f](y) = (2 pi)^{-m/2} integral of K(x, y) f(x)
inline Multivector apply_transform(const KernelId& id, const FunctionHandle& f, const VectorM& y,
                                   const QuadratureScheme& q, const TransformOptions& opt = {}) {
    if (id.m != q.m) throw DimensionError("kernel and quadrature dimensions differ");
    return transform_batch({build_kernel(id)}, {f}, {y}, q, opt).at(0);
}

// ---- Bochner radial path ---------------------------------------------------------------

using RadialProfile = std::function<double(double)>;

// F[f0 M_k](y) = E_k M_k(y) int r^{m+2k-1} f0 Jt_{k+lambda}(r rho) dr, and the x M_k analogue with O_k
inline Multivector bochner_reduce(const KernelId& id, int k, const RadialProfile& f0, Parity parity, const VectorM& y,
                                  const CliffordPolynomial& monogenic, const RadialOptions& ropt = {}) {
    const int m = id.m;
    if (y.dimension() != m || monogenic.dimension() != m) throw DimensionError("Bochner dimensions differ");
    const auto ev = eigenvalues_from_coefficients(series_coefficients(id), k);
    const double rho = y.norm();
    const int shift = parity == Parity::even ? 0 : 1;
    const auto order = BesselOrder::from_twice(2 * (k + shift) + m - 2);
    const int power = m + 2 * k - 1 + 2 * shift;
    const double integral = radial_integral(
        [&](double r) { return std::pow(r, power) * f0(r) * bessel_jtilde(order, r * rho); }, rho, ropt);
    auto angular = monogenic.evaluate(y);
    if (parity == Parity::odd) angular = to_multivector(y) * angular;
    angular *= (parity == Parity::even ? ev.even_branch : ev.odd_branch) * integral;
    return angular;
}

// lambda = twice_lambda / 2:
// int r^{2 lambda+1} (r s)^{-lambda} J_{k+lambda}(r s) r^k L_j^{k+lambda}(r^2) e^{-r^2/2} dr
//   - (-1)^j s^k L_j^{k+lambda}(s^2) e^{-s^2/2}
inline double hankel_laguerre_residual(int twice_lambda, int k, int j, double s, const RadialOptions& ropt = {}) {
    const double lambda = 0.5 * twice_lambda;
    const double a = k + lambda;
    const double lhs = radial_integral(
        [&](double r) {
            const double bes = std::pow(r * s, k) * bessel_jtilde(BesselOrder::from_twice(2 * k + twice_lambda), r * s);
            return std::pow(r, 2.0 * lambda + 1.0 + k) * bes * laguerre(j, a, r * r) * std::exp(-0.5 * r * r);
        },
        s, ropt);
    const double rhs = sign_power(j) * std::pow(s, k) * laguerre(j, a, s * s) * std::exp(-0.5 * s * s);
    return lhs - rhs;
}

// ---- eigenvalue verification -----------------------------------------------------------

struct EigenvalueRecord {
    int m = 2, i = 0, j = 0, k = 0, ell = 1;
    Parity parity = Parity::even;
    Complex closed_form;
    Complex numeric;
    double abs_error = 0.0;
    double residual = 0.0;  // max_y |F[psi](y) - numeric psi(y)|
    std::string method;
};

struct EigenOptions {
    int nodes_per_axis = 0;  // 0 picks a per-dimension default
    double prune_tol = 1e-12;
    std::vector<VectorM> sample_points;
    bool parallel = false;
    Complex e{1.0, 0.0};
    RadialOptions radial;
};

inline int default_nodes_per_axis(int m) { return m <= 2 ? 48 : (m == 3 ? 32 : 24); }

inline std::vector<VectorM> default_sample_points(int m) {
    const double base[4][9] = {{0.7, -0.4, 0.5, 0.3, -0.6, 0.2, 0.45, -0.35, 0.25},
                               {-0.3, 0.9, 0.2, -0.5, 0.1, 0.6, -0.2, 0.3, -0.4},
                               {1.1, 0.35, -0.8, 0.6, 0.25, -0.15, 0.5, 0.4, 0.2},
                               {0.15, -0.25, 0.4, -1.0, 0.55, 0.3, -0.45, 0.1, 0.65}};
    std::vector<VectorM> ys;
    for (const auto& row : base) {
        VectorM y(m);
        for (int j = 0; j < m; ++j) y[j] = row[j];
        ys.push_back(y);
    }
    return ys;
}

namespace detail {

inline Complex rayleigh(const std::vector<Multivector>& psi_y, const std::vector<Multivector>& f_y, double* residual) {
    Complex num{};
    double den = 0.0;
    for (std::size_t a = 0; a < psi_y.size(); ++a) {
        num += l2_pairing(psi_y[a], f_y[a]);
        den += l2_pairing(psi_y[a], psi_y[a]).real();
    }
    const Complex lam = den > 0.0 ? num / den : Complex{};
    if (residual) {
        *residual = 0.0;
        for (std::size_t a = 0; a < psi_y.size(); ++a)
            *residual = std::max(*residual, norm(f_y[a] - psi_y[a] * lam));
    }
    return lam;
}

inline Complex expected_eigenvalue(const KernelId& id, const BasisFunction& b) {
    const Parity par = b.parity;
    if (id.sign == KernelSign::plus) return closed_form_eigenvalue(id.m, id.i, b.k, par, b.j / 2, id.e);
    return series_eigenvalue(id, b.k, par, b.j / 2);
}

}  // namespace detail

// full-grid eigenvalues for every (kernel, basis function) pair, m <= 4
inline std::vector<EigenvalueRecord> verify_eigen_full_grid(const std::vector<KernelId>& ids,
                                                            const std::vector<BasisFunction>& basis,
                                                            const EigenOptions& opt = {}) {
    if (ids.empty() || basis.empty()) return {};
    const int m = ids.front().m;
    const auto q = full_grid_scheme(m, opt.nodes_per_axis > 0 ? opt.nodes_per_axis : default_nodes_per_axis(m),
                                    opt.prune_tol);
    const auto ys = opt.sample_points.empty() ? default_sample_points(m) : opt.sample_points;
    std::vector<KernelExpr> kernels;
    for (const auto& id : ids) kernels.push_back(build_kernel(id));
    std::vector<FunctionHandle> fs;
    for (const auto& b : basis) fs.push_back(as_handle(b));
    const auto out = transform_batch(kernels, fs, ys, q, {opt.parallel});
    std::vector<EigenvalueRecord> recs;
    for (std::size_t k = 0; k < ids.size(); ++k)
        for (std::size_t f = 0; f < basis.size(); ++f) {
            std::vector<Multivector> py, fy;
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                py.push_back(fs[f](ys[iy]));
                fy.push_back(out[(iy * ids.size() + k) * basis.size() + f]);
            }
            EigenvalueRecord r;
            r.m = m;
            r.i = ids[k].i;
            r.j = basis[f].j;
            r.k = basis[f].k;
            r.ell = basis[f].ell;
            r.parity = basis[f].parity;
            r.numeric = detail::rayleigh(py, fy, &r.residual);
            r.closed_form = detail::expected_eigenvalue(ids[k], basis[f]);
            r.abs_error = std::abs(r.numeric - r.closed_form);
            r.method = "full-grid n=" + std::to_string(q.per_axis) + " nodes=" + std::to_string(q.size());
            recs.push_back(r);
        }
    return recs;
}

inline EigenvalueRecord verify_eigen_bochner(const KernelId& id, const BasisFunction& b, const EigenOptions& opt = {}) {
    const int m = id.m;
    const int p = b.j / 2;
    const double alpha = 0.5 * m + b.k - 1 + (b.parity == Parity::odd ? 1 : 0);
    const RadialProfile f0 = [p, alpha](double r) { return laguerre(p, alpha, r * r) * std::exp(-0.5 * r * r); };
    const auto ys = opt.sample_points.empty() ? default_sample_points(m) : opt.sample_points;
    std::vector<Multivector> py, fy;
    for (const auto& y : ys) {
        py.push_back(eval_psi(b, y));
        fy.push_back(bochner_reduce(id, b.k, f0, b.parity, y, b.monogenic.poly, opt.radial));
    }
    EigenvalueRecord r;
    r.m = m;
    r.i = id.i;
    r.j = b.j;
    r.k = b.k;
    r.ell = b.ell;
    r.parity = b.parity;
    r.numeric = detail::rayleigh(py, fy, &r.residual);
    r.closed_form = detail::expected_eigenvalue(id, b);
    r.abs_error = std::abs(r.numeric - r.closed_form);
    r.method = "bochner";
    return r;
}

// full grid for m <= 4, Bochner radial path otherwise
inline EigenvalueRecord verify_eigen(int m, int i, int j, int k, int ell, const EigenOptions& opt = {}) {
    const KernelId id{m, i, KernelSign::plus, opt.e};
    validate(id);
    const auto b = psi(j, k, ell, m);
    if (m <= 4) return verify_eigen_full_grid({id}, {b}, opt).front();
    return verify_eigen_bochner(id, b, opt);
}

inline CaseResult to_case(const EigenvalueRecord& r, double tol) {
    CaseResult c;
    c.name = "m=" + std::to_string(r.m) + ",i=" + std::to_string(r.i) + ",j=" + std::to_string(r.j) +
             ",k=" + std::to_string(r.k) + ",l=" + std::to_string(r.ell);
    c.expected = complex_json(r.closed_form);
    c.got = complex_json(r.numeric);
    c.abs_error = r.abs_error;
    c.pass = r.abs_error <= tol;
    std::ostringstream d;
    d << r.method << " residual=" << std::scientific << std::setprecision(3) << r.residual;
    c.detail = d.str();
    return c;
}

// every listed i (default all i <= m-2), j <= j_max, k <= k_max, ell in {1, dim}
inline Report verify_eigen_suite(int m, std::vector<int> indices = {}, int j_max = 1, int k_max = 2,
                                 const EigenOptions& opt = {}) {
    const double tol = m <= 4 ? 1e-6 : 1e-8;
    Report rep("eigen", {{"m", m}, {"j_max", j_max}, {"k_max", k_max}, {"tol", tol},
                         {"method", m <= 4 ? "full-grid" : "bochner"}});
    std::vector<BasisFunction> basis;
    for (int j = 0; j <= j_max; ++j)
        for (int k = 0; k <= k_max; ++k) {
            const int dim = monogenic_basis_size(m, k);
            basis.push_back(psi(j, k, 1, m));
            if (dim > 1) basis.push_back(psi(j, k, dim, m));
        }
    if (indices.empty())
        for (int i = 0; i <= m - 2; ++i) indices.push_back(i);
    std::vector<KernelId> ids;
    for (int i : indices) {
        ids.push_back(KernelId{m, i, KernelSign::plus, opt.e});
        validate(ids.back());
    }
    if (m <= 4) {
        rep.config()["nodes_per_axis"] = opt.nodes_per_axis > 0 ? opt.nodes_per_axis : default_nodes_per_axis(m);
        for (const auto& r : verify_eigen_full_grid(ids, basis, opt)) rep.add(to_case(r, tol));
    } else {
        for (const auto& id : ids)
            for (const auto& b : basis) rep.add(to_case(verify_eigen_bochner(id, b, opt), tol));
    }
    return rep;
}

// <psi', F psi> between opposite parities, relative to |psi'| |psi|; full grid in x and y
inline Report verify_parity_selection(int m, int i, int n_x, int n_y, int k_max = 1, double tol = 1e-8,
                                      bool parallel = false) {
    const KernelId id{m, i};
    const auto qx = full_grid_scheme(m, n_x);
    const auto qy = full_grid_scheme(m, n_y);
    std::vector<BasisFunction> basis;
    for (int j = 0; j <= 1; ++j)
        for (int k = 0; k <= k_max; ++k) basis.push_back(psi(j, k, 1, m));
    std::vector<FunctionHandle> fs;
    for (const auto& b : basis) fs.push_back(as_handle(b));
    const auto out = transform_batch({build_kernel(id)}, fs, qy.nodes, qx, {parallel});
    Report rep("parity", {{"m", m}, {"i", i}, {"n_x", n_x}, {"n_y", n_y}, {"tol", tol}});
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (basis[a].parity == basis[b].parity) continue;
            Complex cross{};
            double na = 0.0, nb = 0.0;
            for (std::size_t n = 0; n < qy.size(); ++n) {
                const auto pa = fs[a](qy.nodes[n]);
                const auto fb = out[n * basis.size() + b];
                cross += qy.weights[n] * l2_pairing(pa, fb);
                na += qy.weights[n] * l2_pairing(pa, pa).real();
                nb += qy.weights[n] * l2_pairing(fb, fb).real();
            }
            CaseResult c;
            c.name = "<psi_" + std::to_string(basis[a].j) + std::to_string(basis[a].k) + ", F psi_" +
                     std::to_string(basis[b].j) + std::to_string(basis[b].k) + ">";
            c.expected = 0.0;
            c.abs_error = std::abs(cross) / std::sqrt(na * nb);
            c.got = c.abs_error;
            c.pass = c.abs_error <= tol;
            rep.add(std::move(c));
        }
    return rep;
}

// ---- inversion -------------------------------------------------------------------------

enum class InnerMethod { bochner, full_grid };

struct InversionOptions {
    int k_max = 100;
    InnerMethod inner = InnerMethod::bochner;
    bool numeric = true;
    int inner_nodes = 32;
    int outer_nodes = 16;
    double inner_prune = 1e-13;
    double outer_prune = 1e-12;
    double tol = 1e-5;
    bool parallel = false;
};

namespace detail {

// x = g(rep) with g a signed permutation; alpha_g maps blades accordingly
struct SignedPermutation {
    std::vector<int> target;  // g e_a = sign[a] e_{target[a]}
    std::vector<int> sign;

    Multivector apply(const Multivector& v) const {
        Multivector r(v.dimension());
        for (Blade a = 0; a < v.size(); ++a) {
            if (v[a] == Complex{}) continue;
            Blade cur = 0;
            int s = 1;
            for (int j = 0; j < v.dimension(); ++j) {
                if (!(a & (Blade{1} << j))) continue;
                const Blade e = Blade{1} << target[static_cast<std::size_t>(j)];
                s *= sign[static_cast<std::size_t>(j)] * product_sign(cur, e);
                cur ^= e;
            }
            r[cur] += double(s) * v[a];
        }
        return r;
    }
};

inline std::pair<std::vector<double>, SignedPermutation> orbit_representative(const VectorM& x) {
    const int m = x.dimension();
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(x[a]) > std::abs(x[b]); });
    std::vector<double> rep(static_cast<std::size_t>(m));
    SignedPermutation g;
    for (int a = 0; a < m; ++a) {
        const int src = order[static_cast<std::size_t>(a)];
        rep[static_cast<std::size_t>(a)] = std::abs(x[src]);
        g.target.push_back(src);
        g.sign.push_back(x[src] < 0.0 ? -1 : 1);
    }
    return {rep, g};
}

}  // namespace detail

// F^{m-2-i} F^i on psi_{0,0,1} and psi_{1,0,1}. The outer transform is a full-grid kernel quadrature; the inner
// one is evaluated only at hyperoctahedral orbit representatives, by the radial path (default) or the full grid.
inline Report inversion_composition(int m, const std::vector<int>& indices, const InversionOptions& opt = {}) {
    if (m % 2 != 0 || m > 4) throw std::invalid_argument("numerical composition is implemented for m in {2, 4}");
    Report rep("inversion-composition", {{"m", m},
                                         {"inner", opt.inner == InnerMethod::bochner ? "bochner" : "full-grid"},
                                         {"inner_nodes", opt.inner_nodes},
                                         {"outer_nodes", opt.outer_nodes}, {"inner_prune", opt.inner_prune},
                                         {"outer_prune", opt.outer_prune}, {"tol", opt.tol}});
    const auto q_out = full_grid_scheme(m, opt.outer_nodes, opt.outer_prune);
    std::map<std::vector<double>, std::size_t> rep_index;
    std::vector<VectorM> reps;
    std::vector<std::pair<std::size_t, detail::SignedPermutation>> node_map;
    for (const auto& x : q_out.nodes) {
        auto [key, g] = detail::orbit_representative(x);
        auto it = rep_index.find(key);
        if (it == rep_index.end()) {
            it = rep_index.emplace(key, reps.size()).first;
            reps.push_back(VectorM(key));
        }
        node_map.emplace_back(it->second, std::move(g));
    }
    rep.config()["orbit_representatives"] = reps.size();
    const std::vector<BasisFunction> basis{psi(0, 0, 1, m), psi(1, 0, 1, m)};
    std::vector<FunctionHandle> fs;
    for (const auto& b : basis) fs.push_back(as_handle(b));
    std::vector<KernelExpr> inner;
    for (int i : indices) inner.push_back(build_kernel(KernelId{m, i}));
    std::vector<Multivector> g_rep;
    if (opt.inner == InnerMethod::full_grid) {
        g_rep = transform_batch(inner, fs, reps, full_grid_scheme(m, opt.inner_nodes, opt.inner_prune), {opt.parallel});
    } else {
        // radial x monogenic inputs: one-dimensional radial integral per point
        const RadialProfile f0 = [](double r) { return std::exp(-0.5 * r * r); };
        g_rep.assign(reps.size() * indices.size() * fs.size(), Multivector(m));
        run_chunks(reps.size(), thread_count(opt.parallel), [&](std::size_t r) {
            for (std::size_t k = 0; k < indices.size(); ++k)
                for (std::size_t f = 0; f < fs.size(); ++f)
                    g_rep[(r * indices.size() + k) * fs.size() + f] =
                        bochner_reduce(KernelId{m, indices[k]}, 0, f0, basis[f].parity, reps[r],
                                       basis[f].monogenic.poly);
        });
    }
    const auto ys = default_sample_points(m);
    const std::size_t nf = fs.size(), nk = indices.size();
    for (std::size_t k = 0; k < nk; ++k) {
        const int i = indices[k];
        auto sampler = [&](std::size_t n, std::vector<Multivector>& vals) {
            const auto& [r, g] = node_map[n];
            for (std::size_t f = 0; f < nf; ++f) vals[f] = g.apply(g_rep[(r * nk + k) * nf + f]);
        };
        const auto h = transform_core({build_kernel(KernelId{m, m - 2 - i})}, nf, sampler, ys, q_out, {opt.parallel});
        for (std::size_t f = 0; f < nf; ++f) {
            double err = 0.0;
            for (std::size_t iy = 0; iy < ys.size(); ++iy) err = std::max(err, norm(h[iy * nf + f] - fs[f](ys[iy])));
            CaseResult c;
            c.name = "F^" + std::to_string(m - 2 - i) + " F^" + std::to_string(i) + " psi_" +
                     std::to_string(basis[f].j) + "01";
            c.expected = 0.0;
            c.got = err;
            c.abs_error = err;
            c.pass = err <= opt.tol;
            rep.add(std::move(c));
        }
    }
    return rep;
}

inline Report verify_inversion(int m, int i, const InversionOptions& opt = {}) {
    if (m % 2 != 0) throw std::invalid_argument("inversion is stated for even m");
    validate(KernelId{m, i});
    Report rep("inversion", {{"m", m}, {"i", i}, {"k_max", opt.k_max}});
    const int mirror = m - 2 - i;
    for (int k = 0; k <= opt.k_max; ++k)
        for (auto par : {Parity::even, Parity::odd}) {
            const auto a = closed_form_eigenvalue_exact(m, i, k, par);
            const auto b = closed_form_eigenvalue_exact(m, mirror, k, par);
            const Rational prod = a.e_part * b.e_part;
            CaseResult c;
            c.name = "k=" + std::to_string(k) + " " + parity_label(par) + " product";
            c.expected = "1";
            c.got = to_string(prod);
            c.abs_error = std::abs(to_double(prod) - 1.0);
            c.pass = prod == 1;
            rep.add(std::move(c));
        }
    if (opt.numeric && m <= 4) rep.append(inversion_composition(m, {i}, opt));
    return rep;
}

// ---- differentiation relations -----------------------------------------------------------

struct DiffOptions {
    int nodes_per_axis = 0;
    double h = 1e-3;
    double tol = 1e-5;
    bool parallel = false;
};

// F_pm[x f] = -/+ (-/+ I)^m d_y F_mp[f] and F_pm[D f] = -/+ (-/+ I)^m y F_mp[f]
inline Report verify_diff_relations(int m, int i, const DiffOptions& opt = {}) {
    if (m > 4) throw std::invalid_argument("differentiation relations use the full grid, m <= 4");
    validate(KernelId{m, i});
    const int n = opt.nodes_per_axis > 0 ? opt.nodes_per_axis : default_nodes_per_axis(m);
    const auto q = full_grid_scheme(m, n);
    Report rep("diff", {{"m", m}, {"i", i}, {"nodes_per_axis", n}, {"h", opt.h}, {"tol", opt.tol}});
    const auto y0s = default_sample_points(m);
    std::vector<VectorM> ys;
    for (const auto& y0 : y0s) {
        ys.push_back(y0);
        for (int j = 0; j < m; ++j)
            for (double o : {-2.0, -1.0, 1.0, 2.0}) {
                VectorM y = y0;
                y[j] += o * opt.h;
                ys.push_back(y);
            }
    }
    const std::size_t stride = 1 + 4 * static_cast<std::size_t>(m);
    const auto xvar = CliffordPolynomial::vector_variable(m);
    for (auto sign : {KernelSign::plus, KernelSign::minus}) {
        const KernelId id{m, i, sign}, other{m, i, sign == KernelSign::plus ? KernelSign::minus : KernelSign::plus};
        const Complex c = sign == KernelSign::plus ? -std::pow(Complex(0.0, -1.0), m) : std::pow(Complex(0.0, 1.0), m);
        for (const auto& b : {psi(0, 0, 1, m), psi(0, 1, 1, m)}) {
            const GaussianFunction xf{xvar * b.function.poly};
            const GaussianFunction df{dirac(b.function.poly) - xvar * b.function.poly};
            const auto out = transform_batch({build_kernel(id), build_kernel(other)},
                                             {as_handle(xf), as_handle(df), as_handle(b.function)}, ys, q,
                                             {opt.parallel});
            auto at = [&](std::size_t iy, std::size_t kernel, std::size_t f) { return out[(iy * 2 + kernel) * 3 + f]; };
            double e1 = 0.0, e2 = 0.0;
            for (std::size_t p = 0; p < y0s.size(); ++p) {
                const std::size_t base = p * stride;
                Multivector dy(m);
                for (int j = 0; j < m; ++j) {
                    const std::size_t o = base + 1 + 4 * static_cast<std::size_t>(j);
                    const Multivector d = (at(o, 1, 2) - at(o + 3, 1, 2)) + (at(o + 2, 1, 2) - at(o + 1, 1, 2)) * Complex(8.0);
                    dy += Multivector::blade(m, Blade{1} << j) * (d * Complex(1.0 / (12.0 * opt.h)));
                }
                e1 = std::max(e1, norm(at(base, 0, 0) - dy * c));
                e2 = std::max(e2, norm(at(base, 0, 1) - (to_multivector(y0s[p]) * at(base, 1, 2)) * c));
            }
            const std::string tag = std::string(sign == KernelSign::plus ? "F+" : "F-") + " psi_0" +
                                    std::to_string(b.k) + "1";
            for (auto [name, err] : {std::pair{"[x f]", e1}, std::pair{"[D f]", e2}}) {
                CaseResult cr;
                cr.name = tag + " " + name;
                cr.expected = 0.0;
                cr.got = err;
                cr.abs_error = err;
                cr.pass = err <= opt.tol;
                rep.add(std::move(cr));
            }
        }
    }
    return rep;
}

// ---- L2 bound pattern ------------------------------------------------------------------

inline Rational exact_modulus_unit_e(const ExactCoefficient& c) {
    // with e = 1 at most one part is non-zero
    if (c.e_part != 0 && c.ie_part != 0) throw std::logic_error("mixed eigenvalue parts");
    return abs(c.e_part != 0 ? c.e_part : c.ie_part);
}

inline Report l2_bound_scan(int m, int i, int k_max = 200) {
    validate(KernelId{m, i});
    const bool bounded = 2 * i <= m - 2;
    const bool unitary = m % 2 == 0 && 2 * i == m - 2;
    Report rep("l2", {{"m", m}, {"i", i}, {"k_max", k_max}, {"expect_bounded", bounded}, {"expect_unitary", unitary}});
    int counterexample = -1;
    for (int k = 0; k <= k_max; ++k)
        for (auto par : {Parity::even, Parity::odd}) {
            const Rational mod = exact_modulus_unit_e(closed_form_eigenvalue_exact(m, i, k, par));
            if (mod > 1 && counterexample < 0) counterexample = k;
            if (!bounded) continue;
            CaseResult c;
            c.name = "k=" + std::to_string(k) + " " + parity_label(par);
            c.expected = unitary ? "|lambda| = 1" : "|lambda| <= 1";
            c.got = to_string(mod);
            c.abs_error = std::max(0.0, to_double(mod) - 1.0);
            c.pass = unitary ? mod == 1 : mod <= 1;
            rep.add(std::move(c));
        }
    if (!bounded) {
        CaseResult c;
        c.name = "counterexample";
        c.expected = "some k with |lambda| > 1";
        c.got = counterexample;
        c.pass = counterexample >= 0;
        if (c.pass)
            c.detail = "k=" + std::to_string(counterexample) + " |lambda|=" +
                       to_string(exact_modulus_unit_e(closed_form_eigenvalue_exact(m, i, counterexample, Parity::even))) +
                       " (2p) " +
                       to_string(exact_modulus_unit_e(closed_form_eigenvalue_exact(m, i, counterexample, Parity::odd))) +
                       " (2p+1)";
        rep.add(std::move(c));
    }
    return rep;
}

// ---- weighted L1 membership ------------------------------------------------------------

struct DomainVerdict {
    bool converged = false;
    std::vector<double> shells;  // integral of (1+|x|)^i |f| over [0,1], [1,2], [2,4], ...
    double total = 0.0;
};

// heuristic: dyadic shells with a fixed direction set; converged when the shell integrals decay geometrically
inline DomainVerdict domain_membership(const FunctionHandle& f, int m, int i, int shells = 32, int directions = 64) {
    detail::check_dimension(m);
    std::mt19937 rng(12345);
    std::normal_distribution<double> nd;
    std::vector<VectorM> dirs;
    for (int d = 0; d < directions; ++d) {
        VectorM v(m);
        for (int j = 0; j < m; ++j) v[j] = nd(rng);
        dirs.push_back(v * (1.0 / v.norm()));
    }
    const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
    DomainVerdict v;
    double lo = 0.0, hi = 1.0;
    for (int s = 0; s < shells; ++s) {
        const double shell = boost::math::quadrature::gauss<double, 20>::integrate(
            [&](double r) {
                double acc = 0.0;
                for (const auto& d : dirs) acc += norm(f(d * r));
                return std::pow(1.0 + r, i) * std::pow(r, m - 1) * acc / directions;
            },
            lo, hi);
        v.shells.push_back(area * shell);
        v.total += area * shell;
        lo = hi;
        hi *= 2.0;
    }
    const std::size_t n = v.shells.size();
    bool decaying = n >= 5;
    for (std::size_t s = n - 4; decaying && s < n; ++s)
        if (v.shells[s] > 0.75 * v.shells[s - 1]) decaying = false;
    v.converged = v.total == 0.0 || (decaying && v.shells.back() <= 1e-6 * v.total);
    return v;
}

}  // namespace clifft
