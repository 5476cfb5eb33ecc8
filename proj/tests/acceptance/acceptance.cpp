// One line per acceptance criterion: correctness at the stated tolerance and the stated runtime.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "clifft/clifft.hpp"

using namespace clifft;

namespace {

struct Outcome {
    bool pass = true;
    std::size_t cases = 0;
    double max_error = 0.0;
    std::string note;

    void take(const Report& r) {
        pass = pass && r.pass();
        cases += r.cases().size();
        max_error = std::max(max_error, r.max_abs_error());
        if (const auto* f = r.first_failure(); f && note.empty()) note = r.suite() + ": " + f->name;
    }
    void check(bool ok, double err, const std::string& what) {
        ++cases;
        max_error = std::max(max_error, err);
        if (!ok) {
            pass = false;
            if (note.empty()) note = what;
        }
    }
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.note = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.pass && dt < limit_s;
    if (!ok) ++failures;
    std::printf("[%s] criterion %2d  %-32s cases=%-5zu max_err=%.2e  time=%.2fs (limit %.0fs)%s%s\n",
                ok ? "PASS" : "FAIL", id, title, o.cases, o.max_error, dt, limit_s,
                o.note.empty() ? "" : "  first failure: ", o.note.c_str());
    std::fflush(stdout);
}

std::vector<int> all_indices(int m) {
    std::vector<int> r;
    for (int i = 0; i <= m - 2; ++i) r.push_back(i);
    return r;
}

Outcome recursion() {
    Outcome o;
    for (int m : {2, 4, 6, 8})
        for (int i = 0; i <= m - 2; ++i) o.take(verify_recursion_even(m, i));
    for (int m : {3, 5, 7, 9})
        for (int i = 0; i <= m - 2; ++i) o.take(verify_recursion_odd(m, i));
    return o;
}

Outcome structural() {
    Outcome o;
    for (int m : {4, 6, 8}) {
        const auto r = verify_structural_identities(m);
        o.check(r.cases().size() == 5, 0.0, "five relations for m=" + std::to_string(m));
        o.take(r);
    }
    return o;
}

Outcome series() {
    Outcome o;
    for (int m = 2; m <= 6; ++m) o.take(verify_series_agreement(m, all_indices(m), 500, 3.0, 1e-9, 1e-8));
    return o;
}

Outcome pde() {
    Outcome o;
    for (int m = 2; m <= 6; ++m) o.take(verify_pde(m, all_indices(m), 200, 3.0, 1e-6));
    return o;
}

Outcome eigen() {
    Outcome o;
    for (int m = 2; m <= 9; ++m) o.take(verify_eigen_suite(m, {}, 1, 2));
    auto spot = [&](Complex got, Complex want, const std::string& what) {
        o.check(std::abs(got - want) < 1e-15, std::abs(got - want), what);
    };
    for (int p : {0, 1}) {
        const double sp = p ? -1.0 : 1.0;
        spot(closed_form_eigenvalue(4, 0, 2, Parity::even, p), sp / 3.0, "m=4,i=0,k=2");
        spot(closed_form_eigenvalue(2, 0, 0, Parity::even, p), -sp, "m=2,i=0,k=0");
        spot(closed_form_eigenvalue(3, 0, 0, Parity::even, p), Complex(0.0, sp), "m=3,i=0,k=0");
    }
    return o;
}

Outcome inversion() {
    Outcome o;
    InversionOptions opt;
    opt.numeric = false;
    for (int m : {2, 4, 6, 8})
        for (int i = 0; i <= m - 2; ++i) o.take(verify_inversion(m, i, opt));
    for (int m : {2, 4}) o.take(inversion_composition(m, all_indices(m)));
    return o;
}

Outcome l2() {
    Outcome o;
    for (int m = 2; m <= 9; ++m)
        for (int i = 0; i <= m - 2; ++i) o.take(l2_bound_scan(m, i, 200));
    return o;
}

Outcome constraint() {
    Outcome o;
    for (int m = 2; m <= 9; ++m)
        for (int i = 0; i <= m - 2; ++i)
            for (auto s : {KernelSign::plus, KernelSign::minus})
                o.take(check_cf_constraint(series_coefficients(KernelId{m, i, s}), 50, 1e-10));
    return o;
}

Outcome special_functions() {
    Outcome o;
    o.take(verify_gegenbauer_lowering());
    o.take(verify_gegenbauer_shift());
    o.take(verify_bessel_identity());
    o.take(verify_gamma_recurrence());
    const double hl = std::abs(hankel_laguerre_residual(2, 1, 1, 1.3));
    o.check(hl < 1e-8, hl, "Hankel-Laguerre (lambda=1,k=1,j=1,s=1.3)");
    for (int tl : {0, 1, 2, 3})
        for (int k = 0; k <= 3; ++k)
            for (int j = 0; j <= 3; ++j)
                for (double s : {0.4, 1.3, 2.7}) {
                    const double r = std::abs(hankel_laguerre_residual(tl, k, j, s));
                    o.check(r < 1e-8, r, "Hankel-Laguerre sweep");
                }
    return o;
}

Outcome monogenic() {
    Outcome o;
    for (int m = 2; m <= 6; ++m)
        for (int k = 0; k <= 4; ++k)
            for (const auto& mono : monogenic_basis(m, k))
                o.check(dirac(mono.poly).is_zero(), 0.0, "dirac m=" + std::to_string(m) + " k=" + std::to_string(k));
    // psi_a psi_b = P e^{-|x|^2}; with x = u / sqrt(2) the Gauss-Hermite rule is exact for P
    for (int m = 2; m <= 4; ++m) {
        const auto q = full_grid_scheme(m, 12, 0.0);
        std::vector<std::vector<Multivector>> vals;
        for (int j = 0; j <= 2; ++j)
            for (int k = 0; k <= 2; ++k)
                for (int ell = 1; ell <= monogenic_basis_size(m, k); ++ell) {
                    const CompiledPolynomial poly(psi(j, k, ell, m).function.poly);
                    std::vector<Multivector> v;
                    for (const auto& u : q.nodes) v.push_back(poly(u * std::sqrt(0.5)));
                    vals.push_back(std::move(v));
                }
        std::vector<double> diag(vals.size());
        auto inner = [&](std::size_t a, std::size_t b) {
            Complex s{};
            for (std::size_t n = 0; n < q.size(); ++n) s += q.gaussian_weights[n] * l2_pairing(vals[a][n], vals[b][n]);
            return s;
        };
        for (std::size_t a = 0; a < vals.size(); ++a) diag[a] = inner(a, a).real();
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = a + 1; b < vals.size(); ++b) {
                const double rel = std::abs(inner(a, b)) / std::sqrt(diag[a] * diag[b]);
                o.check(rel < 1e-8, rel, "orthogonality m=" + std::to_string(m));
            }
    }
    return o;
}

}  // namespace

int main() {
    run(1, "recursion exactness", 1, recursion);
    run(2, "structural identities", 1, structural);
    run(3, "series agreement", 30, series);
    run(4, "PDE residuals", 60, pde);
    run(5, "eigenvalue verification", 300, eigen);
    run(6, "inversion", 120, inversion);
    run(7, "L2 boundedness pattern", 1, l2);
    run(8, "constraint identity", 1, constraint);
    run(9, "special-function identities", 5, special_functions);
    run(10, "monogenic oracle", 60, monogenic);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
