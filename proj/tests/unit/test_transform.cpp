#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "clifft/transform.hpp"

using namespace clifft;

namespace {

VectorM point(int m, double shift) {
    VectorM y(m);
    for (int j = 0; j < m; ++j) y[j] = 0.4 * std::sin(1.3 * j + shift) + 0.1 * j;
    return y;
}

}  // namespace

TEST(ClosedForm, AgreesWithSeriesEigenvalues) {
    const Complex e{0.6, -0.8};
    for (int m = 2; m <= 9; ++m)
        for (int i = 0; i <= m - 2; ++i)
            for (int k = 0; k <= 20; ++k)
                for (auto par : {Parity::even, Parity::odd}) {
                    const KernelId id{m, i, KernelSign::plus, e};
                    const Complex want = series_eigenvalue(id, k, par);
                    const Complex got = closed_form_eigenvalue(m, i, k, par, 0, e);
                    EXPECT_LT(std::abs(got - want), 1e-10 * std::max(1.0, std::abs(want)))
                        << m << " " << i << " " << k << " " << parity_label(par);
                }
}

TEST(ClosedForm, SignFactorAndSpotValues) {
    EXPECT_EQ(closed_form_eigenvalue(2, 0, 0, Parity::even), Complex(-1.0));
    EXPECT_EQ(closed_form_eigenvalue(2, 0, 0, Parity::even, 1), Complex(1.0));
    EXPECT_EQ(closed_form_eigenvalue_exact(4, 2, 4, Parity::even).e_part, 5);
    EXPECT_THROW(closed_form_eigenvalue(4, 3, 0, Parity::even), std::invalid_argument);
}

TEST(Transform, MatchesPointwiseKernelSum) {
    const int m = 3;
    const KernelId id{m, 1, KernelSign::plus, {0.3, 0.9}};
    const auto k = build_kernel(id);
    const auto q = full_grid_scheme(m, 10);
    const auto b = psi(1, 1, 2, m);
    const auto f = as_handle(b);
    const std::vector<VectorM> ys{point(m, 0.0), point(m, 1.0)};
    const auto out = transform_batch({k}, {f}, ys, q);
    for (std::size_t a = 0; a < ys.size(); ++a) {
        Multivector want(m);
        for (std::size_t n = 0; n < q.size(); ++n)
            want += eval_kernel(k, q.nodes[n], ys[a]).to_multivector() * f(q.nodes[n]) * Complex(q.weights[n]);
        want *= Complex(std::pow(2.0 * std::numbers::pi, -1.5));
        EXPECT_LT(norm(out[a] - want), 1e-12 * std::max(1.0, norm(want)));
    }
}

TEST(Transform, GaussianInTwoDimensions) {
    const auto q = full_grid_scheme(2, 40);
    const auto f = as_handle(psi(0, 0, 1, 2));
    for (double s : {0.0, 0.5, 1.7}) {
        const VectorM y{s, -0.3};
        const auto v = apply_transform(KernelId{2, 0}, f, y, q);
        Multivector want = Multivector::blade(2, 0, Complex(-std::exp(-0.5 * y.norm_squared())));
        EXPECT_LT(norm(v - want), 1e-10);
    }
}

TEST(Transform, BatchLayoutAndParallelAgree) {
    const int m = 2;
    const auto q = full_grid_scheme(m, 20);
    std::vector<KernelExpr> ks{build_kernel(KernelId{m, 0}), build_kernel(KernelId{m, 0, KernelSign::minus})};
    std::vector<FunctionHandle> fs{as_handle(psi(0, 1, 1, m)), as_handle(psi(1, 0, 1, m)), as_handle(psi(2, 2, 2, m))};
    std::vector<VectorM> ys{point(m, 0.2), point(m, 2.0)};
    const auto serial = transform_batch(ks, fs, ys, q);
    const auto par = transform_batch(ks, fs, ys, q, {true, 7});
    ASSERT_EQ(serial.size(), 12u);
    for (std::size_t a = 0; a < serial.size(); ++a) EXPECT_LT(norm(serial[a] - par[a]), 1e-13);
    const auto single = apply_transform(KernelId{m, 0, KernelSign::minus}, fs[2], ys[1], q);
    EXPECT_LT(norm(serial[(1 * 2 + 1) * 3 + 2] - single), 1e-13);
}

TEST(Eigen, FullGridSmallDimensions) {
    for (int m : {2, 3})
        for (int i = 0; i <= m - 2; ++i)
            for (int j = 0; j <= 3; ++j)
                for (int k = 0; k <= 2; ++k) {
                    const auto r = verify_eigen(m, i, j, k, 1);
                    EXPECT_LT(r.abs_error, 1e-6) << m << " " << i << " " << j << " " << k;
                    EXPECT_LT(r.residual, 1e-6);
                }
}

TEST(Eigen, MinusKernelsUseTheirOwnEigenvalues) {
    const int m = 3;
    EigenOptions opt;
    opt.e = {0.0, 1.0};
    std::vector<KernelId> ids{{m, 0, KernelSign::minus, opt.e}, {m, 1, KernelSign::minus, opt.e}};
    const auto recs = verify_eigen_full_grid(ids, {psi(0, 1, 1, m), psi(1, 2, 3, m)}, opt);
    for (const auto& r : recs) EXPECT_LT(r.abs_error, 1e-6) << r.i << " " << r.j << " " << r.k;
}

TEST(Eigen, BochnerPathHigherDimensions) {
    for (int m : {5, 6})
        for (int i : {0, m - 2})
            for (int j = 0; j <= 2; ++j) {
                const auto r = verify_eigen(m, i, j, 1, 1);
                EXPECT_LT(r.abs_error, 1e-8) << m << " " << i << " " << j;
                EXPECT_EQ(r.method, "bochner");
            }
}

TEST(Eigen, HankelLaguerre) {
    EXPECT_LT(std::abs(hankel_laguerre_residual(2, 1, 1, 1.3)), 1e-8);
    EXPECT_LT(std::abs(hankel_laguerre_residual(1, 2, 3, 0.7)), 1e-8);
    EXPECT_LT(std::abs(hankel_laguerre_residual(0, 0, 2, 2.1)), 1e-8);
}

TEST(Eigen, ParitySelection) {
    const auto rep = verify_parity_selection(2, 0, 32, 24);
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump();
}

TEST(Inversion, ExactProducts) {
    InversionOptions opt;
    opt.numeric = false;
    for (int m : {2, 4, 6, 8})
        for (int i = 0; i <= m - 2; ++i) EXPECT_TRUE(verify_inversion(m, i, opt).pass()) << m << " " << i;
    EXPECT_THROW(verify_inversion(3, 0, opt), std::invalid_argument);
}

TEST(Inversion, SignedPermutationOrbit) {
    const VectorM x{0.3, -1.2, 0.7, -0.05};
    auto [rep, g] = detail::orbit_representative(x);
    EXPECT_EQ(rep, (std::vector<double>{1.2, 0.7, 0.3, 0.05}));
    EXPECT_LT(norm(g.apply(to_multivector(VectorM(rep))) - to_multivector(x)), 1e-15);
    // alpha_g is an algebra automorphism
    const auto a = to_multivector(VectorM{0.1, 0.2, -0.4, 1.0});
    const auto b = to_multivector(VectorM{-0.7, 0.5, 0.3, 0.2});
    EXPECT_LT(norm(g.apply(a * b) - g.apply(a) * g.apply(b)), 1e-15);
}

TEST(Inversion, NumericCompositionTwoDimensions) {
    InversionOptions opt;
    opt.k_max = 10;
    const auto rep = verify_inversion(2, 0, opt);
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump();
}

TEST(Inversion, FullGridInnerTwoDimensions) {
    InversionOptions opt;
    opt.inner = InnerMethod::full_grid;
    opt.outer_nodes = 12;
    const auto rep = inversion_composition(2, {0}, opt);
    EXPECT_EQ(rep.config()["inner"], "full-grid");
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump();
}

TEST(Inversion, NumericCompositionFourDimensions) {
    const auto rep = inversion_composition(4, {0, 1, 2});
    EXPECT_EQ(rep.cases().size(), 6u);
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump();
}

TEST(Diff, RelationsTwoDimensions) {
    const auto rep = verify_diff_relations(2, 0);
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump();
}

TEST(Diff, RelationsThreeDimensions) {
    DiffOptions opt;
    opt.nodes_per_axis = 28;
    const auto rep = verify_diff_relations(3, 1, opt);
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump();
}

TEST(L2, BoundPattern) {
    for (int m = 2; m <= 9; ++m)
        for (int i = 0; i <= m - 2; ++i) {
            const auto rep = l2_bound_scan(m, i, 60);
            EXPECT_TRUE(rep.pass()) << m << " " << i << rep.to_json().dump();
            if (2 * i > m - 2) {
                EXPECT_EQ(rep.cases().size(), 1u);
            }
        }
}

TEST(L2, UnitaryIndex) {
    const auto rep = l2_bound_scan(6, 2, 40);
    EXPECT_EQ(rep.config()["expect_unitary"], true);
    for (const auto& c : rep.cases()) EXPECT_EQ(c.got, "1");
}

TEST(Domain, GaussianConvergesAndSlowDecayDoesNot) {
    const auto g = as_handle(psi(0, 0, 1, 3));
    EXPECT_TRUE(domain_membership(g, 3, 2).converged);
    const FunctionHandle slow = [](const VectorM& x) {
        return Multivector::blade(3, 0, Complex(std::pow(1.0 + x.norm_squared(), -1.5)));
    };
    EXPECT_FALSE(domain_membership(slow, 3, 0).converged);
    const FunctionHandle fast = [](const VectorM& x) {
        return Multivector::blade(3, 0, Complex(std::pow(1.0 + x.norm_squared(), -3.0)));
    };
    EXPECT_TRUE(domain_membership(fast, 3, 0).converged);
}

TEST(EigenTable, Csv) {
    std::ostringstream os;
    write_eigentable_csv(os, 4, {0, 2}, 0, 3);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "m,i,k,parity,re,im,sign_factor,magnitude");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 2 * 4 * 2);
    EXPECT_NE(os.str().find("4,2,0,2p,"), std::string::npos);
    std::ostringstream single;
    write_eigentable_csv(single, 4, {1}, 0, 0);
    EXPECT_NE(single.str().find("\n4,1,0,2p,-1,0,(-1)^p,1\n"), std::string::npos) << single.str();
    std::ostringstream empty;
    write_eigentable_csv(empty, 4, {1}, 3, 2);
    EXPECT_EQ(empty.str(), "m,i,k,parity,re,im,sign_factor,magnitude\n");
}

TEST(Transform, BesselTransformOddDegreeInFourDimensions) {
    const auto q = full_grid_scheme(4, 20);
    const auto b = psi(0, 1, 2, 4);
    const std::vector<VectorM> ys{point(4, 0.0), point(4, 2.5)};
    const auto out = transform_batch({build_kernel(KernelId{4, 0})}, {as_handle(b)}, ys, q);
    for (std::size_t a = 0; a < ys.size(); ++a) {
        auto want = eval_psi(b, ys[a]);
        want *= Complex(-1.0 / 3.0);
        EXPECT_LT(norm(out[a] - want), 1e-8);
    }
}

TEST(Transform, BochnerMatchesFullGrid) {
    const int m = 2;
    const auto q = full_grid_scheme(m, 40);
    const auto b = psi(0, 1, 1, m);
    const RadialProfile f0 = [](double r) { return std::exp(-0.5 * r * r); };
    for (int i = 0; i <= m - 2; ++i)
        for (double shift : {0.0, 1.0, 2.0}) {
            const auto y = point(m, shift);
            const auto full = apply_transform(KernelId{m, i}, as_handle(b), y, q);
            const auto radial = bochner_reduce(KernelId{m, i}, 1, f0, Parity::even, y, b.monogenic.poly);
            EXPECT_LT(norm(full - radial), 1e-6);
        }
    const RadialProfile zero = [](double) { return 0.0; };
    EXPECT_EQ(norm(bochner_reduce(KernelId{m, 0}, 1, zero, Parity::even, point(m, 0.0), b.monogenic.poly)), 0.0);
}

TEST(Transform, ZeroFunction) {
    const auto q = full_grid_scheme(3, 8);
    const FunctionHandle zero = [](const VectorM&) { return Multivector(3); };
    EXPECT_EQ(norm(apply_transform(KernelId{3, 1}, zero, point(3, 0.0), q)), 0.0);
}

TEST(Domain, PolynomialDecayThreshold) {
    const FunctionHandle f = [](const VectorM& x) {
        return Multivector::blade(2, 0, Complex(std::pow(1.0 + x.norm(), -3.0)));
    };
    EXPECT_TRUE(domain_membership(f, 2, 0).converged);
    EXPECT_FALSE(domain_membership(f, 2, 2).converged);
    EXPECT_FALSE(domain_membership(f, 2, 3).converged);
    const FunctionHandle zero = [](const VectorM&) { return Multivector(2); };
    EXPECT_TRUE(domain_membership(zero, 2, 5).converged);
}
