#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "clifft/cli.hpp"

using clifft::cli::RunConfig;

namespace {

void kernel_options(CLI::App* app, RunConfig& c) {
    app->add_option("--m", c.m, "dimension")->required();
    app->add_option("--i", c.i, "kernel index in [0, m-2]; default all (first for single-kernel commands)");
    app->add_option("--sign", c.sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    app->add_option("--e-re", c.e_re, "real part of e (odd m)");
    app->add_option("--e-im", c.e_im, "imaginary part of e (odd m)");
    app->add_flag("--parallel", c.parallel, "data-parallel execution, capped by CLIFFT_THREADS");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clifft: kernels, series and eigenvalue checks for Clifford-Fourier type transforms"};
    app.require_subcommand(1);
    RunConfig c;
    std::string out;
    app.add_option("-o,--output", out, "output file (default stdout)");

    auto* ke = app.add_subcommand("kernel-eval", "kernel components on an (s, t) grid as CSV");
    kernel_options(ke, c);
    ke->add_option("--s-min", c.s_min);
    ke->add_option("--s-max", c.s_max);
    ke->add_option("--s-count", c.s_count);
    ke->add_option("--t-min", c.t_min);
    ke->add_option("--t-max", c.t_max);
    ke->add_option("--t-count", c.t_count);
    ke->add_option("--eps", c.eps, "series truncation target");
    ke->add_flag("--compare-series", c.compare_series, "append series columns and max |difference|");

    auto* ver = app.add_subcommand("verify", "run a verification suite, JSON report, exit 0 iff all cases pass");
    ver->add_option("suite", c.suite, "suite")->required()->check(CLI::IsMember(clifft::cli::suites()));
    kernel_options(ver, c);
    ver->add_option("--tol", c.tol, "tolerance (default per suite)");
    ver->add_option("--eps", c.eps, "series truncation target");
    ver->add_option("--k-max", c.k_max, "largest degree k");
    ver->add_option("--j-max", c.j_max, "largest radial index j (eigen)");
    ver->add_option("--points", c.points, "random points (pde, series)");
    ver->add_option("--nodes", c.nodes, "Gauss-Hermite nodes per axis (eigen, diff)");
    ver->add_flag("!--no-numeric", c.numeric, "skip the numerical composition (inversion)");

    auto* et = app.add_subcommand("eigentable", "closed-form eigenvalues as CSV");
    kernel_options(et, c);
    et->add_option("--k-min", c.k_min);
    et->add_option("--k-max", c.k_max, "default 10");

    auto* co = app.add_subcommand("coeffs", "series coefficients as CSV");
    kernel_options(co, c);
    co->add_option("--k-max", c.k_max, "default 20");
    co->add_flag("--inverse", c.inverse, "append inverse coefficients and eigenvalue products");
    co->add_flag("--raw", c.raw, "unnormalized alpha_k, beta_k");

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<std::ofstream> file;
    if (!out.empty()) {
        file = std::make_unique<std::ofstream>(out);
        if (!*file) {
            std::cerr << "cannot open " << out << '\n';
            return 2;
        }
    }
    std::ostream& os = file ? *file : std::cout;
    try {
        if (ke->parsed()) {
            c.command = "kernel-eval";
            clifft::cli::cmd_kernel_eval(c, os);
        } else if (ver->parsed()) {
            c.command = "verify";
            return clifft::cli::cmd_verify(c, os);
        } else if (et->parsed()) {
            c.command = "eigentable";
            clifft::cli::cmd_eigentable(c, os);
        } else {
            c.command = "coeffs";
            clifft::cli::cmd_coeffs(c, os);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
