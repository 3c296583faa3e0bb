// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line harness: problem generation, adaptive solver construction,
// stationary / PCG solve drivers and report emission.

#include "camg/coarsening.hpp"
#include "camg/composite.hpp"
#include "camg/matrix_market.hpp"
#include "camg/probgen.hpp"
#include "camg/report.hpp"
#include "camg/solve.hpp"
#include "camg/vector_ops.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <memory>
#include <string>

namespace {

constexpr int kExitSolverFailure = 1;
constexpr int kExitUsageOrIo = 2;

struct BuildFlags {
    std::string matrix;
    double target_rho = 0.25;
    long long tester_iters = 10;
    long long candidates = 1;
    double gamma = 8.0;
    long long mu = 1;
    long long nu = 1;
    double omega = 2.0 / 3.0;
    long long max_components = 8;
    long long coarse_size = 64;
    unsigned long long seed = 1234;
    std::string base_smoother = "l1_jacobi";
    std::string level_smoother = "l1_jacobi";
    bool skip_finest_smoothing = false;
};

void add_build_flags(CLI::App* cmd, BuildFlags& f) {
    cmd->add_option("matrix,--matrix", f.matrix, "system matrix (.mtx)");
    cmd->add_option("--target-rho", f.target_rho, "target convergence factor");
    cmd->add_option("--tester-iters", f.tester_iters, "tester iterations per round");
    cmd->add_option("--candidates", f.candidates, "near-null candidates per component");
    cmd->add_option("--gamma", f.gamma, "coarsening factor");
    cmd->add_option("--mu", f.mu, "cycle parameter (1 = V, 2 = W)");
    cmd->add_option("--nu", f.nu, "smoothing sweeps per level");
    cmd->add_option("--omega", f.omega, "interpolation smoothing weight");
    cmd->add_option("--max-components", f.max_components, "component budget");
    cmd->add_option("--coarse-size", f.coarse_size, "direct-solve threshold");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--base-smoother", f.base_smoother, "base solver kind");
    cmd->add_option("--level-smoother", f.level_smoother, "finest-level smoother kind");
    cmd->add_flag("--skip-finest-smoothing", f.skip_finest_smoothing,
                  "use the unsmoothed finest-level interpolation");
}

camg::AdaptiveConfig to_config(const BuildFlags& f) {
    camg::AdaptiveConfig cfg;
    cfg.target_rho = f.target_rho;
    cfg.tester_iters = f.tester_iters;
    cfg.n_sa = f.candidates;
    cfg.gamma = f.gamma;
    cfg.mu = f.mu;
    cfg.nu = f.nu;
    cfg.omega = f.omega;
    cfg.max_components = f.max_components;
    cfg.coarse_size = f.coarse_size;
    cfg.seed = f.seed;
    cfg.base_kind = camg::smoother_kind_from_string(f.base_smoother);
    cfg.level_smoother = camg::smoother_kind_from_string(f.level_smoother);
    cfg.skip_finest_smoothing = f.skip_finest_smoothing;
    return cfg;
}

camg::MatrixPtr load_system(const std::string& path) {
    if (path.empty()) throw std::runtime_error("no matrix given (see --matrix)");
    camg::SparseMatrix a = camg::load_matrix_market(path);
    camg::validate(a);
    return std::make_shared<const camg::SparseMatrix>(std::move(a));
}

int run_gen(const std::string& kind, long long dim, long long n, double epsilon,
            double theta, double phi, const std::string& out) {
    camg::SparseMatrix a;
    if (kind == "laplace" || dim == 1) {
        a = camg::gen_laplace(n, static_cast<int>(dim));
    } else if (kind == "anisotropic") {
        camg::AnisotropyParams p;
        p.epsilon = epsilon;
        p.theta = theta;
        p.phi = phi;
        p.n = n;
        a = dim == 3 ? camg::gen_anisotropic_3d(p) : camg::gen_anisotropic_2d(p);
    } else {
        throw std::runtime_error("unknown problem kind '" + kind + "'");
    }
    camg::save_matrix_market(out, a);
    std::cout << "wrote " << a.n_rows << "x" << a.n_cols << " matrix (" << a.nnz()
              << " nnz) to " << out << "\n";
    return 0;
}

int run_build(const BuildFlags& flags, const std::string& report_path,
              const std::string& dump_prefix) {
    const camg::MatrixPtr a = load_system(flags.matrix);
    auto [solver, log] = camg::adaptive_build(a, to_config(flags));

    for (const auto& rec : log.components)
        std::printf("component %lld: rho_b %.6f  theorem ratio %.3e  C %.3f\n",
                    static_cast<long long>(rec.index), rec.rho_before, rec.theorem_ratio,
                    rec.hierarchy_complexity);
    std::printf("final: k %lld  rho_b %.6f  C_k %.3f  target %s\n",
                static_cast<long long>(log.final_k), log.final_rho, log.final_complexity,
                log.target_reached ? "reached" : "not reached");

    if (!report_path.empty()) camg::write_json(report_path, camg::to_json(log));
    if (!dump_prefix.empty()) {
        for (std::size_t i = 0; i < solver.components.size(); ++i)
            camg::dump_aggregation(dump_prefix + "." + std::to_string(i + 1),
                                   solver.components[i].levels.front().agg);
    }
    return 0;
}

camg::Vector make_rhs(const std::string& rhs, camg::index_t n) {
    if (rhs.empty() || rhs == "const1") return camg::Vector(static_cast<std::size_t>(n), 1.0);
    camg::Vector b = camg::load_vector(rhs);
    if (static_cast<camg::index_t>(b.size()) != n)
        throw std::runtime_error("right-hand side length does not match the matrix");
    return b;
}

int run_solve(const BuildFlags& flags, const std::string& rhs, const std::string& mode,
              double tol, long long max_iters, const std::string& sweep,
              const std::string& report_path, const std::string& history_path) {
    const camg::MatrixPtr a = load_system(flags.matrix);
    const camg::Vector b = make_rhs(rhs, a->n_rows);

    auto [solver, log] = camg::adaptive_build(a, to_config(flags));

    const auto run_one = [&](const camg::CompositeSolver& c) {
        return mode == "pcg" ? camg::pcg_solve(c, b, tol, max_iters)
                             : camg::stationary_solve(c, b, tol, max_iters);
    };

    std::vector<camg::ConvergenceReport> reports;
    nlohmann::json jreports = nlohmann::json::array();

    if (!sweep.empty()) {
        long long lo = 0, hi = 0;
        if (std::sscanf(sweep.c_str(), "%lld:%lld", &lo, &hi) != 2 || lo < 1 || hi < lo)
            throw std::runtime_error("bad --components-sweep range '" + sweep + "' (want lo:hi)");
        hi = std::min<long long>(hi, solver.n_components() + 1);
        for (long long k = lo; k <= hi; ++k) {
            const camg::CompositeSolver prefix = camg::prefix_composite(solver, k - 1);
            const camg::SolveResult res = run_one(prefix);
            std::printf("k %lld: %s iters %lld  cycles %lld  relres %.3e  rho %.4f\n", k,
                        mode.c_str(), static_cast<long long>(res.report.iterations),
                        static_cast<long long>(res.report.cycles),
                        res.report.residual_history.back(), camg::asymptotic_rho(res.report));
            jreports.push_back(camg::to_json(res.report));
            reports.push_back(res.report);
        }
    }

    bool all_converged = true;
    if (sweep.empty()) {
        const camg::SolveResult res = run_one(solver);
        std::printf("%s: iters %lld  cycles %lld  relres %.3e  rho %.4f  %s\n", mode.c_str(),
                    static_cast<long long>(res.report.iterations),
                    static_cast<long long>(res.report.cycles),
                    res.report.residual_history.back(), camg::asymptotic_rho(res.report),
                    res.report.converged ? "converged" : "NOT converged");
        jreports.push_back(camg::to_json(res.report));
        reports.push_back(res.report);
        all_converged = res.report.converged;
    }

    if (!report_path.empty())
        camg::write_json(report_path,
                         {{"build", camg::to_json(log)}, {"solves", jreports}});
    if (!history_path.empty()) camg::write_history_csv(history_path, reports);
    return all_converged ? 0 : kExitSolverFailure;
}

int run_check(const std::string& matrix) {
    const camg::MatrixPtr a = load_system(matrix);
    std::printf("structure: ok (%lld x %lld, %lld nnz)\n",
                static_cast<long long>(a->n_rows), static_cast<long long>(a->n_cols),
                static_cast<long long>(a->nnz()));

    const camg::real_t sym = camg::symmetry_defect(*a);
    std::printf("symmetry defect: %.3e\n", sym);
    if (sym != 0.0) {
        std::printf("matrix is not symmetric; solver construction would reject it\n");
        return kExitSolverFailure;
    }

    const camg::PowerMethodResult pm = camg::power_method(*a, 1e-6, 2000);
    std::printf("||A|| estimate: %.6e (%s)\n", pm.value,
                pm.converged ? "converged" : "not converged");

    camg::Rng rng(99);
    for (int t = 0; t < 20; ++t) {
        const camg::Vector v = rng.uniform_vector(a->n_rows);
        const camg::real_t q = camg::dot(v, camg::spmv(*a, v));
        if (q <= 0.0) {
            std::printf("v^T A v = %.3e <= 0: matrix not positive definite\n", q);
            return kExitSolverFailure;
        }
    }
    if (a->n_rows <= 500) {
        if (!camg::cholesky_ok(camg::dense_from_sparse(*a))) {
            std::printf("dense Cholesky failed: matrix not positive definite\n");
            return kExitSolverFailure;
        }
        std::printf("dense Cholesky: ok\n");
    }
    std::printf("random v^T A v > 0: ok\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive composite algebraic-multigrid solver harness"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a test matrix");
    std::string gen_kind = "anisotropic";
    long long gen_dim = 2, gen_n = 8;
    double gen_eps = 1e-6, gen_theta = 0.0, gen_phi = 0.0;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "anisotropic | laplace");
    gen->add_option("--dim", gen_dim, "space dimension (1, 2 or 3)");
    gen->add_option("--n", gen_n, "cells per axis");
    gen->add_option("--epsilon", gen_eps, "cross-direction diffusivity");
    gen->add_option("--theta", gen_theta, "anisotropy angle (radians)");
    gen->add_option("--phi", gen_phi, "3-D elevation angle (radians)");
    gen->add_option("--out", gen_out, "output .mtx path")->required();

    // build
    auto* build = app.add_subcommand("build", "run the adaptive solver construction");
    BuildFlags build_flags;
    std::string build_report, build_dump;
    add_build_flags(build, build_flags);
    build->add_option("--report", build_report, "write the build log JSON here");
    build->add_option("--dump-aggregates", build_dump,
                      "write per-component finest aggregations to <prefix>.<k>");

    // solve
    auto* solve = app.add_subcommand("solve", "build and run a solve");
    BuildFlags solve_flags;
    std::string solve_rhs = "const1", solve_mode = "stationary", solve_sweep;
    std::string solve_report, solve_history;
    double solve_tol = 1e-12;
    long long solve_max_iters = 100000;
    add_build_flags(solve, solve_flags);
    solve->add_option("--rhs", solve_rhs, "right-hand side file, or const1");
    solve->add_option("--mode", solve_mode, "stationary | pcg")
        ->check(CLI::IsMember({"stationary", "pcg"}));
    solve->add_option("--tol", solve_tol, "relative residual tolerance");
    solve->add_option("--max-iters", solve_max_iters, "iteration cap");
    solve->add_option("--components-sweep", solve_sweep,
                      "emit one report per prefix composite, e.g. 1:10");
    solve->add_option("--report", solve_report, "write JSON report here");
    solve->add_option("--history", solve_history, "write residual history CSV here");

    // check
    auto* check = app.add_subcommand("check", "run the invariant suite on a matrix");
    std::string check_matrix;
    check->add_option("matrix,--matrix", check_matrix, "matrix (.mtx)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsageOrIo;
    }

    try {
        if (gen->parsed())
            return run_gen(gen_kind, gen_dim, gen_n, gen_eps, gen_theta, gen_phi, gen_out);
        if (build->parsed()) return run_build(build_flags, build_report, build_dump);
        if (solve->parsed())
            return run_solve(solve_flags, solve_rhs, solve_mode, solve_tol, solve_max_iters,
                             solve_sweep, solve_report, solve_history);
        if (check->parsed()) return run_check(check_matrix);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageOrIo;
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        const bool io = msg.find("cannot open") != std::string::npos ||
                        msg.find("Matrix Market") != std::string::npos ||
                        msg.find("malformed") != std::string::npos ||
                        msg.find("out of bounds") != std::string::npos ||
                        msg.find("no matrix given") != std::string::npos;
        return io ? kExitUsageOrIo : kExitSolverFailure;
    }
    return kExitUsageOrIo;
}
