// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/report.hpp"

#include <fstream>
#include <stdexcept>

namespace camg {

using nlohmann::json;

json to_json(const BuildLog& log, bool include_times) {
    json components = json::array();
    for (const auto& rec : log.components) {
        json levels = json::array();
        for (const auto& ls : rec.levels)
            levels.push_back({{"dim", ls.dim},
                              {"nnz", ls.nnz},
                              {"aggregates", ls.aggregates},
                              {"deficiency", ls.deficiency}});
        components.push_back({{"index", rec.index},
                              {"rho_b", rec.rho_before},
                              {"theorem_ratio", rec.theorem_ratio},
                              {"theorem_holds", rec.theorem_holds},
                              {"hierarchy", {{"levels", levels},
                                             {"complexity", rec.hierarchy_complexity}}},
                              {"wall_seconds", include_times ? rec.wall_seconds : 0.0}});
    }
    return {{"seed", log.seed},
            {"norm_b0", log.norm_b0},
            {"a_norm_estimate", log.a_norm_estimate},
            {"components", components},
            {"final_rho", log.final_rho},
            {"target_reached", log.target_reached},
            {"k", log.final_k},
            {"complexity", log.final_complexity}};
}

json to_json(const ConvergenceReport& report, bool include_times) {
    return {{"mode", to_string(report.mode)},
            {"k", report.components},
            {"complexity", report.complexity},
            {"iterations", report.iterations},
            {"cycles", report.cycles},
            {"converged", report.converged},
            {"asymptotic_rho", asymptotic_rho(report)},
            {"residual_history", report.residual_history},
            {"rho_per_cycle", report.rho_per_cycle},
            {"wall_seconds", include_times ? report.wall_seconds : 0.0}};
}

json to_json(const Metrics& metrics) {
    return {{"k", metrics.k},
            {"complexity", metrics.complexity},
            {"stationary_rho", metrics.stationary_rho},
            {"pcg_rho", metrics.pcg_rho},
            {"stationary_iterations", metrics.stationary_iterations},
            {"pcg_iterations", metrics.pcg_iterations},
            {"stationary_cycles", metrics.stationary_cycles},
            {"pcg_cycles", metrics.pcg_cycles}};
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

void write_history_csv(const std::string& path,
                       const std::vector<ConvergenceReport>& reports) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.precision(17);
    out << "k,iter,relres\n";
    for (const auto& report : reports)
        for (std::size_t i = 0; i < report.residual_history.size(); ++i)
            out << report.components << "," << i << "," << report.residual_history[i] << "\n";
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

} // namespace camg
