// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_REPORT_HPP
#define CAMG_REPORT_HPP

#include "camg/composite.hpp"
#include "camg/solve.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace camg {

/// include_times = false zeroes wall-clock fields so identical runs compare
/// byte-equal.
nlohmann::json to_json(const BuildLog& log, bool include_times = true);
nlohmann::json to_json(const ConvergenceReport& report, bool include_times = true);
nlohmann::json to_json(const Metrics& metrics);

void write_json(const std::string& path, const nlohmann::json& j);

/// Residual history CSV with columns (k, iter, relres); one block per report.
void write_history_csv(const std::string& path,
                       const std::vector<ConvergenceReport>& reports);

} // namespace camg

#endif // CAMG_REPORT_HPP
