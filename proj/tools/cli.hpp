// Copyright 2026 The qdivide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qdivide/bfi.hpp"
#include "qdivide/diagram.hpp"
#include "qdivide/divisibility.hpp"
#include "qdivide/rate_model.hpp"

namespace qdivide::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Entry point shared by the qdivide binary and the tests. The output of a
/// command is assembled in memory and written once, to `out` or the file
/// named by --output.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Version string baked in at configure time.
std::string version();

/// 17 significant digits, '.' decimal separator, "inf"/"-inf"/"nan" for
/// non-finite values.
std::string format_double(double v);
double parse_double(std::string_view text);
std::vector<double> parse_list(std::string_view text);

/// Model specs: "mixture:p1,p2,p3", "rates:g1,g2,g3", "sinusoid:omega",
/// or a rate expression "g1,g2,g3" whose entries are numbers or
/// [-]sin([w*]t).
RateModel parse_model_spec(std::string_view spec, double coupling = 1.0);
RateModel parse_rate_expression(std::string_view expr, double coupling = 1.0);
/// CSV with columns t,g1,g2,g3 (header optional).
RateModel load_tabulated(const std::string& path, double coupling = 1.0);

nlohmann::json to_json(const DivisibilityVerdict& v);
DivisibilityVerdict verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const HermitianMatrix& h);
HermitianMatrix hermitian_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WitnessReport& r);
WitnessReport witness_from_json(const nlohmann::json& j);

std::string diagram_csv(const DiagramGrid& grid);
std::vector<DiagramCell> parse_diagram_csv(std::string_view text);
std::string diagram_gnuplot(const DiagramGrid& grid);
nlohmann::json to_json(const DiagramGrid& grid);

struct Example1Row {
  double lambda = 0.0;
  double omega = 0.0;
  bool cp_for_all_t = false;
  std::optional<double> first_violation;
};

std::vector<Example1Row> example1_table(const std::vector<double>& lambdas,
                                        const std::vector<double>& omegas,
                                        std::span<const double> grid);
std::string example1_csv(const std::vector<Example1Row>& rows);
std::vector<Example1Row> parse_example1_csv(std::string_view text);

}  // namespace qdivide::cli
