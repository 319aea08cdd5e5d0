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

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "qdivide/error.hpp"
#include "qdivide/mixtures.hpp"
#include "qdivide/pauli_channel.hpp"

#ifndef QDIVIDE_VERSION
#define QDIVIDE_VERSION "unknown"
#endif

namespace qdivide::cli {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from(const json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

// "sin(t)", "-sin(2*t)", "sin(0.5t)" -> omega; nullopt if not of that form.
std::optional<double> parse_sine(std::string_view s) {
  double sign = 1.0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    if (s.front() == '-') sign = -1.0;
    s = trim(s.substr(1));
  }
  if (!s.starts_with("sin(") || !s.ends_with(")")) return std::nullopt;
  std::string_view arg = trim(s.substr(4, s.size() - 5));
  if (!arg.ends_with("t")) return std::nullopt;
  arg = trim(arg.substr(0, arg.size() - 1));
  if (arg.ends_with("*")) arg = trim(arg.substr(0, arg.size() - 1));
  const double omega = arg.empty() ? 1.0 : parse_double(arg);
  return sign * omega;
}

struct ModelFlags {
  std::string mixture;
  std::string rates;
  std::string tabulated;
  std::optional<double> sinusoid;
  double coupling = 1.0;

  void add(CLI::App* app) {
    app->add_option("--mixture", mixture, "mixture weights p1,p2,p3");
    app->add_option("--rates", rates, "rates g1,g2,g3 (numbers or [-]sin(w*t))");
    app->add_option("--sinusoid", sinusoid, "sinusoidal model (1, 1, sin(omega t)) with this omega");
    app->add_option("--tabulated", tabulated, "CSV file with columns t,g1,g2,g3");
    app->add_option("--coupling", coupling, "overall coupling lambda > 0")
        ->check(CLI::PositiveNumber);
  }

  bool given() const { return !mixture.empty() || !rates.empty() || !tabulated.empty() || sinusoid; }

  RateModel build() const {
    const int n = !mixture.empty() + !rates.empty() + !tabulated.empty() + sinusoid.has_value();
    if (n != 1) {
      throw InvalidInput("give exactly one of --mixture, --rates, --sinusoid, --tabulated");
    }
    if (!mixture.empty()) {
      if (coupling != 1.0) throw InvalidInput("mixture models have coupling fixed to 1");
      return parse_model_spec("mixture:" + mixture);
    }
    if (!rates.empty()) return parse_rate_expression(rates, coupling);
    if (sinusoid) return RateModel::sinusoid(*sinusoid, coupling);
    return load_tabulated(tabulated, coupling);
  }

  json echo() const {
    json j;
    if (!mixture.empty()) j["mixture"] = mixture;
    if (!rates.empty()) j["rates"] = rates;
    if (sinusoid) j["sinusoid"] = *sinusoid;
    if (!tabulated.empty()) j["tabulated"] = tabulated;
    j["coupling"] = coupling;
    return j;
  }
};

struct GridFlags {
  double t_min;
  double t_max;
  int points;
  std::string spacing;

  void add(CLI::App* app) {
    app->add_option("--t-min", t_min, "first grid time")->capture_default_str();
    app->add_option("--t-max", t_max, "last grid time")->capture_default_str();
    app->add_option("--points", points, "number of grid points")
        ->check(CLI::Range(3, 10000000))
        ->capture_default_str();
    app->add_option("--spacing", spacing, "grid spacing")
        ->check(CLI::IsMember({"log", "uniform"}))
        ->capture_default_str();
  }

  std::vector<double> build() const {
    return spacing == "log" ? log_spaced_grid(t_min, t_max, points)
                            : uniform_grid(t_min, t_max, points);
  }

  json echo() const {
    return {{"t_min", t_min}, {"t_max", t_max}, {"points", points}, {"spacing", spacing}};
  }
};

struct Output {
  std::string path;
  std::string format;
};

json header(std::string_view command, json config) {
  return {{"command", command}, {"version", version()}, {"config", std::move(config)}};
}

bool divisible(DivisibilityLabel l) {
  return l == DivisibilityLabel::kCpDivisible || l == DivisibilityLabel::kPDivisibleOnly;
}

std::string classify(const ModelFlags& mf, const std::string& tensor_with, const GridFlags& gf,
                     double tol) {
  const RateModel model = mf.build();
  const auto grid = gf.build();
  json config = {{"model", mf.echo()}, {"grid", gf.echo()}, {"tol", tol}};
  if (!tensor_with.empty()) config["tensor_with"] = tensor_with;
  json report = header("classify", config);
  report["model"] = model.describe();
  const DivisibilityVerdict cp = cp_divisible(model, grid, tol);
  const DivisibilityVerdict p = p_divisible(model, grid, tol);
  report["cp_divisible"] = to_json(cp);
  report["p_divisible"] = to_json(p);
  json summary = {{"cp", cp.label == DivisibilityLabel::kCpDivisible},
                  {"p", divisible(p.label)}};
  if (!tensor_with.empty()) {
    const RateModel other =
        tensor_with == "self" ? model : parse_model_spec(tensor_with, mf.coupling);
    const DivisibilityVerdict tp = tensor_p_divisible(model, other, grid, tol);
    report["tensor_model"] = other.describe();
    report["tensor_p_divisible"] = to_json(tp);
    summary["tensor_p"] = divisible(tp.label);
  }
  report["summary"] = summary;
  return report.dump(2) + "\n";
}

std::string diagram_cmd(const std::string& mode_text, int resolution, const std::string& p_text,
                        const std::string& t_text, const Output& o) {
  DiagramParams params;
  const DiagramMode mode = parse_diagram_mode(mode_text);
  if (mode == DiagramMode::kQPlane) {
    if (p_text.empty()) throw InvalidInput("--mode fig3 needs --p");
    const auto v = parse_list(p_text);
    if (v.size() != 3) throw InvalidInput("--p needs three weights");
    params.p = MixtureWeights(v[0], v[1], v[2]);
    params.t = parse_double(t_text);
  }
  const DiagramGrid grid = diagram(mode, resolution, params);
  if (o.format == "csv") return diagram_csv(grid);
  if (o.format == "gnuplot-dat") return diagram_gnuplot(grid);
  json config = {{"mode", mode_text}, {"resolution", resolution}};
  if (params.p) {
    config["p"] = p_text;
    config["t"] = number(params.t);
  }
  json report = header("diagram", config);
  report["grid"] = to_json(grid);
  return report.dump(2) + "\n";
}

std::string witness_cmd(const ModelFlags& mf, const std::vector<std::string>& pair,
                        const std::string& tensor_with, int budget, std::uint64_t seed,
                        const GridFlags& gf) {
  std::optional<RateModel> m1, m2;
  if (!pair.empty()) {
    if (mf.given()) throw InvalidInput("--rates-pair cannot be combined with other model flags");
    m1 = parse_rate_expression(pair[0], mf.coupling);
    m2 = parse_rate_expression(pair[1], mf.coupling);
  } else {
    m1 = mf.build();
    m2 = tensor_with.empty() || tensor_with == "self" ? *m1
                                                      : parse_model_spec(tensor_with, mf.coupling);
  }
  const auto grid = gf.build();
  json config = {{"model", mf.echo()}, {"budget", budget}, {"seed", seed}, {"grid", gf.echo()}};
  if (!pair.empty()) config["rates_pair"] = pair;
  if (!tensor_with.empty()) config["tensor_with"] = tensor_with;
  json report = header("witness", config);
  report["model1"] = m1->describe();
  report["model2"] = m2->describe();
  const WitnessReport w = witness_search(*m1, *m2, budget, seed, grid);
  report["report"] = to_json(w);
  if (w.found) {
    report["verification"] = {{"refined_slope", refined_witness_slope(*m1, *m2, w, grid)},
                              {"verified", verify_witness(*m1, *m2, w, grid)}};
  }
  return report.dump(2) + "\n";
}

std::string sbfi_cmd(const ModelFlags& mf, int budget, std::uint64_t seed, int specs) {
  const RateModel model = mf.build();
  json report =
      header("sbfi", {{"model", mf.echo()}, {"budget", budget}, {"seed", seed}, {"single_specs", specs}});
  const SbfiReport r = sbfi_report(model, budget, seed, specs);
  report["model"] = model.describe();
  report["single"] = {{"specs", r.single_specs},
                      {"max_slope", number(r.single_max_slope)},
                      {"no_bfi", r.single_no_bfi}};
  report["classification"] = to_json(r.classification);
  report["witness"] = to_json(r.witness);
  report["witness_verified"] = r.witness_verified;
  report["sbfi"] = r.sbfi;
  return report.dump(2) + "\n";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file " + path);
  f << text;
  if (!f) throw Error("failed writing " + path);
}

}  // namespace

std::string version() { return QDIVIDE_VERSION; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidInput("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

RateModel parse_rate_expression(std::string_view expr, double coupling) {
  const auto parts = split(expr, ',');
  if (parts.size() != 3) throw InvalidInput("rate expression needs three entries: " + std::string(expr));
  std::optional<double> omega;
  std::array<double, 3> g{};
  for (int k = 0; k < 3; ++k) {
    if (auto w = parse_sine(parts[k])) {
      if (k != 2) throw InvalidInput("only the third rate may be sinusoidal");
      omega = w;
    } else {
      g[k] = parse_double(parts[k]);
    }
  }
  if (omega) {
    if (g[0] != 1.0 || g[1] != 1.0) {
      throw InvalidInput("sinusoidal rates need gamma_1 = gamma_2 = 1; use --tabulated otherwise");
    }
    return RateModel::sinusoid(*omega, coupling);
  }
  return RateModel::constants(g[0], g[1], g[2], coupling);
}

RateModel parse_model_spec(std::string_view spec, double coupling) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) return parse_rate_expression(spec, coupling);
  const std::string_view kind = trim(spec.substr(0, colon));
  const std::string_view body = spec.substr(colon + 1);
  if (kind == "mixture") {
    const auto v = parse_list(body);
    if (v.size() != 3) throw InvalidInput("mixture needs three weights");
    return RateModel::mixture(MixtureWeights(v[0], v[1], v[2]));
  }
  if (kind == "rates") return parse_rate_expression(body, coupling);
  if (kind == "sinusoid") return RateModel::sinusoid(parse_double(body), coupling);
  throw InvalidInput("unknown model kind '" + std::string(kind) + "'");
}

RateModel load_tabulated(const std::string& path, double coupling) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot read " + path);
  std::vector<double> times;
  std::vector<RateTriple> rates;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (first && std::isalpha(static_cast<unsigned char>(t.front()))) {
      first = false;
      continue;
    }
    first = false;
    const auto v = parse_list(t);
    if (v.size() != 4) throw InvalidInput("tabulated rows need t,g1,g2,g3: " + line);
    times.push_back(v[0]);
    rates.push_back({v[1], v[2], v[3]});
  }
  return RateModel::tabulated(std::move(times), std::move(rates), coupling);
}

json to_json(const DivisibilityVerdict& v) {
  json j = {{"label", to_string(v.label)},
            {"margin", number(v.margin)},
            {"witness_detail", v.witness_detail}};
  j["witness_time"] = v.witness_time ? number(*v.witness_time) : json(nullptr);
  return j;
}

DivisibilityVerdict verdict_from_json(const json& j) {
  DivisibilityVerdict v;
  v.label = parse_divisibility_label(j.at("label").get<std::string>());
  v.margin = number_from(j.at("margin"));
  v.witness_detail = j.at("witness_detail").get<std::string>();
  if (!j.at("witness_time").is_null()) v.witness_time = number_from(j.at("witness_time"));
  return v;
}

json to_json(const HermitianMatrix& h) {
  json rows = json::array();
  for (int i = 0; i < h.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < h.dim(); ++k) row.push_back({h(i, k).real(), h(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

HermitianMatrix hermitian_from_json(const json& j) {
  const int n = static_cast<int>(j.size());
  if (n != 2 && n != 4) throw InvalidInput("matrix must be 2x2 or 4x4");
  SmallMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(j[i].size()) != n) throw InvalidInput("matrix must be square");
    for (int k = 0; k < n; ++k) m(i, k) = Complex(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  }
  return HermitianMatrix(m);
}

json to_json(const WitnessReport& r) {
  json j = {{"found", r.found},
            {"time_interval", {r.t_a, r.t_b}},
            {"max_derivative", number(r.max_derivative)},
            {"seed", r.seed},
            {"evaluations", r.evaluations}};
  if (r.spec) {
    j["spec"] = {{"rho", to_json(r.spec->rho())},
                 {"sigma", to_json(r.spec->sigma())},
                 {"mu", r.spec->mu()}};
  } else {
    j["spec"] = nullptr;
  }
  return j;
}

WitnessReport witness_from_json(const json& j) {
  WitnessReport r;
  r.found = j.at("found").get<bool>();
  r.t_a = j.at("time_interval").at(0).get<double>();
  r.t_b = j.at("time_interval").at(1).get<double>();
  r.max_derivative = number_from(j.at("max_derivative"));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.evaluations = j.at("evaluations").get<long>();
  if (!j.at("spec").is_null()) {
    const json& s = j.at("spec");
    r.spec = HelstromSpec(hermitian_from_json(s.at("rho")), hermitian_from_json(s.at("sigma")),
                          s.at("mu").get<double>());
  }
  return r;
}

std::string diagram_csv(const DiagramGrid& grid) {
  std::string out = "coord1,coord2,label,margin\n";
  for (const DiagramCell& c : grid.cells) {
    out += format_double(c.x) + "," + format_double(c.y) + "," + std::string(to_string(c.label)) +
           "," + format_double(c.margin) + "\n";
  }
  return out;
}

std::vector<DiagramCell> parse_diagram_csv(std::string_view text) {
  std::vector<DiagramCell> cells;
  bool header = true;
  for (auto line : split(text, '\n')) {
    if (line.empty()) continue;
    if (header) {
      if (line != "coord1,coord2,label,margin") throw InvalidInput("unexpected diagram CSV header");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 4) throw InvalidInput("diagram CSV rows need 4 fields");
    cells.push_back({parse_double(f[0]), parse_double(f[1]), parse_region_label(f[2]),
                     parse_double(f[3])});
  }
  if (header) throw InvalidInput("diagram CSV is empty");
  return cells;
}

std::string diagram_gnuplot(const DiagramGrid& grid) {
  std::string out = "# qdivide " + version() + " diagram " + std::string(to_string(grid.mode)) +
                    " resolution " + std::to_string(grid.resolution) + "\n";
  for (auto label : {RegionLabel::kCp, RegionLabel::kPOnly, RegionLabel::kN2,
                     RegionLabel::kP2Tensor, RegionLabel::kBoundary}) {
    std::string block;
    for (const DiagramCell& c : grid.cells) {
      if (c.label != label) continue;
      block += format_double(c.x) + " " + format_double(c.y) + " " + format_double(c.margin) + "\n";
    }
    if (block.empty()) continue;
    out += "\n\n# " + std::string(to_string(label)) + "\n" + block;
  }
  return out;
}

json to_json(const DiagramGrid& grid) {
  json cells = json::array();
  for (const DiagramCell& c : grid.cells) {
    cells.push_back({c.x, c.y, to_string(c.label), number(c.margin)});
  }
  json j = {{"mode", to_string(grid.mode)}, {"resolution", grid.resolution}, {"cells", cells}};
  for (auto label : {RegionLabel::kCp, RegionLabel::kPOnly, RegionLabel::kN2,
                     RegionLabel::kP2Tensor, RegionLabel::kBoundary}) {
    j["fractions"][std::string(to_string(label))] = label_fraction(grid, label);
  }
  return j;
}

std::vector<Example1Row> example1_table(const std::vector<double>& lambdas,
                                        const std::vector<double>& omegas,
                                        std::span<const double> grid) {
  std::vector<Example1Row> rows;
  for (double l : lambdas) {
    for (double w : omegas) {
      const CpScan s = scan_complete_positivity(RateModel::sinusoid(w, l), grid);
      Example1Row r{l, w, s.completely_positive_everywhere, std::nullopt};
      if (!s.completely_positive_everywhere) r.first_violation = s.first_violation_time;
      rows.push_back(r);
    }
  }
  return rows;
}

std::string example1_csv(const std::vector<Example1Row>& rows) {
  std::string out = "lambda,omega,is_cp_for_all_t,first_violation_t\n";
  for (const Example1Row& r : rows) {
    out += format_double(r.lambda) + "," + format_double(r.omega) + "," +
           (r.cp_for_all_t ? "true" : "false") + "," +
           (r.first_violation ? format_double(*r.first_violation) : "") + "\n";
  }
  return out;
}

std::vector<Example1Row> parse_example1_csv(std::string_view text) {
  std::vector<Example1Row> rows;
  bool header = true;
  for (auto line : split(text, '\n')) {
    if (line.empty()) continue;
    if (header) {
      if (line != "lambda,omega,is_cp_for_all_t,first_violation_t") {
        throw InvalidInput("unexpected example1 CSV header");
      }
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 4 || (f[2] != "true" && f[2] != "false")) {
      throw InvalidInput("malformed example1 CSV row");
    }
    Example1Row r{parse_double(f[0]), parse_double(f[1]), f[2] == "true", std::nullopt};
    if (!f[3].empty()) r.first_violation = parse_double(f[3]);
    rows.push_back(r);
  }
  return rows;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisibility, diagrams and backflow witnesses for qubit Pauli dynamics", "qdivide"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  Output o;
  double tol = kDivisibilityTol;

  auto* classify_app = app.add_subcommand("classify", "CP / P / tensor-P divisibility report (JSON)");
  ModelFlags classify_model;
  classify_model.add(classify_app);
  std::string tensor_with;
  classify_app->add_option("--tensor-with", tensor_with,
                           "second factor: self, mixture:p1,p2,p3, rates:g1,g2,g3 or sinusoid:w");
  GridFlags classify_grid{1e-3, 20.0, 400, "log"};
  classify_grid.add(classify_app);
  classify_app->add_option("--tol", tol, "tolerance band")->capture_default_str();
  classify_app->add_option("-o,--output", o.path, "output file (default stdout)");

  auto* diagram_app = app.add_subcommand("diagram", "labeled divisibility diagram");
  std::string mode = "fig1";
  int resolution = 256;
  std::string p_text, t_text = "inf";
  diagram_app->add_option("--mode", mode, "fig1, fig2 or fig3")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3"}))
      ->capture_default_str();
  diagram_app->add_option("--resolution", resolution, "cells per axis (rows = resolution^2)")
      ->check(CLI::Range(2, 8192))
      ->capture_default_str();
  diagram_app->add_option("--p", p_text, "fixed weights p1,p2,p3 for fig3");
  diagram_app->add_option("--t", t_text, "evaluation time for fig3 (number or inf)")
      ->capture_default_str();
  std::string diagram_format = "csv";
  diagram_app->add_option("--format", diagram_format, "csv, json or gnuplot-dat")
      ->check(CLI::IsMember({"csv", "json", "gnuplot-dat"}))
      ->capture_default_str();
  diagram_app->add_option("-o,--output", o.path, "output file (default stdout)");

  auto* witness_app = app.add_subcommand("witness", "randomized search for a tensor revival");
  ModelFlags witness_model;
  witness_model.add(witness_app);
  std::vector<std::string> pair;
  witness_app->add_option("--rates-pair", pair, "two rate expressions, one per factor")
      ->expected(2);
  std::string witness_tensor;
  witness_app->add_option("--tensor-with", witness_tensor, "second factor (default self)");
  int budget = 2000;
  std::uint64_t seed = 0;
  witness_app->add_option("--budget", budget, "trajectory evaluations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  witness_app->add_option("--seed", seed, "random seed")->required();
  GridFlags witness_grid{0.0, 10.0, 2000, "uniform"};
  witness_grid.add(witness_app);
  witness_app->add_option("-o,--output", o.path, "output file (default stdout)");

  auto* sbfi_app = app.add_subcommand("sbfi", "superactivation report for one model");
  ModelFlags sbfi_model;
  sbfi_model.add(sbfi_app);
  int specs = 100;
  sbfi_app->add_option("--budget", budget, "witness trajectory evaluations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sbfi_app->add_option("--seed", seed, "random seed")->required();
  sbfi_app->add_option("--single-specs", specs, "random qubit specs checked for revivals")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sbfi_app->add_option("-o,--output", o.path, "output file (default stdout)");

  auto* ex1_app = app.add_subcommand("example1", "CP table of the sinusoidal model (CSV)");
  std::string lambdas = "0.25,0.5,1,2", omegas = "-2,-1,1,2";
  ex1_app->add_option("--lambdas", lambdas, "couplings")->capture_default_str();
  ex1_app->add_option("--omegas", omegas, "frequencies")->capture_default_str();
  GridFlags ex1_grid{1e-3, 50.0, 2000, "log"};
  ex1_grid.add(ex1_app);
  ex1_app->add_option("-o,--output", o.path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qdivide: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    std::string text;
    if (*classify_app) {
      text = classify(classify_model, tensor_with, classify_grid, tol);
    } else if (*diagram_app) {
      o.format = diagram_format;
      text = diagram_cmd(mode, resolution, p_text, t_text, o);
    } else if (*witness_app) {
      text = witness_cmd(witness_model, pair, witness_tensor, budget, seed, witness_grid);
    } else if (*sbfi_app) {
      text = sbfi_cmd(sbfi_model, budget, seed, specs);
    } else {
      text = example1_csv(example1_table(parse_list(lambdas), parse_list(omegas), ex1_grid.build()));
    }
    emit(text, o.path, out);
    return kOk;
  } catch (const NonInvertible& e) {
    err << "qdivide: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "qdivide: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "qdivide: internal error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace qdivide::cli
