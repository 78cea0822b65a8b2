// SPDX-License-Identifier: Apache-2.0
#include "cogbf/solution_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cogbf/errors.hpp"
#include "cogbf/version.hpp"

namespace cogbf {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& matrix) {
  json data = json::array();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < matrix.cols(); ++j)
      data.push_back(json::array({matrix(i, j).real(), matrix(i, j).imag()}));
  return json{{"rows", matrix.rows()}, {"cols", matrix.cols()}, {"data", data}};
}

Eigen::MatrixXcd matrix_from_json(const json& node) {
  const Eigen::Index rows = node.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = node.at("cols").get<Eigen::Index>();
  const json& data = node.at("data");
  Eigen::MatrixXcd matrix(rows, cols);
  Eigen::Index flat = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j, ++flat)
      matrix(i, j) = {data.at(flat).at(0).get<double>(),
                      data.at(flat).at(1).get<double>()};
  return matrix;
}

void check_matrix_node(const json& node, const std::string& name,
                       std::vector<std::string>& problems) {
  if (!node.is_object()) {
    problems.push_back(name + ": not an object");
    return;
  }
  bool missing = false;
  for (const char* key : {"rows", "cols", "data"}) {
    if (!node.contains(key)) {
      problems.push_back(name + ": missing '" + key + "'");
      missing = true;
    }
  }
  if (missing) return;
  if (!node["rows"].is_number_integer() || !node["cols"].is_number_integer()) {
    problems.push_back(name + ": rows/cols must be integers");
    return;
  }
  const auto rows = node["rows"].get<std::int64_t>();
  const auto cols = node["cols"].get<std::int64_t>();
  if (rows < 1 || cols < 1) {
    problems.push_back(name + ": dimensions must be >= 1");
    return;
  }
  const json& data = node["data"];
  if (!data.is_array() ||
      static_cast<std::int64_t>(data.size()) != rows * cols) {
    problems.push_back(name + ": data must hold rows*cols [re, im] pairs");
    return;
  }
  for (const json& entry : data) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      problems.push_back(name + ": each entry must be a [re, im] number pair");
      return;
    }
  }
}

std::vector<std::string> schema_problems(const json& record) {
  std::vector<std::string> problems;
  if (!record.is_object()) return {"record: not a JSON object"};

  if (record.value("format", "") != "cogbf-solution")
    problems.push_back("format: expected \"cogbf-solution\"");
  if (!record.contains("format_version") ||
      !record["format_version"].is_number_integer())
    problems.push_back("format_version: missing or not an integer");
  if (!record.contains("library_version") ||
      !record["library_version"].is_string())
    problems.push_back("library_version: missing or not a string");

  if (!record.contains("scenario") || !record["scenario"].is_object()) {
    problems.push_back("scenario: missing or not an object");
  } else {
    const json& scenario = record["scenario"];
    for (const char* key : {"st_antennas", "sr_antennas", "pt_antennas",
                            "pr_antennas", "streams", "seed"})
      if (!scenario.contains(key) || !scenario[key].is_number_integer())
        problems.push_back(std::string("scenario.") + key +
                           ": missing or not an integer");
    for (const char* key : {"primary_power", "interference_cap"})
      if (!scenario.contains(key) || !scenario[key].is_number())
        problems.push_back(std::string("scenario.") + key +
                           ": missing or not a number");
    if (!scenario.contains("snr_targets") || !scenario["snr_targets"].is_array())
      problems.push_back("scenario.snr_targets: missing or not an array");
  }

  const std::string mode = record.value("mode", "");
  if (mode != "ZFB" && mode != "NFB")
    problems.push_back("mode: expected \"ZFB\" or \"NFB\"");
  for (const char* key : {"multiplier", "power", "interference"})
    if (!record.contains(key) || !record[key].is_number())
      problems.push_back(std::string(key) + ": missing or not a number");
  for (const char* key : {"multiplier_defined", "stalled"})
    if (!record.contains(key) || !record[key].is_boolean())
      problems.push_back(std::string(key) + ": missing or not a boolean");
  if (!record.contains("per_stream_snr") || !record["per_stream_snr"].is_array())
    problems.push_back("per_stream_snr: missing or not an array");

  for (const char* key : {"transmit", "stiefel"}) {
    if (!record.contains(key)) {
      problems.push_back(std::string(key) + ": missing");
    } else {
      check_matrix_node(record[key], key, problems);
    }
  }
  return problems;
}

json parse_text(const std::string& text) {
  json record = json::parse(text, nullptr, false);
  if (record.is_discarded())
    throw IoError("solution record: not valid JSON");
  return record;
}

}  // namespace

std::string solution_to_json(const BeamformingSolution& solution,
                             const ScenarioConfig& scenario) {
  json record;
  record["format"] = "cogbf-solution";
  record["format_version"] = 1;
  record["library_version"] = kVersion;
  record["scenario"] = json{{"st_antennas", scenario.st_antennas},
                            {"sr_antennas", scenario.sr_antennas},
                            {"pt_antennas", scenario.pt_antennas},
                            {"pr_antennas", scenario.pr_antennas},
                            {"streams", scenario.streams},
                            {"primary_power", scenario.primary_power},
                            {"interference_cap", scenario.interference_cap},
                            {"snr_targets", scenario.snr_targets},
                            {"seed", scenario.seed}};
  record["mode"] = mode_name(solution.mode);
  record["multiplier"] = solution.multiplier;
  record["multiplier_defined"] = solution.multiplier_defined;
  record["stalled"] = solution.stalled;
  record["power"] = solution.power;
  record["interference"] = solution.interference;
  record["per_stream_snr"] = std::vector<double>(
      solution.stream_snr.data(),
      solution.stream_snr.data() + solution.stream_snr.size());
  record["transmit"] = matrix_to_json(solution.transmit);
  record["stiefel"] = matrix_to_json(solution.stiefel);
  return record.dump(2);
}

void dump_solution(const BeamformingSolution& solution,
                   const ScenarioConfig& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("dump_solution: cannot open " + path);
  out << solution_to_json(solution, scenario) << '\n';
  if (!out) throw IoError("dump_solution: write failed for " + path);
}

void validate_solution_json(const std::string& json_text) {
  const auto problems = schema_problems(parse_text(json_text));
  if (problems.empty()) return;
  std::string message = "solution record failed validation:";
  for (const auto& problem : problems) message += "\n  - " + problem;
  throw IoError(message);
}

SolutionRecord parse_solution(const std::string& json_text) {
  const json record = parse_text(json_text);
  const auto problems = schema_problems(record);
  if (!problems.empty()) {
    std::string message = "solution record failed validation:";
    for (const auto& problem : problems) message += "\n  - " + problem;
    throw IoError(message);
  }

  const json& scenario_node = record["scenario"];
  ScenarioConfig scenario(
      scenario_node["st_antennas"].get<int>(),
      scenario_node["sr_antennas"].get<int>(),
      scenario_node["pt_antennas"].get<int>(),
      scenario_node["pr_antennas"].get<int>(),
      scenario_node["streams"].get<int>(),
      scenario_node["primary_power"].get<double>(),
      scenario_node["interference_cap"].get<double>(),
      scenario_node["snr_targets"].get<std::vector<double>>(),
      scenario_node["seed"].get<std::uint64_t>());

  BeamformingSolution solution;
  solution.mode = record["mode"].get<std::string>() == "ZFB"
                      ? BeamformingMode::kZeroForcing
                      : BeamformingMode::kNonzeroForcing;
  solution.multiplier = record["multiplier"].get<double>();
  solution.multiplier_defined = record["multiplier_defined"].get<bool>();
  solution.stalled = record["stalled"].get<bool>();
  solution.power = record["power"].get<double>();
  solution.interference = record["interference"].get<double>();
  const auto snr = record["per_stream_snr"].get<std::vector<double>>();
  solution.stream_snr = Eigen::Map<const Eigen::VectorXd>(
      snr.data(), static_cast<Eigen::Index>(snr.size()));
  solution.transmit = matrix_from_json(record["transmit"]);
  solution.stiefel = matrix_from_json(record["stiefel"]);
  return SolutionRecord{std::move(scenario), std::move(solution)};
}

SolutionRecord load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_solution: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_solution(buffer.str());
}

namespace {

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& matrix) {
  char buffer[64];
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      std::snprintf(buffer, sizeof buffer, "%.17g %.17g", matrix(i, j).real(),
                    matrix(i, j).imag());
      out << buffer << (j + 1 == matrix.cols() ? "" : "  ");
    }
    out << '\n';
  }
}

Eigen::MatrixXcd read_matrix(std::istream& in, Eigen::Index rows,
                             Eigen::Index cols, const char* name) {
  Eigen::MatrixXcd matrix(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im))
        throw IoError(std::string("channel file: truncated while reading ") +
                      name);
      matrix(i, j) = {re, im};
    }
  return matrix;
}

}  // namespace

ChannelSet load_channels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_channels: cannot open " + path);
  int st = 0, sr = 0, pt = 0, pr = 0;
  if (!(in >> st >> sr >> pt >> pr))
    throw IoError("channel file: missing 'st sr pt pr' dimension header");
  constexpr int kMaxAntennas = 512;
  if (st < 1 || sr < 1 || pt < 1 || pr < 1 || st > kMaxAntennas ||
      sr > kMaxAntennas || pt > kMaxAntennas || pr > kMaxAntennas)
    throw IoError("channel file: implausible dimension header");

  ChannelSet channels;
  channels.st_to_sr = read_matrix(in, sr, st, "secondary link");
  channels.st_to_pr = read_matrix(in, pr, st, "leakage channel");
  channels.pt_to_sr = read_matrix(in, sr, pt, "primary path");
  return channels;
}

void save_channels(const ChannelSet& channels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_channels: cannot open " + path);
  out << channels.st_to_sr.cols() << ' ' << channels.st_to_sr.rows() << ' '
      << channels.pt_to_sr.cols() << ' ' << channels.st_to_pr.rows() << '\n';
  write_matrix(out, channels.st_to_sr);
  write_matrix(out, channels.st_to_pr);
  write_matrix(out, channels.pt_to_sr);
  if (!out) throw IoError("save_channels: write failed for " + path);
}

}  // namespace cogbf
