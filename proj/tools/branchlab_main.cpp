#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "branchlab/algebra.hpp"
#include "branchlab/errors.hpp"
#include "branchlab/format.hpp"
#include "branchlab/possibility.hpp"
#include "branchlab/runner.hpp"
#include "branchlab/scenario.hpp"

namespace {

using branchlab::Error;
using branchlab::ErrorCode;
using branchlab::Tolerances;

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error(ErrorCode::kIo, "IoError: cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error(ErrorCode::kIo, "IoError: cannot write '" + path + "'");
  }
  stream << content;
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// key = value lines, '#' comments. Known keys: eps_norm, eps_zero, eps_grade.
void apply_config_file(const std::string& path, Tolerances& tol) {
  std::istringstream stream(read_file(path));
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string entry = trim(line);
    if (entry.empty()) {
      continue;
    }
    const auto equals = entry.find('=');
    if (equals == std::string::npos) {
      throw Error(ErrorCode::kConfig, "ConfigError: " + path + ":" +
                                          std::to_string(line_number) +
                                          ": expected key = value");
    }
    const std::string key = trim(entry.substr(0, equals));
    const std::string value_text = trim(entry.substr(equals + 1));
    double value = 0.0;
    if (!branchlab::parse_double(value_text, value) || value < 0.0) {
      throw Error(ErrorCode::kConfig, "ConfigError: " + path + ":" +
                                          std::to_string(line_number) +
                                          ": bad value for '" + key + "'");
    }
    if (key == "eps_norm") {
      tol.norm = value;
    } else if (key == "eps_zero") {
      tol.zero = value;
    } else if (key == "eps_grade") {
      tol.grade = value;
    } else {
      throw Error(ErrorCode::kConfig, "ConfigError: " + path + ":" +
                                          std::to_string(line_number) +
                                          ": unknown key '" + key + "'");
    }
  }
}

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case ErrorCode::kParse:
    case ErrorCode::kResolve:
    case ErrorCode::kDepthExceeded:
    case ErrorCode::kIo:
    case ErrorCode::kConfig:
    case ErrorCode::kUnknownState:
    case ErrorCode::kUnknownMeasurement:
      return 1;
    default:
      return 2;
  }
}

struct CommonOptions {
  std::string config_path;
  double eps_norm = -1.0;
  double eps_zero = -1.0;
  double eps_grade = -1.0;
  bool table = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path, "key = value config file with eps knobs");
    cmd.add_option("--eps-norm", eps_norm, "normalization tolerance");
    cmd.add_option("--eps-zero", eps_zero, "zero-probability cutoff");
    cmd.add_option("--eps-grade", eps_grade, "same-grade tolerance");
    auto* table_flag = cmd.add_flag("--table", table, "human-readable table output");
    cmd.add_flag("--json", "JSON output (default)")->excludes(table_flag);
  }

  [[nodiscard]] Tolerances tolerances() const {
    Tolerances tol;
    if (!config_path.empty()) {
      apply_config_file(config_path, tol);
    } else if (std::filesystem::exists(".branchlab.toml")) {
      apply_config_file(".branchlab.toml", tol);
    }
    if (eps_norm >= 0.0) {
      tol.norm = eps_norm;
    }
    if (eps_zero >= 0.0) {
      tol.zero = eps_zero;
    }
    if (eps_grade >= 0.0) {
      tol.grade = eps_grade;
    }
    return tol;
  }
};

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& warning : warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
}

std::string scenario_name_for(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int cmd_run(const std::string& path, const CommonOptions& common,
            std::optional<std::uint64_t> seed_override, const std::string& export_graph) {
  const Tolerances tol = common.tolerances();
  const auto parsed = branchlab::parse_scenario(read_file(path), tol);
  print_warnings(parsed.warnings);

  branchlab::RunOptions options;
  options.scenario_name = scenario_name_for(path);
  options.seed_override = seed_override;
  options.tol = tol;
  const auto report = branchlab::run_scenario(parsed, options);

  if (!export_graph.empty()) {
    write_file(export_graph, branchlab::to_edge_list_json(report.graph));
  }
  if (common.table) {
    std::cout << branchlab::report_to_table(report);
  } else {
    std::cout << branchlab::report_to_json(report).dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& path, const std::string& state_name,
               const CommonOptions& common) {
  const Tolerances tol = common.tolerances();
  const auto parsed = branchlab::parse_scenario(read_file(path), tol);
  print_warnings(parsed.warnings);
  const branchlab::WaveFunction* state = parsed.scenario.find_state(state_name);
  if (state == nullptr) {
    throw Error(ErrorCode::kUnknownState, "UnknownState: '" + state_name + "'");
  }
  const auto report =
      branchlab::verify(branchlab::ProbabilitySet::from_wavefunction(*state, tol), tol);
  if (common.table) {
    std::cout << "verify " << state_name << ":\n";
    for (const auto* claim : report.claims()) {
      std::cout << "  " << claim->claim << ": " << branchlab::verdict_name(claim->verdict);
      if (claim->counterexample.has_value()) {
        std::cout << "(" << branchlab::format_double(*claim->counterexample) << ")";
      }
      if (!claim->detail.empty()) {
        std::cout << " -- " << claim->detail;
      }
      std::cout << "\n";
    }
  } else {
    std::cout << branchlab::algebra_report_to_json(report).dump(2) << "\n";
  }
  return 0;
}

int cmd_grade(const std::string& path, const std::string& measurement_id,
              const CommonOptions& common) {
  const Tolerances tol = common.tolerances();
  const auto parsed = branchlab::parse_scenario(read_file(path), tol);
  print_warnings(parsed.warnings);
  if (parsed.scenario.find_step(measurement_id) == nullptr) {
    throw Error(ErrorCode::kUnknownMeasurement,
                "UnknownMeasurement: '" + measurement_id + "'");
  }

  branchlab::RunOptions options;
  options.scenario_name = scenario_name_for(path);
  options.tol = tol;
  const auto report = branchlab::run_scenario(parsed, options);
  for (const auto& record : report.records) {
    if (record.measurement_id != measurement_id) {
      continue;
    }
    const auto ordering = branchlab::grade_ordering(branchlab::make_context(record, tol));
    if (common.table) {
      std::cout << "grade " << measurement_id << ": realized " << ordering.realized_label
                << "\n";
      int rank = 1;
      for (const auto& grade_class : ordering.classes) {
        std::cout << "  " << rank++ << ". p="
                  << branchlab::format_double(grade_class.probability) << " [";
        for (std::size_t i = 0; i < grade_class.labels.size(); ++i) {
          std::cout << (i == 0 ? "" : ", ") << grade_class.labels[i];
        }
        std::cout << "]\n";
      }
    } else {
      std::cout << branchlab::grade_ordering_to_json(ordering).dump(2) << "\n";
    }
    return 0;
  }
  throw Error(ErrorCode::kUnknownMeasurement,
              "UnknownMeasurement: '" + measurement_id + "' produced no record");
}

int cmd_graph(const std::string& path, const std::string& format, const std::string& out_path,
              const CommonOptions& common) {
  const Tolerances tol = common.tolerances();
  const auto parsed = branchlab::parse_scenario(read_file(path), tol);
  print_warnings(parsed.warnings);

  branchlab::RunOptions options;
  options.scenario_name = scenario_name_for(path);
  options.tol = tol;
  const auto report = branchlab::run_scenario(parsed, options);
  const std::string rendered = format == "dot" ? branchlab::to_dot(report.graph)
                                               : branchlab::to_edge_list_json(report.graph);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    write_file(out_path, rendered);
  }
  return 0;
}

int cmd_fmt(const std::string& path) {
  const auto parsed = branchlab::parse_scenario(read_file(path));
  print_warnings(parsed.warnings);
  std::cout << branchlab::round_trip(parsed.scenario);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"branchlab: collapse simulation, possibility grading and modal checks over scenario files"};
  app.require_subcommand(1);

  std::string path;
  std::string state_name;
  std::string measurement_id;
  std::string export_graph;
  std::string graph_format = "json";
  std::string graph_out;
  std::optional<std::uint64_t> seed_override;

  CommonOptions run_common;
  auto* run_cmd = app.add_subcommand("run", "execute a scenario and print the report");
  run_cmd->add_option("file", path, "scenario file (.qpd)")->required();
  run_common.attach(*run_cmd);
  run_cmd->add_option("--seed-override", seed_override,
                      "replace step seeds with N, N+1, ... in script order");
  run_cmd->add_option("--export-graph", export_graph,
                      "also write the branch graph as edge-list JSON to this path");

  CommonOptions verify_common;
  auto* verify_cmd = app.add_subcommand("verify", "lattice/algebra claims for one state");
  verify_cmd->add_option("file", path, "scenario file (.qpd)")->required();
  verify_cmd->add_option("state", state_name, "state name")->required();
  verify_common.attach(*verify_cmd);

  CommonOptions grade_common;
  auto* grade_cmd = app.add_subcommand("grade", "grade ordering for one measurement");
  grade_cmd->add_option("file", path, "scenario file (.qpd)")->required();
  grade_cmd->add_option("measurement", measurement_id, "measurement id")->required();
  grade_common.attach(*grade_cmd);

  CommonOptions graph_common;
  auto* graph_cmd = app.add_subcommand("graph", "export the branch graph");
  graph_cmd->add_option("file", path, "scenario file (.qpd)")->required();
  graph_cmd->add_option("--format", graph_format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  graph_cmd->add_option("-o,--output", graph_out, "write to file instead of stdout");
  graph_common.attach(*graph_cmd);

  auto* fmt_cmd = app.add_subcommand("fmt", "canonical reprint of a scenario file");
  fmt_cmd->add_option("file", path, "scenario file (.qpd)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return cmd_run(path, run_common, seed_override, export_graph);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(path, state_name, verify_common);
    }
    if (grade_cmd->parsed()) {
      return cmd_grade(path, measurement_id, grade_common);
    }
    if (graph_cmd->parsed()) {
      return cmd_graph(path, graph_format, graph_out, graph_common);
    }
    if (fmt_cmd->parsed()) {
      return cmd_fmt(path);
    }
  } catch (const Error& error) {
    std::cerr << error.what() << "\n";
    return exit_code_for(error);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
