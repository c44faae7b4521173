#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "graphfilt/accel.hpp"
#include "graphfilt/filters.hpp"
#include "graphfilt/noise.hpp"

namespace graphfilt {

/// A complete benchmark run: input acquisition, optional noising, one
/// filter + driver combination, optional PSNR reference, output artifacts.
struct ExperimentConfig {
  // exactly one input source
  int phantom_size = 0;       // > 0: builtin phantom
  std::string input_image;    // PGM path
  std::string input_graph;    // GSIG path

  std::optional<NoiseSpec> noise;

  FilterKind filter_kind = FilterKind::bilateral;
  FilterParams filter_params = BilateralParams{};

  AccelConfig accel;
  long total_calls = 0;  // requested basic-filter call budget (echoed)

  enum class Reference { none, clean, file };
  Reference reference = Reference::none;  // clean = the input before noising
  std::string reference_path;

  std::string output_image;   // written as PGM (grids) or GSIG (graphs)
  std::string output_report;  // JSON report path
};

/// Parses and validates a JSON config document; errors name the field.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

struct ExperimentResult {
  DenoiseReport report;
  nlohmann::ordered_json report_json;
};

/// Runs the experiment and writes the configured artifacts. The report JSON
/// carries the config echo, basic_filter_calls, the PSNR trace and final
/// PSNR when a reference was configured, elapsed milliseconds, and the tool
/// version; identical configs (including seed) reproduce it byte-for-byte
/// except for the elapsed_ms field.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace graphfilt
