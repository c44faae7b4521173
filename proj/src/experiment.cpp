#include "graphfilt/experiment.hpp"

#include <fstream>

#include "graphfilt/gsig.hpp"
#include "graphfilt/kernels/kernels.hpp"
#include "graphfilt/metrics.hpp"
#include "graphfilt/pgm.hpp"
#include "graphfilt/phantom.hpp"
#include "graphfilt/version.hpp"

namespace graphfilt {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ValidationError("config: " + where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) bad(where, "unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& where, const char* key,
                  double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) bad(where, std::string("missing required key '") + key + "'");
    return fallback;
  }
  if (!obj[key].is_number()) bad(where, std::string("'") + key + "' must be a number");
  return obj[key].get<double>();
}

long get_integer(const json& obj, const std::string& where, const char* key,
                 long fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) bad(where, std::string("missing required key '") + key + "'");
    return fallback;
  }
  if (!obj[key].is_number_integer())
    bad(where, std::string("'") + key + "' must be an integer");
  return obj[key].get<long>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) bad(where, std::string("missing required key '") + key + "'");
  if (!obj[key].is_string()) bad(where, std::string("'") + key + "' must be a string");
  return obj[key].get<std::string>();
}

void parse_accel_block(const json& obj, ExperimentConfig& cfg) {
  require_keys(obj, "accel",
               {"kind", "iterations", "restart_k", "gamma_tol", "curvature_tol"});
  cfg.accel.kind = parse_accel_kind(get_string(obj, "accel", "kind"));
  const long iters = get_integer(obj, "accel", "iterations", 0, true);
  if (iters < 1) bad("accel", "iterations must be >= 1");
  cfg.total_calls = iters;
  if (cfg.accel.kind == AccelKind::pcg) {
    const long restart = get_integer(obj, "accel", "restart_k", 3);
    if (restart < 2) bad("accel", "restart_k must be >= 2");
    if (iters % restart != 0)
      bad("accel", "iterations (" + std::to_string(iters) +
                       ") must be a multiple of restart_k (" + std::to_string(restart) + ")");
    cfg.accel.k_max = static_cast<int>(restart);
    cfg.accel.l_max = static_cast<int>(iters / restart);
    cfg.accel.gamma_tol = get_number(obj, "accel", "gamma_tol", cfg.accel.gamma_tol);
    cfg.accel.curvature_tol =
        get_number(obj, "accel", "curvature_tol", cfg.accel.curvature_tol);
    if (cfg.accel.gamma_tol < 0 || cfg.accel.curvature_tol < 0)
      bad("accel", "tolerances must be >= 0");
  } else {
    for (const char* key : {"restart_k", "gamma_tol", "curvature_tol"})
      if (obj.contains(key))
        bad("accel", std::string("'") + key + "' applies only to kind 'pcg'");
    cfg.accel.k_max = static_cast<int>(iters);
    cfg.accel.l_max = 1;
  }
}

void parse_filter_block(const json& obj, ExperimentConfig& cfg) {
  cfg.filter_kind = parse_filter_kind(get_string(obj, "filter", "kind"));
  switch (cfg.filter_kind) {
    case FilterKind::bilateral: {
      require_keys(obj, "filter", {"kind", "window", "sigma_d", "sigma_r"});
      BilateralParams p;
      p.window_width = static_cast<int>(get_integer(obj, "filter", "window", p.window_width));
      p.sigma_d = get_number(obj, "filter", "sigma_d", p.sigma_d);
      p.sigma_r = get_number(obj, "filter", "sigma_r", p.sigma_r);
      validate(p);
      cfg.filter_params = p;
      break;
    }
    case FilterKind::guided: {
      require_keys(obj, "filter", {"kind", "window", "epsilon"});
      GuidedParams p;
      p.window_width = static_cast<int>(get_integer(obj, "filter", "window", p.window_width));
      p.epsilon = get_number(obj, "filter", "epsilon", p.epsilon);
      validate(p);
      cfg.filter_params = p;
      break;
    }
    case FilterKind::tv: {
      require_keys(obj, "filter", {"kind", "epsilon"});
      TvParams p;
      p.epsilon = get_number(obj, "filter", "epsilon", p.epsilon);
      validate(p);
      cfg.filter_params = p;
      break;
    }
  }
}

ordered_json config_echo(const ExperimentConfig& cfg) {
  ordered_json echo;
  ordered_json input;
  if (cfg.phantom_size > 0)
    input["phantom"] = cfg.phantom_size;
  else if (!cfg.input_image.empty())
    input["image"] = cfg.input_image;
  else
    input["graph"] = cfg.input_graph;
  echo["input"] = input;
  if (cfg.noise) {
    echo["noise"] = {{"mean", cfg.noise->mean},
                     {"variance", cfg.noise->variance},
                     {"seed", cfg.noise->seed},
                     {"clip", cfg.noise->clip}};
  }
  ordered_json filter;
  filter["kind"] = std::string(filter_kind_name(cfg.filter_kind));
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BilateralParams>) {
          filter["window"] = p.window_width;
          filter["sigma_d"] = p.sigma_d;
          filter["sigma_r"] = p.sigma_r;
        } else if constexpr (std::is_same_v<T, GuidedParams>) {
          filter["window"] = p.window_width;
          filter["epsilon"] = p.epsilon;
        } else {
          filter["epsilon"] = p.epsilon;
        }
      },
      cfg.filter_params);
  echo["filter"] = filter;
  ordered_json accel;
  accel["kind"] = std::string(accel_kind_name(cfg.accel.kind));
  accel["iterations"] = cfg.total_calls;
  if (cfg.accel.kind == AccelKind::pcg) {
    accel["restart_k"] = cfg.accel.k_max;
    accel["restarts"] = cfg.accel.l_max;
  }
  echo["accel"] = accel;
  switch (cfg.reference) {
    case ExperimentConfig::Reference::none: break;
    case ExperimentConfig::Reference::clean: echo["reference"] = "clean"; break;
    case ExperimentConfig::Reference::file: echo["reference"] = cfg.reference_path; break;
  }
  echo["kernels"] = kernels::active().name;
  return echo;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: document must be a JSON object");
  require_keys(doc, "top level",
               {"input", "noise", "filter", "accel", "reference", "output"});
  ExperimentConfig cfg;

  if (!doc.contains("input")) bad("top level", "missing required key 'input'");
  const json& input = doc["input"];
  if (!input.is_object()) bad("input", "must be an object");
  require_keys(input, "input", {"phantom", "image", "graph"});
  if (input.size() != 1)
    bad("input", "exactly one of 'phantom', 'image', 'graph' is required");
  if (input.contains("phantom")) {
    cfg.phantom_size = static_cast<int>(get_integer(input, "input", "phantom", 0, true));
    if (cfg.phantom_size < 1) bad("input", "phantom size must be >= 1");
  } else if (input.contains("image")) {
    cfg.input_image = get_string(input, "input", "image");
  } else {
    cfg.input_graph = get_string(input, "input", "graph");
  }

  if (doc.contains("noise")) {
    const json& noise = doc["noise"];
    if (!noise.is_object()) bad("noise", "must be an object");
    require_keys(noise, "noise", {"mean", "variance", "seed", "clip"});
    NoiseSpec spec;
    spec.mean = get_number(noise, "noise", "mean", spec.mean);
    spec.variance = get_number(noise, "noise", "variance", spec.variance, true);
    if (spec.variance < 0) bad("noise", "variance must be >= 0");
    const long seed = get_integer(noise, "noise", "seed", 0);
    spec.seed = static_cast<std::uint64_t>(seed);
    if (noise.contains("clip")) {
      if (!noise["clip"].is_boolean()) bad("noise", "'clip' must be a boolean");
      spec.clip = noise["clip"].get<bool>();
    }
    cfg.noise = spec;
  }

  if (!doc.contains("filter")) bad("top level", "missing required key 'filter'");
  if (!doc["filter"].is_object()) bad("filter", "must be an object");
  parse_filter_block(doc["filter"], cfg);

  if (!doc.contains("accel")) bad("top level", "missing required key 'accel'");
  if (!doc["accel"].is_object()) bad("accel", "must be an object");
  parse_accel_block(doc["accel"], cfg);

  if (doc.contains("reference")) {
    const json& ref = doc["reference"];
    if (ref.is_string() && ref.get<std::string>() == "clean") {
      cfg.reference = ExperimentConfig::Reference::clean;
    } else if (ref.is_object() && ref.contains("image") && ref.size() == 1) {
      cfg.reference = ExperimentConfig::Reference::file;
      cfg.reference_path = get_string(ref, "reference", "image");
    } else {
      bad("reference", "must be \"clean\" or {\"image\": <path>}");
    }
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) bad("output", "must be an object");
    require_keys(out, "output", {"image", "report"});
    if (out.contains("image")) cfg.output_image = get_string(out, "output", "image");
    if (out.contains("report")) cfg.output_report = get_string(out, "output", "report");
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open config file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ValidationError(path + ": invalid JSON: " + err.what());
  }
  return parse_experiment_config(doc);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  // input
  Signal clean;
  if (cfg.phantom_size > 0)
    clean = phantom(cfg.phantom_size);
  else if (!cfg.input_image.empty())
    clean = read_pgm_signal(cfg.input_image);
  else if (!cfg.input_graph.empty())
    clean = read_graph_signal(cfg.input_graph);
  else
    throw ValidationError("config: no input configured");

  const Signal noisy = cfg.noise ? add_noise(clean, *cfg.noise) : clean;

  // reference
  Signal reference;
  bool have_reference = false;
  switch (cfg.reference) {
    case ExperimentConfig::Reference::none:
      break;
    case ExperimentConfig::Reference::clean:
      reference = clean;
      have_reference = true;
      break;
    case ExperimentConfig::Reference::file:
      reference = !cfg.input_graph.empty() ? read_graph_signal(cfg.reference_path)
                                           : read_pgm_signal(cfg.reference_path);
      if (reference.size() != noisy.size())
        throw ValidationError("reference image size does not match the input");
      have_reference = true;
      break;
  }

  auto filter = make_filter(cfg.filter_kind, cfg.filter_params, noisy.topology_ptr());

  IterationHooks hooks;
  if (have_reference) hooks.psnr_reference = &reference;
  DenoiseReport report = run_driver(*filter, noisy, cfg.accel, hooks);

  if (!cfg.output_image.empty()) {
    if (noisy.grid())
      write_pgm_signal(cfg.output_image, report.output);
    else
      write_graph_signal(cfg.output_image, report.output);
  }

  ordered_json out;
  out["version"] = GRAPHFILT_VERSION;
  out["config"] = config_echo(cfg);
  out["basic_filter_calls"] = report.basic_filter_calls;
  if (have_reference) {
    ordered_json trace = ordered_json::array();
    for (const auto& [call, value] : report.psnr_trace)
      trace.push_back(ordered_json::array({call, value}));
    out["psnr_trace"] = trace;
    out["final_psnr"] = psnr(reference, report.output);
  }
  out["elapsed_ms"] = report.elapsed_ms;

  if (!cfg.output_report.empty()) {
    std::ofstream f(cfg.output_report);
    if (!f) throw IoError(cfg.output_report + ": cannot open report file for writing");
    f << out.dump(2) << "\n";
    if (!f) throw IoError(cfg.output_report + ": write failed");
  }
  return {std::move(report), std::move(out)};
}

}  // namespace graphfilt
