#include "graphfilt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "graphfilt/experiment.hpp"
#include "graphfilt/gsig.hpp"
#include "graphfilt/metrics.hpp"
#include "graphfilt/pgm.hpp"
#include "graphfilt/phantom.hpp"
#include "graphfilt/version.hpp"

namespace graphfilt {

namespace {

Signal read_signal_auto(const std::string& path, bool graph_mode) {
  return graph_mode ? read_graph_signal(path) : read_pgm_signal(path);
}

void print_summary(const ExperimentResult& result) {
  std::printf("basic_filter_calls=%ld", result.report.basic_filter_calls);
  if (result.report_json.contains("final_psnr")) {
    const auto& fp = result.report_json["final_psnr"];
    if (fp.is_number())
      std::printf(" final_psnr=%.4f", fp.get<double>());
    else
      std::printf(" final_psnr=inf");
  }
  std::printf(" elapsed_ms=%.1f\n", result.report.elapsed_ms);
}

struct DenoiseArgs {
  std::string in, out, filter, accel, clean, report;
  long iters = 0;
  long restart_k = 3;
  int window = 0;
  double sigma_d = 0.0, sigma_r = 0.0, eps = 0.0;
  bool graph = false;
};

// Flags the user actually passed, so contradictory ones can be rejected
// instead of silently ignored.
ExperimentConfig build_denoise_config(const DenoiseArgs& args, const CLI::App& cmd) {
  ExperimentConfig cfg;
  if (args.graph)
    cfg.input_graph = args.in;
  else
    cfg.input_image = args.in;

  const bool has_window = cmd.count("--window") > 0;
  const bool has_sd = cmd.count("--sigma-d") > 0;
  const bool has_sr = cmd.count("--sigma-r") > 0;
  const bool has_eps = cmd.count("--eps") > 0;
  const bool has_restart = cmd.count("--restart-k") > 0;

  cfg.filter_kind = parse_filter_kind(args.filter);
  switch (cfg.filter_kind) {
    case FilterKind::bilateral: {
      if (has_eps)
        throw ValidationError("--eps applies only to --filter guided or tv");
      BilateralParams p;
      if (has_window) p.window_width = args.window;
      if (has_sd) p.sigma_d = args.sigma_d;
      if (has_sr) p.sigma_r = args.sigma_r;
      validate(p);
      cfg.filter_params = p;
      break;
    }
    case FilterKind::guided: {
      if (has_sd || has_sr)
        throw ValidationError("--sigma-d/--sigma-r apply only to --filter bilateral");
      if (args.graph)
        throw ValidationError("guided filter requires a 2D grid image (no --graph)");
      GuidedParams p;
      if (has_window) p.window_width = args.window;
      if (has_eps) p.epsilon = args.eps;
      validate(p);
      cfg.filter_params = p;
      break;
    }
    case FilterKind::tv: {
      if (has_sd || has_sr)
        throw ValidationError("--sigma-d/--sigma-r apply only to --filter bilateral");
      if (has_window)
        throw ValidationError("--window applies only to --filter bilateral or guided");
      TvParams p;
      if (has_eps) p.epsilon = args.eps;
      validate(p);
      cfg.filter_params = p;
      break;
    }
  }

  cfg.accel.kind = parse_accel_kind(args.accel);
  if (args.iters < 1) throw ValidationError("--iters must be >= 1");
  cfg.total_calls = args.iters;
  if (cfg.accel.kind == AccelKind::pcg) {
    if (args.restart_k < 2) throw ValidationError("--restart-k must be >= 2");
    if (args.iters % args.restart_k != 0)
      throw ValidationError("--iters (" + std::to_string(args.iters) +
                            ") must be a multiple of the pcg restart length (" +
                            std::to_string(args.restart_k) + ")");
    cfg.accel.k_max = static_cast<int>(args.restart_k);
    cfg.accel.l_max = static_cast<int>(args.iters / args.restart_k);
  } else {
    if (has_restart)
      throw ValidationError("--restart-k applies only to --accel pcg");
    cfg.accel.k_max = static_cast<int>(args.iters);
    cfg.accel.l_max = 1;
  }

  if (!args.clean.empty()) {
    cfg.reference = ExperimentConfig::Reference::file;
    cfg.reference_path = args.clean;
  }
  cfg.output_image = args.out;
  cfg.output_report = args.report;
  return cfg;
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Self-guided graph smoothing filters with accelerated iteration"};
  app.set_version_flag("--version", GRAPHFILT_VERSION);
  app.require_subcommand(1);

  // phantom
  auto* phantom_cmd = app.add_subcommand("phantom", "Generate the built-in test image");
  int phantom_size = 0;
  std::string phantom_out;
  phantom_cmd->add_option("--size", phantom_size, "image size (pixels per side)")->required();
  phantom_cmd->add_option("--out", phantom_out, "output PGM path")->required();

  // addnoise
  auto* noise_cmd = app.add_subcommand("addnoise", "Add seeded Gaussian noise to an image");
  std::string noise_in, noise_out;
  NoiseSpec noise_spec;
  bool no_clip = false;
  noise_cmd->add_option("--in", noise_in, "input PGM")->required();
  noise_cmd->add_option("--out", noise_out, "output PGM")->required();
  noise_cmd->add_option("--variance", noise_spec.variance, "noise variance")->required();
  noise_cmd->add_option("--mean", noise_spec.mean, "noise mean (default 0)");
  noise_cmd->add_option("--seed", noise_spec.seed, "PRNG seed (default 0)");
  noise_cmd->add_flag("--no-clip", no_clip, "do not clamp the result to [0,1]");

  // denoise
  auto* den_cmd = app.add_subcommand("denoise", "Run a filter/driver combination");
  DenoiseArgs den;
  den_cmd->add_option("--in", den.in, "noisy input (PGM, or GSIG with --graph)")->required();
  den_cmd->add_option("--out", den.out, "output path")->required();
  den_cmd->add_option("--filter", den.filter, "bilateral | guided | tv")->required();
  den_cmd->add_option("--accel", den.accel, "repeated | pcg | nesterov")->required();
  den_cmd->add_option("--iters", den.iters,
                      "basic-filter call budget (pcg: total calls = restarts * restart "
                      "length)")
      ->required();
  den_cmd->add_option("--restart-k", den.restart_k, "pcg restart length (default 3)");
  den_cmd->add_option("--window", den.window, "filter window width");
  den_cmd->add_option("--sigma-d", den.sigma_d, "bilateral spatial sigma (default 1)");
  den_cmd->add_option("--sigma-r", den.sigma_r, "bilateral range sigma (default 0.2)");
  den_cmd->add_option("--eps", den.eps,
                      "guided/tv regularization (defaults 1e-4 / 1e-3)");
  den_cmd->add_option("--clean", den.clean, "clean reference; enables the PSNR trace");
  den_cmd->add_option("--report", den.report, "write a JSON report here");
  den_cmd->add_flag("--graph", den.graph, "treat input/output as GSIG graph signals");

  // psnr
  auto* psnr_cmd = app.add_subcommand("psnr", "Peak signal-to-noise ratio of two images");
  std::string psnr_a, psnr_b;
  double psnr_peak = 1.0;
  bool psnr_graph = false;
  psnr_cmd->add_option("--a", psnr_a, "first image")->required();
  psnr_cmd->add_option("--b", psnr_b, "second image")->required();
  psnr_cmd->add_option("--peak", psnr_peak, "peak intensity (default 1.0)");
  psnr_cmd->add_flag("--graph", psnr_graph, "inputs are GSIG graph signals");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment config document");
  std::string bench_config;
  bench_cmd->add_option("--config", bench_config, "JSON experiment config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // prints help to stdout, parse errors to stderr
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (phantom_cmd->parsed()) {
    write_pgm_signal(phantom_out, phantom(phantom_size));
    return 0;
  }
  if (noise_cmd->parsed()) {
    noise_spec.clip = !no_clip;
    write_pgm_signal(noise_out, add_noise(read_pgm_signal(noise_in), noise_spec));
    return 0;
  }
  if (den_cmd->parsed()) {
    const ExperimentConfig cfg = build_denoise_config(den, *den_cmd);
    print_summary(run_experiment(cfg));
    return 0;
  }
  if (psnr_cmd->parsed()) {
    const Signal a = read_signal_auto(psnr_a, psnr_graph);
    const Signal b = read_signal_auto(psnr_b, psnr_graph);
    const double value = psnr(a, b, psnr_peak);
    if (std::isinf(value))
      std::printf("inf\n");
    else
      std::printf("%.6f\n", value);
    return 0;
  }
  if (bench_cmd->parsed()) {
    print_summary(run_experiment(load_experiment_config(bench_config)));
    return 0;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace graphfilt
