#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "graphfilt/filter.hpp"

namespace graphfilt {

enum class AccelKind { repeated, pcg, nesterov };

std::string_view accel_kind_name(AccelKind kind);
AccelKind parse_accel_kind(std::string_view name);

/// Iteration driver selection. k_max counts inner iterations (total steps
/// for repeated/nesterov); l_max counts PCG restarts and is ignored
/// otherwise. The tolerances guard PCG breakdown: the inner loop exits when
/// gamma <= gamma_tol * (first gamma of the restart) or p'q <=
/// curvature_tol * p'p.
struct AccelConfig {
  AccelKind kind = AccelKind::repeated;
  int k_max = 1;
  int l_max = 1;
  double gamma_tol = 1e-14;
  double curvature_tol = 1e-14;
};

/// Result of a denoising run. basic_filter_calls counts applications of the
/// underlying filter (one per W/D evaluation pair), so a full PCG run costs
/// k_max * l_max calls. psnr_trace holds one (call index, PSNR vs the clean
/// reference) entry per call when a reference is supplied; PSNR is measured
/// on the current iterate after the call's updates are applied.
struct DenoiseReport {
  Signal output;
  long basic_filter_calls = 0;
  std::vector<std::pair<long, double>> psnr_trace;
  double elapsed_ms = 0.0;
};

/// Optional observation points for a run.
struct IterationHooks {
  const Signal* psnr_reference = nullptr;
  std::function<void(long call, const Signal& current)> on_call;
};

struct NesterovOptions {
  bool force_beta_zero = false;  // degenerates to run_repeated; for testing
};

struct PcgConfig {
  int k_max = 3;  // >= 2; the inner loop runs k = 1 .. k_max-1
  int l_max = 1;
  double gamma_tol = 1e-14;
  double curvature_tol = 1e-14;
  /// When set, the guidance stays fixed at this signal instead of following
  /// the iterate; the run is then textbook PCG on L(g) u = 0 with
  /// preconditioner D(g).
  const Signal* frozen_guidance = nullptr;
};

/// Repeated self-guided filtering: y <- D^{-1}(y) W(y) y, k_max times.
DenoiseReport run_repeated(const FilterOperator& filter, const Signal& x0, int k_max,
                           const IterationHooks& hooks = {});

/// Nesterov-accelerated filtering with beta = (k-1)/(k+2):
///   t = y + beta (y - y_old); y_old = y; y = D^{-1}(t) W(t) t.
DenoiseReport run_nesterov(const FilterOperator& filter, const Signal& x0, int k_max,
                           const NesterovOptions& options = {},
                           const IterationHooks& hooks = {});

/// Preconditioned conjugate gradient on L(y) u = 0 with preconditioner D(y),
/// restarted l_max times with the guidance re-derived from the current
/// iterate at each restart:
///
///   for l = 1..l_max:
///     r = W(y) y - D(y) y
///     for k = 1..k_max-1:
///       s = D^{-1}(y) r; gamma = s'r
///       p = s (k=1)  or  p = s + (gamma/gamma_old) p
///       q = D(y) p - W(y) p; alpha = gamma / (p'q)
///       y += alpha p; r -= alpha q; gamma_old = gamma
///
/// Breakdown (gamma or p'q at the tolerance floor) exits the inner loop;
/// remaining restarts still re-derive the guidance. Reported calls are the
/// calls actually made.
DenoiseReport run_pcg(const FilterOperator& filter, const Signal& x0,
                      const PcgConfig& config, const IterationHooks& hooks = {});

/// Dispatch on an AccelConfig.
DenoiseReport run_driver(const FilterOperator& filter, const Signal& x0,
                         const AccelConfig& config, const IterationHooks& hooks = {});

}  // namespace graphfilt
