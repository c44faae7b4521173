#include "graphfilt/accel.hpp"

#include <chrono>
#include <string>

#include "graphfilt/kernels/kernels.hpp"
#include "graphfilt/metrics.hpp"

namespace graphfilt {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct CallRecorder {
  const IterationHooks& hooks;
  DenoiseReport& report;

  void note(const Signal& current) {
    ++report.basic_filter_calls;
    if (hooks.psnr_reference)
      report.psnr_trace.emplace_back(report.basic_filter_calls,
                                     psnr(*hooks.psnr_reference, current));
    if (hooks.on_call) hooks.on_call(report.basic_filter_calls, current);
  }
};

void require_finite(const Signal& s, const std::string& where) {
  if (!all_finite(s.values()))
    throw NumericError("non-finite iterate at " + where);
}

// One smoothing step shared by the repeated and Nesterov drivers so the two
// produce bit-identical call sequences when beta is zero.
void smooth_step(const FilterOperator& filter, const Signal& g, const Signal& x,
                 Signal& wv, Signal& deg, Signal& out) {
  filter.apply_w_degree(g, x, wv, deg);
  kernels::active().vdiv(wv.data(), deg.data(), out.data(), out.size());
}

}  // namespace

std::string_view accel_kind_name(AccelKind kind) {
  switch (kind) {
    case AccelKind::repeated: return "repeated";
    case AccelKind::pcg: return "pcg";
    case AccelKind::nesterov: return "nesterov";
  }
  return "?";
}

AccelKind parse_accel_kind(std::string_view name) {
  if (name == "repeated") return AccelKind::repeated;
  if (name == "pcg") return AccelKind::pcg;
  if (name == "nesterov") return AccelKind::nesterov;
  throw ValidationError("unknown accel kind '" + std::string(name) +
                        "' (expected repeated, pcg or nesterov)");
}

DenoiseReport run_repeated(const FilterOperator& filter, const Signal& x0, int k_max,
                           const IterationHooks& hooks) {
  if (k_max < 1) throw ValidationError("repeated: k_max must be >= 1");
  const auto start = Clock::now();
  DenoiseReport report;
  report.output = x0;
  CallRecorder rec{hooks, report};

  Signal wv = Signal::uninitialized(filter.topology());
  Signal deg = Signal::uninitialized(filter.topology());
  Signal next = Signal::uninitialized(filter.topology());
  for (int k = 1; k <= k_max; ++k) {
    smooth_step(filter, report.output, report.output, wv, deg, next);
    std::swap(report.output, next);
    require_finite(report.output, "iteration " + std::to_string(k));
    rec.note(report.output);
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

DenoiseReport run_nesterov(const FilterOperator& filter, const Signal& x0, int k_max,
                           const NesterovOptions& options, const IterationHooks& hooks) {
  if (k_max < 1) throw ValidationError("nesterov: k_max must be >= 1");
  const auto start = Clock::now();
  DenoiseReport report;
  report.output = x0;
  CallRecorder rec{hooks, report};

  Signal y_old = x0;
  Signal t = Signal::uninitialized(filter.topology());
  Signal wv = Signal::uninitialized(filter.topology());
  Signal deg = Signal::uninitialized(filter.topology());
  Signal next = Signal::uninitialized(filter.topology());
  for (int k = 1; k <= k_max; ++k) {
    const double beta =
        options.force_beta_zero ? 0.0 : (k - 1.0) / (k + 2.0);
    kernels::active().extrapolate(report.output.data(), y_old.data(), beta, t.data(),
                                  t.size());
    smooth_step(filter, t, t, wv, deg, next);
    std::swap(y_old, report.output);  // y_old <- y
    std::swap(report.output, next);   // y <- filtered extrapolation
    require_finite(report.output, "step " + std::to_string(k));
    rec.note(report.output);
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

DenoiseReport run_pcg(const FilterOperator& filter, const Signal& x0,
                      const PcgConfig& config, const IterationHooks& hooks) {
  if (config.k_max < 2) throw ValidationError("pcg: k_max must be >= 2");
  if (config.l_max < 1) throw ValidationError("pcg: l_max must be >= 1");
  if (config.gamma_tol < 0 || config.curvature_tol < 0)
    throw ValidationError("pcg: breakdown tolerances must be >= 0");

  const auto start = Clock::now();
  const auto& kern = kernels::active();
  DenoiseReport report;
  report.output = x0;
  CallRecorder rec{hooks, report};
  Signal& y = report.output;

  Signal wv = Signal::uninitialized(filter.topology());
  Signal deg = Signal::uninitialized(filter.topology());
  Signal r = Signal::uninitialized(filter.topology());
  Signal s = Signal::uninitialized(filter.topology());
  Signal p = Signal::uninitialized(filter.topology());
  Signal q = Signal::uninitialized(filter.topology());
  const std::size_t n = y.size();

  for (int l = 1; l <= config.l_max; ++l) {
    // Guidance for this restart: the current iterate (or the frozen signal).
    const Signal guidance = config.frozen_guidance ? *config.frozen_guidance : y;

    filter.apply_w_degree(guidance, y, wv, deg);
    kern.sub_mul(wv.data(), deg.data(), y.data(), r.data(), n);  // r = Wy - Dy
    rec.note(y);

    double gamma_first = 0.0;
    double gamma_old = 0.0;
    for (int k = 1; k < config.k_max; ++k) {
      const std::string where =
          "restart " + std::to_string(l) + ", inner step " + std::to_string(k);
      kern.vdiv(r.data(), deg.data(), s.data(), n);  // s = D^{-1} r
      const double gamma = kern.dot(s.data(), r.data(), n);
      if (k == 1) {
        gamma_first = gamma;
        if (gamma <= 0.0) break;  // stationary (constant) input or exact fixed point
        p = s;
      } else {
        if (gamma <= config.gamma_tol * gamma_first) break;
        kern.xpay(s.data(), gamma / gamma_old, p.data(), n);  // p = s + beta p
      }

      filter.apply_w(guidance, p, wv);                             // wv = W p
      kern.mul_sub(deg.data(), p.data(), wv.data(), q.data(), n);  // q = Dp - Wp
      const double pq = kern.dot(p.data(), q.data(), n);
      const double pp = kern.dot(p.data(), p.data(), n);
      if (pq <= config.curvature_tol * pp) {
        rec.note(y);  // the call was made even though the step is abandoned
        break;
      }
      const double alpha = gamma / pq;
      kern.axpy(alpha, p.data(), y.data(), n);
      kern.axpy(-alpha, q.data(), r.data(), n);
      require_finite(y, where);
      gamma_old = gamma;
      rec.note(y);
    }
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

DenoiseReport run_driver(const FilterOperator& filter, const Signal& x0,
                         const AccelConfig& config, const IterationHooks& hooks) {
  switch (config.kind) {
    case AccelKind::repeated:
      return run_repeated(filter, x0, config.k_max, hooks);
    case AccelKind::nesterov:
      return run_nesterov(filter, x0, config.k_max, {}, hooks);
    case AccelKind::pcg: {
      PcgConfig pcg;
      pcg.k_max = config.k_max;
      pcg.l_max = config.l_max;
      pcg.gamma_tol = config.gamma_tol;
      pcg.curvature_tol = config.curvature_tol;
      return run_pcg(filter, x0, pcg, hooks);
    }
  }
  throw ValidationError("unknown accel kind");
}

}  // namespace graphfilt
