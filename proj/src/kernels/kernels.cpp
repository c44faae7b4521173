#include "graphfilt/kernels/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace graphfilt::kernels {

namespace {

// --- reductions ------------------------------------------------------------
// Fixed interleaved order shared with the AVX2 variant; see kernels.hpp.

double dot_scalar(const double* u, const double* v, std::size_t n) {
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) acc[i & 7] += u[i] * v[i];
  const double s04 = acc[0] + acc[4];
  const double s26 = acc[2] + acc[6];
  const double s15 = acc[1] + acc[5];
  const double s37 = acc[3] + acc[7];
  return (s04 + s26) + (s15 + s37);
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc[i & 7] += d * d;
  }
  const double s04 = acc[0] + acc[4];
  const double s26 = acc[2] + acc[6];
  const double s15 = acc[1] + acc[5];
  const double s37 = acc[3] + acc[7];
  return (s04 + s26) + (s15 + s37);
}

// --- elementwise -------------------------------------------------------------

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_scalar(const double* x, double a, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void extrapolate_scalar(const double* y, const double* y_old, double beta,
                        double* t, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) t[i] = y[i] + beta * (y[i] - y_old[i]);
}

void vmul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void vdiv_scalar(const double* num, const double* den, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = num[i] / den[i];
}

void vadd_inplace_scalar(const double* a, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += a[i];
}

void vsub_inplace_scalar(const double* a, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] -= a[i];
}

void scale_scalar(const double* a, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}

void sub_mul_scalar(const double* a, const double* b, const double* c,
                    double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i] * c[i];
}

void mul_sub_scalar(const double* a, const double* b, const double* c,
                    double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] - c[i];
}

void mul_add_scalar(const double* a, const double* b, const double* c,
                    double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void div_shift_scalar(const double* num, const double* den, double shift,
                      double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = num[i] / (den[i] + shift);
}

// --- TV stencils -------------------------------------------------------------

void tv_coeff_row_scalar(const double* row, const double* down, double eps,
                         double s, double* out, std::size_t n) {
  const double se = s * eps;
  for (std::size_t c = 0; c < n; ++c) {
    const double dx = row[c + 1] - row[c];
    const double dy = down[c] - row[c];
    out[c] = se / (eps + std::sqrt(dx * dx + dy * dy));
  }
}

void tv_apply_w_row_scalar(const double* up, const double* row, const double* down,
                           const double* c_up, const double* c_row,
                           double* out, std::size_t c0, std::size_t c1) {
  for (std::size_t c = c0; c < c1; ++c) {
    const double x = row[c];
    double l = c_up[c] * (x - up[c]);
    l += c_row[c] * (x - down[c]);
    l += c_row[c - 1] * (x - row[c - 1]);
    l += c_row[c] * (x - row[c + 1]);
    out[c] = x - l;
  }
}

// --- bilateral ---------------------------------------------------------------

void bilateral_row_scalar(const double* g_row, const double* v_row,
                          const std::ptrdiff_t* offsets, const double* neg_spatial,
                          int n_off, double inv_two_sr2,
                          std::size_t c0, std::size_t c1,
                          double* wv, double* deg) {
  for (std::size_t c = c0; c < c1; ++c) {
    const double gc = g_row[c];
    double acc_w = 0.0;
    double acc_wv = 0.0;
    for (int k = 0; k < n_off; ++k) {
      const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(c) + offsets[k];
      const double dg = gc - g_row[j];
      const double w = std::exp(neg_spatial[k] - dg * dg * inv_two_sr2);
      acc_w += w;
      acc_wv += w * v_row[j];
    }
    wv[c] = acc_wv;
    deg[c] = acc_w;
  }
}

const KernelTable scalar_table = {
    "scalar",
    dot_scalar,
    sum_sq_diff_scalar,
    axpy_scalar,
    xpay_scalar,
    extrapolate_scalar,
    vmul_scalar,
    vdiv_scalar,
    vadd_inplace_scalar,
    vsub_inplace_scalar,
    scale_scalar,
    sub_mul_scalar,
    mul_sub_scalar,
    mul_add_scalar,
    div_shift_scalar,
    tv_coeff_row_scalar,
    tv_apply_w_row_scalar,
    bilateral_row_scalar,
};

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* resolve_default() {
  const char* env = std::getenv("GRAPHFILT_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return &scalar_table;
  if (const KernelTable* t = avx2_kernels(); t && (want == "avx2" || want == "auto"))
    return t;
  return &scalar_table;
}

}  // namespace

#if GRAPHFILT_HAVE_AVX2
const KernelTable* avx2_kernels_detail();  // kernels_avx2.cpp
#endif

const KernelTable& scalar_kernels() { return scalar_table; }

const KernelTable* avx2_kernels() {
#if GRAPHFILT_HAVE_AVX2
  if (cpu_has_avx2()) return avx2_kernels_detail();
#endif
  return nullptr;
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = resolve_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

bool select(std::string_view name) {
  if (name == "scalar") {
    g_active.store(&scalar_table, std::memory_order_release);
    return true;
  }
  if (name == "avx2") {
    const KernelTable* t = avx2_kernels();
    if (!t) return false;
    g_active.store(t, std::memory_order_release);
    return true;
  }
  if (name == "auto") {
    g_active.store(resolve_default(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace graphfilt::kernels
