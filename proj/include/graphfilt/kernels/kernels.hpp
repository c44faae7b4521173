#pragma once

#include <cstddef>
#include <string_view>

namespace graphfilt::kernels {

// Inner arithmetic loops of the library. Every kernel exists as portable
// scalar code and, on x86-64, as an AVX2 variant selected at runtime.
//
// Numerical contract between variants:
//  * dot and sum_sq_diff use a fixed reduction order regardless of variant:
//    element i is accumulated into partial sum (i mod 8), and the eight
//    partials are combined as ((s0+s4)+(s2+s6)) + ((s1+s5)+(s3+s7)).
//    Results are bit-identical across scalar/AVX2 and across platforms.
//  * The elementwise kernels and the TV stencils perform the same operations
//    in the same order in all variants (no FMA contraction) and are likewise
//    bit-identical.
//  * bilateral_row uses a polynomial exp in the AVX2 variant; outputs agree
//    with the scalar reference (libm exp) to a few ulp, far inside the
//    1e-10 relative equivalence bound the filters guarantee.
struct KernelTable {
  const char* name;

  // reductions
  double (*dot)(const double* u, const double* v, std::size_t n);
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);

  // elementwise
  void (*axpy)(double a, const double* x, double* y, std::size_t n);   // y += a*x
  void (*xpay)(const double* x, double a, double* y, std::size_t n);   // y = x + a*y
  void (*extrapolate)(const double* y, const double* y_old, double beta,
                      double* t, std::size_t n);                       // t = y + beta*(y - y_old)
  void (*vmul)(const double* a, const double* b, double* out, std::size_t n);
  void (*vdiv)(const double* num, const double* den, double* out, std::size_t n);
  void (*vadd_inplace)(const double* a, double* acc, std::size_t n);   // acc += a
  void (*vsub_inplace)(const double* a, double* acc, std::size_t n);   // acc -= a
  void (*scale)(const double* a, double s, double* out, std::size_t n);
  void (*sub_mul)(const double* a, const double* b, const double* c,
                  double* out, std::size_t n);                         // a - b.*c
  void (*mul_sub)(const double* a, const double* b, const double* c,
                  double* out, std::size_t n);                         // a.*b - c
  void (*mul_add)(const double* a, const double* b, const double* c,
                  double* out, std::size_t n);                         // a.*b + c
  void (*div_shift)(const double* num, const double* den, double shift,
                    double* out, std::size_t n);                       // num ./ (den + shift)

  // TV diffusion coefficients for one row:
  //   out[c] = (s*eps) / (eps + sqrt((row[c+1]-row[c])^2 + (down[c]-row[c])^2))
  // for c in [0, n). Caller guarantees row[c+1] is readable; pass down == row
  // on the last image row to zero the vertical difference.
  void (*tv_coeff_row)(const double* row, const double* down, double eps,
                       double s, double* out, std::size_t n);

  // TV smoothing step W v = v - L v for interior columns [c0, c1) of one row
  // (up/down rows and c-1/c+1 columns must exist):
  //   l = c_up[c]*(x-up[c]) + c_row[c]*(x-down[c])
  //     + c_row[c-1]*(x-row[c-1]) + c_row[c]*(x-row[c+1]),  out[c] = x - l
  void (*tv_apply_w_row)(const double* up, const double* row, const double* down,
                         const double* c_up, const double* c_row,
                         double* out, std::size_t c0, std::size_t c1);

  // Bilateral window accumulation for interior columns [c0, c1) of one row.
  // offsets[k] are flattened window offsets (dy*cols + dx) relative to the
  // center pixel, neg_spatial[k] = -|p_j - p_i|^2 / (2 sigma_d^2).
  //   w_k = exp(neg_spatial[k] - (g[c] - g[c+offsets[k]])^2 * inv_two_sr2)
  //   wv[c] = sum_k w_k * v[c+offsets[k]],  deg[c] = sum_k w_k
  void (*bilateral_row)(const double* g_row, const double* v_row,
                        const std::ptrdiff_t* offsets, const double* neg_spatial,
                        int n_off, double inv_two_sr2,
                        std::size_t c0, std::size_t c1,
                        double* wv, double* deg);
};

/// Portable reference implementation.
const KernelTable& scalar_kernels();

/// AVX2 implementation, or nullptr when unsupported (CPU or build).
const KernelTable* avx2_kernels();

/// Table in use. Resolved once: honors GRAPHFILT_SIMD=scalar|avx2|auto,
/// otherwise picks the best variant the CPU supports.
const KernelTable& active();

/// Force a variant ("scalar", "avx2", "auto"). Returns false if unknown or
/// unsupported on this machine.
bool select(std::string_view name);

}  // namespace graphfilt::kernels
