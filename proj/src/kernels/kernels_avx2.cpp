// AVX2 variants of the kernel table. Built with -mavx2 -mfma; only reached
// after a runtime CPU check in kernels.cpp.

#include "graphfilt/kernels/kernels.hpp"

#if GRAPHFILT_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace graphfilt::kernels {

namespace {

// --- reductions (same interleaved order as the scalar reference) -----------

double dot_avx2(const double* u, const double* v, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(v + i)));
    a1 = _mm256_add_pd(a1, _mm256_mul_pd(_mm256_loadu_pd(u + i + 4), _mm256_loadu_pd(v + i + 4)));
  }
  alignas(32) double acc[8];
  _mm256_store_pd(acc, a0);
  _mm256_store_pd(acc + 4, a1);
  for (; i < n; ++i) acc[i & 7] += u[i] * v[i];
  const double s04 = acc[0] + acc[4];
  const double s26 = acc[2] + acc[6];
  const double s15 = acc[1] + acc[5];
  const double s37 = acc[3] + acc[7];
  return (s04 + s26) + (s15 + s37);
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(d0, d0));
    a1 = _mm256_add_pd(a1, _mm256_mul_pd(d1, d1));
  }
  alignas(32) double acc[8];
  _mm256_store_pd(acc, a0);
  _mm256_store_pd(acc + 4, a1);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    acc[i & 7] += d * d;
  }
  const double s04 = acc[0] + acc[4];
  const double s26 = acc[2] + acc[6];
  const double s15 = acc[1] + acc[5];
  const double s37 = acc[3] + acc[7];
  return (s04 + s26) + (s15 + s37);
}

// --- elementwise (plain mul/add so results match the scalar path bit-for-bit)

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_avx2(const double* x, double a, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i), t));
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void extrapolate_avx2(const double* y, const double* y_old, double beta,
                      double* t, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d d = _mm256_sub_pd(vy, _mm256_loadu_pd(y_old + i));
    _mm256_storeu_pd(t + i, _mm256_add_pd(vy, _mm256_mul_pd(vb, d)));
  }
  for (; i < n; ++i) t[i] = y[i] + beta * (y[i] - y_old[i]);
}

void vmul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void vdiv_avx2(const double* num, const double* den, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(num + i), _mm256_loadu_pd(den + i)));
  for (; i < n; ++i) out[i] = num[i] / den[i];
}

void vadd_inplace_avx2(const double* a, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(a + i)));
  for (; i < n; ++i) acc[i] += a[i];
}

void vsub_inplace_avx2(const double* a, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(acc + i, _mm256_sub_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(a + i)));
  for (; i < n; ++i) acc[i] -= a[i];
}

void scale_avx2(const double* a, double s, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  for (; i < n; ++i) out[i] = a[i] * s;
}

void sub_mul_avx2(const double* a, const double* b, const double* c,
                  double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(c + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), t));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i] * c[i];
}

void mul_sub_avx2(const double* a, const double* b, const double* c,
                  double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(t, _mm256_loadu_pd(c + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i] - c[i];
}

void mul_add_avx2(const double* a, const double* b, const double* c,
                  double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(t, _mm256_loadu_pd(c + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void div_shift_avx2(const double* num, const double* den, double shift,
                    double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_add_pd(_mm256_loadu_pd(den + i), vs);
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(num + i), d));
  }
  for (; i < n; ++i) out[i] = num[i] / (den[i] + shift);
}

// --- vectorized exp (Cephes rational approximation, ~1 ulp) -----------------

inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);

  x = _mm256_max_pd(x, _mm256_set1_pd(-708.39));
  x = _mm256_min_pd(x, _mm256_set1_pd(709.43));

  // n = floor(x/ln2 + 0.5); r = x - n*ln2 via two-part ln2
  const __m256d nf = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, half));
  __m256d r = _mm256_fnmadd_pd(nf, c1, x);
  r = _mm256_fnmadd_pd(nf, c2, r);

  // exp(r) = 1 + 2r P(r^2) / (Q(r^2) - r P(r^2))
  const __m256d r2 = _mm256_mul_pd(r, r);
  __m256d p = _mm256_fmadd_pd(p0, r2, p1);
  p = _mm256_fmadd_pd(p, r2, p2);
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_fmadd_pd(q0, r2, q1);
  q = _mm256_fmadd_pd(q, r2, q2);
  q = _mm256_fmadd_pd(q, r2, q3);
  const __m256d e = _mm256_add_pd(one, _mm256_mul_pd(_mm256_set1_pd(2.0),
                                                     _mm256_div_pd(p, _mm256_sub_pd(q, p))));

  // scale by 2^n through the exponent field
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i expo = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(expo));
}

// --- TV stencils -------------------------------------------------------------

void tv_coeff_row_avx2(const double* row, const double* down, double eps,
                       double s, double* out, std::size_t n) {
  const double se_s = s * eps;
  const __m256d se = _mm256_set1_pd(se_s);
  const __m256d ve = _mm256_set1_pd(eps);
  std::size_t c = 0;
  for (; c + 4 <= n; c += 4) {
    const __m256d x = _mm256_loadu_pd(row + c);
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(row + c + 1), x);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(down + c), x);
    const __m256d g2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d den = _mm256_add_pd(ve, _mm256_sqrt_pd(g2));
    _mm256_storeu_pd(out + c, _mm256_div_pd(se, den));
  }
  for (; c < n; ++c) {
    const double dx = row[c + 1] - row[c];
    const double dy = down[c] - row[c];
    out[c] = se_s / (eps + std::sqrt(dx * dx + dy * dy));
  }
}

void tv_apply_w_row_avx2(const double* up, const double* row, const double* down,
                         const double* c_up, const double* c_row,
                         double* out, std::size_t c0, std::size_t c1) {
  std::size_t c = c0;
  for (; c + 4 <= c1; c += 4) {
    const __m256d x = _mm256_loadu_pd(row + c);
    __m256d l = _mm256_mul_pd(_mm256_loadu_pd(c_up + c),
                              _mm256_sub_pd(x, _mm256_loadu_pd(up + c)));
    const __m256d cr = _mm256_loadu_pd(c_row + c);
    l = _mm256_add_pd(l, _mm256_mul_pd(cr, _mm256_sub_pd(x, _mm256_loadu_pd(down + c))));
    l = _mm256_add_pd(l, _mm256_mul_pd(_mm256_loadu_pd(c_row + c - 1),
                                       _mm256_sub_pd(x, _mm256_loadu_pd(row + c - 1))));
    l = _mm256_add_pd(l, _mm256_mul_pd(cr, _mm256_sub_pd(x, _mm256_loadu_pd(row + c + 1))));
    _mm256_storeu_pd(out + c, _mm256_sub_pd(x, l));
  }
  if (c < c1) scalar_kernels().tv_apply_w_row(up, row, down, c_up, c_row, out, c, c1);
}

// --- bilateral ---------------------------------------------------------------

void bilateral_row_avx2(const double* g_row, const double* v_row,
                        const std::ptrdiff_t* offsets, const double* neg_spatial,
                        int n_off, double inv_two_sr2,
                        std::size_t c0, std::size_t c1,
                        double* wv, double* deg) {
  const __m256d inv2sr = _mm256_set1_pd(inv_two_sr2);
  std::size_t c = c0;
  for (; c + 4 <= c1; c += 4) {
    const __m256d gc = _mm256_loadu_pd(g_row + c);
    __m256d acc_w = _mm256_setzero_pd();
    __m256d acc_wv = _mm256_setzero_pd();
    for (int k = 0; k < n_off; ++k) {
      const double* gj = g_row + c + offsets[k];
      const double* vj = v_row + c + offsets[k];
      const __m256d dg = _mm256_sub_pd(gc, _mm256_loadu_pd(gj));
      const __m256d arg = _mm256_sub_pd(_mm256_set1_pd(neg_spatial[k]),
                                        _mm256_mul_pd(_mm256_mul_pd(dg, dg), inv2sr));
      const __m256d w = exp_pd(arg);
      acc_w = _mm256_add_pd(acc_w, w);
      acc_wv = _mm256_add_pd(acc_wv, _mm256_mul_pd(w, _mm256_loadu_pd(vj)));
    }
    _mm256_storeu_pd(wv + c, acc_wv);
    _mm256_storeu_pd(deg + c, acc_w);
  }
  if (c < c1)
    scalar_kernels().bilateral_row(g_row, v_row, offsets, neg_spatial, n_off,
                                   inv_two_sr2, c, c1, wv, deg);
}

const KernelTable avx2_table = {
    "avx2",
    dot_avx2,
    sum_sq_diff_avx2,
    axpy_avx2,
    xpay_avx2,
    extrapolate_avx2,
    vmul_avx2,
    vdiv_avx2,
    vadd_inplace_avx2,
    vsub_inplace_avx2,
    scale_avx2,
    sub_mul_avx2,
    mul_sub_avx2,
    mul_add_avx2,
    div_shift_avx2,
    tv_coeff_row_avx2,
    tv_apply_w_row_avx2,
    bilateral_row_avx2,
};

}  // namespace

const KernelTable* avx2_kernels_detail() { return &avx2_table; }

}  // namespace graphfilt::kernels

#endif  // GRAPHFILT_HAVE_AVX2
