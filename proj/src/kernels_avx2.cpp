#include "catcode/kernels.hpp"

#include <immintrin.h>

// Per-function target attributes keep the translation unit buildable on any
// x86-64 host; callers gate on avx2_available(). Complex pairs are processed
// two at a time: a 256-bit lane holds (re0, im0, re1, im1).

namespace catcode::kern {

namespace {

__attribute__((target("avx2,fma")))
void axpy_avx2(std::size_t n, cx a, const cx* x, cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const std::size_t n2 = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= n2; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xp + i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5);  // swap re/im in each pair
        // even lanes ar*xr - ai*xi, odd lanes ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(yp + i, _mm256_add_pd(_mm256_loadu_pd(yp + i), prod));
    }
    for (; i < n2; i += 2) {
        const double xr = xp[i], xi = xp[i + 1];
        yp[i] += a.real() * xr - a.imag() * xi;
        yp[i + 1] += a.real() * xi + a.imag() * xr;
    }
}

__attribute__((target("avx2,fma")))
cx dotc_avx2(std::size_t n, const cx* x, const cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const std::size_t n2 = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= n2; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xp + i);
        const __m256d yv = _mm256_loadu_pd(yp + i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);                          // xr*yr, xi*yi
        acc_im = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, acc_im);  // xi*yr, xr*yi
    }
    alignas(32) double br[4], bi[4];
    _mm256_store_pd(br, acc_re);
    _mm256_store_pd(bi, acc_im);
    double re = br[0] + br[1] + br[2] + br[3];
    double im = (bi[1] - bi[0]) + (bi[3] - bi[2]);
    for (; i < n2; i += 2) {
        const double xr = xp[i], xi = xp[i + 1];
        re += xr * yp[i] + xi * yp[i + 1];
        im += xr * yp[i + 1] - xi * yp[i];
    }
    return cx(re, im);
}

__attribute__((target("avx2,fma")))
void scal_avx2(std::size_t n, cx a, cx* x) {
    double* xp = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const std::size_t n2 = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= n2; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xp + i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5);
        _mm256_storeu_pd(xp + i, _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs)));
    }
    for (; i < n2; i += 2) {
        const double xr = xp[i], xi = xp[i + 1];
        xp[i] = a.real() * xr - a.imag() * xi;
        xp[i + 1] = a.real() * xi + a.imag() * xr;
    }
}

__attribute__((target("avx2,fma")))
double nrm2sq_avx2(std::size_t n, const cx* x) {
    const double* xp = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n2 = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= n2; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xp + i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double b[4];
    _mm256_store_pd(b, acc);
    double s = b[0] + b[1] + b[2] + b[3];
    for (; i < n2; ++i) s += xp[i] * xp[i];
    return s;
}

}  // namespace

const dispatch_table avx2_table{axpy_avx2, dotc_avx2, scal_avx2, nrm2sq_avx2};

}  // namespace catcode::kern
