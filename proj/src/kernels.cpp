#include "catcode/kernels.hpp"

namespace catcode::kern {

namespace {

// Componentwise arithmetic (not std::complex operator*) so the scalar and
// vector paths perform the same floating point operations.

void axpy_scalar(std::size_t n, cx a, const cx* x, cx* y) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
    }
}

cx dotc_scalar(std::size_t n, const cx* x, const cx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return cx(re, im);
}

void scal_scalar(std::size_t n, cx a, cx* x) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

double nrm2sq_scalar(std::size_t n, const cx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

const dispatch_table* forced = nullptr;

}  // namespace

const dispatch_table scalar_table{axpy_scalar, dotc_scalar, scal_scalar, nrm2sq_scalar};

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const dispatch_table& active() {
    if (forced) return *forced;
    static const dispatch_table& best = avx2_available() ? avx2_table : scalar_table;
    return best;
}

void force(const dispatch_table* t) { forced = t; }

}  // namespace catcode::kern
