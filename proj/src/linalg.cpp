#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <cblas.h>

#include <cmath>
#include <random>
#include <string>

#include "catcode/linalg.hpp"

extern "C" void openblas_set_num_threads(int);

namespace catcode {

namespace {

// Library-level threading is disabled once; parallelism lives at the task
// level (parameter sweeps), where it composes without oversubscription.
void blas_single_threaded() {
    static const bool once = [] {
        openblas_set_num_threads(1);
        return true;
    }();
    (void)once;
}

CBLAS_TRANSPOSE to_blas_op(char op) {
    switch (op) {
        case 'N': return CblasNoTrans;
        case 'T': return CblasTrans;
        case 'C': return CblasConjTrans;
        default: throw argument_error("DimensionMismatch", "unknown matrix op");
    }
}

}  // namespace

cmat identity(std::size_t n) {
    cmat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cx(1.0);
    return m;
}

cmat adjoint(const cmat& m) {
    cmat r(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

cmat conj_mat(const cmat& m) {
    cmat r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.size(); ++i) r.a[i] = std::conj(m.a[i]);
    return r;
}

cmat kron(const cmat& x, const cmat& y) {
    cmat r(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t ix = 0; ix < x.rows; ++ix)
        for (std::size_t jx = 0; jx < x.cols; ++jx) {
            const cx w = x(ix, jx);
            if (w == cx(0.0)) continue;
            for (std::size_t iy = 0; iy < y.rows; ++iy) {
                cx* dst = &r(ix * y.rows + iy, jx * y.cols);
                const cx* src = &y(iy, 0);
                for (std::size_t jy = 0; jy < y.cols; ++jy)
                    dst[jy] = cx(w.real() * src[jy].real() - w.imag() * src[jy].imag(),
                                 w.real() * src[jy].imag() + w.imag() * src[jy].real());
            }
        }
    return r;
}

cmat gemm(const cmat& a, const cmat& b, char op_a, char op_b, cx alpha) {
    const std::size_t m = (op_a == 'N') ? a.rows : a.cols;
    const std::size_t k = (op_a == 'N') ? a.cols : a.rows;
    const std::size_t kb = (op_b == 'N') ? b.rows : b.cols;
    const std::size_t n = (op_b == 'N') ? b.cols : b.rows;
    if (k != kb) throw argument_error("DimensionMismatch", "gemm inner dimensions disagree");
    cmat c(m, n);
    if (m == 0 || n == 0 || k == 0) return c;
    blas_single_threaded();
    const cx beta(0.0);
    cblas_zgemm(CblasRowMajor, to_blas_op(op_a), to_blas_op(op_b), static_cast<int>(m),
                static_cast<int>(n), static_cast<int>(k), &alpha, a.data(),
                static_cast<int>(a.cols), b.data(), static_cast<int>(b.cols), &beta, c.data(),
                static_cast<int>(c.cols));
    return c;
}

std::vector<cx> gemv(const cmat& a, const std::vector<cx>& x, char op) {
    const std::size_t need = (op == 'N') ? a.cols : a.rows;
    const std::size_t out = (op == 'N') ? a.rows : a.cols;
    if (x.size() != need) throw argument_error("DimensionMismatch", "gemv dimensions disagree");
    std::vector<cx> y(out, cx(0.0));
    if (need == 0 || out == 0) return y;
    blas_single_threaded();
    const cx one(1.0), zero(0.0);
    cblas_zgemv(CblasRowMajor, to_blas_op(op), static_cast<int>(a.rows),
                static_cast<int>(a.cols), &one, a.data(), static_cast<int>(a.cols), x.data(), 1,
                &zero, y.data(), 1);
    return y;
}

void add_scaled(cmat& acc, cx w, const cmat& m) {
    if (acc.rows != m.rows || acc.cols != m.cols)
        throw argument_error("DimensionMismatch", "add_scaled shapes disagree");
    kern::axpy(m.size(), w, m.data(), acc.data());
}

cmat scaled(const cmat& m, cx w) {
    cmat r = m;
    kern::scal(r.size(), w, r.data());
    return r;
}

cx trace(const cmat& m) {
    cx t(0.0);
    const std::size_t n = std::min(m.rows, m.cols);
    for (std::size_t i = 0; i < n; ++i) t += m(i, i);
    return t;
}

double max_abs(const cmat& m) {
    double r = 0.0;
    for (const cx& v : m.a) r = std::max(r, std::abs(v));
    return r;
}

double max_abs_diff(const cmat& x, const cmat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw argument_error("DimensionMismatch", "max_abs_diff shapes disagree");
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x.a[i] - y.a[i]));
    return r;
}

double fro_norm(const cmat& m) { return std::sqrt(kern::nrm2sq(m.size(), m.data())); }

void herm_eig(const cmat& h, std::vector<double>& vals, cmat& vecs) {
    if (h.rows != h.cols) throw argument_error("DimensionMismatch", "herm_eig needs a square matrix");
    const std::size_t n = h.rows;
    vecs = h;
    vals.assign(n, 0.0);
    if (n == 0) return;
    const int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'L', static_cast<int>(n),
                                    reinterpret_cast<lapack_complex_double*>(vecs.data()),
                                    static_cast<int>(n), vals.data());
    if (info != 0)
        throw numeric_error("EigenFailure", "zheevd failed with info " + std::to_string(info));
}

std::vector<double> herm_eigvals(const cmat& h) {
    if (h.rows != h.cols) throw argument_error("DimensionMismatch", "herm_eigvals needs a square matrix");
    const std::size_t n = h.rows;
    cmat work = h;
    std::vector<double> vals(n, 0.0);
    if (n == 0) return vals;
    const int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'L', static_cast<int>(n),
                                    reinterpret_cast<lapack_complex_double*>(work.data()),
                                    static_cast<int>(n), vals.data());
    if (info != 0)
        throw numeric_error("EigenFailure", "zheevd failed with info " + std::to_string(info));
    return vals;
}

double spectral_norm_est(const cmat& m, int iters) {
    if (m.rows == 0 || m.cols == 0) return 0.0;
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cx> v(m.cols);
    for (cx& z : v) z = cx(u(rng), u(rng));
    vec_normalize(v);
    double sigma = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<cx> w = gemv(m, v);
        sigma = vec_norm(w);
        if (sigma == 0.0) return 0.0;
        v = gemv(m, w, 'C');
        vec_normalize(v);
    }
    return sigma;
}

double vec_norm(const std::vector<cx>& v) { return std::sqrt(kern::nrm2sq(v.size(), v.data())); }

void vec_normalize(std::vector<cx>& v) {
    const double n = vec_norm(v);
    if (n > 0.0) kern::scal(v.size(), cx(1.0 / n), v.data());
}

cx vdot(const std::vector<cx>& x, const std::vector<cx>& y) {
    if (x.size() != y.size()) throw argument_error("DimensionMismatch", "vdot lengths disagree");
    return kern::dotc(x.size(), x.data(), y.data());
}

}  // namespace catcode
