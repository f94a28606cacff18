#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "catcode/errors.hpp"
#include "catcode/kernels.hpp"

namespace catcode {

using cx = std::complex<double>;

// Dense row-major complex matrix. Deliberately minimal: BLAS/LAPACK carry the
// heavy operations, kern::* the vector ones.
struct cmat {
    std::size_t rows = 0, cols = 0;
    std::vector<cx> a;

    cmat() = default;
    cmat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    cx* data() { return a.data(); }
    const cx* data() const { return a.data(); }
    std::size_t size() const { return a.size(); }
};

cmat identity(std::size_t n);
cmat adjoint(const cmat& m);
cmat conj_mat(const cmat& m);
cmat kron(const cmat& x, const cmat& y);

// ops: 'N' as-is, 'T' transpose, 'C' conjugate transpose
cmat gemm(const cmat& a, const cmat& b, char op_a = 'N', char op_b = 'N', cx alpha = cx(1.0));
std::vector<cx> gemv(const cmat& a, const std::vector<cx>& x, char op = 'N');

void add_scaled(cmat& acc, cx w, const cmat& m);  // acc += w m
cmat scaled(const cmat& m, cx w);
cx trace(const cmat& m);
double max_abs(const cmat& m);
double max_abs_diff(const cmat& x, const cmat& y);
double fro_norm(const cmat& m);

// Hermitian eigensolve (ascending eigenvalues, eigenvectors in columns).
void herm_eig(const cmat& h, std::vector<double>& vals, cmat& vecs);
std::vector<double> herm_eigvals(const cmat& h);

// Largest singular value via power iteration on m^dag m; deterministic start.
double spectral_norm_est(const cmat& m, int iters = 40);

double vec_norm(const std::vector<cx>& v);
void vec_normalize(std::vector<cx>& v);
cx vdot(const std::vector<cx>& x, const std::vector<cx>& y);  // sum conj(x) y

}  // namespace catcode
