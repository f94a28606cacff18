#pragma once

#include <complex>
#include <cstddef>

// Hot inner loops on contiguous complex arrays. Scalar reference versions are
// the semantic definition; the AVX2 versions must agree with them to roundoff
// and are selected once at startup via cpuid.

namespace catcode::kern {

using cx = std::complex<double>;

using axpy_fn = void (*)(std::size_t, cx, const cx*, cx*);
using dotc_fn = cx (*)(std::size_t, const cx*, const cx*);
using scal_fn = void (*)(std::size_t, cx, cx*);
using nrm2sq_fn = double (*)(std::size_t, const cx*);

struct dispatch_table {
    axpy_fn axpy;      // y += a x
    dotc_fn dotc;      // sum_i conj(x_i) y_i
    scal_fn scal;      // x *= a
    nrm2sq_fn nrm2sq;  // sum_i |x_i|^2
};

extern const dispatch_table scalar_table;
extern const dispatch_table avx2_table;  // call only if avx2_available()

bool avx2_available();

// Active table: avx2_table when supported, else scalar_table. force() pins a
// specific table (tests compare implementations); force(nullptr) restores
// automatic selection.
const dispatch_table& active();
void force(const dispatch_table* t);

inline void axpy(std::size_t n, cx a, const cx* x, cx* y) { active().axpy(n, a, x, y); }
inline cx dotc(std::size_t n, const cx* x, const cx* y) { return active().dotc(n, x, y); }
inline void scal(std::size_t n, cx a, cx* x) { active().scal(n, a, x); }
inline double nrm2sq(std::size_t n, const cx* x) { return active().nrm2sq(n, x); }

}  // namespace catcode::kern
