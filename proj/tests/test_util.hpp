#pragma once

#include <random>
#include <string>
#include <vector>

#include "catcode/errors.hpp"
#include "catcode/linalg.hpp"

namespace testutil {

// Returns the id of the catcode::error thrown by f, or "" if nothing was thrown.
template <class F>
std::string thrown_id(F&& f) {
    try {
        f();
    } catch (const catcode::error& e) {
        return e.id();
    }
    return "";
}

inline std::vector<catcode::cx> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<catcode::cx> v(n);
    for (auto& x : v) x = catcode::cx(u(rng), u(rng));
    return v;
}

inline catcode::cmat random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    catcode::cmat m(r, c);
    m.a = random_vector(r * c, seed);
    return m;
}

// Random unitary via Gram-Schmidt on a random matrix.
inline catcode::cmat random_unitary(std::size_t n, std::uint64_t seed) {
    using catcode::cx;
    catcode::cmat m = random_matrix(n, n, seed);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cx ov(0.0);
            for (std::size_t i = 0; i < n; ++i) ov += std::conj(m(i, k)) * m(i, j);
            for (std::size_t i = 0; i < n; ++i) m(i, j) -= ov * m(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(m(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) m(i, j) /= nrm;
    }
    return m;
}

}  // namespace testutil
