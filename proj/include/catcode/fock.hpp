#pragma once

#include <functional>
#include <vector>

#include "catcode/linalg.hpp"

namespace catcode {

// Truncated multimode number basis. Index layout is row-major over
// (n_1, ..., n_m) with the last mode fastest:
//   index = sum_i n_i (cutoff+1)^(m-1-i),  0 <= n_i <= cutoff.
struct fock_space {
    std::size_t modes = 0;
    std::size_t cutoff = 0;  // inclusive per-mode cap

    std::size_t dim() const {
        std::size_t d = 1;
        for (std::size_t i = 0; i < modes; ++i) d *= cutoff + 1;
        return d;
    }
    bool operator==(const fock_space& o) const { return modes == o.modes && cutoff == o.cutoff; }
    bool operator!=(const fock_space& o) const { return !(*this == o); }
};

struct fock_state {
    fock_space space;
    std::vector<cx> amp;
};

struct fock_operator {
    fock_space space;
    cmat m;
};

std::size_t state_index(const fock_space& sp, const std::vector<std::size_t>& ns);
void state_unrank(const fock_space& sp, std::size_t idx, std::vector<std::size_t>& ns);
std::size_t mode_occupation(const fock_space& sp, std::size_t idx, std::size_t mode);

// Truncation large enough that a constellation of coherent amplitudes bounded
// by a keeps less than ~1e-10 probability on the cutoff shell.
std::size_t cutoff_for(double a);

// Total probability of any mode sitting exactly at the cutoff, for a
// normalized state. Constructors reject states whose shell mass reaches 1e-10.
double shell_probability(const fock_state& s);

fock_state coherent(const fock_space& sp, const std::vector<cx>& mode_amplitudes);

// Two-component cat on one mode: |alpha> + (-1)^k |-alpha>, with amplitudes
// off n = k (mod 2) zeroed exactly. The normalized variant divides by
// sqrt(2 (1 + (-1)^k exp(-2 |alpha|^2))).
fock_state cat2(const fock_space& sp, std::size_t mode, cx alpha, int k, bool normalized = true);

// Four-component cat: sum_l (-i)^{k l} |i^l gamma>, amplitudes off
// n = k (mod 4) zeroed exactly; normalized numerically when requested.
fock_state cat4(const fock_space& sp, std::size_t mode, cx gamma, int k, bool normalized = true);

fock_operator annihilation(const fock_space& sp, std::size_t mode);
fock_operator number_op(const fock_space& sp, std::size_t mode);
fock_operator diagonal_op(const fock_space& sp,
                          const std::function<cx(const std::vector<std::size_t>&)>& f);

fock_state tensor(const fock_state& x, const fock_state& y);
cx inner(const fock_state& x, const fock_state& y);
fock_state apply(const fock_operator& op, const fock_state& v);  // never renormalizes

double norm(const fock_state& s);
void normalize(fock_state& s);

// Global phase convention: the largest-magnitude amplitude is made real
// positive (ties resolved by the lowest index).
void fix_phase(fock_state& s);

}  // namespace catcode
