#pragma once

#include <vector>

#include "catcode/fock.hpp"
#include "catcode/groups.hpp"

namespace catcode {

// Operator block-diagonal in total photon number N. Block N acts on the
// multi-indices summing to N (each n_i <= cutoff), ordered lexicographically
// ascending in (n_1, ..., n_m); for two modes this is ascending n_1. A block
// is complete when no multi-index of weight N is lost to truncation, i.e.
// N <= cutoff for a single cap, in which case the stored matrix is exact.
struct block_operator {
    fock_space space;
    std::vector<cmat> blocks;  // indexed by N = 0 .. modes*cutoff

    bool complete(std::size_t total) const { return total <= space.cutoff; }
    std::size_t max_total() const { return space.modes * space.cutoff; }
};

// Multiphoton representation of a single-particle unitary u (modes x modes):
// the operator with rho(u) |a_1, ..., a_m> = |u a> on coherent states.
struct passive_unitary {
    cmat base;
    block_operator rep;
};

std::vector<std::size_t> block_indices(const fock_space& sp, std::size_t total);

passive_unitary lift(const cmat& u, const fock_space& sp);

fock_state apply(const block_operator& op, const fock_state& v);
fock_state apply(const passive_unitary& u, const fock_state& v);

block_operator block_product(const block_operator& x, const block_operator& y);
block_operator block_add(const block_operator& x, const block_operator& y, cx wx, cx wy);
block_operator zero_blocks(const fock_space& sp);
void accumulate(block_operator& acc, cx w, const block_operator& term);

// Dense matrix with incomplete blocks zeroed; truncation artifacts are
// confined to total photon numbers above the cutoff.
cmat dense_complete(const block_operator& op);

double unitarity_residual(const passive_unitary& u);  // worst complete block

// max-entry deviation of lift(g) lift(h) from lift(g h) over generator pairs,
// complete blocks only.
double homomorphism_residual(const finite_unitary_group& g, const fock_space& sp);

// Controlled rotation exp(i 2 pi n_i n_j / m) between two modes, applied as a
// lazy diagonal (the 4-mode use never materializes an operator).
struct crot_gate {
    fock_space space;
    std::size_t mode_i = 0, mode_j = 1;
    std::size_t root = 1;
};
crot_gate crot(const fock_space& sp, std::size_t mode_i, std::size_t mode_j, std::size_t root);
fock_state apply(const crot_gate& g, const fock_state& v);

}  // namespace catcode
