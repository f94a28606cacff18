#pragma once

#include <string>
#include <vector>

#include "catcode/linalg.hpp"

namespace catcode {

inline constexpr double group_element_tol = 1e-9;

// Finite subgroup of U(d) given by an explicit element list. elements[0] is
// always the identity. basis_elements indexes d group elements g_0 .. g_{d-1}
// (g_0 = identity) whose first columns are orthonormal; they label the logical
// basis of any code built from the group.
struct finite_unitary_group {
    std::size_t dim = 0;
    std::string name;  // builtin name, empty for ad-hoc closures
    std::vector<cmat> elements;
    std::vector<std::size_t> generators;
    std::vector<std::size_t> basis_elements;

    std::size_t order() const { return elements.size(); }
};

bool is_unitary(const cmat& u, double tol = 1e-10);

// Closure of the generating set under multiplication (breadth-first, element
// identification within group_element_tol). Throws NonUnitaryGenerator or
// ClosureOverflow when the closure exceeds max_order.
finite_unitary_group close_group(const std::vector<cmat>& generators, std::size_t max_order = 1024);

// pauli8 = <X, Z>, pauli_ixiz = <iX, iZ>, pauli16 = <i, X, Z>,
// clifford96 = closure of {H, S}. The last name is historical: (SH)^3 is
// e^{i pi/4} times the identity, so the closure contains all eighth roots of
// unity and has 192 elements; a 96-element variant is not closed.
finite_unitary_group builtin_group(const std::string& name);

std::size_t find_element(const finite_unitary_group& g, const cmat& u,
                         double tol = group_element_tol);  // order() when absent

// Worst deviation from the group axioms over all pairs: closure under
// products, presence of inverses and identity.
double group_axiom_residual(const finite_unitary_group& g);

struct design_check {
    bool is_design = false;
    double residual = 0.0;         // max entry of avg_g g (x) conj(g) minus the projector onto the
                                   // maximally entangled direction
    double frame_potential = 0.0;  // avg_g |tr g|^2, equal to 1 exactly for a 1-design
};
design_check is_unitary_1_design(const finite_unitary_group& g);

cmat pauli_x();
cmat pauli_z();
cmat hadamard();
cmat phase_s();

}  // namespace catcode
