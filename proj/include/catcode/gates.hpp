#pragma once

#include <string>

#include "catcode/codes.hpp"

namespace catcode {

struct gate_report {
    std::string gate;
    double deviation = 0.0;  // max-entry distance to the target after global-phase alignment
    double leakage = 0.0;    // worst column norm deficit of the logical block
    bool pass = false;
};

// Logical 2x2 block L[i][k] = <i| V |k> of a photon-number-preserving unitary.
cmat logical_matrix(const bosonic_code& c, const block_operator& v, double* leakage);

// Logical 4x4 block of the two-mode controlled rotation acting on modes (1, 3)
// of two copies of the code, L[(i j), (k l)] = <i j| W |k l>.
cmat logical_crot_matrix(const bosonic_code& c, std::size_t root, double* leakage);

// min over global phases of the max-entry distance |L - e^{i phi} target|.
double phase_aligned_deviation(const cmat& l, const cmat& target);

// Logical action of the lift of a named single-qubit group element.
gate_report check_single_gate(const bosonic_code& c, const std::string& name);

// Controlled rotation against diag(1, 1, 1, omega); requires diag(1, omega) to
// be a group element, else PhaseGateNotInGroup.
gate_report check_controlled_phase(const bosonic_code& c, std::size_t root);

}  // namespace catcode
