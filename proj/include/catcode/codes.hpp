#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catcode/gaussian.hpp"

namespace catcode {

enum class code_family { pauli, clifford };
enum class logical_outcome { zero, one, ambiguous };

struct bosonic_code {
    finite_unitary_group group;
    fock_space space;
    fock_state initial;  // the seed |Phi> the projector was applied to
    std::optional<std::pair<cx, cx>> coherent_params;  // (alpha, beta) when |Phi> = |alpha>|beta>
    std::vector<fock_state> codewords;
    double normalization = 0.0;   // (dim/|G|) / |P |Phi>|
    double projector_norm = 0.0;  // |P |Phi>|
};

// Group average P = (dim/|G|) sum_g conj(g_{00}) rho(g), stored blockwise with
// incomplete blocks zeroed: P annihilates the truncation-damaged sector
// instead of mixing it into the code space. Refuses groups that fail the
// 1-design test.
block_operator projector(const finite_unitary_group& g, const fock_space& sp);

// Codewords |i> = rho(g_i) P |Phi> / |P |Phi>| over the group's logical basis
// elements, with the global phase fixed on codeword 0.
bosonic_code encode(const finite_unitary_group& g, const fock_state& phi);
bosonic_code encode_coherent(const finite_unitary_group& g, cx alpha, cx beta, std::size_t cutoff);

// Closed-form two-mode codewords for the Pauli-type groups: products of
// two-component cats with fixed photon-number parities per mode.
bosonic_code closed_form_pauli(cx alpha, cx beta, const fock_space& sp);

// Closed-form codewords for the {H, S} closure: a five-term sum of
// four-component cat products filtered to total photon number 1 (mod 8). The
// filter is forced by the group itself: (SH)^3 = e^{i pi/4} 1, so averaging
// weights total photon number by eighth roots of unity.
bosonic_code closed_form_clifford(cx alpha, cx beta, const fock_space& sp);

// max over group elements and basis pairs of
// |<i| rho(g) |j> - (g_i^dag g g_j)_{00}|.
double covariance_check(const bosonic_code& c);

// Fidelities |<i|i'>|^2 between the codewords and the result of re-encoding
// from codeword 0.
std::vector<double> reencode_fidelities(const bosonic_code& c);

// Residuals |s(n) x - x| for the diagonal symmetry fixed by the family:
// pauli  s(n) = -exp(i pi (n_1 + n_2)), clifford s(n) = -i i^{(n_1+n_2) mod 4}.
std::vector<double> stabilizer_residuals(const bosonic_code& c);

// Relative residuals |J x| / |J| for J_1 = a^2 + b^2 - (alpha^2 + beta^2) and
// J_2 = a^2 b^2 - alpha^2 beta^2, per codeword: {J1 w0, J1 w1, J2 w0, J2 w1}.
std::vector<double> jump_operator_residuals(const bosonic_code& c);

code_family family_of(const finite_unitary_group& g);
code_family family_of(const std::string& group_name);

// Photon-number parity readout: family period p (pauli 2, clifford 4),
// (n_1 mod p, n_2 mod p) = (1, 0) reads 0, (0, 1) reads 1, else ambiguous.
logical_outcome measure_logical(std::size_t n1, std::size_t n2, code_family fam);

// Largest coherent amplitude appearing in the codeword constellation.
double constellation_radius(const std::string& group_name, cx alpha, cx beta);

std::size_t default_cutoff(const std::string& group_name, cx alpha, cx beta);

}  // namespace catcode
