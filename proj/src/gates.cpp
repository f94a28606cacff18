#include "catcode/gates.hpp"

#include <cmath>

namespace catcode {

namespace {

double column_leakage(const cmat& l) {
    // Unit input columns: anything missing from the logical block left the
    // code space. Roundoff can push the deficit a hair negative; clamp.
    double worst = 0.0;
    for (std::size_t c = 0; c < l.cols; ++c) {
        double n2 = 0.0;
        for (std::size_t r = 0; r < l.rows; ++r) n2 += std::norm(l(r, c));
        worst = std::max(worst, 1.0 - n2);
    }
    return std::max(0.0, worst);
}

}  // namespace

cmat logical_matrix(const bosonic_code& c, const block_operator& v, double* leakage) {
    const std::size_t d = c.codewords.size();
    cmat l(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const fock_state moved = apply(v, c.codewords[k]);
        for (std::size_t i = 0; i < d; ++i) l(i, k) = inner(c.codewords[i], moved);
    }
    if (leakage) *leakage = column_leakage(l);
    return l;
}

cmat logical_crot_matrix(const bosonic_code& c, std::size_t root, double* leakage) {
    const std::size_t d = c.codewords.size();
    const std::size_t d2 = c.space.dim();
    const fock_space four{4, c.space.cutoff};
    const crot_gate gate = crot(four, 1, 3, root);

    std::vector<std::vector<cx>> conj_words(d);
    for (std::size_t i = 0; i < d; ++i) {
        conj_words[i].resize(d2);
        for (std::size_t t = 0; t < d2; ++t) conj_words[i][t] = std::conj(c.codewords[i].amp[t]);
    }

    cmat l(d * d, d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t kl = 0; kl < d; ++kl) {
            fock_state w = tensor(c.codewords[k], c.codewords[kl]);
            w = apply(gate, w);
            // View the 4-mode vector as a d2 x d2 matrix over (pair 1, pair 2)
            // and contract each side with a codeword.
            cmat wm(d2, d2);
            wm.a = std::move(w.amp);
            for (std::size_t j = 0; j < d; ++j) {
                const std::vector<cx> t = gemv(wm, conj_words[j]);
                for (std::size_t i = 0; i < d; ++i) {
                    const cx val = kern::dotc(d2, c.codewords[i].amp.data(), t.data());
                    l(i * d + j, k * d + kl) = val;
                }
            }
        }
    if (leakage) *leakage = column_leakage(l);
    return l;
}

double phase_aligned_deviation(const cmat& l, const cmat& target) {
    const cx t = trace(gemm(target, l, 'C', 'N'));
    const double phi = std::arg(t);
    const cmat rotated = scaled(target, std::polar(1.0, phi));
    return max_abs_diff(l, rotated);
}

gate_report check_single_gate(const bosonic_code& c, const std::string& name) {
    cmat g;
    if (name == "X")
        g = pauli_x();
    else if (name == "Z")
        g = pauli_z();
    else if (name == "H")
        g = hadamard();
    else if (name == "S")
        g = phase_s();
    else
        throw argument_error("ArgumentError", "unknown gate '" + name + "' (expected X, Z, H or S)");

    gate_report rep;
    rep.gate = name;
    const passive_unitary pu = lift(g, c.space);
    const cmat l = logical_matrix(c, pu.rep, &rep.leakage);
    rep.deviation = phase_aligned_deviation(l, g);
    rep.pass = rep.deviation < 1e-6 && rep.leakage < 1e-7;
    return rep;
}

gate_report check_controlled_phase(const bosonic_code& c, std::size_t root) {
    if (root == 0) throw argument_error("InvalidModePair", "phase root must be a positive integer");
    const cx omega = std::polar(1.0, 2.0 * M_PI / static_cast<double>(root));
    cmat p(2, 2);
    p(0, 0) = cx(1.0);
    p(1, 1) = omega;
    if (find_element(c.group, p) == c.group.order())
        throw numeric_error("PhaseGateNotInGroup",
                            "diag(1, omega) with omega = exp(2 pi i / " + std::to_string(root) +
                                ") is not a group element; the controlled rotation does not "
                                "preserve the code pair");

    gate_report rep;
    rep.gate = "CP" + std::to_string(root);
    cmat target = identity(4);
    target(3, 3) = omega;
    const cmat l = logical_crot_matrix(c, root, &rep.leakage);
    rep.deviation = phase_aligned_deviation(l, target);
    rep.pass = rep.deviation < 1e-6 && rep.leakage < 1e-7;
    return rep;
}

}  // namespace catcode
