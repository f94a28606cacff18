#include "catcode/codes.hpp"

#include <cmath>

namespace catcode {

namespace {

fock_state swap_modes(const fock_state& s) {
    const std::size_t d1 = s.space.cutoff + 1;
    fock_state out{s.space, std::vector<cx>(s.amp.size())};
    for (std::size_t n1 = 0; n1 < d1; ++n1)
        for (std::size_t n2 = 0; n2 < d1; ++n2) out.amp[n2 * d1 + n1] = s.amp[n1 * d1 + n2];
    return out;
}

void require_two_modes(const fock_space& sp) {
    if (sp.modes != 2)
        throw argument_error("DimensionMismatch", "two-mode space required");
}

cx ipow(int l) {
    static const cx table[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
    return table[((l % 4) + 4) % 4];
}

}  // namespace

block_operator projector(const finite_unitary_group& g, const fock_space& sp) {
    if (g.dim != sp.modes)
        throw argument_error("DimensionMismatch", "group dimension must match the mode count");
    const design_check dc = is_unitary_1_design(g);
    if (!dc.is_design)
        throw numeric_error("NotOneDesign",
                            "group fails the 1-design test (residual " +
                                std::to_string(dc.residual) + "); the average is not a projector");

    block_operator acc = zero_blocks(sp);
    const cx scale(static_cast<double>(g.dim) / static_cast<double>(g.order()));
    for (const cmat& e : g.elements) {
        const cx w = std::conj(e(0, 0));
        if (std::abs(w) < 1e-16) continue;
        const passive_unitary pu = lift(e, sp);
        for (std::size_t total = 0; total < acc.blocks.size(); ++total) {
            if (!acc.complete(total)) continue;  // truncated sector is annihilated
            add_scaled(acc.blocks[total], scale * w, pu.rep.blocks[total]);
        }
    }
    return acc;
}

bosonic_code encode(const finite_unitary_group& g, const fock_state& phi) {
    if (g.basis_elements.size() != g.dim)
        throw argument_error("DimensionMismatch",
                             "group lacks a full logical basis of first-column-orthogonal elements");

    bosonic_code code;
    code.group = g;
    code.space = phi.space;
    code.initial = phi;

    const block_operator proj = projector(g, phi.space);
    fock_state word0 = apply(proj, phi);
    const double pn = norm(word0);
    if (pn <= 1e-8)
        throw numeric_error("ProjectorAnnihilatesInput",
                            "group average annihilates the seed state (norm " +
                                std::to_string(pn) + ")");
    kern::scal(word0.amp.size(), cx(1.0 / pn), word0.amp.data());
    fix_phase(word0);

    code.projector_norm = pn;
    code.normalization = (static_cast<double>(g.dim) / static_cast<double>(g.order())) / pn;

    code.codewords.push_back(word0);
    for (std::size_t i = 1; i < g.basis_elements.size(); ++i) {
        const passive_unitary pu = lift(g.elements[g.basis_elements[i]], phi.space);
        code.codewords.push_back(apply(pu, word0));
    }
    return code;
}

bosonic_code encode_coherent(const finite_unitary_group& g, cx alpha, cx beta,
                             std::size_t cutoff) {
    const fock_space sp{2, cutoff};
    bosonic_code code = encode(g, coherent(sp, {alpha, beta}));
    code.coherent_params = std::make_pair(alpha, beta);
    return code;
}

bosonic_code closed_form_pauli(cx alpha, cx beta, const fock_space& sp) {
    require_two_modes(sp);
    // Codeword 0 = odd cat (x) even cat; codeword 1 is the mode swap.
    const fock_state ca = cat2(fock_space{1, sp.cutoff}, 0, alpha, 1, false);
    const fock_state cb = cat2(fock_space{1, sp.cutoff}, 0, beta, 0, false);
    fock_state w0 = tensor(ca, cb);
    normalize(w0);
    fix_phase(w0);

    bosonic_code code;
    code.group = builtin_group("pauli8");
    code.space = sp;
    code.initial = coherent(sp, {alpha, beta});
    code.coherent_params = std::make_pair(alpha, beta);
    code.codewords = {w0, swap_modes(w0)};
    return code;
}

bosonic_code closed_form_clifford(cx alpha, cx beta, const fock_space& sp) {
    require_two_modes(sp);
    const fock_space one{1, sp.cutoff};
    const double inv_rt2 = 1.0 / std::sqrt(2.0);

    fock_state acc = tensor(cat4(one, 0, alpha, 1, false), cat4(one, 0, beta, 0, false));
    for (int l = 0; l < 4; ++l) {
        const cx ga = (alpha + ipow(l) * beta) * inv_rt2;
        const cx gb = (alpha - ipow(l) * beta) * inv_rt2;
        const fock_state term = tensor(cat4(one, 0, ga, 1, false), cat4(one, 0, gb, 0, false));
        kern::axpy(acc.amp.size(), cx(inv_rt2), term.amp.data(), acc.amp.data());
    }
    // Group filter: total photon number 1 (mod 8).
    const std::size_t d1 = sp.cutoff + 1;
    for (std::size_t n1 = 0; n1 < d1; ++n1)
        for (std::size_t n2 = 0; n2 < d1; ++n2)
            if ((n1 + n2) % 8 != 1) acc.amp[n1 * d1 + n2] = cx(0.0);
    normalize(acc);
    fix_phase(acc);

    bosonic_code code;
    code.group = builtin_group("clifford96");
    code.space = sp;
    code.initial = coherent(sp, {alpha, beta});
    code.coherent_params = std::make_pair(alpha, beta);
    code.codewords = {acc, swap_modes(acc)};
    return code;
}

double covariance_check(const bosonic_code& c) {
    const finite_unitary_group& g = c.group;
    double worst = 0.0;
    for (const cmat& e : g.elements) {
        const passive_unitary pu = lift(e, c.space);
        std::vector<fock_state> moved;
        moved.reserve(c.codewords.size());
        for (const fock_state& w : c.codewords) moved.push_back(apply(pu, w));
        for (std::size_t i = 0; i < c.codewords.size(); ++i)
            for (std::size_t j = 0; j < c.codewords.size(); ++j) {
                const cmat gi = g.elements[g.basis_elements[i]];
                const cmat gj = g.elements[g.basis_elements[j]];
                const cmat red = gemm(gemm(gi, e, 'C', 'N'), gj);
                const cx want = red(0, 0);
                const cx got = inner(c.codewords[i], moved[j]);
                worst = std::max(worst, std::abs(got - want));
            }
    }
    return worst;
}

std::vector<double> reencode_fidelities(const bosonic_code& c) {
    const bosonic_code again = encode(c.group, c.codewords[0]);
    std::vector<double> fids;
    for (std::size_t i = 0; i < c.codewords.size(); ++i)
        fids.push_back(std::norm(inner(again.codewords[i], c.codewords[i])));
    return fids;
}

std::vector<double> stabilizer_residuals(const bosonic_code& c) {
    const code_family fam = family_of(c.group);
    const std::size_t d1 = c.space.cutoff + 1;
    std::vector<double> out;
    for (const fock_state& w : c.codewords) {
        double r2 = 0.0;
        for (std::size_t n1 = 0; n1 < d1; ++n1)
            for (std::size_t n2 = 0; n2 < d1; ++n2) {
                const std::size_t tot = n1 + n2;
                cx s;
                if (fam == code_family::pauli)
                    s = (tot % 2 == 0) ? cx(-1.0) : cx(1.0);  // -e^{i pi n}
                else
                    s = -ipow(1) * ipow(static_cast<int>(tot % 4));  // -i i^{n mod 4}
                const cx v = w.amp[n1 * d1 + n2];
                r2 += std::norm(s * v - v);
            }
        out.push_back(std::sqrt(r2));
    }
    return out;
}

std::vector<double> jump_operator_residuals(const bosonic_code& c) {
    require_two_modes(c.space);
    if (!c.coherent_params)
        throw argument_error("DimensionMismatch",
                             "jump residuals need the coherent seed parameters");
    const cx al = c.coherent_params->first, be = c.coherent_params->second;
    const std::size_t d = c.space.dim();

    const cmat a = annihilation(c.space, 0).m;
    const cmat b = annihilation(c.space, 1).m;
    const cmat a2 = gemm(a, a);
    const cmat b2 = gemm(b, b);

    cmat j1 = a2;
    add_scaled(j1, cx(1.0), b2);
    add_scaled(j1, -(al * al + be * be), identity(d));

    cmat j2 = gemm(a2, b2);
    add_scaled(j2, -(al * al * be * be), identity(d));

    std::vector<double> out;
    for (const cmat* j : {&j1, &j2}) {
        const double opnorm = spectral_norm_est(*j);
        for (const fock_state& w : c.codewords)
            out.push_back(vec_norm(gemv(*j, w.amp)) / opnorm);
    }
    return out;
}

code_family family_of(const finite_unitary_group& g) { return family_of(g.name); }

code_family family_of(const std::string& group_name) {
    if (group_name == "pauli8" || group_name == "pauli_ixiz" || group_name == "pauli16")
        return code_family::pauli;
    if (group_name == "clifford96") return code_family::clifford;
    throw argument_error("UnknownGroupName", "no family for group '" + group_name + "'");
}

logical_outcome measure_logical(std::size_t n1, std::size_t n2, code_family fam) {
    const std::size_t p = (fam == code_family::pauli) ? 2 : 4;
    const std::size_t r1 = n1 % p, r2 = n2 % p;
    if (r1 == 1 && r2 == 0) return logical_outcome::zero;
    if (r1 == 0 && r2 == 1) return logical_outcome::one;
    return logical_outcome::ambiguous;
}

double constellation_radius(const std::string& group_name, cx alpha, cx beta) {
    const double a = std::abs(alpha), b = std::abs(beta);
    double r = std::max(a, b);
    if (family_of(group_name) == code_family::clifford)
        r = std::max(r, (a + b) / std::sqrt(2.0));
    return r;
}

std::size_t default_cutoff(const std::string& group_name, cx alpha, cx beta) {
    return cutoff_for(constellation_radius(group_name, alpha, beta));
}

}  // namespace catcode
