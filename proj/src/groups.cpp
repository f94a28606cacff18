#include "catcode/groups.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace catcode {

namespace {

bool first_columns_orthonormal(const finite_unitary_group& g, const std::vector<std::size_t>& picks,
                               std::size_t candidate, double tol) {
    const cmat& c = g.elements[candidate];
    for (std::size_t p : picks) {
        const cmat& e = g.elements[p];
        cx ip(0.0);
        for (std::size_t r = 0; r < g.dim; ++r) ip += std::conj(e(r, 0)) * c(r, 0);
        if (std::abs(ip) > tol) return false;
    }
    return true;
}

// Greedy scan for d elements with pairwise orthogonal first columns; the
// identity is always taken first. Partial result is acceptable (codes that
// need a full logical basis check for themselves).
std::vector<std::size_t> select_basis_elements(const finite_unitary_group& g) {
    std::vector<std::size_t> picks{0};
    for (std::size_t i = 1; i < g.order() && picks.size() < g.dim; ++i) {
        if (first_columns_orthonormal(g, picks, i, group_element_tol)) picks.push_back(i);
    }
    return picks;
}

}  // namespace

bool is_unitary(const cmat& u, double tol) {
    if (u.rows != u.cols || u.rows == 0) return false;
    const cmat g = gemm(u, u, 'C', 'N');
    return max_abs_diff(g, identity(u.rows)) <= tol;
}

finite_unitary_group close_group(const std::vector<cmat>& generators, std::size_t max_order) {
    if (generators.empty())
        throw argument_error("NonUnitaryGenerator", "generating set is empty");
    const std::size_t d = generators[0].rows;
    for (const cmat& g : generators) {
        if (g.rows != d || g.cols != d)
            throw argument_error("DimensionMismatch", "generators have mixed dimensions");
        if (!is_unitary(g))
            throw argument_error("NonUnitaryGenerator", "generator is not unitary within 1e-10");
    }

    finite_unitary_group grp;
    grp.dim = d;
    grp.elements.push_back(identity(d));

    auto find = [&](const cmat& u) -> std::size_t {
        for (std::size_t i = 0; i < grp.elements.size(); ++i)
            if (max_abs_diff(grp.elements[i], u) <= group_element_tol) return i;
        return grp.elements.size();
    };

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const cmat& g : generators) {
            const cmat prod = gemm(grp.elements[cur], g);
            if (find(prod) == grp.elements.size()) {
                if (grp.elements.size() >= max_order)
                    throw numeric_error("ClosureOverflow",
                                        "closure exceeds max_order = " + std::to_string(max_order));
                grp.elements.push_back(prod);
                frontier.push_back(grp.elements.size() - 1);
            }
        }
    }

    for (const cmat& g : generators) grp.generators.push_back(find(g));
    grp.basis_elements = select_basis_elements(grp);
    return grp;
}

cmat pauli_x() {
    cmat m(2, 2);
    m(0, 1) = cx(1.0);
    m(1, 0) = cx(1.0);
    return m;
}

cmat pauli_z() {
    cmat m(2, 2);
    m(0, 0) = cx(1.0);
    m(1, 1) = cx(-1.0);
    return m;
}

cmat hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    cmat m(2, 2);
    m(0, 0) = cx(h);
    m(0, 1) = cx(h);
    m(1, 0) = cx(h);
    m(1, 1) = cx(-h);
    return m;
}

cmat phase_s() {
    cmat m(2, 2);
    m(0, 0) = cx(1.0);
    m(1, 1) = cx(0.0, 1.0);
    return m;
}

finite_unitary_group builtin_group(const std::string& name) {
    finite_unitary_group grp;
    if (name == "pauli8") {
        grp = close_group({pauli_x(), pauli_z()});
    } else if (name == "pauli_ixiz") {
        grp = close_group({scaled(pauli_x(), cx(0.0, 1.0)), scaled(pauli_z(), cx(0.0, 1.0))});
    } else if (name == "pauli16") {
        grp = close_group({scaled(identity(2), cx(0.0, 1.0)), pauli_x(), pauli_z()});
    } else if (name == "clifford96") {
        grp = close_group({hadamard(), phase_s()});
    } else {
        throw argument_error("UnknownGroupName", "no builtin group named '" + name + "'");
    }
    grp.name = name;

    // Logical basis convention: (1, X) when X is in the group, else (1, iX).
    // pauli_ixiz contains only the latter.
    std::vector<std::size_t> basis{0};
    std::size_t ix = find_element(grp, pauli_x());
    if (ix == grp.order()) ix = find_element(grp, scaled(pauli_x(), cx(0.0, 1.0)));
    if (ix != grp.order()) {
        basis.push_back(ix);
        grp.basis_elements = basis;
    }
    return grp;
}

std::size_t find_element(const finite_unitary_group& g, const cmat& u, double tol) {
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.elements[i].rows == u.rows && g.elements[i].cols == u.cols &&
            max_abs_diff(g.elements[i], u) <= tol)
            return i;
    return g.order();
}

double group_axiom_residual(const finite_unitary_group& g) {
    const std::size_t n = g.order();
    double worst = max_abs_diff(g.elements[0], identity(g.dim));
    const cmat eye = identity(g.dim);
    for (std::size_t a = 0; a < n; ++a) {
        double inv_dist = 1e300;
        for (std::size_t b = 0; b < n; ++b) {
            const cmat prod = gemm(g.elements[a], g.elements[b]);
            double closest = 1e300;
            for (std::size_t c = 0; c < n; ++c)
                closest = std::min(closest, max_abs_diff(prod, g.elements[c]));
            worst = std::max(worst, closest);
            inv_dist = std::min(inv_dist, max_abs_diff(prod, eye));
        }
        worst = std::max(worst, inv_dist);
    }
    return worst;
}

design_check is_unitary_1_design(const finite_unitary_group& g) {
    const std::size_t d = g.dim;
    const std::size_t d2 = d * d;
    cmat avg(d2, d2);
    double fp = 0.0;
    for (const cmat& e : g.elements) {
        add_scaled(avg, cx(1.0 / static_cast<double>(g.order())), kron(e, conj_mat(e)));
        fp += std::norm(trace(e));
    }
    fp /= static_cast<double>(g.order());

    // Target: averaging a 1-design sends g (x) conj(g) to the rank-one
    // projector with entries delta_{ik} delta_{jl} / d at ((i,k),(j,l)).
    double res = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t l = 0; l < d; ++l) {
                    const cx want = (i == k && j == l) ? cx(1.0 / static_cast<double>(d)) : cx(0.0);
                    res = std::max(res, std::abs(avg(i * d + k, j * d + l) - want));
                }

    design_check out;
    out.residual = res;
    out.frame_potential = fp;
    out.is_design = res < 1e-9;
    return out;
}

}  // namespace catcode
