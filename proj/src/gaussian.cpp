#include "catcode/gaussian.hpp"

#include <cmath>
#include <map>

namespace catcode {

namespace {

using multi_index = std::vector<std::size_t>;

// Compositions of total into m parts, lexicographically ascending, without
// any per-mode cap. Block bases are these lists filtered by the cap.
std::vector<multi_index> compositions(std::size_t total, std::size_t m) {
    std::vector<multi_index> out;
    multi_index cur(m, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == m) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (m == 0) return out;
    rec(rec, 0, total);
    return out;
}

bool within_cap(const multi_index& ns, std::size_t cap) {
    for (std::size_t n : ns)
        if (n > cap) return false;
    return true;
}

std::map<multi_index, std::size_t> rank_of(const std::vector<multi_index>& list) {
    std::map<multi_index, std::size_t> r;
    for (std::size_t i = 0; i < list.size(); ++i) r.emplace(list[i], i);
    return r;
}

}  // namespace

std::vector<std::size_t> block_indices(const fock_space& sp, std::size_t total) {
    std::vector<std::size_t> ids;
    for (const multi_index& ns : compositions(total, sp.modes))
        if (within_cap(ns, sp.cutoff)) ids.push_back(state_index(sp, ns));
    return ids;
}

passive_unitary lift(const cmat& u, const fock_space& sp) {
    if (u.rows != sp.modes || u.cols != sp.modes)
        throw argument_error("DimensionMismatch", "single-particle matrix must be modes x modes");
    if (!is_unitary(u))
        throw argument_error("NonUnitaryGenerator", "lift requires a unitary single-particle matrix");

    const std::size_t m = sp.modes;
    const std::size_t nmax = m * sp.cutoff;
    passive_unitary out{u, block_operator{sp, {}}};
    out.rep.blocks.resize(nmax + 1);

    // One-photon recursion on untruncated blocks: the vector |n - e_j> in
    // block N-1 determines column n of block N through
    //   rho(u) a_j^dag rho(u)^dag = sum_i u_{ij} a_i^dag.
    // Truncating only at the end keeps every complete block exact.
    std::vector<multi_index> prev_list = compositions(0, m);
    cmat prev_full(1, 1);
    prev_full(0, 0) = cx(1.0);

    auto store_truncated = [&](std::size_t total, const std::vector<multi_index>& list,
                               const cmat& full) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < list.size(); ++i)
            if (within_cap(list[i], sp.cutoff)) keep.push_back(i);
        cmat b(keep.size(), keep.size());
        for (std::size_t r = 0; r < keep.size(); ++r)
            for (std::size_t c = 0; c < keep.size(); ++c) b(r, c) = full(keep[r], keep[c]);
        out.rep.blocks[total] = std::move(b);
    };

    store_truncated(0, prev_list, prev_full);

    for (std::size_t total = 1; total <= nmax; ++total) {
        const std::vector<multi_index> list = compositions(total, m);
        const auto rank = rank_of(list);
        const auto prev_rank = rank_of(prev_list);
        cmat full(list.size(), list.size());

        // Raising maps from block N-1 into block N, one per mode.
        std::vector<std::vector<std::size_t>> raise_row(m,
                                                        std::vector<std::size_t>(prev_list.size()));
        std::vector<std::vector<double>> raise_fac(m, std::vector<double>(prev_list.size()));
        for (std::size_t r = 0; r < prev_list.size(); ++r)
            for (std::size_t i = 0; i < m; ++i) {
                multi_index up = prev_list[r];
                up[i] += 1;
                raise_row[i][r] = rank.at(up);
                raise_fac[i][r] = std::sqrt(static_cast<double>(prev_list[r][i] + 1));
            }

        for (std::size_t c = 0; c < list.size(); ++c) {
            const multi_index& ns = list[c];
            std::size_t j = 0;
            while (ns[j] == 0) ++j;
            multi_index down = ns;
            down[j] -= 1;
            const std::size_t src = prev_rank.at(down);
            const double inv = 1.0 / std::sqrt(static_cast<double>(ns[j]));
            for (std::size_t i = 0; i < m; ++i) {
                const cx w = u(i, j) * inv;
                if (w == cx(0.0)) continue;
                for (std::size_t r = 0; r < prev_list.size(); ++r)
                    full(raise_row[i][r], c) += w * raise_fac[i][r] * prev_full(r, src);
            }
        }

        store_truncated(total, list, full);
        prev_list = list;
        prev_full = std::move(full);
    }
    return out;
}

fock_state apply(const block_operator& op, const fock_state& v) {
    if (op.space != v.space) throw argument_error("SpaceMismatch", "operator and state spaces differ");
    fock_state out{v.space, std::vector<cx>(v.amp.size(), cx(0.0))};
    for (std::size_t total = 0; total <= op.max_total(); ++total) {
        const std::vector<std::size_t> ids = block_indices(op.space, total);
        if (ids.empty()) continue;
        const cmat& b = op.blocks[total];
        std::vector<cx> vin(ids.size());
        for (std::size_t r = 0; r < ids.size(); ++r) vin[r] = v.amp[ids[r]];
        const std::vector<cx> y = gemv(b, vin);
        for (std::size_t r = 0; r < ids.size(); ++r) out.amp[ids[r]] = y[r];
    }
    return out;
}

fock_state apply(const passive_unitary& u, const fock_state& v) { return apply(u.rep, v); }

block_operator block_product(const block_operator& x, const block_operator& y) {
    if (x.space != y.space) throw argument_error("SpaceMismatch", "block operator spaces differ");
    block_operator out{x.space, {}};
    out.blocks.reserve(x.blocks.size());
    for (std::size_t total = 0; total < x.blocks.size(); ++total)
        out.blocks.push_back(gemm(x.blocks[total], y.blocks[total]));
    return out;
}

block_operator block_add(const block_operator& x, const block_operator& y, cx wx, cx wy) {
    if (x.space != y.space) throw argument_error("SpaceMismatch", "block operator spaces differ");
    block_operator out{x.space, {}};
    out.blocks.reserve(x.blocks.size());
    for (std::size_t total = 0; total < x.blocks.size(); ++total) {
        cmat b(x.blocks[total].rows, x.blocks[total].cols);
        add_scaled(b, wx, x.blocks[total]);
        add_scaled(b, wy, y.blocks[total]);
        out.blocks.push_back(std::move(b));
    }
    return out;
}

block_operator zero_blocks(const fock_space& sp) {
    block_operator out{sp, {}};
    for (std::size_t total = 0; total <= sp.modes * sp.cutoff; ++total) {
        const std::size_t n = block_indices(sp, total).size();
        out.blocks.emplace_back(n, n);
    }
    return out;
}

void accumulate(block_operator& acc, cx w, const block_operator& term) {
    if (acc.space != term.space) throw argument_error("SpaceMismatch", "block operator spaces differ");
    for (std::size_t total = 0; total < acc.blocks.size(); ++total)
        add_scaled(acc.blocks[total], w, term.blocks[total]);
}

cmat dense_complete(const block_operator& op) {
    const std::size_t d = op.space.dim();
    cmat out(d, d);
    for (std::size_t total = 0; total <= op.max_total(); ++total) {
        if (!op.complete(total)) continue;
        const std::vector<std::size_t> ids = block_indices(op.space, total);
        const cmat& b = op.blocks[total];
        for (std::size_t r = 0; r < ids.size(); ++r)
            for (std::size_t c = 0; c < ids.size(); ++c) out(ids[r], ids[c]) = b(r, c);
    }
    return out;
}

double unitarity_residual(const passive_unitary& u) {
    double worst = 0.0;
    for (std::size_t total = 0; total <= u.rep.max_total(); ++total) {
        if (!u.rep.complete(total)) continue;
        const cmat& b = u.rep.blocks[total];
        worst = std::max(worst, max_abs_diff(gemm(b, b, 'C', 'N'), identity(b.rows)));
    }
    return worst;
}

double homomorphism_residual(const finite_unitary_group& g, const fock_space& sp) {
    double worst = 0.0;
    for (std::size_t ga : g.generators)
        for (std::size_t gb : g.generators) {
            const passive_unitary la = lift(g.elements[ga], sp);
            const passive_unitary lb = lift(g.elements[gb], sp);
            const passive_unitary lab = lift(gemm(g.elements[ga], g.elements[gb]), sp);
            for (std::size_t total = 0; total <= sp.modes * sp.cutoff; ++total) {
                if (total > sp.cutoff) continue;
                worst = std::max(worst, max_abs_diff(gemm(la.rep.blocks[total], lb.rep.blocks[total]),
                                                     lab.rep.blocks[total]));
            }
        }
    return worst;
}

crot_gate crot(const fock_space& sp, std::size_t mode_i, std::size_t mode_j, std::size_t root) {
    if (mode_i >= sp.modes || mode_j >= sp.modes || mode_i == mode_j)
        throw argument_error("InvalidModePair", "controlled rotation needs two distinct modes");
    if (root == 0)
        throw argument_error("InvalidModePair", "phase root must be a positive integer");
    return crot_gate{sp, mode_i, mode_j, root};
}

fock_state apply(const crot_gate& g, const fock_state& v) {
    if (g.space != v.space) throw argument_error("SpaceMismatch", "gate and state spaces differ");
    std::vector<cx> omega_pow(g.root);
    for (std::size_t t = 0; t < g.root; ++t)
        omega_pow[t] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(g.root));

    fock_state out = v;
    for (std::size_t idx = 0; idx < out.amp.size(); ++idx) {
        const std::size_t ni = mode_occupation(g.space, idx, g.mode_i) % g.root;
        const std::size_t nj = mode_occupation(g.space, idx, g.mode_j) % g.root;
        out.amp[idx] *= omega_pow[(ni * nj) % g.root];
    }
    return out;
}

}  // namespace catcode
