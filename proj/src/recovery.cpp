#include "catcode/recovery.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace catcode {

namespace {

// ---- damaged-space orthogonalization -------------------------------------

struct mgs_result {
    std::vector<std::vector<cx>> basis;
};

// Pivoted modified Gram-Schmidt with a second orthogonalization pass on each
// pivot. Vectors whose deflated norm falls below 1e-12 of the largest initial
// norm carry no new direction and are dropped.
mgs_result pivoted_mgs(std::vector<std::vector<cx>> work) {
    mgs_result out;
    const double drop = 1e-12;
    double max0 = 0.0;
    for (const auto& v : work) max0 = std::max(max0, vec_norm(v));
    if (max0 == 0.0) return out;

    std::vector<std::size_t> alive(work.size());
    std::iota(alive.begin(), alive.end(), 0);

    while (!alive.empty()) {
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t t = 0; t < alive.size(); ++t) {
            const double n = vec_norm(work[alive[t]]);
            if (n > best) {
                best = n;
                imax = t;
            }
        }
        if (best <= drop * max0) break;

        std::vector<cx> v = work[alive[imax]];
        for (const auto& b : out.basis) {
            const cx ip = vdot(b, v);
            kern::axpy(v.size(), -ip, b.data(), v.data());
        }
        const double nv = vec_norm(v);
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(imax));
        if (nv <= drop * max0) continue;

        kern::scal(v.size(), cx(1.0 / nv), v.data());
        for (std::size_t t = 0; t < alive.size(); ++t) {
            auto& w = work[alive[t]];
            const cx ip = vdot(v, w);
            kern::axpy(w.size(), -ip, v.data(), w.data());
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

// ---- Choi-space helpers ---------------------------------------------------

// Choi index convention: (support i, logical k) -> i*d + k.

cmat trace_out_logical(const cmat& m, std::size_t s, std::size_t d) {
    cmat t(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            cx acc(0.0);
            for (std::size_t k = 0; k < d; ++k) acc += m(i * d + k, j * d + k);
            t(i, j) = acc;
        }
    return t;
}

// Projection onto { X : trace over the logical factor = identity }.
cmat affine_proj(const cmat& x, std::size_t s, std::size_t d) {
    cmat defect = trace_out_logical(x, s, d);
    for (std::size_t i = 0; i < s; ++i) defect(i, i) -= cx(1.0);
    kern::scal(defect.size(), cx(-1.0 / static_cast<double>(d)), defect.data());
    cmat out = x;
    add_scaled(out, cx(1.0), kron(defect, identity(d)));
    return out;
}

cmat hermitize(const cmat& m) {
    cmat out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

cmat psd_proj(const cmat& w, double* min_eig = nullptr) {
    std::vector<double> vals;
    cmat vecs;
    herm_eig(hermitize(w), vals, vecs);
    if (min_eig) *min_eig = vals.empty() ? 0.0 : vals.front();
    cmat scaledv = vecs;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const double lam = std::max(vals[j], 0.0);
        for (std::size_t i = 0; i < scaledv.rows; ++i) scaledv(i, j) *= lam;
    }
    return gemm(scaledv, vecs, 'N', 'C');
}

double min_eigval(const cmat& h) {
    const std::vector<double> vals = herm_eigvals(hermitize(h));
    return vals.empty() ? 0.0 : vals.front();
}

cx frob_inner(const cmat& x, const cmat& y) {  // tr(x^dag y)
    return kern::dotc(x.size(), x.data(), y.data());
}

struct admm_out {
    double flb = 0.0;
    double fub = 0.0;
    int iters = 0;
    bool converged = false;
};

// Maximize tr(C X) over Choi matrices X >= 0 with logical trace pinned to the
// identity. Over-relaxed ADMM; every 20 iterations a primal certificate (a
// feasible recovery rebuilt from Z) and a dual certificate (shifted partial
// trace of the running multiplier) bracket the optimum, and the loop exits
// when the bracket closes below tol.
admm_out admm_block(const cmat& c, const cmat& x0, std::size_t s, std::size_t d, double tol,
                    int max_iter) {
    double rho = 1.0;
    cmat x = x0;
    cmat z = x0;
    cmat u(x0.rows, x0.cols);

    admm_out out;
    double best_flb = 0.0, last_fub = 1e300;

    for (int it = 1; it <= max_iter; ++it) {
        // x-update: affine projection of z - u + c/rho
        cmat arg = z;
        add_scaled(arg, cx(-1.0), u);
        add_scaled(arg, cx(1.0 / rho), c);
        x = affine_proj(arg, s, d);

        // over-relaxation, then the cone projection
        cmat xhat = scaled(x, cx(1.6));
        add_scaled(xhat, cx(-0.6), z);
        cmat w = xhat;
        add_scaled(w, cx(1.0), u);
        const cmat zold = z;
        z = psd_proj(w);
        u = w;
        add_scaled(u, cx(-1.0), z);

        if (it % 20 == 0 || it == max_iter) {
            cmat dz = z;
            add_scaled(dz, cx(-1.0), zold);
            const double dua = rho * fro_norm(dz);
            cmat dx = x;
            add_scaled(dx, cx(-1.0), z);
            const double pri = fro_norm(dx);
            if (pri > 10.0 * dua) {
                rho *= 2.0;
                kern::scal(u.size(), cx(0.5), u.data());
            } else if (dua > 10.0 * pri) {
                rho *= 0.5;
                kern::scal(u.size(), cx(2.0), u.data());
            }

            // primal certificate: renormalize z into a feasible Choi matrix
            double flb = 0.0;
            const cmat t = hermitize(trace_out_logical(z, s, d));
            std::vector<double> tvals;
            cmat tvecs;
            herm_eig(t, tvals, tvecs);
            if (!tvals.empty() && tvals.front() > 1e-12) {
                cmat tis = tvecs;
                for (std::size_t j = 0; j < tvals.size(); ++j) {
                    const double f = 1.0 / std::sqrt(tvals[j]);
                    for (std::size_t i = 0; i < tis.rows; ++i) tis(i, j) *= f;
                }
                const cmat tinv_sqrt = gemm(tis, tvecs, 'N', 'C');
                const cmat k = kron(tinv_sqrt, identity(d));
                const cmat xf = gemm(gemm(k, z), k);
                flb = frob_inner(c, xf).real();
            }

            // dual certificate
            cmat cmru = c;
            add_scaled(cmru, cx(-rho), u);
            cmat y = hermitize(trace_out_logical(cmru, s, d));
            kern::scal(y.size(), cx(1.0 / static_cast<double>(d)), y.data());
            cmat slack = kron(y, identity(d));
            add_scaled(slack, cx(-1.0), c);
            const double lam = min_eigval(slack);
            const double fub =
                trace(y).real() + static_cast<double>(s) * std::max(0.0, -lam);

            best_flb = std::max(best_flb, flb);
            last_fub = std::min(last_fub, fub);
            out.iters = it;
            if (last_fub - best_flb <= tol) {
                out.converged = true;
                break;
            }
        }
    }
    out.flb = best_flb;
    out.fub = last_fub;
    if (out.iters == 0) out.iters = max_iter;
    return out;
}

// ---- support components ---------------------------------------------------

struct union_find {
    std::vector<std::size_t> parent;
    explicit union_find(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<std::size_t>> support_components(const cmat& c, std::size_t s,
                                                         std::size_t d) {
    const double cmax = max_abs(c);
    union_find uf(s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) {
            double coupling = 0.0;
            for (std::size_t k = 0; k < d && coupling == 0.0; ++k)
                for (std::size_t l = 0; l < d; ++l)
                    if (std::abs(c(i * d + k, j * d + l)) > 1e-14 * cmax) {
                        coupling = 1.0;
                        break;
                    }
            if (coupling != 0.0) uf.unite(i, j);
        }
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t root = uf.find(i);
        bool placed = false;
        for (auto& cgrp : comps)
            if (uf.find(cgrp.front()) == root) {
                cgrp.push_back(i);
                placed = true;
                break;
            }
        if (!placed) comps.push_back({i});
    }
    return comps;
}

}  // namespace

effective_channel_t effective_channel(const bosonic_code& c, const kraus_set& k) {
    const std::size_t d = c.codewords.size();
    std::vector<std::vector<cx>> damaged;
    damaged.reserve(k.labels.size() * d);
    for (std::size_t p = 0; p < k.labels.size(); ++p)
        for (std::size_t i = 0; i < d; ++i)
            damaged.push_back(apply_kraus(k, p, c.codewords[i]).amp);

    mgs_result mgs = pivoted_mgs(damaged);
    const std::size_t s = mgs.basis.size();
    if (s == 0)
        throw numeric_error("RankCollapse", "loss family annihilates the code space");

    double gram_res = 0.0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            const cx g = vdot(mgs.basis[i], mgs.basis[j]);
            gram_res = std::max(gram_res, std::abs(g - (i == j ? cx(1.0) : cx(0.0))));
        }
    if (gram_res > 1e-8)
        throw numeric_error("RankCollapse", "support basis lost orthogonality (residual " +
                                                std::to_string(gram_res) + ")");

    effective_channel_t e;
    e.support_dim = s;
    e.code_dim = d;
    e.basis = std::move(mgs.basis);
    for (std::size_t p = 0; p < k.labels.size(); ++p) {
        cmat a(s, d);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t kk = 0; kk < d; ++kk)
                a(i, kk) = kern::dotc(e.basis[i].size(), e.basis[i].data(),
                                      damaged[p * d + kk].data());
        e.blocks.push_back(std::move(a));
    }
    return e;
}

std::vector<cmat> transpose_kraus(const std::vector<cmat>& blocks, std::size_t code_dim) {
    if (blocks.empty()) throw numeric_error("RankCollapse", "no channel blocks");
    const std::size_t s = blocks[0].rows;
    const double d = static_cast<double>(code_dim);

    cmat sigma(s, s);
    for (const cmat& a : blocks) add_scaled(sigma, cx(1.0 / d), gemm(a, a, 'N', 'C'));

    std::vector<double> vals;
    cmat vecs;
    herm_eig(hermitize(sigma), vals, vecs);
    cmat sc = vecs;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        // singular directions of sigma carry no damaged amplitude and are
        // projected out rather than inverted
        const double w = vals[j] > 1e-14 ? 1.0 / std::sqrt(vals[j]) : 0.0;
        for (std::size_t i = 0; i < sc.rows; ++i) sc(i, j) *= w;
    }
    const cmat inv_sqrt = gemm(sc, vecs, 'N', 'C');

    std::vector<cmat> r;
    r.reserve(blocks.size());
    for (const cmat& a : blocks)
        r.push_back(gemm(adjoint(a), inv_sqrt, 'N', 'N', cx(1.0 / std::sqrt(d))));
    return r;
}

double fidelity_transpose(const effective_channel_t& e) {
    const std::vector<cmat> r = transpose_kraus(e.blocks, e.code_dim);
    const double d = static_cast<double>(e.code_dim);
    double f = 0.0;
    for (const cmat& rr : r)
        for (const cmat& a : e.blocks) f += std::norm(trace(gemm(rr, a)));
    return f / (d * d);
}

recovery_result fidelity_optimal(const effective_channel_t& e, double tol, int max_iterations) {
    if (tol <= 0.0) throw argument_error("ArgumentError", "tolerance must be positive");
    if (max_iterations <= 0) throw argument_error("ArgumentError", "iteration cap must be positive");
    const std::size_t s = e.support_dim;
    const std::size_t d = e.code_dim;

    // C[(i,k),(j,l)] = sum_c conj(A_c[i,k]) A_c[j,l] / d^2; tr(C X) over Choi
    // matrices X of recoveries equals the entanglement fidelity.
    cmat c(s * d, s * d);
    for (const cmat& a : e.blocks) {
        std::vector<cx> u(s * d);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t k = 0; k < d; ++k) u[i * d + k] = std::conj(a(i, k));
        const double scale = 1.0 / static_cast<double>(d * d);
        for (std::size_t r = 0; r < s * d; ++r) {
            const cx w = u[r] * scale;
            if (w == cx(0.0)) continue;
            cx* row = &c(r, 0);
            for (std::size_t q = 0; q < s * d; ++q) row[q] += w * std::conj(u[q]);
        }
    }

    const std::vector<std::vector<std::size_t>> comps = support_components(c, s, d);

    recovery_result out;
    out.support_dim = s;
    double flb = 0.0, fub = 0.0;
    bool all_ok = true;
    int iters = 0;

    for (const auto& comp : comps) {
        out.component_sizes.push_back(comp.size());
        const std::size_t sb = comp.size();
        std::vector<std::size_t> ids;
        ids.reserve(sb * d);
        for (std::size_t i : comp)
            for (std::size_t k = 0; k < d; ++k) ids.push_back(i * d + k);

        cmat cb(sb * d, sb * d);
        for (std::size_t r = 0; r < ids.size(); ++r)
            for (std::size_t q = 0; q < ids.size(); ++q) cb(r, q) = c(ids[r], ids[q]);

        // transpose-channel Choi on this component seeds the iteration
        std::vector<cmat> ab;
        ab.reserve(e.blocks.size());
        for (const cmat& a : e.blocks) {
            cmat sub(sb, d);
            for (std::size_t i = 0; i < sb; ++i)
                for (std::size_t k = 0; k < d; ++k) sub(i, k) = a(comp[i], k);
            ab.push_back(std::move(sub));
        }
        const std::vector<cmat> rb = transpose_kraus(ab, d);
        cmat x0(sb * d, sb * d);
        for (const cmat& r : rb) {
            std::vector<cx> xv(sb * d);
            for (std::size_t i = 0; i < sb; ++i)
                for (std::size_t k = 0; k < d; ++k) xv[i * d + k] = r(k, i);
            for (std::size_t rr = 0; rr < xv.size(); ++rr) {
                if (xv[rr] == cx(0.0)) continue;
                cx* row = &x0(rr, 0);
                for (std::size_t q = 0; q < xv.size(); ++q) row[q] += xv[rr] * std::conj(xv[q]);
            }
        }

        const double tolb =
            comps.size() > 1 ? tol * static_cast<double>(sb) / static_cast<double>(s) : tol;
        const admm_out res = admm_block(cb, x0, sb, d, tolb, max_iterations);
        flb += res.flb;
        fub += res.fub;
        iters = std::max(iters, res.iters);
        all_ok = all_ok && res.converged;
    }

    out.fidelity = flb;
    out.fidelity_upper = fub;
    out.gap = fub - flb;
    out.iterations = iters;
    // Per-block convergence is sufficient but not necessary: the summed
    // bracket is a valid certificate even when one block exhausted its
    // iteration budget above its share of the tolerance.
    out.certified = all_ok || out.gap <= tol;
    return out;
}

sweep_row solve_point(const sweep_point& p) {
    const cx alpha(p.alpha, 0.0);
    const cx beta = alpha * std::polar(1.0, p.theta);
    const std::size_t nc = default_cutoff(p.group, alpha, beta);
    const finite_unitary_group grp = builtin_group(p.group);
    const bosonic_code code = encode_coherent(grp, alpha, beta, nc);
    const kraus_set k = kraus(p.gamma, p.max_weight, code.space);
    const effective_channel_t e = effective_channel(code, k);

    sweep_row row;
    row.point = p;
    row.cutoff = nc;
    row.support_dim = e.support_dim;
    row.infidelity_transpose = 1.0 - fidelity_transpose(e);
    const recovery_result res = fidelity_optimal(e, p.tol);
    row.infidelity_opt = 1.0 - res.fidelity;
    row.gap = res.gap;
    row.certified = res.certified;
    return row;
}

std::vector<sweep_row> run_sweep(const std::vector<sweep_point>& points, std::size_t jobs) {
    if (jobs == 0) jobs = 1;
    std::vector<sweep_row> rows(points.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                rows[i] = solve_point(points[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t n = std::min(jobs, points.size() == 0 ? std::size_t(1) : points.size());
    for (std::size_t t = 0; t + 1 < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

}  // namespace catcode
