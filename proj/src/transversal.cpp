#include "catcode/transversal.hpp"

#include <array>
#include <cmath>
#include <random>

namespace catcode {

namespace {

constexpr std::size_t max_copies = 12;

void require_copies(const finite_unitary_group& g, std::size_t m) {
    if (g.dim != 2)
        throw argument_error("DimensionMismatch", "copy averaging is defined for qubit groups");
    if (m < 1 || m > max_copies)
        throw argument_error("ArgumentError", "copy count must lie in [1, 12]");
}

cmat kron_pow(const cmat& g2, std::size_t m) {
    cmat acc = g2;
    for (std::size_t t = 1; t < m; ++t) acc = kron(acc, g2);
    return acc;
}

}  // namespace

void apply_copies(const cmat& g2, std::size_t m, std::vector<cx>& x) {
    const std::size_t dim = std::size_t(1) << m;
    if (x.size() != dim)
        throw argument_error("DimensionMismatch", "vector length must be 2^copies");
    // One 2x2 contraction per tensor slot.
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t stride = std::size_t(1) << (m - 1 - t);
        for (std::size_t base = 0; base < dim; ++base) {
            if (base & stride) continue;
            const cx a = x[base], b = x[base | stride];
            x[base] = g2(0, 0) * a + g2(0, 1) * b;
            x[base | stride] = g2(1, 0) * a + g2(1, 1) * b;
        }
    }
}

multicopy_projector transversal_projector(const finite_unitary_group& g, std::size_t m) {
    require_copies(g, m);
    const std::size_t dim = std::size_t(1) << m;
    multicopy_projector out;
    out.copies = m;
    out.proj = cmat(dim, dim);
    const cx scale(static_cast<double>(g.dim) / static_cast<double>(g.order()));
    for (const cmat& e : g.elements) {
        const cx w = std::conj(e(0, 0));
        if (std::abs(w) < 1e-16) continue;
        add_scaled(out.proj, scale * w, kron_pow(e, m));
    }
    out.norm_frobenius = fro_norm(out.proj);
    if (out.norm_frobenius > 1e-12) {
        const cmat p2 = gemm(out.proj, out.proj);
        out.idempotence_residual = max_abs_diff(p2, out.proj);
    }
    return out;
}

multicopy_code transversal_code(const finite_unitary_group& g, std::size_t m,
                                const std::vector<cx>& phi) {
    require_copies(g, m);
    if (g.basis_elements.size() != g.dim)
        throw argument_error("DimensionMismatch",
                             "group lacks a full logical basis of first-column-orthogonal elements");
    const multicopy_projector pm = transversal_projector(g, m);

    std::vector<cx> w0 = gemv(pm.proj, phi);
    const double pn = vec_norm(w0);
    if (pn <= 1e-8)
        throw numeric_error("ProjectorAnnihilatesInput",
                            "copy average annihilates the seed state (norm " +
                                std::to_string(pn) + ")");
    kern::scal(w0.size(), cx(1.0 / pn), w0.data());
    {
        // same phase convention as the oscillator encoder
        std::size_t best = 0;
        double mag = -1.0;
        for (std::size_t i = 0; i < w0.size(); ++i)
            if (std::abs(w0[i]) > mag) {
                mag = std::abs(w0[i]);
                best = i;
            }
        kern::scal(w0.size(), std::conj(w0[best]) / mag, w0.data());
    }

    multicopy_code code;
    code.copies = m;
    code.projection_norm = pn;
    code.codewords.push_back(w0);
    for (std::size_t i = 1; i < g.basis_elements.size(); ++i) {
        std::vector<cx> wi = w0;
        apply_copies(g.elements[g.basis_elements[i]], m, wi);
        code.codewords.push_back(std::move(wi));
    }

    double worst = 0.0;
    for (const cmat& e : g.elements) {
        std::vector<std::vector<cx>> moved;
        moved.reserve(code.codewords.size());
        for (const auto& w : code.codewords) {
            std::vector<cx> v = w;
            apply_copies(e, m, v);
            moved.push_back(std::move(v));
        }
        for (std::size_t i = 0; i < code.codewords.size(); ++i)
            for (std::size_t j = 0; j < code.codewords.size(); ++j) {
                const cmat gi = g.elements[g.basis_elements[i]];
                const cmat gj = g.elements[g.basis_elements[j]];
                const cmat red = gemm(gemm(gi, e, 'C', 'N'), gj);
                const cx got = vdot(code.codewords[i], moved[j]);
                worst = std::max(worst, std::abs(got - red(0, 0)));
            }
    }
    code.covariance_residual = worst;
    return code;
}

haar_average haar_projector_estimate(std::size_t m, std::size_t n, std::size_t samples,
                                     std::uint64_t seed) {
    if (m + n > 4)
        throw argument_error("ArgumentError", "total photon number capped at 4");
    if (samples < 10000)
        throw argument_error("ArgumentError", "at least 1e4 samples required");

    // Explicit Box-Muller on a fixed 64-bit generator keeps the stream
    // identical across standard libraries.
    std::mt19937_64 rng(seed);
    auto uniform01 = [&]() {
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    };
    double spare = 0.0;
    bool have_spare = false;
    auto gaussian = [&]() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform01()));
        const double t = 2.0 * M_PI * uniform01();
        spare = r * std::sin(t);
        have_spare = true;
        return r * std::cos(t);
    };

    const std::size_t total = m + n;
    const std::size_t comps = total + 1;
    std::vector<double> fac(comps, 1.0);
    for (std::size_t k = 1; k < comps; ++k) fac[k] = fac[k - 1] * static_cast<double>(k);
    const double seed_norm = std::sqrt(fac[m] * fac[n]);

    std::vector<cx> sum(comps, cx(0.0));
    double sum_sq = 0.0;

    std::array<cx, 5> poly{}, next{};
    for (std::size_t srun = 0; srun < samples; ++srun) {
        double q[4];
        double qn = 0.0;
        for (double& v : q) {
            v = gaussian();
            qn += v * v;
        }
        qn = std::sqrt(qn);
        const cx a(q[0] / qn, q[1] / qn);
        const cx b(q[2] / qn, q[3] / qn);

        // rho(g)|m, n>: expand (a r + b)^m (-conj(b) r + conj(a))^n in the
        // raising degree r of mode 1, then restore the number-state weights.
        poly.fill(cx(0.0));
        poly[0] = cx(1.0);
        std::size_t deg = 0;
        for (std::size_t t = 0; t < m; ++t) {
            next.fill(cx(0.0));
            for (std::size_t k = 0; k <= deg; ++k) {
                next[k + 1] += a * poly[k];
                next[k] += b * poly[k];
            }
            poly = next;
            ++deg;
        }
        for (std::size_t t = 0; t < n; ++t) {
            next.fill(cx(0.0));
            for (std::size_t k = 0; k <= deg; ++k) {
                next[k + 1] += -std::conj(b) * poly[k];
                next[k] += std::conj(a) * poly[k];
            }
            poly = next;
            ++deg;
        }

        const cx weight = 2.0 * std::conj(a);
        for (std::size_t k = 0; k < comps; ++k) {
            const cx v = weight * poly[k] * std::sqrt(fac[k] * fac[total - k]) / seed_norm;
            sum[k] += v;
            sum_sq += std::norm(v);
        }
    }

    haar_average out;
    out.photons_a = m;
    out.photons_b = n;
    out.samples = samples;
    out.seed = seed;
    out.mean.resize(comps);
    const double inv = 1.0 / static_cast<double>(samples);
    double mean_sq = 0.0;
    for (std::size_t k = 0; k < comps; ++k) {
        out.mean[k] = sum[k] * inv;
        mean_sq += std::norm(out.mean[k]);
    }
    out.norm = std::sqrt(mean_sq);
    out.standard_error = std::sqrt(std::max(0.0, sum_sq * inv - mean_sq) * inv);

    std::vector<cx> exact(comps, cx(0.0));
    if (m == 1 && n == 0) exact[1] = cx(1.0);
    double dev = 0.0;
    for (std::size_t k = 0; k < comps; ++k) dev += std::norm(out.mean[k] - exact[k]);
    out.deviation = std::sqrt(dev);
    return out;
}

}  // namespace catcode
