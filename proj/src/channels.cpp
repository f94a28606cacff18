#include "catcode/channels.hpp"

#include <cmath>
#include <cstdio>

namespace catcode {

namespace {

void require_two_modes(const fock_space& sp) {
    if (sp.modes != 2)
        throw argument_error("DimensionMismatch", "pure loss is implemented for two modes");
}

double falling(std::size_t n, int p) {
    double f = 1.0;
    for (int t = 0; t < p; ++t) f *= static_cast<double>(n - static_cast<std::size_t>(t));
    return f;
}

double factorial(int p) {
    double f = 1.0;
    for (int t = 2; t <= p; ++t) f *= static_cast<double>(t);
    return f;
}

double kraus_coef(double gamma, int p1, int p2) {
    return std::pow(gamma / (1.0 - gamma), 0.5 * static_cast<double>(p1 + p2)) /
           std::sqrt(factorial(p1) * factorial(p2));
}

}  // namespace

double completeness_deficit(double gamma, int max_weight, const fock_space& sp) {
    require_two_modes(sp);
    const std::size_t nc = sp.cutoff;
    if (static_cast<std::size_t>(max_weight) > nc)
        throw argument_error("ArgumentError", "max_weight exceeds the cutoff");

    // sum_p E_p^dag E_p is diagonal; entry (n1, n2) is
    //   sum_{p <= n} coef^2 n1!/(n1-p1)! n2!/(n2-p2)! (1-gamma)^{n1+n2}.
    // Rows with n1 + n2 > cutoff - max_weight see truncated ladders and are
    // excluded from the deficit.
    const std::size_t safe = nc - static_cast<std::size_t>(max_weight);
    double worst = 0.0;
    for (std::size_t n1 = 0; n1 <= safe; ++n1)
        for (std::size_t n2 = 0; n1 + n2 <= safe; ++n2) {
            double acc = 0.0;
            for (int p1 = 0; p1 <= max_weight; ++p1) {
                if (static_cast<std::size_t>(p1) > n1) break;
                for (int p2 = 0; p1 + p2 <= max_weight; ++p2) {
                    if (static_cast<std::size_t>(p2) > n2) break;
                    if (gamma == 0.0 && (p1 != 0 || p2 != 0)) continue;
                    const double c = kraus_coef(gamma, p1, p2);
                    acc += c * c * falling(n1, p1) * falling(n2, p2) *
                           std::pow(1.0 - gamma, static_cast<double>(n1 + n2));
                }
            }
            worst = std::max(worst, std::abs(acc - 1.0));
        }
    return worst;
}

kraus_set kraus(double gamma, int max_weight, const fock_space& sp) {
    require_two_modes(sp);
    if (gamma < 0.0 || gamma >= 1.0)
        throw argument_error("ArgumentError", "loss rate must lie in [0, 1)");
    if (max_weight < 0)
        throw argument_error("ArgumentError", "max_weight must be nonnegative");

    kraus_set k;
    k.gamma = gamma;
    k.max_weight = max_weight;
    k.space = sp;
    if (gamma == 0.0) {
        k.labels = {{0, 0}};
        k.tail_bound = 0.0;
        return k;
    }
    for (int tot = 0; tot <= max_weight; ++tot)
        for (int p1 = 0; p1 <= tot; ++p1) k.labels.emplace_back(p1, tot - p1);
    k.tail_bound = completeness_deficit(gamma, max_weight, sp);
    if (k.tail_bound >= 1e-8) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", k.tail_bound);
        throw numeric_error("TailTooLarge", std::string("truncated loss family misses "
                                                        "completeness by ") +
                                                buf + "; raise max_weight or lower the loss rate");
    }
    return k;
}

fock_state apply_kraus(const kraus_set& k, std::size_t which, const fock_state& v) {
    if (k.space != v.space) throw argument_error("SpaceMismatch", "operator and state spaces differ");
    if (which >= k.labels.size())
        throw argument_error("ArgumentError", "kraus label index out of range");
    const int p1 = k.labels[which].first, p2 = k.labels[which].second;
    const std::size_t d1 = k.space.cutoff + 1;
    const double g = k.gamma;
    const double coef = (g == 0.0) ? 1.0 : kraus_coef(g, p1, p2);

    fock_state out{v.space, std::vector<cx>(v.amp.size(), cx(0.0))};
    for (std::size_t m1 = 0; m1 + static_cast<std::size_t>(p1) < d1; ++m1)
        for (std::size_t m2 = 0; m2 + static_cast<std::size_t>(p2) < d1; ++m2) {
            const std::size_t n1 = m1 + static_cast<std::size_t>(p1);
            const std::size_t n2 = m2 + static_cast<std::size_t>(p2);
            double fac = coef * std::pow(1.0 - g, 0.5 * static_cast<double>(n1 + n2));
            fac *= std::sqrt(falling(n1, p1) * falling(n2, p2));
            out.amp[m1 * d1 + m2] = fac * v.amp[n1 * d1 + n2];
        }
    return out;
}

fock_state apply_kraus_adjoint(const kraus_set& k, std::size_t which, const fock_state& v) {
    if (k.space != v.space) throw argument_error("SpaceMismatch", "operator and state spaces differ");
    if (which >= k.labels.size())
        throw argument_error("ArgumentError", "kraus label index out of range");
    const int p1 = k.labels[which].first, p2 = k.labels[which].second;
    const std::size_t d1 = k.space.cutoff + 1;
    const double g = k.gamma;
    const double coef = (g == 0.0) ? 1.0 : kraus_coef(g, p1, p2);

    fock_state out{v.space, std::vector<cx>(v.amp.size(), cx(0.0))};
    for (std::size_t m1 = 0; m1 + static_cast<std::size_t>(p1) < d1; ++m1)
        for (std::size_t m2 = 0; m2 + static_cast<std::size_t>(p2) < d1; ++m2) {
            const std::size_t n1 = m1 + static_cast<std::size_t>(p1);
            const std::size_t n2 = m2 + static_cast<std::size_t>(p2);
            double fac = coef * std::pow(1.0 - g, 0.5 * static_cast<double>(n1 + n2));
            fac *= std::sqrt(falling(n1, p1) * falling(n2, p2));
            out.amp[n1 * d1 + n2] = fac * v.amp[m1 * d1 + m2];
        }
    return out;
}

kl_report kl_matrix(const bosonic_code& c, const kraus_set& k) {
    if (c.space != k.space) throw argument_error("SpaceMismatch", "code and channel spaces differ");
    const std::size_t d = c.codewords.size();
    const std::size_t nop = k.labels.size();
    std::vector<fock_state> damaged;
    damaged.reserve(nop * d);
    for (std::size_t p = 0; p < nop; ++p)
        for (std::size_t i = 0; i < d; ++i) damaged.push_back(apply_kraus(k, p, c.codewords[i]));

    kl_report rep;
    rep.codewords = d;
    rep.labels = k.labels;
    rep.gram = cmat(nop * d, nop * d);
    for (std::size_t r = 0; r < nop * d; ++r)
        for (std::size_t s = 0; s < nop * d; ++s)
            rep.gram(r, s) = vdot(damaged[r].amp, damaged[s].amp);

    double off = 0.0;
    for (std::size_t p = 0; p < nop; ++p)
        for (std::size_t q = 0; q < nop; ++q)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    if (i == j) continue;
                    off = std::max(off, std::abs(rep.gram(p * d + i, q * d + j)));
                }

    // Diagonal comparison is within one operator: <i|E^dag E|i> must not
    // depend on the codeword. Mixing operators here would compare unrelated
    // damping weights.
    double diag = 0.0;
    for (std::size_t p = 0; p < nop; ++p)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                diag = std::max(diag, std::abs(rep.gram(p * d + i, p * d + i) -
                                               rep.gram(p * d + j, p * d + j)));

    rep.score_offdiag = off;
    rep.score_diag = diag;
    rep.score = std::max(off, diag);
    return rep;
}

theta_scan_result kl_theta_scan(const std::string& group_name, double alpha,
                                const std::vector<double>& thetas, double gamma, int max_weight) {
    const finite_unitary_group grp = builtin_group(group_name);
    theta_scan_result out;
    out.thetas = thetas;
    for (double th : thetas) {
        const cx a(alpha, 0.0);
        const cx b = a * std::polar(1.0, th);
        const std::size_t nc = default_cutoff(group_name, a, b);
        const bosonic_code code = encode_coherent(grp, a, b, nc);
        const kraus_set k = kraus(gamma, max_weight, code.space);
        out.scores.push_back(kl_matrix(code, k).score);
    }
    for (std::size_t i = 1; i < out.scores.size(); ++i) {
        if (out.scores[i] > out.scores[out.argmax]) out.argmax = i;
        if (out.scores[i] < out.scores[out.argmin]) out.argmin = i;
    }
    return out;
}

}  // namespace catcode
