#include "catcode/fock.hpp"

#include <cmath>

namespace catcode {

namespace {

void require_mode(const fock_space& sp, std::size_t mode) {
    if (mode >= sp.modes)
        throw argument_error("DimensionMismatch", "mode index out of range");
}

std::size_t mode_stride(const fock_space& sp, std::size_t mode) {
    std::size_t s = 1;
    for (std::size_t i = mode + 1; i < sp.modes; ++i) s *= sp.cutoff + 1;
    return s;
}

// Single-mode coherent amplitudes by the stable recurrence
// c_0 = exp(-|a|^2 / 2), c_{n+1} = c_n a / sqrt(n+1).
std::vector<cx> coherent_amps(std::size_t cutoff, cx a) {
    std::vector<cx> c(cutoff + 1);
    c[0] = cx(std::exp(-0.5 * std::norm(a)));
    for (std::size_t n = 0; n + 1 <= cutoff; ++n) c[n + 1] = c[n] * a / std::sqrt(double(n + 1));
    return c;
}

fock_state single_mode_state(const fock_space& sp, std::size_t mode, const std::vector<cx>& amps) {
    // Embeds a single-mode vector as |0...0> on the other modes.
    fock_state s{sp, std::vector<cx>(sp.dim(), cx(0.0))};
    const std::size_t stride = mode_stride(sp, mode);
    for (std::size_t n = 0; n <= sp.cutoff; ++n) s.amp[n * stride] = amps[n];
    return s;
}

void check_shell(const fock_state& s, const char* what) {
    const double p = shell_probability(s);
    if (p >= 1e-10)
        throw numeric_error("CutoffTooSmall", std::string(what) +
                                                  ": cutoff shell holds probability " +
                                                  std::to_string(p) + ", increase the cutoff");
}

}  // namespace

std::size_t state_index(const fock_space& sp, const std::vector<std::size_t>& ns) {
    if (ns.size() != sp.modes)
        throw argument_error("DimensionMismatch", "occupation list length mismatches mode count");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < sp.modes; ++i) {
        if (ns[i] > sp.cutoff)
            throw argument_error("DimensionMismatch", "occupation exceeds cutoff");
        idx = idx * (sp.cutoff + 1) + ns[i];
    }
    return idx;
}

void state_unrank(const fock_space& sp, std::size_t idx, std::vector<std::size_t>& ns) {
    ns.assign(sp.modes, 0);
    for (std::size_t i = sp.modes; i-- > 0;) {
        ns[i] = idx % (sp.cutoff + 1);
        idx /= sp.cutoff + 1;
    }
}

std::size_t mode_occupation(const fock_space& sp, std::size_t idx, std::size_t mode) {
    return (idx / mode_stride(sp, mode)) % (sp.cutoff + 1);
}

std::size_t cutoff_for(double a) {
    return static_cast<std::size_t>(std::ceil(a * a + 8.0 * a + 12.0));
}

double shell_probability(const fock_state& s) {
    double p = 0.0;
    for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
        for (std::size_t m = 0; m < s.space.modes; ++m) {
            if (mode_occupation(s.space, idx, m) == s.space.cutoff) {
                p += std::norm(s.amp[idx]);
                break;
            }
        }
    }
    return p;
}

fock_state coherent(const fock_space& sp, const std::vector<cx>& mode_amplitudes) {
    if (mode_amplitudes.size() != sp.modes)
        throw argument_error("DimensionMismatch", "one amplitude per mode required");
    std::vector<std::vector<cx>> per_mode;
    per_mode.reserve(sp.modes);
    for (cx a : mode_amplitudes) per_mode.push_back(coherent_amps(sp.cutoff, a));

    fock_state s{sp, std::vector<cx>(sp.dim())};
    std::vector<std::size_t> ns;
    for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
        state_unrank(sp, idx, ns);
        cx v(1.0);
        for (std::size_t m = 0; m < sp.modes; ++m) v *= per_mode[m][ns[m]];
        s.amp[idx] = v;
    }
    check_shell(s, "coherent");
    return s;
}

fock_state cat2(const fock_space& sp, std::size_t mode, cx alpha, int k, bool normalized) {
    require_mode(sp, mode);
    const int par = ((k % 2) + 2) % 2;
    std::vector<cx> plus = coherent_amps(sp.cutoff, alpha);
    std::vector<cx> minus = coherent_amps(sp.cutoff, -alpha);
    std::vector<cx> amps(sp.cutoff + 1, cx(0.0));
    for (std::size_t n = 0; n <= sp.cutoff; ++n) {
        // Exact parity support: amplitudes off n = k (mod 2) cancel
        // analytically and are set to zero rather than left as roundoff.
        if (static_cast<int>(n % 2) != par) continue;
        amps[n] = plus[n] + (par == 0 ? minus[n] : -minus[n]);
    }

    fock_state s = single_mode_state(sp, mode, amps);
    if (norm(s) < 1e-12)
        throw numeric_error("DegenerateState", "cat superposition vanishes at these parameters");
    if (normalized) {
        const double sign = (par == 0) ? 1.0 : -1.0;
        const double n2 = 2.0 * (1.0 + sign * std::exp(-2.0 * std::norm(alpha)));
        kern::scal(s.amp.size(), cx(1.0 / std::sqrt(n2)), s.amp.data());
    }
    check_shell(s, "cat2");
    return s;
}

fock_state cat4(const fock_space& sp, std::size_t mode, cx gamma, int k, bool normalized) {
    require_mode(sp, mode);
    const int kk = ((k % 4) + 4) % 4;
    const cx im(0.0, 1.0);
    std::vector<cx> amps(sp.cutoff + 1, cx(0.0));
    for (int l = 0; l < 4; ++l) {
        cx phase(1.0);
        for (int t = 0; t < (kk * l) % 4; ++t) phase *= -im;  // (-i)^{k l}
        cx rot(1.0);
        for (int t = 0; t < l; ++t) rot *= im;  // i^l
        const std::vector<cx> comp = coherent_amps(sp.cutoff, rot * gamma);
        for (std::size_t n = 0; n <= sp.cutoff; ++n) amps[n] += phase * comp[n];
    }
    for (std::size_t n = 0; n <= sp.cutoff; ++n)
        if (static_cast<int>(n % 4) != kk) amps[n] = cx(0.0);

    fock_state s = single_mode_state(sp, mode, amps);
    const double nn = norm(s);
    if (nn < 1e-12)
        throw numeric_error("DegenerateState", "cat superposition vanishes at these parameters");
    if (normalized) kern::scal(s.amp.size(), cx(1.0 / nn), s.amp.data());
    check_shell(s, "cat4");
    return s;
}

fock_operator annihilation(const fock_space& sp, std::size_t mode) {
    require_mode(sp, mode);
    const std::size_t d = sp.dim();
    const std::size_t stride = mode_stride(sp, mode);
    fock_operator op{sp, cmat(d, d)};
    for (std::size_t idx = 0; idx < d; ++idx) {
        const std::size_t n = mode_occupation(sp, idx, mode);
        if (n > 0) op.m(idx - stride, idx) = cx(std::sqrt(static_cast<double>(n)));
    }
    return op;
}

fock_operator number_op(const fock_space& sp, std::size_t mode) {
    require_mode(sp, mode);
    const std::size_t d = sp.dim();
    fock_operator op{sp, cmat(d, d)};
    for (std::size_t idx = 0; idx < d; ++idx)
        op.m(idx, idx) = cx(static_cast<double>(mode_occupation(sp, idx, mode)));
    return op;
}

fock_operator diagonal_op(const fock_space& sp,
                          const std::function<cx(const std::vector<std::size_t>&)>& f) {
    const std::size_t d = sp.dim();
    fock_operator op{sp, cmat(d, d)};
    std::vector<std::size_t> ns;
    for (std::size_t idx = 0; idx < d; ++idx) {
        state_unrank(sp, idx, ns);
        op.m(idx, idx) = f(ns);
    }
    return op;
}

fock_state tensor(const fock_state& x, const fock_state& y) {
    if (x.space.cutoff != y.space.cutoff)
        throw argument_error("SpaceMismatch", "tensor factors need a common cutoff");
    fock_state s{fock_space{x.space.modes + y.space.modes, x.space.cutoff},
                 std::vector<cx>(x.amp.size() * y.amp.size())};
    for (std::size_t i = 0; i < x.amp.size(); ++i) {
        if (x.amp[i] == cx(0.0)) continue;
        kern::axpy(y.amp.size(), x.amp[i], y.amp.data(), s.amp.data() + i * y.amp.size());
    }
    return s;
}

cx inner(const fock_state& x, const fock_state& y) {
    if (x.space != y.space) throw argument_error("SpaceMismatch", "inner product across spaces");
    return kern::dotc(x.amp.size(), x.amp.data(), y.amp.data());
}

fock_state apply(const fock_operator& op, const fock_state& v) {
    if (op.space != v.space) throw argument_error("SpaceMismatch", "operator and state spaces differ");
    return fock_state{v.space, gemv(op.m, v.amp)};
}

double norm(const fock_state& s) { return vec_norm(s.amp); }

void normalize(fock_state& s) {
    const double n = norm(s);
    if (n < 1e-12) throw numeric_error("DegenerateState", "cannot normalize a null state");
    kern::scal(s.amp.size(), cx(1.0 / n), s.amp.data());
}

void fix_phase(fock_state& s) {
    std::size_t best = 0;
    double mag = -1.0;
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        const double m = std::abs(s.amp[i]);
        if (m > mag) {
            mag = m;
            best = i;
        }
    }
    if (mag <= 0.0) return;
    const cx ph = std::conj(s.amp[best]) / mag;
    kern::scal(s.amp.size(), ph, s.amp.data());
}

}  // namespace catcode
