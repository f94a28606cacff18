#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catcode/channels.hpp"
#include "catcode/codes.hpp"
#include "catcode/kernels.hpp"
#include "test_util.hpp"

using namespace catcode;

TEST_CASE("lossless channel is the identity family") {
    const fock_space sp{2, 12};
    const kraus_set k = kraus(0.0, 8, sp);
    REQUIRE(k.labels.size() == 1);
    CHECK(k.labels[0].first == 0);
    CHECK(k.labels[0].second == 0);
    CHECK(k.tail_bound == 0.0);
    const fock_state v = coherent(sp, {cx(0.7, 0.1), cx(-0.2, 0.5)});
    const fock_state w = apply_kraus(k, 0, v);
    for (std::size_t i = 0; i < sp.dim(); ++i) CHECK(std::abs(w.amp[i] - v.amp[i]) < 1e-15);
}

TEST_CASE("truncated family is nearly complete") {
    // Frozen reference: two modes, cap 40, gamma 0.01, weight 8.
    const double d = completeness_deficit(0.01, 8, fock_space{2, 40});
    CHECK(d == doctest::Approx(2.278833e-11).epsilon(1e-5));
    CHECK(d < 1e-8);

    // Same cap at gamma 0.05 leaves too much tail; weight 13 on a smaller
    // space recovers it.
    const double bad = completeness_deficit(0.05, 8, fock_space{2, 40});
    CHECK(bad == doctest::Approx(1.911218e-5).epsilon(1e-5));
    CHECK(testutil::thrown_id([] { kraus(0.05, 8, fock_space{2, 40}); }) == "TailTooLarge");
    const double ok = completeness_deficit(0.05, 13, fock_space{2, 27});
    CHECK(ok == doctest::Approx(6.583030e-12).epsilon(1e-5));
}

TEST_CASE("kraus sum resolves the identity on a bounded state") {
    const fock_space sp{2, 21};
    const double gamma = 0.02;
    const kraus_set k = kraus(gamma, 8, sp);
    const fock_state v = coherent(sp, {cx(1, 0), cx(0, 1)});
    double total = 0.0;
    for (std::size_t which = 0; which < k.labels.size(); ++which) {
        const fock_state av = apply_kraus(k, which, v);
        total += kern::nrm2sq(av.amp.size(), av.amp.data());
    }
    CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("adjoint matches the damping operator inner product") {
    const fock_space sp{2, 14};
    const kraus_set k = kraus(0.01, 6, sp);
    const auto x = testutil::random_vector(sp.dim(), 61);
    const auto y = testutil::random_vector(sp.dim(), 62);
    const fock_state xs{sp, x};
    const fock_state ys{sp, y};
    for (std::size_t which : {std::size_t(0), std::size_t(3), std::size_t(10)}) {
        const fock_state ax = apply_kraus(k, which, xs);
        const fock_state aty = apply_kraus_adjoint(k, which, ys);
        // <y, A x> = <A^dag y, x>
        CHECK(std::abs(vdot(y, ax.amp) - vdot(aty.amp, x)) < 1e-12);
    }
}

TEST_CASE("arguments are validated") {
    const fock_space sp{2, 10};
    CHECK(testutil::thrown_id([&] { kraus(-0.1, 4, sp); }) == "ArgumentError");
    CHECK(testutil::thrown_id([&] { kraus(1.0, 4, sp); }) == "ArgumentError");
    CHECK(testutil::thrown_id([&] { kraus(0.01, -1, sp); }) == "ArgumentError");
    CHECK(testutil::thrown_id([&] { completeness_deficit(0.01, 11, sp); }) == "ArgumentError");
}

TEST_CASE("overlap matrix blocks at the reference point") {
    const cx a(2, 0), b(0, 2);
    const bosonic_code c =
        encode_coherent(builtin_group("pauli8"), a, b, default_cutoff("pauli8", a, b));
    const kraus_set k = kraus(0.01, 8, c.space);
    const kl_report rep = kl_matrix(c, k);

    // Hermitian and positive semidefinite.
    const std::size_t n = rep.gram.rows;
    CHECK(max_abs_diff(rep.gram, adjoint(rep.gram)) < 1e-12);
    const std::vector<double> ev = herm_eigvals(rep.gram);
    CHECK(ev.front() > -1e-10);

    CHECK(rep.score_diag == doctest::Approx(5.367403e-5).epsilon(1e-5));
    CHECK(rep.score_offdiag == doctest::Approx(2.860747e-5).epsilon(1e-5));
    CHECK(rep.score == doctest::Approx(std::max(5.367403e-5, 2.860747e-5)).epsilon(1e-5));
    CHECK(n == 2 * k.labels.size());
}

TEST_CASE("diagonal spread vanishes for balanced amplitudes") {
    // With |alpha| = |beta| the two codewords damp identically, so the
    // same-operator diagonals agree to rounding once the amplitudes are large
    // enough to suppress the cat normalization mismatch.
    const cx a(4, 0), b(0, 4);
    const bosonic_code c =
        encode_coherent(builtin_group("pauli8"), a, b, default_cutoff("pauli8", a, b));
    const kl_report rep = kl_matrix(c, kraus(0.01, 8, c.space));
    CHECK(rep.score_diag < 1e-9);
}

TEST_CASE("phase scan is monotone between the extremes") {
    std::vector<double> thetas(5);
    for (int i = 0; i < 5; ++i) thetas[i] = 0.5 * M_PI * i / 4.0;
    const theta_scan_result scan = kl_theta_scan("pauli8", 2.0, thetas, 0.01, 8);
    REQUIRE(scan.scores.size() == 5);
    CHECK(scan.argmax == 0);
    CHECK(scan.argmin == 4);
    for (std::size_t i = 1; i < 5; ++i) CHECK(scan.scores[i] < scan.scores[i - 1]);
}
