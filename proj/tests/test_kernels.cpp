#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include "catcode/kernels.hpp"
#include "test_util.hpp"

using catcode::cx;
namespace kern = catcode::kern;

namespace {

const std::vector<std::size_t> sizes = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 33, 100, 257, 1001};

cx dotc_ref(std::size_t n, const cx* x, const cx* y) {
    cx acc(0.0);
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

}  // namespace

TEST_CASE("scalar kernels match reference loops") {
    kern::force(&kern::scalar_table);
    for (std::size_t n : sizes) {
        auto x = testutil::random_vector(n, 11 * n + 1);
        auto y = testutil::random_vector(n, 13 * n + 2);
        const cx a(0.7, -0.3);

        const cx d = kern::dotc(n, x.data(), y.data());
        CHECK(std::abs(d - dotc_ref(n, x.data(), y.data())) < 1e-12 * (1.0 + std::abs(d)));

        double s = 0.0;
        for (const cx& v : x) s += std::norm(v);
        CHECK(kern::nrm2sq(n, x.data()) == doctest::Approx(s).epsilon(1e-13));

        auto y2 = y;
        kern::axpy(n, a, x.data(), y2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y2[i] - (y[i] + a * x[i])) < 1e-14);

        auto x2 = x;
        kern::scal(n, a, x2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x2[i] - a * x[i]) < 1e-14);
    }
    kern::force(nullptr);
}

TEST_CASE("vector unit agrees with scalar path on every size") {
    if (!kern::avx2_available()) return;
    for (std::size_t n : sizes) {
        auto x = testutil::random_vector(n, 17 * n + 3);
        auto y = testutil::random_vector(n, 19 * n + 4);
        const cx a(-0.25, 1.125);

        kern::force(&kern::scalar_table);
        const cx ds = kern::dotc(n, x.data(), y.data());
        const double ns = kern::nrm2sq(n, x.data());
        auto ys = y;
        kern::axpy(n, a, x.data(), ys.data());
        auto xs = x;
        kern::scal(n, a, xs.data());

        kern::force(&kern::avx2_table);
        const cx dv = kern::dotc(n, x.data(), y.data());
        const double nv = kern::nrm2sq(n, x.data());
        auto yv = y;
        kern::axpy(n, a, x.data(), yv.data());
        auto xv = x;
        kern::scal(n, a, xv.data());
        kern::force(nullptr);

        // Same multiplies in a different summation order: only rounding differs.
        CHECK(std::abs(dv - ds) < 1e-12 * (1.0 + std::abs(ds)));
        CHECK(nv == doctest::Approx(ns).epsilon(1e-12));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(yv[i] - ys[i]) < 1e-13);
            CHECK(std::abs(xv[i] - xs[i]) < 1e-13);
        }
    }
}

TEST_CASE("dispatch reports a usable table") {
    const kern::dispatch_table& t = kern::active();
    CHECK(t.axpy != nullptr);
    CHECK(t.dotc != nullptr);
    CHECK(t.scal != nullptr);
    CHECK(t.nrm2sq != nullptr);
    if (kern::avx2_available()) CHECK(&t == &kern::avx2_table);
}

TEST_CASE("dotc conjugates the first argument") {
    kern::force(&kern::scalar_table);
    const cx x[1] = {cx(0.0, 1.0)};
    const cx y[1] = {cx(0.0, 1.0)};
    CHECK(std::abs(kern::dotc(1, x, y) - cx(1.0, 0.0)) < 1e-15);
    kern::force(nullptr);
}
