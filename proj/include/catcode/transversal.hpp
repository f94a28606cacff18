#pragma once

#include <cstdint>
#include <vector>

#include "catcode/groups.hpp"

namespace catcode {

// Group average over m qubit copies, P_m = (d/|G|) sum_g conj(g_{00}) g^{(x)m}.
// P_m is either zero or a projector; its rank counts the copies at which the
// group admits a transversal encoding.
struct multicopy_projector {
    std::size_t copies = 0;
    cmat proj;  // 2^m x 2^m
    double norm_frobenius = 0.0;
    double idempotence_residual = 0.0;  // zero by convention when the projector vanishes
};

multicopy_projector transversal_projector(const finite_unitary_group& g, std::size_t m);

struct multicopy_code {
    std::size_t copies = 0;
    std::vector<std::vector<cx>> codewords;
    double projection_norm = 0.0;     // |P_m |phi>|
    double covariance_residual = 0.0;
};

// Codewords from a seed |phi> (default |0...0>), with the same basis-element
// convention as the oscillator codes.
multicopy_code transversal_code(const finite_unitary_group& g, std::size_t m,
                                const std::vector<cx>& phi);

// y = g^{(x)m} x without materializing the Kronecker power.
void apply_copies(const cmat& g2, std::size_t m, std::vector<cx>& x);

// Monte Carlo average of 2 conj(g_{00}) rho(g) |m, n> over Haar-random g in
// SU(2), where rho(g) is the symmetric-power action on the fixed total photon
// number m + n. The exact average is the rank-one projector onto |1, 0>:
// it returns |1, 0> at (m, n) = (1, 0) and vanishes for every other input.
struct haar_average {
    std::size_t photons_a = 0, photons_b = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<cx> mean;          // components over |k, m+n-k>, k ascending
    double norm = 0.0;             // euclidean norm of the mean
    double standard_error = 0.0;   // sqrt(total component variance / samples)
    double deviation = 0.0;        // distance from the exact average
};

haar_average haar_projector_estimate(std::size_t m, std::size_t n, std::size_t samples,
                                     std::uint64_t seed);

}  // namespace catcode
