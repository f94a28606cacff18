#pragma once

#include <string>
#include <vector>

#include "catcode/channels.hpp"

namespace catcode {

// Damaged code space after the loss family: an orthonormal support basis
// s_0 .. s_{S-1} spanning { E_c |k> } and the channel written in it,
// A_c[i][k] = <s_i | E_c | k>.
struct effective_channel_t {
    std::size_t support_dim = 0;
    std::size_t code_dim = 0;
    std::vector<std::vector<cx>> basis;  // support vectors in the ambient space
    std::vector<cmat> blocks;            // one support_dim x code_dim matrix per operator
};

effective_channel_t effective_channel(const bosonic_code& c, const kraus_set& k);

// Entanglement fidelity of the transpose-channel recovery
// R_r = (1/sqrt(d)) A_r^dag sigma^{-1/2}, sigma = (1/d) sum_c A_c A_c^dag.
double fidelity_transpose(const effective_channel_t& e);
std::vector<cmat> transpose_kraus(const std::vector<cmat>& blocks, std::size_t code_dim);

struct recovery_result {
    double fidelity = 0.0;            // certified lower bound at convergence
    double fidelity_upper = 0.0;      // dual upper bound
    double gap = 0.0;                 // fidelity_upper - fidelity
    int iterations = 0;               // worst block
    bool certified = false;
    std::size_t support_dim = 0;
    std::vector<std::size_t> component_sizes;
};

// Optimal recovery fidelity by splitting ADMM over the semidefinite cone and
// the trace-preserving affine space of the recovery Choi matrix. The channel
// couples disjoint support components independently, so the problem decomposes
// into blocks solved at proportionally tightened tolerance.
recovery_result fidelity_optimal(const effective_channel_t& e, double tol = 1e-8,
                                 int max_iterations = 50000);

struct sweep_point {
    std::string group;
    double alpha = 0.0;
    double theta = 0.0;
    double gamma = 0.0;
    int max_weight = 8;
    double tol = 1e-8;
};

struct sweep_row {
    sweep_point point;
    double infidelity_opt = 0.0;
    double infidelity_transpose = 0.0;
    double gap = 0.0;
    std::size_t support_dim = 0;
    std::size_t cutoff = 0;
    bool certified = false;
};

sweep_row solve_point(const sweep_point& p);
std::vector<sweep_row> run_sweep(const std::vector<sweep_point>& points, std::size_t jobs);

}  // namespace catcode
