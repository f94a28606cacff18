#pragma once

#include <utility>
#include <vector>

#include "catcode/codes.hpp"

namespace catcode {

// Two-mode pure-loss Kraus family
//   E_{p1 p2} = (gamma/(1-gamma))^{(p1+p2)/2} a^{p1} b^{p2} / sqrt(p1! p2!)
//               (1-gamma)^{(n1+n2)/2},
// truncated to p1 + p2 <= max_weight. At gamma = 0 the family collapses to
// the identity alone. Operators are applied lazily to vectors.
struct kraus_set {
    double gamma = 0.0;
    int max_weight = 0;
    fock_space space;
    std::vector<std::pair<int, int>> labels;
    double tail_bound = 0.0;  // completeness deficit of the truncated family
};

kraus_set kraus(double gamma, int max_weight, const fock_space& sp);  // throws TailTooLarge

// max |(sum_p E_p^dag E_p - 1)_{nn}| over the block n1 + n2 <= cutoff - max_weight,
// where the truncated sums are free of cutoff artifacts.
double completeness_deficit(double gamma, int max_weight, const fock_space& sp);

fock_state apply_kraus(const kraus_set& k, std::size_t which, const fock_state& v);
fock_state apply_kraus_adjoint(const kraus_set& k, std::size_t which, const fock_state& v);

struct kl_report {
    std::size_t codewords = 0;
    std::vector<std::pair<int, int>> labels;
    cmat gram;              // row/col index = kraus * d + codeword
    double score_offdiag;   // worst cross-codeword entry over all operator pairs
    double score_diag;      // worst same-operator diagonal mismatch between codewords
    double score;           // max of the two
};
kl_report kl_matrix(const bosonic_code& c, const kraus_set& k);

struct theta_scan_result {
    std::vector<double> thetas;
    std::vector<double> scores;
    std::size_t argmax = 0, argmin = 0;
};
theta_scan_result kl_theta_scan(const std::string& group_name, double alpha,
                                const std::vector<double>& thetas, double gamma, int max_weight);

}  // namespace catcode
