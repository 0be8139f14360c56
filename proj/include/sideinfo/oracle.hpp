#pragma once

#include <vector>

#include "sideinfo/codes.hpp"

namespace sideinfo {

/// Exact optimum of an eps-code search: minimal expected length, the correct
/// set achieving it, and the per-y codeword length multisets of the witness.
struct CodeSearchResult {
  double optimum = 0.0;
  RestrictedSet witness_set;
  std::vector<std::vector<int>> per_y_lengths;
};

/// Average length of a Huffman code for the given weights (not normalized).
/// A single symbol gets the empty codeword. Ties are broken by (weight,
/// creation order), leaves first in canonical symbol order.
double huffman_cost(const std::vector<double>& weights);
std::vector<int> huffman_lengths(const std::vector<double>& weights);

/// Minimum exact E[len] over all eps-codes with common side-information.
///
/// Reduction (proved in the implementation notes): a code with correct set A
/// restricted to y is an injective prefix code on A(y); the cells outside
/// A(y) may reuse any codeword, so the cheapest completion either gives the
/// merged error mass a dedicated leaf or lets it ride one correct codeword
/// (whose weight it then joins for the Huffman build). Both options are
/// searched; the per-y optima combine additively, and A ranges over all
/// support subsets with P(A) >= 1 - eps.
CodeSearchResult optimal_common_code(const JointPmf& pmf, double eps);

/// One-shot sandwich around the optimal length. all bounds carry 1e-9 slack.
struct CodeSandwichReport {
  double eps_entropy_value = 0.0;
  double optimum = 0.0;
  double flag_avg_len = 0.0;
  double flag_error = 0.0;
  bool pass = false;
};

/// Checks eps_entropy <= optimum <= flag-code E[len] <= eps_entropy + 2 and
/// flag error <= eps. Throws BoundViolated when `require` is set.
CodeSandwichReport verify_code_sandwich(const JointPmf& pmf, double eps, bool require = false);

struct EntropySandwichReport {
  double eps_entropy_value = 0.0;
  double trimmed = 0.0;
  double trimmed_lp = 0.0;
  double ranked = 0.0;
  bool pass = false;
};

/// Checks ranked - 2 <= eps_entropy <= ranked, trimmed - 1 <= eps_entropy <=
/// trimmed, and the LP chain lp <= trimmed <= ranked, lp >= ranked - 1.
EntropySandwichReport verify_entropy_sandwich(const JointPmf& pmf, double eps,
                                              bool require = false);

}  // namespace sideinfo
