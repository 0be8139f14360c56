#pragma once

#include <utility>
#include <vector>

#include "sideinfo/dist.hpp"

namespace sideinfo {

/// A subset A of X x Y with its probability mass.
struct RestrictedSet {
  std::vector<std::pair<int, int>> cells;
  double mass = 0.0;

  static RestrictedSet full(const JointPmf& pmf);
  static RestrictedSet of(const JointPmf& pmf, std::vector<std::pair<int, int>> cells);
};

/// All cells ranked by P_{X|Y} descending, with the cumulative P_XY mass and
/// the cut index i_star (1-based; 0 means "keep nothing", used at eps = 1).
/// Ties in P_{X|Y} are broken by descending P_XY, then by (x,y) index.
struct RankedCells {
  std::vector<std::pair<int, int>> order;
  std::vector<double> cumulative;
  int i_star = 0;
};

/// epsilon-quantile of the ideal codeword length -log2 P_{X|Y}(x|Y) under
/// P_{Y|X}(.|x). tail_mass_at_value = Pr{length >= value}.
struct LengthQuantile {
  double value = 0.0;
  double tail_mass_at_value = 0.0;
};

/// Conditional entropy of the law restricted to A (normalized by mass(A)).
/// Throws EmptyRestriction when mass(A) is zero.
double restricted_entropy(const JointPmf& pmf, const RestrictedSet& a);

/// Minimum of P(A) * H_A(X|Y) over subsets A with P(A) >= 1 - eps, by
/// exhaustive subset search over support cells. Returns the minimum and one
/// argmin (ties: smallest canonical cell mask). eps = 1 returns {0, empty}.
std::pair<double, RestrictedSet> eps_entropy(const JointPmf& pmf, double eps);

/// Minimum retained surprisal sum_A P log2(1/P_{X|Y}) over the same family.
double trimmed_entropy(const JointPmf& pmf, double eps);

/// LP relaxation of trimmed_entropy: cells may be kept fractionally. Solved
/// in closed form by filling cells in surprisal order; the boundary cell gets
/// the fractional remainder.
double trimmed_entropy_lp(const JointPmf& pmf, double eps);

/// Ranked surrogate: keep whole cells in P_{X|Y}-descending order until the
/// kept mass reaches 1 - eps; value is the retained surprisal of the kept set.
std::pair<double, RankedCells> ranked_entropy(const JointPmf& pmf, double eps);

/// Quantile of the per-symbol ideal length law; exact over the finite set of
/// attained lengths. eps = 1 returns 0; eps = 0 returns the supported maximum.
LengthQuantile length_quantile(const JointPmf& pmf, int x, double eps);
LengthQuantile length_quantile(const JointPmf& pmf, const std::string& x, double eps);

/// Asserts 0 <= value <= log2(1/P_X(x)) + log2(1/eps); throws BoundViolated.
void length_quantile_bounds_check(const JointPmf& pmf, int x, double eps);

/// Mean length quantile sum_x P_X(x) * length_quantile(x, eps).
double mean_length_quantile(const JointPmf& pmf, double eps);

/// Pr{ -log2 P_{X|Y}(X|Y) >= r } under P_XY.
double surprisal_tail(const JointPmf& pmf, double r);

}  // namespace sideinfo
