#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sideinfo/dist.hpp"

namespace sideinfo {

/// One row of a finite-blocklength sweep. Values are bits per symbol.
struct SweepRow {
  std::string quantity;
  int n = 0;
  double value = 0.0;
  double prediction = 0.0;
  double gap = 0.0;        // value - prediction, exactly
  double stderr_val = 0.0; // 0 for exact rows
  std::string method;      // "exact" or "mc"
};

/// Empirical bracket of the normalized surprisal spectrum.
struct SpectrumEstimate {
  long samples = 0;
  double quantile_lo = 0.0;
  double quantile_hi = 0.0;
  double eps_tail = 0.0;
};

struct McOptions {
  long outer_samples = 20000;
  long inner_samples = 10000;
  std::uint64_t seed = kDefaultSeed;
};

/// Wraps a single pmf as a one-component mixture (i.i.d. source).
MixtureSpec as_source(const JointPmf& pmf);

// --- exact finite-n engines (joint-type enumeration; throw BudgetExceeded) ---

/// (1/n) H(X^n|Y^n) of the mixture-of-products source.
double conditional_entropy_rate_exact(const MixtureSpec& src, int n);

/// (1/n) * ranked_entropy of the i.i.d. product, without materializing it.
double ranked_entropy_rate_exact(const JointPmf& base, double eps, int n);

/// (1/n) sum_{x^n} P(x^n) quantile(x^n, eps) of the mixture-of-products source.
double mean_length_quantile_rate_exact(const MixtureSpec& src, double eps, int n);

/// Monte Carlo counterpart; exact inner quantiles when the per-type law fits
/// the budget, second-level sampling otherwise. Returns {estimate, stderr}.
std::pair<double, double> mean_length_quantile_rate_mc(const MixtureSpec& src, double eps, int n,
                                                       const McOptions& mc);

// --- sweeps ---

/// Ranked-entropy rate against the i.i.d. prediction (1 - eps) * H(X|Y).
std::vector<SweepRow> ranked_rate_sweep(const JointPmf& base, double eps, int n_max);

/// Mean-length-quantile rate against the i.i.d. prediction H(X|Y). Falls back
/// to MC (with reported stderr) past the exact budget.
std::vector<SweepRow> length_quantile_rate_sweep(const JointPmf& base, double eps, int n_max,
                                                 const McOptions& mc = {});

/// Mixture regimes recognized for the sweep prediction.
enum class MixtureRegime { Average, Max, Grouped };

struct MixturePrediction {
  MixtureRegime regime;
  double value;
};

/// Picks the applicable sufficient condition: distinct X-marginals pairwise
/// distinguishable (prediction sum_i alpha_i H_i), identical X-marginals
/// (prediction max_i H_i), or groups of identical marginals distinguishable
/// across groups (prediction sum_g alpha_g max_{i in g} H_i). Throws
/// RegimeUndetermined when none applies.
MixturePrediction mixture_prediction(const MixtureSpec& spec);

std::vector<SweepRow> mixture_rate_sweep(const MixtureSpec& spec, double eps, int n_max,
                                         const McOptions& mc = {});

/// Samples (x^n, y^n) and returns the (eps_tail, 1 - eps_tail) empirical
/// quantiles of -(1/n) log2 P(x^n|y^n).
SpectrumEstimate spectrum_quantiles(const MixtureSpec& src, int n, double eps_tail, long samples,
                                    std::uint64_t seed);

/// Finite-n surrogate of the rate bracket around the ranked-entropy rate:
/// (1-eps) q_lo - slack <= value <= q_hi + slack with q_lo the exact eps-
/// quantile of the normalized spectrum, q_hi the smallest atom whose at-or-
/// above mass is <= eps, and slack = 2/n + (q_hi - q_lo).
struct RateBracketReport {
  double value = 0.0;
  double q_lo = 0.0;
  double q_hi = 0.0;
  double slack = 0.0;
  bool pass = false;
};

RateBracketReport rate_bracket_check(const JointPmf& base, double eps, int n,
                                     bool require = false);

/// Finite-n indicator for "encoder side-information does not help":
/// d_n = (1/n)H(X^n|Y^n) - (1/n) mean-length-quantile rate at eps_n.
struct DiagnosticRow {
  int n = 0;
  double eps_n = 0.0;
  double entropy_rate = 0.0;
  double quantile_rate = 0.0;
  double d_n = 0.0;
};

struct DiagnosticReport {
  std::vector<DiagnosticRow> rows;
  double gamma = 0.02;
  bool flag = false;  // d_{n_max} >= -gamma
};

/// eps_seq empty selects the default eps_n = n^{-1/2}.
DiagnosticReport encoder_gain_diagnostic(const MixtureSpec& src, const std::vector<double>& eps_seq,
                                         int n_max);

/// Reports (1/n)H(X^n|Y^n) for n <= n_max together with the mixture bound
/// sum_i alpha_i H_i(X|Y) + (H(alpha) + log2 e)/n; for one component the
/// bound is H(X|Y) itself.
struct BoundednessRow {
  int n = 0;
  double entropy_rate = 0.0;
  double bound = 0.0;
};

struct BoundednessReport {
  std::vector<BoundednessRow> rows;
  double max_rate = 0.0;
  bool pass = false;
};

BoundednessReport boundedness_report(const MixtureSpec& src, int n_max);

}  // namespace sideinfo
