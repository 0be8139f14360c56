#pragma once

#include <string>
#include <vector>

#include "sideinfo/common.hpp"

namespace sideinfo {

/// Finite joint distribution P_XY over labeled alphabets.
/// Row-major: p[i * ny + j] = P(x_i, y_j).
struct JointPmf {
  std::vector<std::string> x_labels;
  std::vector<std::string> y_labels;
  std::vector<double> p;

  int nx() const { return static_cast<int>(x_labels.size()); }
  int ny() const { return static_cast<int>(y_labels.size()); }
  double at(int i, int j) const { return p[static_cast<std::size_t>(i) * y_labels.size() + j]; }
  double& at(int i, int j) { return p[static_cast<std::size_t>(i) * y_labels.size() + j]; }

  int x_index(const std::string& label) const;
  int y_index(const std::string& label) const;
};

/// Mixture of joint distributions sharing alphabets. Components are mixed at
/// the whole-sequence level when extended to blocklength n.
struct MixtureSpec {
  std::vector<double> weights;
  std::vector<JointPmf> components;
};

/// Throws unless all JointPmf invariants hold: entries >= 0, total mass 1
/// within kProbTol, strictly positive marginals, unique non-empty labels.
void validate(const JointPmf& pmf);

/// Throws unless weights are positive and sum to 1 and all components share
/// alphabets (content and order) and are themselves valid.
void validate(const MixtureSpec& spec);

/// Marginals and conditionals of a validated pmf, precomputed.
/// surprisal(i,j) = -log2 P_{X|Y}(x_i|y_j); +inf on zero cells.
struct Cond {
  std::vector<double> px, py;
  const JointPmf* pmf;

  double x_given_y(int i, int j) const { return pmf->at(i, j) / py[j]; }
  double y_given_x(int j, int i) const { return pmf->at(i, j) / px[i]; }
  double surprisal(int i, int j) const;
};

Cond conditionals(const JointPmf& pmf);

double conditional_x_given_y(const JointPmf& pmf, const std::string& x, const std::string& y);
double conditional_y_given_x(const JointPmf& pmf, const std::string& y, const std::string& x);

/// H(X|Y) in bits, with 0 log(1/0) = 0.
double conditional_entropy(const JointPmf& pmf);

/// Blocklength-n i.i.d. extension. Labels are tuples joined with the reserved
/// separator; throws BudgetExceeded when |X|^n |Y|^n exceeds the cell budget.
JointPmf product_extension(const JointPmf& pmf, int n);

/// Separator used for product-extension labels. Input labels may not contain it.
inline constexpr const char* kTupleSep = "\xC2\xB7";  // U+00B7 middle dot

/// Entrywise mixture sum_i alpha_i P_i.
JointPmf mix(const MixtureSpec& spec);

/// D(P_X,1 || P_X,2) in bits between X-marginals; +inf on support violation.
double kl_divergence_x_marginals(const JointPmf& p1, const JointPmf& p2);

// --- ingestion / serialization ---

/// JSON schema: {"x_alphabet":[...], "y_alphabet":[...], "pmf":[[row-per-x]]}.
/// Round-trips bit-exactly.
JointPmf pmf_from_json(const std::string& text);
std::string pmf_to_json(const JointPmf& pmf);

/// TSV alternative with header line "x<TAB>y<TAB>p"; missing cells are zero.
JointPmf pmf_from_tsv(const std::string& text);

/// Mixture JSON: {"components":[{"weight":w, "pmf":{<pmf schema>}}, ...]}.
MixtureSpec mixture_from_json(const std::string& text);

/// Loads a pmf or a single-component mixture from a file (JSON by content,
/// TSV otherwise). Mixture files yield all components.
MixtureSpec load_source(const std::string& path);

}  // namespace sideinfo
