#include "sideinfo/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace sideinfo {

namespace {

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) fail(Errc::ParseError, "epsilon must be in [0,1]");
}

struct SupportCell {
  int x, y;
  double p;
  double f;  // -log2 P_{X|Y}
};

std::vector<SupportCell> support_cells(const JointPmf& pmf, const Cond& c) {
  std::vector<SupportCell> cells;
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j)
      if (pmf.at(i, j) > 0.0) cells.push_back({i, j, pmf.at(i, j), c.surprisal(i, j)});
  return cells;
}

struct SubsetMinima {
  double scaled_restricted = 0.0;  // min of P(A) H_A
  std::uint64_t scaled_mask = 0;
  double retained_surprisal = 0.0;  // min of sum_A P log2(1/P_{X|Y})
};

// Gray-code walk over all support subsets with mass >= 1 - eps. The scaled
// restricted entropy decomposes as
//   sum_A P log2(1/P_{X|Y}) + sum_y m_y log2(m_y / P_Y(y)),
// so a single-cell flip touches one y term.
SubsetMinima subset_minima(const JointPmf& pmf, double eps) {
  Cond c = conditionals(pmf);
  auto cells = support_cells(pmf, c);
  int k = static_cast<int>(cells.size());
  if (k > 24 || (std::uint64_t{1} << k) > subset_budget())
    fail(Errc::BudgetExceeded, "subset enumeration over " + std::to_string(k) + " cells");

  double target = 1.0 - eps - 1e-12;
  std::vector<double> my(pmf.ny(), 0.0);
  std::vector<double> yterm(pmf.ny(), 0.0);
  double mass = 0.0, s1 = 0.0, t = 0.0;

  const double inf = std::numeric_limits<double>::infinity();
  SubsetMinima best{inf, 0, inf};
  std::uint64_t best_scaled_mask = 0, best_retained_mask = 0;
  std::uint64_t mask = 0;
  std::uint64_t count = std::uint64_t{1} << k;
  for (std::uint64_t it = 1; it < count; ++it) {
    int bit = std::countr_zero(it);
    const SupportCell& cell = cells[bit];
    std::uint64_t flipped = std::uint64_t{1} << bit;
    t -= yterm[cell.y];
    if (mask & flipped) {
      mask ^= flipped;
      mass -= cell.p;
      s1 -= cell.p * cell.f;
      my[cell.y] -= cell.p;
    } else {
      mask ^= flipped;
      mass += cell.p;
      s1 += cell.p * cell.f;
      my[cell.y] += cell.p;
    }
    double m = my[cell.y];
    yterm[cell.y] = m > 0.0 ? m * std::log2(m / c.py[cell.y]) : 0.0;
    t += yterm[cell.y];

    if (mass < target) continue;
    double scaled = s1 + t;
    if (scaled < best.scaled_restricted - 1e-15 ||
        (std::abs(scaled - best.scaled_restricted) <= 1e-15 && mask < best_scaled_mask)) {
      best.scaled_restricted = scaled;
      best_scaled_mask = mask;
    }
    if (s1 < best.retained_surprisal - 1e-15 ||
        (std::abs(s1 - best.retained_surprisal) <= 1e-15 && mask < best_retained_mask)) {
      best.retained_surprisal = s1;
      best_retained_mask = mask;
    }
  }
  if (!std::isfinite(best.scaled_restricted))
    fail(Errc::EmptyRestriction, "no feasible restriction at this epsilon");

  // Re-evaluate the winners from scratch; the incremental sums drift.
  auto eval = [&](std::uint64_t m) {
    std::vector<double> mym(pmf.ny(), 0.0);
    double v1 = 0.0;
    for (int b = 0; b < k; ++b)
      if (m >> b & 1) mym[cells[b].y] += cells[b].p;
    double v2 = 0.0;
    for (int j = 0; j < pmf.ny(); ++j)
      if (mym[j] > 0.0) v2 += mym[j] * std::log2(mym[j] / c.py[j]);
    for (int b = 0; b < k; ++b)
      if (m >> b & 1) v1 += cells[b].p * cells[b].f;
    return std::pair<double, double>{v1 + v2, v1};
  };
  best.scaled_restricted = eval(best_scaled_mask).first;
  best.retained_surprisal = eval(best_retained_mask).second;
  best.scaled_mask = best_scaled_mask;
  return best;
}

}  // namespace

RestrictedSet RestrictedSet::full(const JointPmf& pmf) {
  RestrictedSet s;
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j) {
      s.cells.emplace_back(i, j);
      s.mass += pmf.at(i, j);
    }
  return s;
}

RestrictedSet RestrictedSet::of(const JointPmf& pmf, std::vector<std::pair<int, int>> cells) {
  RestrictedSet s;
  s.cells = std::move(cells);
  for (auto& [i, j] : s.cells) s.mass += pmf.at(i, j);
  return s;
}

double restricted_entropy(const JointPmf& pmf, const RestrictedSet& a) {
  if (a.mass <= 0.0) fail(Errc::EmptyRestriction, "restriction has zero mass");
  std::vector<double> my(pmf.ny(), 0.0);
  for (auto& [i, j] : a.cells) my[j] += pmf.at(i, j);
  double h = 0.0;
  for (auto& [i, j] : a.cells) {
    double p = pmf.at(i, j);
    if (p > 0.0) h += p * std::log2(my[j] / p);
  }
  return h / a.mass;
}

std::pair<double, RestrictedSet> eps_entropy(const JointPmf& pmf, double eps) {
  check_eps(eps);
  if (eps >= 1.0) return {0.0, RestrictedSet{}};
  Cond c = conditionals(pmf);
  auto cells = support_cells(pmf, c);
  SubsetMinima m = subset_minima(pmf, eps);
  RestrictedSet arg;
  for (std::size_t b = 0; b < cells.size(); ++b)
    if (m.scaled_mask >> b & 1) {
      arg.cells.emplace_back(cells[b].x, cells[b].y);
      arg.mass += cells[b].p;
    }
  return {m.scaled_restricted, arg};
}

double trimmed_entropy(const JointPmf& pmf, double eps) {
  check_eps(eps);
  if (eps >= 1.0) return 0.0;
  return subset_minima(pmf, eps).retained_surprisal;
}

double trimmed_entropy_lp(const JointPmf& pmf, double eps) {
  check_eps(eps);
  if (eps >= 1.0) return 0.0;
  Cond c = conditionals(pmf);
  auto cells = support_cells(pmf, c);
  std::sort(cells.begin(), cells.end(), [](const SupportCell& a, const SupportCell& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.p != b.p) return a.p > b.p;
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  });
  double rem = 1.0 - eps, v = 0.0;
  for (const auto& cell : cells) {
    if (rem <= 1e-15) break;
    double g = std::min(cell.p, rem);
    v += g * cell.f;
    rem -= g;
  }
  return v;
}

std::pair<double, RankedCells> ranked_entropy(const JointPmf& pmf, double eps) {
  check_eps(eps);
  Cond c = conditionals(pmf);
  RankedCells rc;
  struct Item {
    int x, y;
    double pxy, pcond;
  };
  std::vector<Item> items;
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j) items.push_back({i, j, pmf.at(i, j), c.x_given_y(i, j)});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.pcond != b.pcond) return a.pcond > b.pcond;
    if (a.pxy != b.pxy) return a.pxy > b.pxy;
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  });
  double cum = 0.0;
  for (const auto& it : items) {
    cum += it.pxy;
    rc.order.emplace_back(it.x, it.y);
    rc.cumulative.push_back(cum);
  }
  double value = 0.0;
  if (eps >= 1.0) {
    rc.i_star = 0;
    return {0.0, rc};
  }
  double target = 1.0 - eps - 1e-12;
  int istar = 0;
  double kept = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (kept >= target) break;
    kept += items[i].pxy;
    if (items[i].pxy > 0.0) value += items[i].pxy * std::log2(1.0 / items[i].pcond);
    istar = static_cast<int>(i) + 1;
  }
  rc.i_star = istar;
  return {value, rc};
}

LengthQuantile length_quantile(const JointPmf& pmf, int x, double eps) {
  check_eps(eps);
  if (x < 0 || x >= pmf.nx()) fail(Errc::UnknownSymbol, "x index out of range");
  Cond c = conditionals(pmf);
  struct Atom {
    double f, w;
  };
  std::vector<Atom> atoms;
  for (int j = 0; j < pmf.ny(); ++j) {
    double w = c.y_given_x(j, x);
    if (w > 0.0) atoms.push_back({c.surprisal(x, j), w});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.f < b.f; });
  // merge exactly equal lengths
  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().f == a.f)
      merged.back().w += a.w;
    else
      merged.push_back(a);
  }
  if (eps >= 1.0) {
    double tail = 0.0;
    for (const auto& a : merged)
      if (a.f >= 0.0) tail += a.w;
    return {0.0, tail};
  }
  std::vector<double> suffix(merged.size() + 1, 0.0);
  for (std::size_t i = merged.size(); i-- > 0;) suffix[i] = suffix[i + 1] + merged[i].w;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (suffix[i + 1] <= eps + 1e-12) return {merged[i].f, suffix[i]};
  }
  return {merged.back().f, merged.back().w};
}

LengthQuantile length_quantile(const JointPmf& pmf, const std::string& x, double eps) {
  return length_quantile(pmf, pmf.x_index(x), eps);
}

void length_quantile_bounds_check(const JointPmf& pmf, int x, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) fail(Errc::ParseError, "epsilon must be in (0,1]");
  Cond c = conditionals(pmf);
  double v = length_quantile(pmf, x, eps).value;
  double bound = std::log2(1.0 / c.px[x]) + std::log2(1.0 / eps);
  if (v < -1e-9 || v > bound + 1e-9)
    fail(Errc::BoundViolated, "length quantile " + std::to_string(v) + " outside [0, " +
                                  std::to_string(bound) + "]");
}

double mean_length_quantile(const JointPmf& pmf, double eps) {
  check_eps(eps);
  Cond c = conditionals(pmf);
  double s = 0.0;
  for (int i = 0; i < pmf.nx(); ++i) s += c.px[i] * length_quantile(pmf, i, eps).value;
  return s;
}

double surprisal_tail(const JointPmf& pmf, double r) {
  Cond c = conditionals(pmf);
  double s = 0.0;
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j) {
      double p = pmf.at(i, j);
      if (p > 0.0 && c.surprisal(i, j) >= r) s += p;
    }
  return s;
}

}  // namespace sideinfo
