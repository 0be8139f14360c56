#include "sideinfo/sources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sideinfo/entropy.hpp"

namespace sideinfo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<std::vector<int>> compositions(int total, int slots) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(slots, 0);
  auto rec = [&](auto&& self, int idx, int rem) -> void {
    if (idx == slots - 1) {
      cur[idx] = rem;
      out.push_back(cur);
      return;
    }
    for (int v = rem; v >= 0; --v) {
      cur[idx] = v;
      self(self, idx + 1, rem - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

double log2_multinomial(int n, const std::vector<int>& counts) {
  double l = std::lgamma(n + 1.0);
  for (int c : counts) l -= std::lgamma(c + 1.0);
  return l / std::log(2.0);
}

double log2_sum_exp2(const std::vector<double>& ls) {
  double mx = kNegInf;
  for (double l : ls) mx = std::max(mx, l);
  if (mx == kNegInf) return kNegInf;
  double s = 0.0;
  for (double l : ls) s += std::exp2(l - mx);
  return mx + std::log2(s);
}

// Precomputed per-component log tables for a validated mixture.
struct MixTables {
  int kx, ky, m;
  std::vector<double> lw;                  // log2 alpha_i
  std::vector<std::vector<double>> lcell;  // [i][x*ky+y] log2 P_i(x,y)
  std::vector<std::vector<double>> lpx;    // [i][x]
  std::vector<std::vector<double>> lpy;    // [i][y]

  explicit MixTables(const MixtureSpec& src) {
    validate(src);
    const auto& first = src.components.front();
    kx = first.nx();
    ky = first.ny();
    m = static_cast<int>(src.components.size());
    for (int i = 0; i < m; ++i) {
      lw.push_back(std::log2(src.weights[i]));
      const auto& c = src.components[i];
      Cond cc = conditionals(c);
      std::vector<double> lc(kx * ky), lx(kx), ly(ky);
      for (int a = 0; a < kx; ++a)
        for (int b = 0; b < ky; ++b)
          lc[a * ky + b] = c.at(a, b) > 0.0 ? std::log2(c.at(a, b)) : kNegInf;
      for (int a = 0; a < kx; ++a) lx[a] = cc.px[a] > 0.0 ? std::log2(cc.px[a]) : kNegInf;
      for (int b = 0; b < ky; ++b) ly[b] = cc.py[b] > 0.0 ? std::log2(cc.py[b]) : kNegInf;
      lcell.push_back(std::move(lc));
      lpx.push_back(std::move(lx));
      lpy.push_back(std::move(ly));
    }
  }

  // log2 of mixture probabilities for a joint type / x type / y type.
  double lp_joint(const std::vector<int>& k) const {
    std::vector<double> ls(m);
    for (int i = 0; i < m; ++i) {
      double l = lw[i];
      for (int c = 0; c < kx * ky; ++c)
        if (k[c] > 0) l += k[c] * lcell[i][c];
      ls[i] = l;
    }
    return log2_sum_exp2(ls);
  }
  double lp_x(const std::vector<int>& cx) const {
    std::vector<double> ls(m);
    for (int i = 0; i < m; ++i) {
      double l = lw[i];
      for (int a = 0; a < kx; ++a)
        if (cx[a] > 0) l += cx[a] * lpx[i][a];
      ls[i] = l;
    }
    return log2_sum_exp2(ls);
  }
  double lp_y(const std::vector<int>& my) const {
    std::vector<double> ls(m);
    for (int i = 0; i < m; ++i) {
      double l = lw[i];
      for (int b = 0; b < ky; ++b)
        if (my[b] > 0) l += my[b] * lpy[i][b];
      ls[i] = l;
    }
    return log2_sum_exp2(ls);
  }
};

double type_work(const std::vector<std::vector<int>>& xcomps, int ky) {
  double w = 0.0;
  for (const auto& cx : xcomps) {
    double t = 1.0;
    for (int c : cx) {
      // C(c + ky - 1, ky - 1)
      double b = 1.0;
      for (int i = 1; i < ky; ++i) b = b * (c + i) / i;
      t *= b;
    }
    w += t;
  }
  return w;
}

void check_type_budget(const std::vector<std::vector<int>>& xcomps, int ky) {
  if (type_work(xcomps, ky) > static_cast<double>(cell_budget()))
    fail(Errc::BudgetExceeded, "joint-type enumeration exceeds the cell budget");
}

// Visits every joint type compatible with the x-composition cx; k is the
// flattened kx x ky count matrix, lrows the log2 multiplicity of y-rows given
// a fixed x^n of this composition.
template <typename Fn>
void for_each_joint_type(const MixTables& t, const std::vector<int>& cx, Fn&& fn) {
  std::vector<std::vector<std::vector<int>>> rows;
  rows.reserve(t.kx);
  for (int a = 0; a < t.kx; ++a) rows.push_back(compositions(cx[a], t.ky));
  std::vector<std::size_t> idx(t.kx, 0);
  std::vector<int> k(t.kx * t.ky, 0);
  while (true) {
    double lrows = 0.0;
    for (int a = 0; a < t.kx; ++a) {
      const auto& r = rows[a][idx[a]];
      for (int b = 0; b < t.ky; ++b) k[a * t.ky + b] = r[b];
      lrows += log2_multinomial(cx[a], r);
    }
    fn(k, lrows);
    int pos = t.kx - 1;
    while (pos >= 0 && ++idx[pos] == rows[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
}

struct Atom {
  double f, w;
};

// eps-quantile of a finite law given atoms (merged within 1e-9).
double atom_quantile(std::vector<Atom>& atoms, double eps) {
  if (eps >= 1.0) return 0.0;
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.f < b.f; });
  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    if (a.w <= 0.0) continue;
    if (!merged.empty() && a.f - merged.back().f <= 1e-9)
      merged.back().w += a.w;
    else
      merged.push_back(a);
  }
  if (merged.empty()) return 0.0;
  double tail = 0.0;
  for (std::size_t i = merged.size(); i-- > 0;) {
    if (tail > eps + 1e-12) return merged[i + 1].f;
    tail += merged[i].w;
  }
  return merged.front().f;
}

}  // namespace

MixtureSpec as_source(const JointPmf& pmf) {
  MixtureSpec s;
  s.weights = {1.0};
  s.components = {pmf};
  return s;
}

double conditional_entropy_rate_exact(const MixtureSpec& src, int n) {
  MixTables t(src);
  auto xcomps = compositions(n, t.kx);
  check_type_budget(xcomps, t.ky);
  double total = 0.0;
  std::vector<int> my(t.ky);
  for (const auto& cx : xcomps) {
    double lx_count = log2_multinomial(n, cx);
    for_each_joint_type(t, cx, [&](const std::vector<int>& k, double lrows) {
      double lpj = t.lp_joint(k);
      if (lpj == kNegInf) return;
      for (int b = 0; b < t.ky; ++b) {
        int s = 0;
        for (int a = 0; a < t.kx; ++a) s += k[a * t.ky + b];
        my[b] = s;
      }
      double lpy = t.lp_y(my);
      total += std::exp2(lx_count + lrows + lpj) * (lpy - lpj);
    });
  }
  return total / n;
}

double ranked_entropy_rate_exact(const JointPmf& base, double eps, int n) {
  if (!(eps >= 0.0 && eps <= 1.0)) fail(Errc::ParseError, "epsilon must be in [0,1]");
  if (eps >= 1.0) return 0.0;
  MixTables t(as_source(base));
  auto xcomps = compositions(n, t.kx);
  check_type_budget(xcomps, t.ky);

  struct Cls {
    double f;       // per-sequence surprisal -log2 P(x^n|y^n)
    double lcell;   // log2 of the per-cell joint mass
    double lcount;  // log2 of the class size
  };
  std::vector<Cls> classes;
  std::vector<int> my(t.ky);
  for (const auto& cx : xcomps) {
    double lx_count = log2_multinomial(n, cx);
    for_each_joint_type(t, cx, [&](const std::vector<int>& k, double lrows) {
      double lpj = t.lp_joint(k);
      if (lpj == kNegInf) return;
      for (int b = 0; b < t.ky; ++b) {
        int s = 0;
        for (int a = 0; a < t.kx; ++a) s += k[a * t.ky + b];
        my[b] = s;
      }
      classes.push_back({t.lp_y(my) - lpj, lpj, lx_count + lrows});
    });
  }
  std::sort(classes.begin(), classes.end(), [](const Cls& a, const Cls& b) {
    if (a.f != b.f) return a.f < b.f;
    return a.lcell > b.lcell;
  });
  double target = 1.0 - eps - 1e-12;
  double cum = 0.0, value = 0.0;
  for (const auto& cls : classes) {
    if (cum >= target) break;
    double pc = std::exp2(cls.lcell);
    double mass = std::exp2(cls.lcount + cls.lcell);
    if (cum + mass < target) {
      cum += mass;
      value += mass * cls.f;
    } else {
      double cells = std::ceil((target - cum) / pc - 1e-12);
      cum += cells * pc;
      value += cells * pc * cls.f;
    }
  }
  return value / n;
}

double mean_length_quantile_rate_exact(const MixtureSpec& src, double eps, int n) {
  if (!(eps >= 0.0 && eps <= 1.0)) fail(Errc::ParseError, "epsilon must be in [0,1]");
  MixTables t(src);
  auto xcomps = compositions(n, t.kx);
  check_type_budget(xcomps, t.ky);
  if (eps >= 1.0) return 0.0;
  double total = 0.0;
  std::vector<int> my(t.ky);
  for (const auto& cx : xcomps) {
    double lx_count = log2_multinomial(n, cx);
    double lpx = t.lp_x(cx);
    if (lpx == kNegInf) continue;
    std::vector<Atom> atoms;
    for_each_joint_type(t, cx, [&](const std::vector<int>& k, double lrows) {
      double lpj = t.lp_joint(k);
      if (lpj == kNegInf) return;
      for (int b = 0; b < t.ky; ++b) {
        int s = 0;
        for (int a = 0; a < t.kx; ++a) s += k[a * t.ky + b];
        my[b] = s;
      }
      atoms.push_back({t.lp_y(my) - lpj, std::exp2(lrows + lpj - lpx)});
    });
    total += std::exp2(lx_count + lpx) * atom_quantile(atoms, eps);
  }
  return total / n;
}

std::pair<double, double> mean_length_quantile_rate_mc(const MixtureSpec& src, double eps, int n,
                                                       const McOptions& mc) {
  MixTables t(src);
  if (eps >= 1.0) return {0.0, 0.0};
  std::mt19937_64 rng(mc.seed);
  std::discrete_distribution<int> comp_dist(src.weights.begin(), src.weights.end());

  // per-component samplers
  std::vector<std::discrete_distribution<int>> xdist;
  std::vector<std::vector<std::discrete_distribution<int>>> ydist;  // [i][x]
  for (int i = 0; i < t.m; ++i) {
    const auto& c = src.components[i];
    Cond cc = conditionals(c);
    xdist.emplace_back(cc.px.begin(), cc.px.end());
    std::vector<std::discrete_distribution<int>> per_x;
    for (int a = 0; a < t.kx; ++a) {
      std::vector<double> w(t.ky);
      for (int b = 0; b < t.ky; ++b) w[b] = c.at(a, b) / cc.px[a];
      per_x.emplace_back(w.begin(), w.end());
    }
    ydist.push_back(std::move(per_x));
  }

  double sum = 0.0, sumsq = 0.0, bracket = 0.0;
  std::vector<int> cx(t.kx);
  for (long s = 0; s < mc.outer_samples; ++s) {
    int comp = comp_dist(rng);
    std::fill(cx.begin(), cx.end(), 0);
    std::vector<int> xs(n);
    for (int k = 0; k < n; ++k) {
      xs[k] = xdist[comp](rng);
      ++cx[xs[k]];
    }
    double work = 1.0;
    for (int c : cx) {
      double b = 1.0;
      for (int i = 1; i < t.ky; ++i) b = b * (c + i) / i;
      work *= b;
    }
    constexpr double kInnerExactBudget = 50000.0;
    double q;
    if (work <= kInnerExactBudget) {
      // exact inner quantile for this composition
      double lpx = t.lp_x(cx);
      std::vector<Atom> atoms;
      std::vector<int> my(t.ky);
      for_each_joint_type(t, cx, [&](const std::vector<int>& k, double lrows) {
        double lpj = t.lp_joint(k);
        if (lpj == kNegInf) return;
        for (int b = 0; b < t.ky; ++b) {
          int s2 = 0;
          for (int a = 0; a < t.kx; ++a) s2 += k[a * t.ky + b];
          my[b] = s2;
        }
        atoms.push_back({t.lp_y(my) - lpj, std::exp2(lrows + lpj - lpx)});
      });
      q = atom_quantile(atoms, eps);
    } else {
      // second-level sampling of y^n | x^n with an order-statistic bracket
      double lpx = t.lp_x(cx);
      std::vector<double> post(t.m);
      for (int i = 0; i < t.m; ++i) {
        double l = t.lw[i];
        for (int a = 0; a < t.kx; ++a)
          if (cx[a] > 0) l += cx[a] * t.lpx[i][a];
        post[i] = std::exp2(l - lpx);
      }
      std::discrete_distribution<int> post_dist(post.begin(), post.end());
      long m = mc.inner_samples;
      std::vector<double> fs(m);
      std::vector<int> my(t.ky), k(t.kx * t.ky);
      for (long r = 0; r < m; ++r) {
        int ci = post_dist(rng);
        std::fill(k.begin(), k.end(), 0);
        for (int pos = 0; pos < n; ++pos) {
          int y = ydist[ci][xs[pos]](rng);
          ++k[xs[pos] * t.ky + y];
        }
        double lpj = t.lp_joint(k);
        for (int b = 0; b < t.ky; ++b) {
          int s2 = 0;
          for (int a = 0; a < t.kx; ++a) s2 += k[a * t.ky + b];
          my[b] = s2;
        }
        fs[r] = t.lp_y(my) - lpj;
      }
      std::sort(fs.begin(), fs.end());
      long j = static_cast<long>(std::ceil((1.0 - eps) * m));
      j = std::clamp(j, long{1}, m);
      long spread = static_cast<long>(std::ceil(2.0 * std::sqrt(m * eps * (1.0 - eps))));
      long jlo = std::clamp(j - spread, long{1}, m);
      long jhi = std::clamp(j + spread, long{1}, m);
      q = fs[j - 1];
      bracket += (fs[jhi - 1] - fs[jlo - 1]) / 2.0;
    }
    q /= n;
    sum += q;
    sumsq += q * q;
  }
  double mean = sum / mc.outer_samples;
  double var = std::max(0.0, sumsq / mc.outer_samples - mean * mean);
  double se = std::sqrt(var / mc.outer_samples) + bracket / mc.outer_samples;
  return {mean, se};
}

std::vector<SweepRow> ranked_rate_sweep(const JointPmf& base, double eps, int n_max) {
  validate(base);
  double h = conditional_entropy(base);
  std::vector<SweepRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    SweepRow r;
    r.quantity = "ranked_entropy_rate";
    r.n = n;
    r.value = ranked_entropy_rate_exact(base, eps, n);
    r.prediction = (1.0 - eps) * h;
    r.gap = r.value - r.prediction;
    r.method = "exact";
    rows.push_back(r);
  }
  return rows;
}

std::vector<SweepRow> length_quantile_rate_sweep(const JointPmf& base, double eps, int n_max,
                                                 const McOptions& mc) {
  validate(base);
  double h = conditional_entropy(base);
  MixtureSpec src = as_source(base);
  std::vector<SweepRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    SweepRow r;
    r.quantity = "mean_length_quantile_rate";
    r.n = n;
    r.prediction = h;
    try {
      r.value = mean_length_quantile_rate_exact(src, eps, n);
      r.method = "exact";
    } catch (const Error& e) {
      if (e.kind() != Errc::BudgetExceeded) throw;
      auto [v, se] = mean_length_quantile_rate_mc(src, eps, n, mc);
      r.value = v;
      r.stderr_val = se;
      r.method = "mc";
    }
    r.gap = r.value - r.prediction;
    rows.push_back(r);
  }
  return rows;
}

MixturePrediction mixture_prediction(const MixtureSpec& spec) {
  validate(spec);
  const int m = static_cast<int>(spec.components.size());
  std::vector<double> h(m);
  for (int i = 0; i < m; ++i) h[i] = conditional_entropy(spec.components[i]);

  // group components by identical X-marginals
  std::vector<std::vector<double>> px(m);
  for (int i = 0; i < m; ++i) px[i] = conditionals(spec.components[i]).px;
  std::vector<int> group(m, -1);
  int groups = 0;
  for (int i = 0; i < m; ++i) {
    for (int g = 0; g < i; ++g) {
      if (group[g] != g) continue;
      bool same = true;
      for (int a = 0; a < static_cast<int>(px[i].size()); ++a)
        if (std::abs(px[i][a] - px[g][a]) > kProbTol) {
          same = false;
          break;
        }
      if (same) {
        group[i] = group[g];
        break;
      }
    }
    if (group[i] < 0) {
      group[i] = i;
      ++groups;
    }
  }
  // distinguishability across groups (both directions)
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || group[i] == group[j]) continue;
      if (kl_divergence_x_marginals(spec.components[i], spec.components[j]) <= 1e-12 ||
          kl_divergence_x_marginals(spec.components[j], spec.components[i]) <= 1e-12)
        fail(Errc::RegimeUndetermined, "X-marginals differ but are not distinguishable");
    }

  if (groups == 1) {
    double mx = 0.0;
    for (int i = 0; i < m; ++i) mx = std::max(mx, h[i]);
    return {MixtureRegime::Max, mx};
  }
  if (groups == m) {
    double avg = 0.0;
    for (int i = 0; i < m; ++i) avg += spec.weights[i] * h[i];
    return {MixtureRegime::Average, avg};
  }
  double pred = 0.0;
  for (int g = 0; g < m; ++g) {
    if (group[g] != g) continue;
    double alpha = 0.0, mx = 0.0;
    for (int i = 0; i < m; ++i)
      if (group[i] == g) {
        alpha += spec.weights[i];
        mx = std::max(mx, h[i]);
      }
    pred += alpha * mx;
  }
  return {MixtureRegime::Grouped, pred};
}

std::vector<SweepRow> mixture_rate_sweep(const MixtureSpec& spec, double eps, int n_max,
                                         const McOptions& mc) {
  MixturePrediction pred = mixture_prediction(spec);
  std::vector<SweepRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    SweepRow r;
    r.quantity = "mixture_length_quantile_rate";
    r.n = n;
    r.prediction = pred.value;
    try {
      r.value = mean_length_quantile_rate_exact(spec, eps, n);
      r.method = "exact";
    } catch (const Error& e) {
      if (e.kind() != Errc::BudgetExceeded) throw;
      auto [v, se] = mean_length_quantile_rate_mc(spec, eps, n, mc);
      r.value = v;
      r.stderr_val = se;
      r.method = "mc";
    }
    r.gap = r.value - r.prediction;
    rows.push_back(r);
  }
  return rows;
}

SpectrumEstimate spectrum_quantiles(const MixtureSpec& src, int n, double eps_tail, long samples,
                                    std::uint64_t seed) {
  if (samples < 1) fail(Errc::ParseError, "samples must be >= 1");
  MixTables t(src);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> comp_dist(src.weights.begin(), src.weights.end());
  std::vector<std::discrete_distribution<int>> cell_dist;
  for (int i = 0; i < t.m; ++i) {
    const auto& c = src.components[i];
    cell_dist.emplace_back(c.p.begin(), c.p.end());
  }
  std::vector<double> vs(samples);
  std::vector<int> k(t.kx * t.ky), my(t.ky);
  for (long s = 0; s < samples; ++s) {
    int ci = comp_dist(rng);
    std::fill(k.begin(), k.end(), 0);
    for (int pos = 0; pos < n; ++pos) ++k[cell_dist[ci](rng)];
    double lpj = t.lp_joint(k);
    for (int b = 0; b < t.ky; ++b) {
      int s2 = 0;
      for (int a = 0; a < t.kx; ++a) s2 += k[a * t.ky + b];
      my[b] = s2;
    }
    vs[s] = (t.lp_y(my) - lpj) / n;
  }
  std::sort(vs.begin(), vs.end());
  auto pick = [&](double q) {
    long j = std::clamp(static_cast<long>(std::ceil(q * samples)), long{1}, samples);
    return vs[j - 1];
  };
  SpectrumEstimate est;
  est.samples = samples;
  est.eps_tail = eps_tail;
  est.quantile_lo = pick(eps_tail);
  est.quantile_hi = pick(1.0 - eps_tail);
  return est;
}

RateBracketReport rate_bracket_check(const JointPmf& base, double eps, int n, bool require) {
  validate(base);
  MixTables t(as_source(base));
  auto xcomps = compositions(n, t.kx);
  check_type_budget(xcomps, t.ky);
  std::vector<Atom> atoms;
  std::vector<int> my(t.ky);
  for (const auto& cx : xcomps) {
    double lx_count = log2_multinomial(n, cx);
    for_each_joint_type(t, cx, [&](const std::vector<int>& k, double lrows) {
      double lpj = t.lp_joint(k);
      if (lpj == kNegInf) return;
      for (int b = 0; b < t.ky; ++b) {
        int s2 = 0;
        for (int a = 0; a < t.kx; ++a) s2 += k[a * t.ky + b];
        my[b] = s2;
      }
      atoms.push_back({(t.lp_y(my) - lpj) / n, std::exp2(lx_count + lrows + lpj)});
    });
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.f < b.f; });
  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && a.f - merged.back().f <= 1e-12)
      merged.back().w += a.w;
    else
      merged.push_back(a);
  }
  RateBracketReport rep;
  // q_lo: largest atom with strictly-below mass <= eps
  double below = 0.0;
  rep.q_lo = merged.front().f;
  for (const auto& a : merged) {
    if (below <= eps + 1e-12) rep.q_lo = a.f;
    below += a.w;
  }
  // q_hi: smallest atom with at-or-above mass <= eps
  double at_or_above = 0.0;
  rep.q_hi = merged.back().f;
  for (std::size_t i = merged.size(); i-- > 0;) {
    at_or_above += merged[i].w;
    if (at_or_above <= eps + 1e-12) rep.q_hi = merged[i].f;
  }
  rep.value = ranked_entropy_rate_exact(base, eps, n);
  rep.slack = 2.0 / n + std::max(0.0, rep.q_hi - rep.q_lo);
  rep.pass = (1.0 - eps) * rep.q_lo - rep.slack <= rep.value + 1e-9 &&
             rep.value <= rep.q_hi + rep.slack + 1e-9;
  if (require && !rep.pass) fail(Errc::BoundViolated, "rate bracket failed");
  return rep;
}

DiagnosticReport encoder_gain_diagnostic(const MixtureSpec& src, const std::vector<double>& eps_seq,
                                         int n_max) {
  if (!eps_seq.empty() && static_cast<int>(eps_seq.size()) < n_max)
    fail(Errc::ParseError, "epsilon sequence shorter than n_max");
  DiagnosticReport rep;
  for (int n = 1; n <= n_max; ++n) {
    DiagnosticRow row;
    row.n = n;
    row.eps_n = eps_seq.empty() ? 1.0 / std::sqrt(static_cast<double>(n))
                                : eps_seq[static_cast<std::size_t>(n - 1)];
    row.entropy_rate = conditional_entropy_rate_exact(src, n);
    row.quantile_rate = mean_length_quantile_rate_exact(src, row.eps_n, n);
    row.d_n = row.entropy_rate - row.quantile_rate;
    rep.rows.push_back(row);
  }
  rep.flag = !rep.rows.empty() && rep.rows.back().d_n >= -rep.gamma;
  return rep;
}

BoundednessReport boundedness_report(const MixtureSpec& src, int n_max) {
  validate(src);
  BoundednessReport rep;
  const int m = static_cast<int>(src.components.size());
  double avg_h = 0.0, alpha_entropy = 0.0;
  for (int i = 0; i < m; ++i) {
    avg_h += src.weights[i] * conditional_entropy(src.components[i]);
    alpha_entropy -= src.weights[i] * std::log2(src.weights[i]);
  }
  bool pass = true;
  for (int n = 1; n <= n_max; ++n) {
    BoundednessRow row;
    row.n = n;
    row.entropy_rate = conditional_entropy_rate_exact(src, n);
    row.bound = m == 1 ? avg_h : avg_h + (alpha_entropy + std::log2(std::exp(1.0))) / n;
    pass = pass && row.entropy_rate <= row.bound + 1e-9;
    rep.max_rate = std::max(rep.max_rate, row.entropy_rate);
    rep.rows.push_back(row);
  }
  rep.pass = pass;
  return rep;
}

}  // namespace sideinfo
