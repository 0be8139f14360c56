#include "sideinfo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

namespace sideinfo {

namespace {

struct Node {
  double w;
  int id;  // leaves get canonical ids, merged nodes follow in creation order
  int left = -1, right = -1;
};

}  // namespace

std::vector<int> huffman_lengths(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n == 0) return {};
  if (n == 1) return {0};
  std::vector<Node> nodes;
  nodes.reserve(2 * n);
  auto cmp = [&](int a, int b) {
    if (nodes[a].w != nodes[b].w) return nodes[a].w > nodes[b].w;
    return nodes[a].id > nodes[b].id;
  };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> heap(cmp);
  for (int i = 0; i < n; ++i) {
    nodes.push_back({weights[i], i});
    heap.push(i);
  }
  int next_id = n;
  while (heap.size() > 1) {
    int a = heap.top();
    heap.pop();
    int b = heap.top();
    heap.pop();
    nodes.push_back({nodes[a].w + nodes[b].w, next_id++, a, b});
    heap.push(static_cast<int>(nodes.size()) - 1);
  }
  std::vector<int> depth(nodes.size(), 0), lens(n, 0);
  for (int i = static_cast<int>(nodes.size()) - 1; i >= 0; --i) {
    if (nodes[i].left >= 0) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
    }
  }
  for (int i = 0; i < n; ++i) lens[i] = depth[i];
  return lens;
}

double huffman_cost(const std::vector<double>& weights) {
  auto lens = huffman_lengths(weights);
  double c = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) c += weights[i] * lens[i];
  return c;
}

namespace {

// Cheapest completion of one y-slice given the correct weights and the merged
// error mass. The error cells either get a dedicated leaf or reuse ("ride")
// the codeword of one correct symbol, whose Huffman weight they then join.
// Riding symbol j costs exactly huffman_cost with w_j replaced by w_j + e,
// and enumerating j is exhaustive: in any prefix code the riders move to the
// shortest leaf, which some j attains.
double slice_cost(const std::vector<double>& ws, double e) {
  if (ws.empty()) return 0.0;  // lone codeword, length 0
  if (e <= 0.0) return huffman_cost(ws);
  std::vector<double> ext(ws);
  ext.push_back(e);
  double best = huffman_cost(ext);
  for (std::size_t j = 0; j < ws.size(); ++j) {
    std::vector<double> mod(ws);
    mod[j] += e;
    best = std::min(best, huffman_cost(mod));
  }
  return best;
}

std::vector<int> slice_lengths(const std::vector<double>& ws, double e) {
  if (ws.empty()) return {0};
  if (e <= 0.0) return huffman_lengths(ws);
  std::vector<double> ext(ws);
  ext.push_back(e);
  double best = huffman_cost(ext);
  std::vector<int> lens = huffman_lengths(ext);
  for (std::size_t j = 0; j < ws.size(); ++j) {
    std::vector<double> mod(ws);
    mod[j] += e;
    double c = huffman_cost(mod);
    if (c < best - 1e-15) {
      best = c;
      lens = huffman_lengths(mod);
    }
  }
  return lens;
}

struct Option {
  std::uint32_t submask;
  double mass;
  double cost;
};

}  // namespace

CodeSearchResult optimal_common_code(const JointPmf& pmf, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) fail(Errc::ParseError, "epsilon must be in [0,1]");
  if (pmf.nx() > 12) fail(Errc::BudgetExceeded, "|X| above the Huffman instance budget");
  Cond c = conditionals(pmf);

  // support per y
  std::vector<std::vector<int>> xs(pmf.ny());
  int support = 0;
  for (int j = 0; j < pmf.ny(); ++j)
    for (int i = 0; i < pmf.nx(); ++i)
      if (pmf.at(i, j) > 0.0) {
        xs[j].push_back(i);
        ++support;
      }
  if (support > 20) fail(Errc::BudgetExceeded, "support above the enumeration budget");

  // Per-y option tables, Pareto-pruned: an option with no more mass and no
  // less cost than another can never enter an optimal combination.
  std::vector<std::vector<Option>> options(pmf.ny());
  for (int j = 0; j < pmf.ny(); ++j) {
    std::vector<Option> all;
    const auto& sup = xs[j];
    double col = 0.0;
    for (int i : sup) col += pmf.at(i, j);
    for (std::uint32_t s = 0; s < (1u << sup.size()); ++s) {
      std::vector<double> ws;
      double m = 0.0;
      for (std::size_t b = 0; b < sup.size(); ++b)
        if (s >> b & 1) {
          ws.push_back(pmf.at(sup[b], j));
          m += ws.back();
        }
      all.push_back({s, m, slice_cost(ws, col - m)});
    }
    std::sort(all.begin(), all.end(), [](const Option& a, const Option& b) {
      if (a.mass != b.mass) return a.mass > b.mass;
      if (a.cost != b.cost) return a.cost < b.cost;
      return a.submask < b.submask;
    });
    double best_cost = std::numeric_limits<double>::infinity();
    for (const Option& o : all) {
      if (o.cost < best_cost - 1e-15) {
        options[j].push_back(o);
        best_cost = o.cost;
      }
    }
  }

  // Combine slices; prune on reachable mass and on the running best.
  const int ny = pmf.ny();
  std::vector<double> max_mass_from(ny + 1, 0.0), min_cost_from(ny + 1, 0.0);
  for (int j = ny - 1; j >= 0; --j) {
    double mm = 0.0, mc = std::numeric_limits<double>::infinity();
    for (const Option& o : options[j]) {
      mm = std::max(mm, o.mass);
      mc = std::min(mc, o.cost);
    }
    max_mass_from[j] = max_mass_from[j + 1] + mm;
    min_cost_from[j] = min_cost_from[j + 1] + mc;
  }

  double target = 1.0 - eps - 1e-12;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> pick(ny, 0), best_pick;
  auto rec = [&](auto&& self, int j, double mass, double cost) -> void {
    if (cost + min_cost_from[j] >= best) return;
    if (j == ny) {
      if (mass >= target && cost < best) {
        best = cost;
        best_pick = pick;
      }
      return;
    }
    if (mass + max_mass_from[j] < target) return;
    for (const Option& o : options[j]) {
      pick[j] = o.submask;
      self(self, j + 1, mass + o.mass, cost + o.cost);
    }
  };
  rec(rec, 0, 0.0, 0.0);
  if (!std::isfinite(best)) fail(Errc::EmptyRestriction, "no feasible code at this epsilon");

  CodeSearchResult res;
  std::vector<std::pair<int, int>> cells;
  for (int j = 0; j < ny; ++j) {
    const auto& sup = xs[j];
    std::uint32_t s = best_pick[j];
    std::vector<double> ws;
    double col = 0.0, m = 0.0;
    for (int i : sup) col += pmf.at(i, j);
    for (std::size_t b = 0; b < sup.size(); ++b)
      if (s >> b & 1) {
        ws.push_back(pmf.at(sup[b], j));
        m += ws.back();
        cells.emplace_back(sup[b], j);
      }
    res.optimum += slice_cost(ws, col - m);
    res.per_y_lengths.push_back(slice_lengths(ws, col - m));
  }
  res.witness_set = RestrictedSet::of(pmf, std::move(cells));
  return res;
}

CodeSandwichReport verify_code_sandwich(const JointPmf& pmf, double eps, bool require) {
  CodeSandwichReport rep;
  auto [he, arg] = eps_entropy(pmf, eps);
  rep.eps_entropy_value = he;
  rep.optimum = optimal_common_code(pmf, eps).optimum;
  CodeStats stats;
  if (arg.cells.empty()) {
    // eps = 1: the flag scheme degenerates to the lone flag bit
    stats.error = 0.0;
    stats.avg_len = 1.0;
  } else {
    stats = evaluate_common_code(pmf, build_flag_code(pmf, arg));
  }
  rep.flag_avg_len = stats.avg_len;
  rep.flag_error = stats.error;
  rep.pass = he <= rep.optimum + 1e-9 && rep.optimum <= rep.flag_avg_len + 1e-9 &&
             rep.flag_avg_len <= he + 2.0 + 1e-9 && rep.flag_error <= eps + 1e-12;
  if (require && !rep.pass) fail(Errc::BoundViolated, "one-shot code sandwich failed");
  return rep;
}

EntropySandwichReport verify_entropy_sandwich(const JointPmf& pmf, double eps, bool require) {
  EntropySandwichReport rep;
  rep.eps_entropy_value = eps_entropy(pmf, eps).first;
  rep.trimmed = trimmed_entropy(pmf, eps);
  rep.trimmed_lp = trimmed_entropy_lp(pmf, eps);
  rep.ranked = ranked_entropy(pmf, eps).first;
  double he = rep.eps_entropy_value;
  rep.pass = rep.ranked - 2.0 <= he + 1e-9 && he <= rep.ranked + 1e-9 &&
             rep.trimmed - 1.0 <= he + 1e-9 && he <= rep.trimmed + 1e-9 &&
             rep.trimmed_lp <= rep.trimmed + 1e-9 && rep.trimmed <= rep.ranked + 1e-9 &&
             rep.trimmed_lp >= rep.ranked - 1.0 - 1e-9;
  if (require && !rep.pass) fail(Errc::BoundViolated, "entropy sandwich failed");
  return rep;
}

}  // namespace sideinfo
