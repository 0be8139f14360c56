#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "sideinfo/dist.hpp"

namespace testutil {

inline sideinfo::JointPmf make_pmf(int nx, int ny, std::vector<double> p) {
  sideinfo::JointPmf pmf;
  for (int i = 0; i < nx; ++i) pmf.x_labels.push_back("x" + std::to_string(i));
  for (int j = 0; j < ny; ++j) pmf.y_labels.push_back("y" + std::to_string(j));
  pmf.p = std::move(p);
  return pmf;
}

// X uniform bit, Y = X flipped with probability p.
inline sideinfo::JointPmf dsbs(double p) {
  return make_pmf(2, 2, {(1 - p) / 2, p / 2, p / 2, (1 - p) / 2});
}

// X ~ Bern(q) (P(x=1)=q), Y = X flipped with probability p.
inline sideinfo::JointPmf flip_source(double q, double p) {
  return make_pmf(2, 2, {(1 - q) * (1 - p), (1 - q) * p, q * p, q * (1 - p)});
}

// deterministic Y = X over k symbols
inline sideinfo::JointPmf identity_pmf(int k) {
  std::vector<double> p(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i) * k + i] = 1.0 / k;
  return make_pmf(k, k, std::move(p));
}

inline sideinfo::JointPmf uniform_pmf(int nx, int ny) {
  return make_pmf(nx, ny, std::vector<double>(static_cast<std::size_t>(nx) * ny, 1.0 / (nx * ny)));
}

// random pmf with optional sparsity; marginals stay positive
inline sideinfo::JointPmf random_pmf(std::mt19937_64& rng, int nx, int ny,
                                     double zero_frac = 0.0) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (true) {
    std::vector<double> p(static_cast<std::size_t>(nx) * ny);
    for (auto& v : p) v = coin(rng) < zero_frac ? 0.0 : unif(rng);
    double total = 0.0;
    for (double v : p) total += v;
    if (total <= 0) continue;
    for (auto& v : p) v /= total;
    sideinfo::JointPmf pmf = make_pmf(nx, ny, std::move(p));
    try {
      sideinfo::validate(pmf);
      return pmf;
    } catch (const sideinfo::Error&) {
      continue;  // a zero marginal; redraw
    }
  }
}

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace testutil

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
