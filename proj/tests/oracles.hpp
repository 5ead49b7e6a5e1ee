// oracles.hpp — independent brute-force reference implementations used by the
// tests. Everything here recomputes results from first principles and must
// not share code paths with the library internals it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "csslb/ensembles.hpp"
#include "csslb/graph_model.hpp"

namespace oracle {

// All size-k subsets of {1..n}, lexicographic.
inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 1);
  if (k == 0 || k > n) return out;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Minimum weight over ALL edge subsets that cover exactly the vertices of S,
// are acyclic, and form exactly g connected components.
inline std::optional<int> min_forest_bruteforce(const csslb::WeightedGraph& g,
                                                const std::vector<int>& s,
                                                int target) {
  std::set<int> want(s.begin(), s.end());
  std::vector<csslb::WeightedEdge> induced;
  for (const auto& e : g.edges)
    if (want.count(e.u) && want.count(e.v)) induced.push_back(e);
  const int m = static_cast<int>(induced.size());
  std::optional<int> best;
  for (int pick = 0; pick < (1 << m); ++pick) {
    std::set<int> covered;
    std::vector<csslb::WeightedEdge> chosen;
    for (int i = 0; i < m; ++i)
      if ((pick >> i) & 1) {
        chosen.push_back(induced[i]);
        covered.insert(induced[i].u);
        covered.insert(induced[i].v);
      }
    if (covered != want) continue;
    // acyclicity + component count via union-find over covered vertices
    std::vector<int> verts(covered.begin(), covered.end());
    auto pos = [&](int v) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) -
                              verts.begin());
    };
    std::vector<int> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool acyclic = true;
    int comps = static_cast<int>(verts.size());
    int weight = 0;
    for (const auto& e : chosen) {
      const int a = find(pos(e.u)), b = find(pos(e.v));
      if (a == b) {
        acyclic = false;
        break;
      }
      parent[a] = b;
      --comps;
      weight += e.w;
    }
    if (!acyclic || comps != target) continue;
    if (!best || weight < *best) best = weight;
  }
  return best;
}

// WGM membership by brute force over all forests.
inline bool wgm_admits_bruteforce(const csslb::WeightedGraph& g,
                                  const std::vector<int>& s, int comps, int budget) {
  const auto w = min_forest_bruteforce(g, s, comps);
  return w.has_value() && *w <= budget;
}

// Minimum pairwise distance over an explicit member list.
inline double min_distance_bruteforce(const std::vector<csslb::Signal>& members) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      best = std::min(best, (members[i].values - members[j].values).norm());
  return best;
}

// Standard normal CDF by adaptive Simpson quadrature of the density;
// independent of any erf/erfc library route.
inline double normal_density(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
}

inline double simpson(double a, double b, double fa, double fm, double fb,
                      double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = normal_density(lm), frm = normal_density(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  // Relative criterion with a tiny absolute floor so empty segments stop.
  if (depth <= 0 ||
      std::abs(left + right - whole) <= 1e-15 * std::abs(whole) + 1e-300)
    return left + right;
  return simpson(a, m, fa, flm, fm, left, depth - 1) +
         simpson(m, b, fm, frm, fb, right, depth - 1);
}

inline double integrate_density(double a, double b) {
  const double m = 0.5 * (a + b);
  const double fa = normal_density(a), fm = normal_density(m),
               fb = normal_density(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(a, b, fa, fm, fb, whole, 30);
}

inline double normal_cdf_quadrature(double z) {
  if (z >= 0.0) return 0.5 + integrate_density(0.0, z);
  // Mass below z-12 is smaller than e^-72 relative to Phi(z).
  return integrate_density(z - 12.0, z);
}

}  // namespace oracle
