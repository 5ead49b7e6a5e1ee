#include "csslb/graph_model.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csslb/errors.hpp"

namespace csslb {

namespace {

bool edge_less(const WeightedEdge& a, const WeightedEdge& b) {
  return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

WeightedGraph make_graph(int vertex_count, std::vector<WeightedEdge> edges,
                         std::optional<int> group_size) {
  if (vertex_count < 1) throw RejectedParams("graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.u == e.v) throw RejectedParams("self-loop rejected");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 1 || e.v > vertex_count)
      throw RejectedParams("edge endpoint outside [1,d]");
    if (e.w < 1) throw RejectedParams("edge weight must be >= 1");
  }
  std::sort(edges.begin(), edges.end(), edge_less);
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw RejectedParams("duplicate (u,v,w) edge");
  if (group_size) {
    if (*group_size < 1 || vertex_count % *group_size != 0)
      throw RejectedParams("group_size must divide d");
  }
  return WeightedGraph{vertex_count, std::move(edges), group_size};
}

int weight_degree(const WeightedGraph& g) {
  // incidence count per (vertex, weight)
  std::map<std::pair<int, int>, int> count;
  int best = 0;
  for (const auto& e : g.edges) {
    best = std::max(best, ++count[{e.u, e.w}]);
    best = std::max(best, ++count[{e.v, e.w}]);
  }
  return best;
}

ValidationReport validate_requirements(const WgmParams& p) {
  ValidationReport rep;
  std::ostringstream structural;
  bool ok = true;
  auto fail = [&](const std::string& why) {
    if (!ok) structural << "; ";
    structural << why;
    ok = false;
  };
  if (!(p.d > 0 && p.s > 0 && p.g > 0 && p.B > 0 && p.rho > 0))
    fail("all parameters must be positive");
  if (!(p.g < p.s && p.s < p.d)) fail("needs 0 < g < s < d");
  if (p.rho % 2 != 0) fail("rho must be even (construction uses rho/2 bands)");
  if (p.g > 0 && p.d % p.g != 0) fail("g must divide d");
  if (p.s > p.g && p.B % (p.s - p.g) != 0) fail("(s-g) must divide B");
  rep.structural = {ok, ok ? "structural checks pass" : structural.str()};

  const bool arithmetic_ok = p.g > 0 && p.s > p.g;
  if (!arithmetic_ok) {
    const std::string why = "undefined unless 0 < g < s";
    rep.r1 = {false, why};
    rep.r2 = {false, why};
    rep.r3 = {false, why};
    rep.feasible = false;
    return rep;
  }

  const double dg = static_cast<double>(p.d) / p.g;
  const double sg = static_cast<double>(p.s - p.g);
  std::ostringstream o1, o2, o3;
  const bool r1 = dg >= p.rho * p.B / sg + 1.0;
  o1 << "R1: d/g = " << dg << (r1 ? " >= " : " < ") << p.rho * p.B / sg + 1.0
     << " = rho*B/(s-g) + 1";
  const bool r2 = p.rho * p.B / (2.0 * sg) >= static_cast<double>(p.s) / p.g - 1.0;
  o2 << "R2: rho*B/(2(s-g)) = " << p.rho * p.B / (2.0 * sg) << (r2 ? " >= " : " < ")
     << static_cast<double>(p.s) / p.g - 1.0 << " = s/g - 1";
  const bool r3 = p.B >= p.s - p.g;
  o3 << "R3: B = " << p.B << (r3 ? " >= " : " < ") << p.s - p.g << " = s-g";
  rep.r1 = {r1, o1.str()};
  rep.r2 = {r2, o2.str()};
  rep.r3 = {r3, o3.str()};
  rep.feasible = rep.structural.pass && r1 && r2 && r3;
  return rep;
}

WeightedGraph build_construction_graph(const WgmParams& p) {
  const ValidationReport rep = validate_requirements(p);
  if (!rep.feasible) {
    std::string why = "construction rejected: ";
    if (!rep.structural.pass) why += rep.structural.reason;
    else if (!rep.r1.pass) why += rep.r1.reason;
    else if (!rep.r2.pass) why += rep.r2.reason;
    else why += rep.r3.reason;
    throw RejectedParams(why);
  }

  const int per_group = p.d / p.g;
  const int bands = p.B / (p.s - p.g);
  const int half_rho = p.rho / 2;
  std::vector<WeightedEdge> edges;
  for (int group = 0; group < p.g; ++group) {
    const int base = group * per_group;
    for (int i = 1; i <= per_group; ++i) {
      for (int band = 1; band <= bands; ++band) {
        for (int t = i + (band - 1) * half_rho + 1; t <= i + band * half_rho; ++t) {
          const int tt = (t - 1) % per_group + 1;  // circular within the group
          if (tt == i) continue;
          edges.push_back({base + i, base + tt, band});
        }
      }
    }
  }
  // Forward and backward passes meet in the middle; dedupe there.
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end(), edge_less);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return WeightedGraph{p.d, std::move(edges), per_group};
}

int Forest::total_weight() const {
  int w = 0;
  for (const auto& e : edges) w += e.w;
  return w;
}

std::optional<MinForestResult> min_weight_forest(const WeightedGraph& g,
                                                 const Support& s,
                                                 int target_components) {
  const int m = static_cast<int>(s.size());
  if (target_components < 1) throw RejectedParams("component target must be >= 1");
  for (int v : s)
    if (v < 1 || v > g.vertex_count) throw RejectedParams("support label outside [1,d]");
  if (m > 20) throw TooLarge("min_weight_forest supports |S| <= 20");
  // Each tree must cover at least two vertices.
  if (m < 2 * target_components) return std::nullopt;

  std::map<int, int> pos;
  for (int i = 0; i < m; ++i) pos[s[i]] = i;

  struct IndEdge {
    int a, b, w;
  };
  std::vector<IndEdge> induced;
  for (const auto& e : g.edges) {
    auto iu = pos.find(e.u), iv = pos.find(e.v);
    if (iu != pos.end() && iv != pos.end())
      induced.push_back({iu->second, iv->second, e.w});
  }
  std::sort(induced.begin(), induced.end(),
            [](const IndEdge& a, const IndEdge& b) {
              return std::tie(a.w, a.a, a.b) < std::tie(b.w, b.a, b.b);
            });

  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  const int full = (1 << m) - 1;

  // Minimum spanning tree cost of each vertex subset (edges confined to it).
  std::vector<int> tree_cost(full + 1, kInf);
  auto mst = [&](int mask, std::vector<WeightedEdge>* out) -> int {
    const int want = std::popcount(static_cast<unsigned>(mask));
    DisjointSet ds(m);
    int cost = 0, picked = 0;
    for (const auto& e : induced) {
      if (!((mask >> e.a) & 1) || !((mask >> e.b) & 1)) continue;
      if (ds.unite(e.a, e.b)) {
        cost += e.w;
        if (out) out->push_back({s[std::min(e.a, e.b)], s[std::max(e.a, e.b)], e.w});
        if (++picked == want - 1) return cost;
      }
    }
    return kInf;  // disconnected
  };
  for (int mask = 1; mask <= full; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) < 2) continue;
    tree_cost[mask] = mst(mask, nullptr);
  }

  // dp[j][mask]: best cost splitting mask into j trees; choice for rebuild.
  std::vector<std::vector<int>> dp(target_components + 1,
                                   std::vector<int>(full + 1, kInf));
  std::vector<std::vector<int>> choice(target_components + 1,
                                       std::vector<int>(full + 1, 0));
  dp[0][0] = 0;
  for (int j = 1; j <= target_components; ++j) {
    for (int mask = 1; mask <= full; ++mask) {
      const int low = mask & -mask;
      // Enumerate submasks containing the lowest vertex to avoid recounting.
      for (int sub = mask; sub; sub = (sub - 1) & mask) {
        if (!(sub & low) || tree_cost[sub] == kInf) continue;
        const int rest = dp[j - 1][mask ^ sub];
        if (rest == kInf) continue;
        if (rest + tree_cost[sub] < dp[j][mask]) {
          dp[j][mask] = rest + tree_cost[sub];
          choice[j][mask] = sub;
        }
      }
    }
  }
  if (dp[target_components][full] >= kInf) return std::nullopt;

  Forest forest;
  forest.vertices = s;
  int mask = full;
  for (int j = target_components; j >= 1; --j) {
    const int sub = choice[j][mask];
    mst(sub, &forest.edges);
    mask ^= sub;
  }
  std::sort(forest.edges.begin(), forest.edges.end(), edge_less);
  return MinForestResult{std::move(forest), dp[target_components][full]};
}

std::int64_t binomial_count(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::int64_t kCap = std::int64_t{1} << 62;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    if (r > kCap / (n - k + i)) return kCap;
    r = r * (n - k + i) / i;
  }
  return std::min(r, kCap);
}

int SupportModel::dimension() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WgmModel>) return m.params.d;
        else if constexpr (std::is_same_v<T, BlockModel>) return m.entries_j * m.blocks_n;
        else return m.d;
      },
      kind);
}

int SupportModel::sparsity() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WgmModel>) return m.params.s;
        else if constexpr (std::is_same_v<T, BlockModel>) return m.entries_j * m.active_k;
        else return m.s;
      },
      kind);
}

bool SupportModel::admits(const Support& s) const {
  if (static_cast<int>(s.size()) != sparsity()) return false;
  if (!std::is_sorted(s.begin(), s.end())) return false;
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  if (!s.empty() && (s.front() < 1 || s.back() > dimension())) return false;

  if (const auto* wgm = std::get_if<WgmModel>(&kind)) {
    auto f = min_weight_forest(wgm->graph, s, wgm->params.g);
    return f.has_value() && f->weight <= wgm->params.B;
  }
  if (const auto* tree = std::get_if<TreeModel>(&kind)) {
    (void)tree;
    // Parent-closed; a nonempty parent-closed set contains the root.
    if (std::find(s.begin(), s.end(), 1) == s.end()) return false;
    for (int v : s)
      if (v != 1 && std::find(s.begin(), s.end(), v / 2) == s.end()) return false;
    return true;
  }
  if (const auto* block = std::get_if<BlockModel>(&kind)) {
    // Support must be the union of active_k full blocks (column-major labels).
    std::vector<int> cols;
    for (int v : s) cols.push_back((v - 1) / block->entries_j);
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (static_cast<int>(cols.size()) != block->active_k) return false;
    std::size_t i = 0;
    for (int c : cols)
      for (int r = 1; r <= block->entries_j; ++r)
        if (s[i++] != c * block->entries_j + r) return false;
    return true;
  }
  return true;  // regular: any size-s subset
}

SupportModel SupportModel::wgm(const WgmParams& p) {
  return SupportModel{WgmModel{build_construction_graph(p), p}};
}

SupportModel SupportModel::wgm(WeightedGraph graph, const WgmParams& p) {
  if (graph.vertex_count != p.d) throw RejectedParams("graph size must equal d");
  if (!(0 < p.g && p.g < p.s && p.s < p.d && p.B >= 1))
    throw RejectedParams("needs 0 < g < s < d and B >= 1");
  return SupportModel{WgmModel{std::move(graph), p}};
}

SupportModel SupportModel::tree(int d, int s) {
  if (!(1 <= s && s <= d)) throw RejectedParams("tree model needs 1 <= s <= d");
  return SupportModel{TreeModel{d, s, 2}};
}

SupportModel SupportModel::block(int entries_j, int blocks_n, int active_k) {
  if (!(entries_j >= 1 && blocks_n >= 1 && 1 <= active_k && active_k <= blocks_n))
    throw RejectedParams("block model needs J,N >= 1 and 1 <= K <= N");
  return SupportModel{BlockModel{entries_j, blocks_n, active_k}};
}

SupportModel SupportModel::regular(int d, int s) {
  if (!(1 <= s && s <= d)) throw RejectedParams("regular model needs 1 <= s <= d");
  return SupportModel{RegularModel{d, s}};
}

std::vector<Support> enumerate_supports(const SupportModel& model, std::int64_t cap) {
  const int d = model.dimension();
  const int s = model.sparsity();

  // Blocks enumerate directly over column subsets; the generic subset scan
  // below would revisit the same supports many times over.
  if (const auto* block = std::get_if<BlockModel>(&model.kind)) {
    if (binomial_count(block->blocks_n, block->active_k) > cap)
      throw TooLarge("block enumeration above cap");
    std::vector<Support> out;
    std::vector<int> cols(block->active_k);
    std::iota(cols.begin(), cols.end(), 0);
    while (true) {
      Support sup;
      for (int c : cols)
        for (int r = 1; r <= block->entries_j; ++r) sup.push_back(c * block->entries_j + r);
      out.push_back(std::move(sup));
      int i = block->active_k - 1;
      while (i >= 0 && cols[i] == block->blocks_n - block->active_k + i) --i;
      if (i < 0) break;
      ++cols[i];
      for (int j = i + 1; j < block->active_k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return out;
  }

  if (binomial_count(d, s) > cap)
    throw TooLarge("support enumeration above cap: C(d,s) too large");

  std::vector<Support> out;
  std::vector<int> idx(s);
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    if (model.admits(idx)) out.push_back(idx);
    int i = s - 1;
    while (i >= 0 && idx[i] == d - s + i + 1) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

LogCardinalityBound log_cardinality_lower_bound(const SupportModel& model,
                                                CardinalityVariant variant) {
  const double ln2 = std::log(2.0);
  const bool onebit = variant == CardinalityVariant::onebit;
  const int s = model.sparsity();
  if (onebit && s % 2 != 0)
    throw RejectedParams("onebit cardinality bound needs even s");

  if (const auto* wgm = std::get_if<WgmModel>(&model.kind)) {
    const auto& p = wgm->params;
    const double sg = p.s - p.g;
    const double tail = p.rho * static_cast<double>(p.B) * p.g / (2.0 * sg * sg);
    const double patterns = onebit ? 0.5 * p.s * ln2 : p.s * ln2;
    const double value = patterns + p.g * std::log(static_cast<double>(p.d) / p.g) +
                         sg * std::log(tail);
    return {value, tail < 1.0};
  }
  if (std::holds_alternative<TreeModel>(model.kind)) {
    return {(onebit ? 0.5 * s : static_cast<double>(s)) * ln2, false};
  }
  if (const auto* block = std::get_if<BlockModel>(&model.kind)) {
    const double value = 0.5 * block->active_k * block->entries_j * ln2 +
                         block->active_k *
                             std::log(static_cast<double>(block->blocks_n) / block->active_k);
    return {value, false};
  }
  const auto& reg = std::get<RegularModel>(model.kind);
  return {0.5 * reg.s * ln2 + reg.s * std::log(static_cast<double>(reg.d) / reg.s),
          false};
}

std::vector<FeasiblePair> feasible_parameter_search(int s, int g, int B,
                                                    int d_max, int rho_max) {
  std::vector<FeasiblePair> out;
  if (!(0 < g && g < s && B >= s - g)) return out;  // R3 is a precondition
  for (int rho = 2; rho <= rho_max; rho += 2) {
    for (int d = g; d <= d_max; d += g) {
      if (d <= s) continue;
      WgmParams p{d, s, g, B, rho};
      const auto rep = validate_requirements(p);
      if (rep.r1.pass && rep.r2.pass) out.push_back({d, rho});
    }
  }
  return out;
}

std::string graph_to_json(const WeightedGraph& g) {
  nlohmann::json j;
  j["d"] = g.vertex_count;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
  if (g.group_size) j["group_size"] = *g.group_size;
  return j.dump();
}

std::string supports_to_json(const std::vector<Support>& supports) {
  nlohmann::json j;
  j["supports"] = supports;
  return j.dump();
}

}  // namespace csslb
