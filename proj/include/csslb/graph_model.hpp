// graph_model.hpp — weighted-graph sparsity models.
//
// A support S (|S| = s) belongs to the (G,s,g,B) weighted graph model when
// some forest F of graph edges touches exactly the vertices of S, has
// exactly g connected components, and total edge weight <= B. Every vertex
// of S must be an endpoint of a forest edge; a vertex isolated inside the
// induced subgraph can never be certified. Tree / block / regular models
// are the classic special cases.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace csslb {

// Vertices are labeled 1..d throughout.
struct WeightedEdge {
  int u = 0;  // canonical u < v
  int v = 0;
  int w = 1;  // positive integer weight
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct WeightedGraph {
  int vertex_count = 0;
  std::vector<WeightedEdge> edges;  // sorted by (u,v,w), no exact duplicates
  std::optional<int> group_size;    // d/g when built by the band construction
};

// Normalizes (u<v, sort, dedupe) and validates; throws RejectedParams on
// self-loops, nonpositive weights, labels outside [1,d], duplicate triples.
WeightedGraph make_graph(int vertex_count, std::vector<WeightedEdge> edges,
                         std::optional<int> group_size = std::nullopt);

// Largest number of edges at one vertex sharing a single weight value.
// Empty edge set gives 0.
int weight_degree(const WeightedGraph& g);

struct WgmParams {
  int d = 0;    // dimension
  int s = 0;    // sparsity
  int g = 0;    // component count
  int B = 0;    // weight budget
  int rho = 0;  // weight-degree target, even
};

struct RequirementCheck {
  bool pass = false;
  std::string reason;
};

struct ValidationReport {
  RequirementCheck structural;  // positivity, ordering, parity, divisibility
  RequirementCheck r1;          // d/g >= rho*B/(s-g) + 1
  RequirementCheck r2;          // rho*B/(2(s-g)) >= s/g - 1
  RequirementCheck r3;          // B >= s-g
  bool feasible = false;        // all of the above
};

// Pure; never throws. Bad arithmetic (g >= s, zero fields, odd rho, bad
// divisibility) is reported as a failed check, not an error.
ValidationReport validate_requirements(const WgmParams& p);

// Band construction: g groups of d/g nodes; for each band p = 1..B/(s-g),
// node i gets weight-p edges to the rho/2 nodes after the previous band,
// circular within the group. No cross-group edges. Throws RejectedParams
// (naming the failed requirement) unless validate_requirements passes.
WeightedGraph build_construction_graph(const WgmParams& p);

using Support = std::vector<int>;  // sorted ascending, distinct labels

struct Forest {
  std::vector<WeightedEdge> edges;
  std::vector<int> vertices;  // endpoints, sorted
  int components() const { return static_cast<int>(vertices.size() - edges.size()); }
  int total_weight() const;
};

struct MinForestResult {
  Forest forest;
  int weight = 0;
};

// Minimum-total-weight forest whose edges cover exactly the vertices of S
// with exactly target_components trees. Absent when no such forest exists
// (isolated vertex in G[S], too few vertices per tree, or the induced
// subgraph has more than target_components pieces). Exact via partition DP.
std::optional<MinForestResult> min_weight_forest(const WeightedGraph& g,
                                                 const Support& s,
                                                 int target_components);

struct WgmModel {
  WeightedGraph graph;
  WgmParams params;
};

struct TreeModel {
  int d = 0;  // heap-labeled binary tree: parent(i) = i/2, root = 1
  int s = 0;
  int arity = 2;
};

struct BlockModel {
  int entries_j = 0;  // entries per block
  int blocks_n = 0;   // total blocks
  int active_k = 0;   // selected blocks; support = active_k full blocks
};

struct RegularModel {
  int d = 0;
  int s = 0;
};

inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

struct SupportModel {
  std::variant<WgmModel, TreeModel, BlockModel, RegularModel> kind;

  int dimension() const;
  int sparsity() const;
  bool admits(const Support& s) const;

  // Validates construction requirements and builds the band graph.
  static SupportModel wgm(const WgmParams& p);
  // Arbitrary graph; only structural sanity is enforced.
  static SupportModel wgm(WeightedGraph graph, const WgmParams& p);
  static SupportModel tree(int d, int s);
  static SupportModel block(int entries_j, int blocks_n, int active_k);
  static SupportModel regular(int d, int s);
};

// Exhaustive, lexicographic. Throws TooLarge when C(d,s) exceeds cap.
std::vector<Support> enumerate_supports(const SupportModel& model,
                                        std::int64_t cap = kDefaultEnumerationCap);

enum class CardinalityVariant { standard, onebit };

struct LogCardinalityBound {
  double value = 0.0;  // natural log of the ensemble-cardinality lower bound
  bool weak = false;   // WGM tail factor below 1: bound valid but weak
};

LogCardinalityBound log_cardinality_lower_bound(const SupportModel& model,
                                                CardinalityVariant variant);

struct FeasiblePair {
  int d = 0;
  int rho = 0;
};

// (d, rho) pairs passing R1-R2 for fixed (s, g, B); d runs over multiples
// of g up to d_max, rho over even values up to rho_max.
std::vector<FeasiblePair> feasible_parameter_search(int s, int g, int B,
                                                    int d_max, int rho_max);

// Byte-reproducible JSON: {"d":int,"edges":[[u,v,w],...]} / {"supports":[[...],...]}.
std::string graph_to_json(const WeightedGraph& g);
std::string supports_to_json(const std::vector<Support>& supports);

// C(n,k) clamped to 2^62 to keep cap comparisons overflow-free.
std::int64_t binomial_count(int n, int k);

}  // namespace csslb
