#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "csslb/errors.hpp"
#include "csslb/graph_model.hpp"
#include "csslb/rng.hpp"
#include "oracles.hpp"

using namespace csslb;

TEST_CASE("requirement validation on reference instances") {
  // Figure-3 style instance.
  auto rep = validate_requirements({15, 10, 5, 5, 2});
  CHECK(rep.structural.pass);
  CHECK(rep.r1.pass);
  CHECK(rep.r2.pass);
  CHECK(rep.r3.pass);
  CHECK(rep.feasible);

  rep = validate_requirements({6, 4, 2, 2, 2});
  CHECK(rep.feasible);

  // R1 fails: d/g = 4 < rho*B/(s-g) + 1 = 5.
  rep = validate_requirements({8, 4, 2, 2, 4});
  CHECK_FALSE(rep.r1.pass);
  CHECK(rep.r2.pass);
  CHECK(rep.r3.pass);
  CHECK_FALSE(rep.feasible);
}

TEST_CASE("validation reports bad arithmetic instead of throwing") {
  auto rep = validate_requirements({10, 3, 5, 2, 2});  // g > s
  CHECK_FALSE(rep.structural.pass);
  CHECK_FALSE(rep.r1.pass);
  CHECK_FALSE(rep.feasible);

  rep = validate_requirements({20, 10, 5, 5, 3});  // odd rho, R1-R3 fine
  CHECK_FALSE(rep.structural.pass);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.r1.pass);  // the arithmetic checks still evaluate
  CHECK(rep.r2.pass);
  CHECK(rep.r3.pass);

  rep = validate_requirements({15, 10, 5, 4, 2});  // (s-g) = 5 does not divide 4
  CHECK_FALSE(rep.structural.pass);
  CHECK_FALSE(rep.r3.pass);
}

TEST_CASE("construction graph: two weight-1 triangles at d=6") {
  const auto g = build_construction_graph({6, 4, 2, 2, 2});
  CHECK(g.vertex_count == 6);
  CHECK(g.group_size == 3);
  const std::vector<WeightedEdge> expected = {{1, 2, 1}, {1, 3, 1}, {2, 3, 1},
                                              {4, 5, 1}, {4, 6, 1}, {5, 6, 1}};
  CHECK(g.edges == expected);
  CHECK(weight_degree(g) == 2);
}

TEST_CASE("construction graph: two bands give weight-1 and weight-2 rings") {
  // rho = 2 and B/(s-g) = 2: successor at weight 1, successor-of-successor
  // at weight 2.
  const auto g = build_construction_graph({10, 3, 1, 4, 2});
  std::vector<WeightedEdge> at_node1;
  for (const auto& e : g.edges)
    if (e.u == 1 || e.v == 1) at_node1.push_back(e);
  const std::vector<WeightedEdge> expected = {
      {1, 2, 1}, {1, 3, 2}, {1, 9, 2}, {1, 10, 1}};
  CHECK(at_node1 == expected);
  CHECK(weight_degree(g) == 2);
}

TEST_CASE("construction graph: figure-3 instance") {
  const auto g = build_construction_graph({15, 10, 5, 5, 2});
  CHECK(g.edges.size() == 15);  // five triangles
  for (const auto& e : g.edges) CHECK(e.w == 1);
  CHECK(weight_degree(g) == 2);
}

TEST_CASE("construction rejects infeasible parameters by name") {
  CHECK_THROWS_AS(build_construction_graph({8, 4, 2, 2, 4}), RejectedParams);
  try {
    build_construction_graph({8, 4, 2, 2, 4});
  } catch (const RejectedParams& e) {
    CHECK(std::string(e.what()).find("R1") != std::string::npos);
  }
}

TEST_CASE("weight degree counts same-weight incidences") {
  const auto triangle =
      make_graph(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}});
  CHECK(weight_degree(triangle) == 2);

  const auto single = make_graph(2, {{1, 2, 3}});
  CHECK(weight_degree(single) == 1);

  const auto star = make_graph(4, {{1, 2, 1}, {1, 3, 1}, {1, 4, 2}});
  CHECK(weight_degree(star) == 2);

  CHECK(weight_degree(WeightedGraph{3, {}, {}}) == 0);
}

TEST_CASE("graph normalization catches malformed input") {
  CHECK_THROWS_AS(make_graph(3, {{1, 1, 1}}), RejectedParams);
  CHECK_THROWS_AS(make_graph(3, {{1, 4, 1}}), RejectedParams);
  CHECK_THROWS_AS(make_graph(3, {{1, 2, 0}}), RejectedParams);
  CHECK_THROWS_AS(make_graph(3, {{1, 2, 1}, {2, 1, 1}}), RejectedParams);
  // Parallel edges with distinct weights are fine.
  const auto multi = make_graph(3, {{1, 2, 1}, {1, 2, 2}});
  CHECK(multi.edges.size() == 2);
}

TEST_CASE("min weight forest on the d=6 construction") {
  const auto g = build_construction_graph({6, 4, 2, 2, 2});

  auto r = min_weight_forest(g, {1, 2, 3}, 1);
  REQUIRE(r.has_value());
  CHECK(r->weight == 2);
  CHECK(r->forest.components() == 1);
  CHECK(r->forest.total_weight() == 2);

  r = min_weight_forest(g, {1, 2, 4, 5}, 2);
  REQUIRE(r.has_value());
  CHECK(r->weight == 2);
  CHECK(r->forest.components() == 2);

  // Vertex 4 is isolated inside G[{1,2,3,4}].
  CHECK_FALSE(min_weight_forest(g, {1, 2, 3, 4}, 1).has_value());
  // And a 3+1 split cannot make two covered components either.
  CHECK_FALSE(min_weight_forest(g, {1, 2, 3, 4}, 2).has_value());
}

TEST_CASE("min weight forest equals exhaustive minimization on random instances") {
  Rng rng(991823);
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 4 + static_cast<int>(rng.below(4));  // 4..7
    std::vector<WeightedEdge> edges;
    for (int u = 1; u <= d; ++u)
      for (int v = u + 1; v <= d; ++v)
        if (rng.uniform01() < 0.55)
          edges.push_back({u, v, 1 + static_cast<int>(rng.below(3))});
    const auto g = make_graph(d, edges);
    const int ssize = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
    auto all = oracle::subsets(d, ssize);
    const auto& s = all[rng.below(all.size())];
    const int target = 1 + static_cast<int>(rng.below(3));

    const auto expected = oracle::min_forest_bruteforce(g, s, target);
    const auto got = min_weight_forest(g, s, target);
    REQUIRE(got.has_value() == expected.has_value());
    if (expected) {
      CHECK(got->weight == *expected);
      // Returned forest is a witness: covers S, right size, acyclic, weight.
      CHECK(got->forest.vertices == s);
      CHECK(got->forest.components() == target);
      CHECK(got->forest.total_weight() == got->weight);
      std::set<int> covered;
      for (const auto& e : got->forest.edges) {
        covered.insert(e.u);
        covered.insert(e.v);
      }
      CHECK(covered == std::set<int>(s.begin(), s.end()));
    }
  }
}

TEST_CASE("enumeration: WGM(6,2,4,2,2) has exactly the nine pair-pair supports") {
  const auto model = SupportModel::wgm(WgmParams{6, 4, 2, 2, 2});
  const auto supports = enumerate_supports(model);
  const std::vector<Support> expected = {
      {1, 2, 4, 5}, {1, 2, 4, 6}, {1, 2, 5, 6}, {1, 3, 4, 5}, {1, 3, 4, 6},
      {1, 3, 5, 6}, {2, 3, 4, 5}, {2, 3, 4, 6}, {2, 3, 5, 6}};
  CHECK(supports == expected);

  // Cross-check membership against the brute-force forest oracle on all
  // C(6,4) subsets.
  const auto& g = std::get<WgmModel>(model.kind).graph;
  for (const auto& s : oracle::subsets(6, 4)) {
    const bool in = std::find(supports.begin(), supports.end(), s) != supports.end();
    CHECK(in == oracle::wgm_admits_bruteforce(g, s, 2, 2));
    if (in) {
      const auto f = min_weight_forest(g, s, 2);
      REQUIRE(f.has_value());
      CHECK(f->weight <= 2);
    }
  }
}

TEST_CASE("enumeration: regular, tree, block") {
  CHECK(enumerate_supports(SupportModel::regular(4, 2)).size() == 6);

  const auto tree_supports = enumerate_supports(SupportModel::tree(7, 3));
  const std::vector<Support> expected = {
      {1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 6}, {1, 3, 7}};
  CHECK(tree_supports == expected);

  const auto block_supports = enumerate_supports(SupportModel::block(2, 4, 2));
  CHECK(block_supports.size() == 6);
  CHECK(block_supports.front() == Support{1, 2, 3, 4});
  CHECK(block_supports.back() == Support{5, 6, 7, 8});
  for (const auto& s : block_supports) {
    CHECK(s.size() == 4);
    CHECK(SupportModel::block(2, 4, 2).admits(s));
  }
  // Block membership rejects partial columns.
  CHECK_FALSE(SupportModel::block(2, 4, 2).admits({1, 2, 3, 5}));
}

TEST_CASE("enumeration cap raises too-large") {
  CHECK_THROWS_AS(enumerate_supports(SupportModel::regular(40, 20)), TooLarge);
  // A tightened cap rejects even a small instance.
  CHECK_THROWS_AS(enumerate_supports(SupportModel::regular(6, 3), 10), TooLarge);
  CHECK(enumerate_supports(SupportModel::regular(6, 3), 20).size() == 20);
}

TEST_CASE("figure-3 instance enumerates 243 supports") {
  const auto model = SupportModel::wgm(WgmParams{15, 10, 5, 5, 2});
  const auto supports = enumerate_supports(model);
  CHECK(supports.size() == 243);
}

TEST_CASE("log-cardinality bounds on reference instances") {
  const auto fig3 = SupportModel::wgm(WgmParams{15, 10, 5, 5, 2});
  const auto std_bound = log_cardinality_lower_bound(fig3, CardinalityVariant::standard);
  CHECK(std_bound.value == doctest::Approx(12.424533248940001).epsilon(1e-12));
  CHECK_FALSE(std_bound.weak);
  const auto onebit_bound = log_cardinality_lower_bound(fig3, CardinalityVariant::onebit);
  CHECK(onebit_bound.value == doctest::Approx(8.958797346140274).epsilon(1e-12));

  const auto block = SupportModel::block(2, 4, 2);
  CHECK(log_cardinality_lower_bound(block, CardinalityVariant::standard).value ==
        doctest::Approx(std::log(16.0)).epsilon(1e-12));

  const auto tree = SupportModel::tree(15, 4);
  CHECK(log_cardinality_lower_bound(tree, CardinalityVariant::standard).value ==
        doctest::Approx(4 * std::log(2.0)).epsilon(1e-12));
  CHECK(log_cardinality_lower_bound(tree, CardinalityVariant::onebit).value ==
        doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));

  const auto reg = SupportModel::regular(10, 4);
  CHECK(log_cardinality_lower_bound(reg, CardinalityVariant::standard).value ==
        doctest::Approx(2 * std::log(2.0) + 4 * std::log(2.5)).epsilon(1e-12));

  CHECK_THROWS_AS(
      log_cardinality_lower_bound(SupportModel::regular(10, 3), CardinalityVariant::onebit),
      RejectedParams);
}

TEST_CASE("weak-bound flag fires when the WGM tail factor drops below one") {
  // Arbitrary host graph; the formula only needs the parameters.
  const auto host = make_graph(16, {{1, 2, 1}});
  const auto model = SupportModel::wgm(host, WgmParams{16, 5, 2, 3, 2});
  const auto b = log_cardinality_lower_bound(model, CardinalityVariant::standard);
  CHECK(b.weak);  // rho*B*g / (2 (s-g)^2) = 12/18 < 1
}

TEST_CASE("enumerated count dominates the support-count formula") {
  for (const WgmParams p : {WgmParams{6, 4, 2, 2, 2}, WgmParams{15, 10, 5, 5, 2},
                            WgmParams{8, 4, 2, 2, 2}}) {
    const auto model = SupportModel::wgm(p);
    const auto supports = enumerate_supports(model);
    const double bound =
        std::exp(log_cardinality_lower_bound(model, CardinalityVariant::standard).value -
                 p.s * std::log(2.0));
    CHECK(static_cast<double>(supports.size()) >= bound * (1.0 - 1e-12));
  }
}

TEST_CASE("weight degree of construction equals rho") {
  for (const WgmParams p : {WgmParams{6, 4, 2, 2, 2}, WgmParams{15, 10, 5, 5, 2},
                            WgmParams{10, 3, 1, 4, 2}, WgmParams{18, 6, 2, 8, 4}}) {
    if (!validate_requirements(p).feasible) continue;
    CHECK(weight_degree(build_construction_graph(p)) == p.rho);
  }
}

TEST_CASE("parameter search finds several feasible pairs for fixed s,g,B") {
  const auto pairs = feasible_parameter_search(10, 5, 5, 60, 8);
  CHECK(pairs.size() >= 3);
  const bool has_fig3 = std::any_of(pairs.begin(), pairs.end(), [](const FeasiblePair& p) {
    return p.d == 15 && p.rho == 2;
  });
  CHECK(has_fig3);
  for (const auto& p : pairs) {
    const auto rep = validate_requirements({p.d, 10, 5, 5, p.rho});
    CHECK(rep.r1.pass);
    CHECK(rep.r2.pass);
  }
}

TEST_CASE("json serialization is canonical and byte-stable") {
  const auto g = build_construction_graph({6, 4, 2, 2, 2});
  const std::string j = graph_to_json(g);
  CHECK(j ==
        R"({"d":6,"edges":[[1,2,1],[1,3,1],[2,3,1],[4,5,1],[4,6,1],[5,6,1]],"group_size":3})");
  CHECK(graph_to_json(g) == j);

  const auto supports = enumerate_supports(SupportModel::regular(3, 2));
  CHECK(supports_to_json(supports) == R"({"supports":[[1,2],[1,3],[2,3]]})");
}
