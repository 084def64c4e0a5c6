#include <doctest.h>

#include "fixtures.hpp"

#include "ttcube/leafspace.hpp"

using namespace ttc;
using namespace ttc_test;

namespace {

EdgePoint pt(const GraphMap &m, const char *edge, Rat pos) {
  return EdgePoint{m.graph.edge_id(edge), pos};
}

// The anchored path that runs across one full edge; on a rose this is the
// only way to speak of the two endpoints of a loop as distinct lifts.
AnchoredPath edge_path(const GraphMap &m, EdgeId e) {
  AnchoredPath p;
  p.start = m.graph.edge(e).init;
  p.end = m.graph.edge(e).term;
  p.spine.base = m.graph.edge(e).init;
  p.spine.steps = {DirectedEdge{e, true}};
  return p;
}

PerronData pd_of(const GraphMap &m) {
  return perron_eigen(transition_matrix(m));
}

} // namespace

TEST_CASE("edge endpoints stay at the edge weight forever") {
  GraphMap m = golden_map();
  PerronData pd = pd_of(m);
  for (int n = 0; n <= 12; ++n)
    CHECK(scaled_distance(m, pd, edge_path(m, m.graph.edge_id("a")), n) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coincident points have distance zero at every scale") {
  GraphMap m = golden_map();
  PerronData pd = pd_of(m);
  Locus x{pt(m, "a", Rat(2, 5))};
  for (int n = 0; n <= 6; ++n)
    CHECK(scaled_distance(m, pd, x, x, n) == 0.0);
}

TEST_CASE("a subinterval keeps its weighted length under the flow") {
  GraphMap m = golden_map();
  PerronData pd = pd_of(m);
  auto est = leaf_distance(m, pd, Locus{pt(m, "a", Rat(1, 4))},
                           Locus{pt(m, "a", Rat(3, 4))}, 12);
  for (double v : est.values)
    CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(est.stabilized);
}

TEST_CASE("a merging pair collapses to distance zero") {
  // Under a -> b, b -> b a -a the two preimages of the midpoint of a meet
  // after one step and the connecting fragment cancels exactly.
  GraphMap m = folding_map();
  PerronData pd = pd_of(m);
  auto est = leaf_distance(m, pd, Locus{pt(m, "b", Rat(5, 8))},
                           Locus{pt(m, "b", Rat(7, 8))}, 8);
  CHECK(est.values[0] == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t i = 1; i < est.values.size(); ++i)
    CHECK(est.values[i] == 0.0);
  CHECK(est.stabilized);
  CHECK(est.estimate == 0.0);
}

TEST_CASE("vertical edge isometry across all edges") {
  for (const GraphMap &m : {golden_map(), tribonacci_map()}) {
    PerronData pd = pd_of(m);
    for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
      for (int n = 0; n <= 10; ++n)
        CHECK(scaled_distance(m, pd, edge_path(m, e), n) ==
              doctest::Approx(pd.weights.of(e)).epsilon(1e-8));
  }
}

TEST_CASE("scaled distances never increase") {
  for (const GraphMap &m : {golden_map(), tribonacci_map(), folding_map()}) {
    PerronData pd = pd_of(m);
    for (int trial = 0; trial < 50; ++trial) {
      Locus x{EdgePoint{rand_edge(m.graph), rand_position()}};
      Locus y{EdgePoint{rand_edge(m.graph), rand_position()}};
      auto est = leaf_distance(m, pd, x, y, 12);
      for (std::size_t i = 1; i < est.values.size(); ++i)
        CHECK(est.values[i] <= est.values[i - 1] + 1e-9);
    }
  }
}

TEST_CASE("distance sequences are self-consistent when extended") {
  GraphMap m = tribonacci_map();
  PerronData pd = pd_of(m);
  for (int trial = 0; trial < 10; ++trial) {
    Locus x{EdgePoint{rand_edge(m.graph), rand_position()}};
    Locus y{EdgePoint{rand_edge(m.graph), rand_position()}};
    auto shallow = leaf_distance(m, pd, x, y, 6);
    auto deep = leaf_distance(m, pd, x, y, 12);
    for (std::size_t i = 0; i < shallow.values.size(); ++i)
      CHECK(shallow.values[i] == doctest::Approx(deep.values[i]).epsilon(1e-14));
    CHECK(deep.values.back() <= shallow.values.back() + 1e-9);
  }
}

TEST_CASE("triangle inequality at each scale") {
  GraphMap m = golden_map();
  PerronData pd = pd_of(m);
  for (int trial = 0; trial < 30; ++trial) {
    Locus x{EdgePoint{rand_edge(m.graph), rand_position()}};
    Locus y{EdgePoint{rand_edge(m.graph), rand_position()}};
    Locus z{EdgePoint{rand_edge(m.graph), rand_position()}};
    for (int n : {0, 3, 7}) {
      double xy = scaled_distance(m, pd, x, y, n);
      double yz = scaled_distance(m, pd, y, z, n);
      double xz = scaled_distance(m, pd, x, z, n);
      CHECK(xz <= xy + yz + 1e-8);
    }
  }
}

TEST_CASE("symmetry of the scaled distance") {
  GraphMap m = tribonacci_map();
  PerronData pd = pd_of(m);
  for (int trial = 0; trial < 30; ++trial) {
    Locus x{EdgePoint{rand_edge(m.graph), rand_position()}};
    Locus y{EdgePoint{rand_edge(m.graph), rand_position()}};
    for (int n : {0, 4, 9})
      CHECK(scaled_distance(m, pd, x, y, n) ==
            doctest::Approx(scaled_distance(m, pd, y, x, n)).epsilon(1e-13));
  }
}

TEST_CASE("selecting separated periodic points on the golden map") {
  GraphMap m = golden_map();
  PerronData pd = pd_of(m);
  auto chosen = select_distinct_periodic_points(m, pd, 10, 0.01);
  REQUIRE(chosen.size() == 2);
  CHECK(chosen[0].point.edge == m.graph.edge_id("a"));
  CHECK(chosen[1].point.edge == m.graph.edge_id("b"));
  CHECK(chosen[0].point == pt(m, "a", Rat(1, 3)));
  // Pairwise separation holds for the chosen pair against full orbits.
  Locus second{chosen[1].point};
  Locus cur = second;
  for (int i = 0; i < chosen[1].period; ++i) {
    CHECK(leaf_distance(m, pd, Locus{chosen[0].point}, cur, 10).estimate >
          0.01);
    cur = image_point(m, cur);
  }
}

TEST_CASE("a one-edge rose selects a single point vacuously") {
  GraphMap m = doubling_map();
  PerronData pd = pd_of(m);
  auto chosen = select_distinct_periodic_points(m, pd, 8, 0.01);
  REQUIRE(chosen.size() == 1);
  CHECK(chosen[0].point.edge == 0);
}

TEST_CASE("an unattainable separation threshold exhausts the pool") {
  GraphMap m = golden_map();
  PerronData pd = pd_of(m);
  CHECK_THROWS_AS(select_distinct_periodic_points(m, pd, 8, 100.0, 4), Error);
}
