#include "doctest.h"

#include <cmath>
#include <set>

#include "eqc/lattice.hpp"
#include "eqc/transform.hpp"

using namespace eqc;

TEST_CASE("joint-conversion SCP map and its inverse") {
  const double p_star = 2.0 - std::sqrt(2.0);
  CHECK(scp_forward(0.0) == doctest::Approx(0.0));
  CHECK(scp_forward(p_star) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(scp_inverse(1.0) == doctest::Approx(p_star).epsilon(1e-12));
  CHECK(scp_inverse(0.0) == doctest::Approx(0.0));
  SUBCASE("round trip to 1e-12 across the domain") {
    for (int i = 0; i <= 100; ++i) {
      const double p = p_star * i / 100.0;
      CHECK(std::abs(scp_inverse(scp_forward(p)) - p) < 1e-12);
      const double q = i / 100.0;
      CHECK(std::abs(scp_forward(scp_inverse(q)) - q) < 1e-12);
    }
  }
  SUBCASE("domains are enforced") {
    CHECK_THROWS_AS(scp_forward(p_star + 0.01), std::invalid_argument);
    CHECK_THROWS_AS(scp_forward(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(scp_inverse(1.01), std::invalid_argument);
  }
  SUBCASE("joint conversion beats two independent shots") {
    for (double p : {0.1, 0.3, 0.5}) {
      const double independent = 1.0 - (1.0 - p) * (1.0 - p);
      CHECK(scp_forward(p) > independent);
    }
  }
}

TEST_CASE("double-bond hexagon contracts to a triangle lattice") {
  const auto dhex = generate(LatticeKind::HexagonDoubleBond, 4);
  const auto out = transform_graph(dhex, TransformKind::DoubleHexToTriangle);
  REQUIRE(out.size() == 1);
  const auto& tri = out[0];
  CHECK(tri.kind == LatticeKind::Triangle);
  CHECK(tri.node_count() * 2 == dhex.node_count());
  // Interior swapping yields one single bond per neighbor pair: 6 distinct
  // neighbors, 6 bond copies, exactly the source N(1) per node.
  int best = -1;
  for (const auto& n : tri.nodes) best = std::max(best, tri.incident_multiplicity(n.id));
  CHECK(best == 6);
  // Contracted positions keep unit spacing after the 1/sqrt(3) rescale.
  const auto& e0 = tri.edges[0];
  const double dx = tri.nodes[e0.u].x - tri.nodes[e0.v].x;
  const double dy = tri.nodes[e0.u].y - tri.nodes[e0.v].y;
  CHECK(std::hypot(dx, dy) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("separate use of the double hexagon yields two single-bond copies") {
  const auto dhex = generate(LatticeKind::HexagonDoubleBond, 3);
  const auto out = transform_graph(dhex, TransformKind::DoubleHexSeparate);
  REQUIRE(out.size() == 2);
  for (const auto& g : out) {
    CHECK(g.kind == LatticeKind::Hexagon);
    CHECK(g.node_count() == dhex.node_count());
    CHECK(g.edge_count() == dhex.edge_count());
    for (const auto& e : g.edges) CHECK(e.mult == 1);
  }
}

TEST_CASE("third-double hexagon contracts to a square lattice") {
  const auto tdhex = generate(LatticeKind::HexagonThirdDoubleBond, 4);
  const auto out = transform_graph(tdhex, TransformKind::ThirdDoubleHexToSquare);
  REQUIRE(out.size() == 1);
  const auto& sq = out[0];
  CHECK(sq.kind == LatticeKind::Square);
  // Each double bond merges its two endpoints into one site.
  int doubles = 0;
  for (const auto& e : tdhex.edges) doubles += (e.mult == 2);
  CHECK(sq.node_count() == tdhex.node_count() - doubles);
  int best = -1;
  for (const auto& n : sq.nodes) best = std::max(best, sq.incident_multiplicity(n.id));
  CHECK(best == 4);
  for (const auto& e : sq.edges) CHECK(e.mult == 1);
}

TEST_CASE("transform_graph validates the source lattice kind") {
  const auto sq = generate(LatticeKind::Square, 2);
  CHECK_THROWS_AS(transform_graph(sq, TransformKind::DoubleHexToTriangle),
                  std::invalid_argument);
  const auto dhex = generate(LatticeKind::HexagonDoubleBond, 2);
  CHECK_THROWS_AS(transform_graph(dhex, TransformKind::ThirdDoubleHexToSquare),
                  std::invalid_argument);
}

TEST_CASE("strategies agree at p=1 equivalents and share normalizers") {
  // At per-copy p = p* the joint strategy has every hexagon bond open, so
  // EQC is exactly 3/6 = 0.5 deterministically.
  const double p_star = 2.0 - std::sqrt(2.0);
  const auto joint = strategy_eqc(BondStrategy::DoubleHexJoint, 4,
                                  {ScenarioMode::PointToPoint, 2}, p_star, 32, 9);
  CHECK(joint.est.mean == doctest::Approx(0.5));
  CHECK(joint.est.std_error == doctest::Approx(0.0));
  CHECK(joint.est.normalizer == 6);

  // The swapped triangle at p = 1 restores all 6 channels per bond pair.
  const auto tri = strategy_eqc(BondStrategy::TriangleSwapped, 4,
                                {ScenarioMode::PointToPoint, 2}, 1.0, 32, 9);
  CHECK(tri.est.mean == doctest::Approx(1.0));
  CHECK(tri.est.normalizer == 6);

  const auto sep = strategy_eqc(BondStrategy::HexSeparatePair, 4,
                                {ScenarioMode::PointToPoint, 2}, 1.0, 32, 9);
  CHECK(sep.est.mean == doctest::Approx(1.0));
}

TEST_CASE("third-double strategies are normalized by 4 channels per node") {
  const auto sq = strategy_eqc(BondStrategy::SquareSwapped, 4,
                               {ScenarioMode::PointToPoint, 2}, 1.0, 16, 1);
  CHECK(sq.est.normalizer == 4);
  CHECK(sq.est.mean == doctest::Approx(1.0));
  const auto sep = strategy_eqc(BondStrategy::ThirdDoubleSeparate, 4,
                                {ScenarioMode::PointToPoint, 2}, 1.0, 16, 1);
  CHECK(sep.est.normalizer == 4);
  CHECK(sep.est.mean == doctest::Approx(1.0));
}

TEST_CASE("crossover scan counts significant sign changes with a bracket") {
  const std::vector<double> grid{0.45, 0.50, 0.55, 0.60, 0.65};
  const auto scan = crossover_scan(TransformKind::DoubleHexToTriangle, grid, 6,
                                   {ScenarioMode::PointToPoint, 4}, 600, 21);
  REQUIRE(scan.points.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(scan.points[i].p == grid[i]);
    CHECK(scan.points[i].diff ==
          doctest::Approx(scan.points[i].transformed.mean - scan.points[i].original.mean));
    CHECK(scan.points[i].diff_stderr >= 0.0);
  }
  if (scan.sign_changes > 0) {
    REQUIRE(scan.bracket.has_value());
    CHECK(scan.bracket->first < scan.bracket->second);
  }
}

TEST_CASE("transform kind names round-trip") {
  for (auto kind : {TransformKind::DoubleHexToTriangle, TransformKind::DoubleHexSeparate,
                    TransformKind::ThirdDoubleHexToSquare, TransformKind::ThirdDoubleHexJoint,
                    TransformKind::ThirdDoubleHexSeparate}) {
    CHECK(transform_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(transform_kind_from_string("nope"), std::invalid_argument);
}
