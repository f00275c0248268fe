#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "matchstick/geometry.hpp"

using namespace matchstick;
using matchstick::testing::random_isometry;

namespace {

std::vector<Point2> random_points(std::mt19937_64& rng, int n, double extent) {
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
  return pts;
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance({0, 0}, {1, 0}) == 1.0);
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  // sqrt(43.636^2 + 3.4278^2) by hand: sqrt(1904.100496 + 11.74981284) = 43.7704...
  CHECK(distance({3.6500, 918.0914}, {47.2860, 914.6636}) == doctest::Approx(43.7704).epsilon(1e-5));
}

TEST_CASE("distance is a metric on sampled points") {
  std::mt19937_64 rng(11);
  const auto pts = random_points(rng, 40, 10.0);
  for (const Point2& p : pts)
    for (const Point2& q : pts) {
      CHECK(distance(p, q) >= 0.0);
      CHECK(distance(p, q) == distance(q, p));
      CHECK((distance(p, q) == 0.0) == (p == q));
      for (int k = 0; k < 3; ++k) {
        const Point2& r = pts[static_cast<std::size_t>(k)];
        CHECK(distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12);
      }
    }
}

TEST_CASE("apply_isometry examples") {
  const Embedding emb({{1, 0}, {2.5, -3}});
  CHECK(apply_isometry(Isometry::identity(), emb) == emb);

  const Embedding flipped = apply_isometry(Isometry::rotation(kPi), Embedding({{1, 0}}));
  CHECK(flipped[0].x == doctest::Approx(-1.0));
  CHECK(std::abs(flipped[0].y) < 1e-15);

  const Isometry third = Isometry::rotation(2 * kPi / 3, {0.3, -0.7});
  const Embedding back = apply_isometry(third, apply_isometry(third, apply_isometry(third, emb)));
  for (std::size_t i = 0; i < emb.size(); ++i) CHECK(distance(back[i], emb[i]) < 1e-12);
}

TEST_CASE("reflection fixes its axis and swaps sides") {
  const Isometry m = Isometry::reflection(kPi / 4, {1, 1});
  const Point2 on_axis = m.apply({3, 3});
  CHECK(distance(on_axis, {3, 3}) < 1e-12);
  const Point2 image = m.apply({2, 0});
  CHECK(distance(image, {0, 2}) < 1e-12);
}

TEST_CASE("isometry composed with its inverse is the identity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Isometry iso = random_isometry(rng);
    const Isometry inv = iso.inverse();
    for (const Point2& p : random_points(rng, 20, 1e3 / std::sqrt(2.0))) {
      CHECK(distance(inv.apply(iso.apply(p)), p) < 1e-12 * 1e3);
      CHECK(distance(iso.apply(inv.apply(p)), p) < 1e-12 * 1e3);
    }
  }
}

TEST_CASE("apply_isometry preserves pairwise distances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> size(2, 50);
    const Embedding emb(random_points(rng, size(rng), 10.0));
    const Embedding moved = apply_isometry(random_isometry(rng), emb);
    for (std::size_t i = 0; i < emb.size(); ++i)
      for (std::size_t j = i + 1; j < emb.size(); ++j)
        CHECK(std::abs(distance(moved[i], moved[j]) - distance(emb[i], emb[j])) < 1e-12);
  }
}

TEST_CASE("graph construction validates edges") {
  CHECK_THROWS_AS(Graph(2, {{0, 0}}), Error);
  CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), Error);
  try {
    Graph(3, {{0, 1}, {0, 1}});
    FAIL("duplicate edge accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateEdge);
  }
}

TEST_CASE("graph adjacency queries") {
  const Graph g(5, {{3, 1}, {1, 0}, {1, 4}, {2, 3}});
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 4);
  const auto nbrs = g.neighbors(1);
  CHECK(std::vector<VertexId>(nbrs.begin(), nbrs.end()) == std::vector<VertexId>{0, 3, 4});
  CHECK(g.degree(1) == 3);
  CHECK(g.has_edge(1, 3));
  CHECK(g.has_edge(3, 1));
  CHECK_FALSE(g.has_edge(0, 4));
  CHECK(g.edge_index(4, 1) == 2u);
  CHECK(g.connected());
  CHECK_FALSE(g.without_edge(3).connected());
  CHECK(g.with_edge(0, 4).edge_count() == 5);
  CHECK_THROWS_AS(g.with_edge(0, 1), Error);
  CHECK(g.degrees() == std::vector<int>{1, 3, 1, 2, 1});
}

TEST_CASE("embedding rejects non-finite coordinates") {
  CHECK_THROWS_AS(Embedding({{0, std::numeric_limits<double>::quiet_NaN()}}), Error);
  CHECK_THROWS_AS(Embedding({{std::numeric_limits<double>::infinity(), 0}}), Error);
  const Embedding emb({{0, 0}, {2, 4}});
  CHECK(Embedding::from_flat(emb.flatten()) == emb);
  CHECK(emb.centroid() == Point2{1, 2});
  CHECK(emb.with_position(1, {5, 5})[1] == Point2{5, 5});
}

TEST_CASE("embedding size must match the graph") {
  const Graph g(3, {{0, 1}});
  CHECK_THROWS_AS(check_embedding_shape(g, Embedding({{0, 0}})), Error);
  CHECK_NOTHROW(check_embedding_shape(g, Embedding({{0, 0}, {1, 0}, {2, 0}})));
}

TEST_CASE("tolerance profile validation") {
  CHECK_NOTHROW(ToleranceProfile{}.validate());
  ToleranceProfile bad;
  bad.rank_tau = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  ToleranceProfile inverted;
  inverted.eps_refined = 1e-2;
  CHECK_THROWS_AS(inverted.validate(), Error);
}

TEST_CASE("close vertex pairs agree with brute force") {
  std::mt19937_64 rng(3);
  std::vector<Point2> pts = random_points(rng, 200, 2.0);
  pts.push_back({pts[10].x + 3e-5, pts[10].y});
  pts.push_back({pts[20].x, pts[20].y - 5e-5});
  const Embedding emb(pts);
  std::vector<std::pair<VertexId, VertexId>> expected;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (distance(pts[i], pts[j]) < 1e-4) expected.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
  auto found = close_vertex_pairs(emb, 1e-4);
  std::sort(found.begin(), found.end());
  CHECK(found == expected);
  CHECK(found.size() >= 2);
}

TEST_CASE("max length deviation") {
  const Graph g(3, {{0, 1}, {1, 2}});
  CHECK(max_abs_length_deviation(g, Embedding({{0, 0}, {1, 0}, {1, 1.25}})) == doctest::Approx(0.25));
}

TEST_CASE("degree/radian conversion") {
  CHECK(degrees_to_radians(180.0) == doctest::Approx(kPi));
  CHECK(radians_to_degrees(kPi / 2) == doctest::Approx(90.0));
}
