#include <catch2/catch_amalgamated.hpp>

#include "mcflab/cones.hpp"
#include "mcflab/sampling.hpp"

using namespace mcflab;

namespace {
bool same_basis(const ConeBasis& c, std::array<Vec3, 3> want) {
  return c.f == want;
}
}  // namespace

TEST_CASE("subdivision by smallest coordinate") {
  auto root = ConeBasis::canonical();
  auto kids = subdivide(root);
  Vec3 s = {1, 1, 1};
  CHECK(same_basis(kids[0], {s, Vec3{1, 0, 0}, Vec3{0, 1, 0}}));
  CHECK(same_basis(kids[1], {s, Vec3{0, 1, 0}, Vec3{0, 0, 1}}));
  CHECK(same_basis(kids[2], {s, Vec3{1, 0, 0}, Vec3{0, 0, 1}}));
  for (const auto& k : kids) {
    CHECK(k.abs_det() == root.abs_det());
    CHECK(k.depth == 1);
  }
  // diagonal direction projects to the simplex center
  auto v = triangle_vertices(kids[0]);
  CHECK(v[0] == std::array<Rat, 3>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
}

TEST_CASE("middle cone and its determinant doubling") {
  auto root = ConeBasis::canonical();
  auto mid = middle_cone(root);
  CHECK(same_basis(mid, {Vec3{1, 1, 0}, Vec3{0, 1, 1}, Vec3{1, 0, 1}}));
  CHECK(mid.abs_det() == 2);
  auto v = triangle_vertices(mid);
  CHECK(v[0] == std::array<Rat, 3>{Rat(1, 2), Rat(1, 2), Rat(0)});
  CHECK(v[1] == std::array<Rat, 3>{Rat(0), Rat(1, 2), Rat(1, 2)});
  CHECK(v[2] == std::array<Rat, 3>{Rat(1, 2), Rat(0), Rat(1, 2)});

  auto mid2 = middle_cone(mid);
  CHECK(same_basis(mid2, {Vec3{1, 2, 1}, Vec3{1, 1, 2}, Vec3{2, 1, 1}}));
  CHECK(mid2.abs_det() == 4);
}

TEST_CASE("normalized areas") {
  CHECK(normalized_area(ConeBasis::canonical()) == 1);
  CHECK(normalized_area(middle_cone(ConeBasis::canonical())) == Rat(1, 4));
  CHECK(normalized_area(middle_cone(middle_cone(ConeBasis::canonical()))) ==
        Rat(1, 16));
}

TEST_CASE("complement recursion: counts, areas, ratios") {
  const int K = 5;
  auto tree = complement_recursion(K);
  CHECK(tree.complement_area[0] == Rat(1, 4));
  CHECK(tree.complement_area[1] == Rat(3, 16));
  for (int k = 0; k <= K; ++k) {
    REQUIRE(tree.complement[k].size() == static_cast<size_t>(std::pow(3, k)));
    Rat decay_product = 1;
    for (int j = 0; j < k; ++j)
      decay_product *= 1 - Rat(1, 2 * (j + 2));
    REQUIRE(tree.complement_area[k] <= Rat(1, 4) * decay_product);
    if (k > 0)
      REQUIRE(tree.complement_area[k] < tree.complement_area[k - 1]);
    for (const auto& c : tree.complement[k]) {
      Int n0 = l1_norm(c.f[0]), n1 = l1_norm(c.f[1]), n2 = l1_norm(c.f[2]);
      Int lo = std::min({n0, n1, n2}), hi = std::max({n0, n1, n2});
      REQUIRE(hi <= (k + 1) * lo);
      REQUIRE(normalized_area(middle_cone(c)) * (2 * (k + 2)) >=
              normalized_area(c));
    }
  }
  // exact equality instance of the ratio bound at depth 0
  const auto& m0 = tree.complement[0][0];
  CHECK(normalized_area(middle_cone(m0)) / normalized_area(m0) == Rat(1, 4));
}

TEST_CASE("partition of the simplex area is exact") {
  const int K = 5;
  auto tree = complement_recursion(K);
  // the three corner cones of A
  Rat area_A = 0;
  for (const auto& c : corner_cones(ConeBasis::canonical()))
    area_A += normalized_area(c);
  CHECK(area_A == Rat(3, 4));
  Rat absorbed = 0;
  for (int k = 0; k <= K; ++k) {
    REQUIRE(area_A + absorbed + tree.complement_area[k] == 1);
    absorbed += tree.absorbed_area[k];
  }
}

TEST_CASE("depth limits") {
  CHECK_THROWS_AS(complement_recursion(13), resource_error);
  CHECK_THROWS_AS(complement_recursion(-1), usage_error);
}

TEST_CASE("barycentric membership") {
  auto mid = middle_cone(ConeBasis::canonical());
  Vec<Rat> center = {Rat(1, 3), Rat(1, 3), Rat(1, 3)};
  CHECK(cone_contains(mid, center));
  Vec<Rat> corner = {Rat(9, 10), Rat(1, 20), Rat(1, 20)};
  CHECK_FALSE(cone_contains(mid, corner));
}

TEST_CASE("cone membership agrees with the dynamics") {
  // A point of a depth-k complement cone stays outside A for k steps; a point
  // of a depth-k middle cone reaches A within k+1 steps.
  const int K = 4;
  auto tree = complement_recursion(K);
  Rng rng(31);
  auto in_A3 = [](const Vec<Rat>& x) {
    Rat s = x[0] + x[1] + x[2];
    Rat mx = std::max({x[0], x[1], x[2]});
    return s <= 2 * mx;
  };
  auto random_inside = [&](const ConeBasis& c) {
    // strictly positive rational combination of the basis vectors
    Vec<Rat> pt = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
      Rat w = make_rat(1 + rng.dyadic(16), pow2(16));
      for (int j = 0; j < 3; ++j) pt[j] += w * Rat(c.f[i][j]);
    }
    return pt;
  };
  for (int k = 0; k <= K; ++k) {
    for (int t = 0; t < 20; ++t) {
      const auto& c = tree.complement[k][rng.index(tree.complement[k].size())];
      Vec<Rat> x = random_inside(c);
      Vec<Rat> cur = x;
      for (int s = 0; s < k; ++s) {
        REQUIRE_FALSE(in_A3(cur));
        cur = unordered_step3(cur);
      }
      REQUIRE_FALSE(in_A3(cur));  // complement of T^{-k}(A)

      const auto& mc = tree.absorbed[k][rng.index(tree.absorbed[k].size())];
      Vec<Rat> y = random_inside(mc);
      bool hit = false;
      for (int s = 0; s <= k + 1 && !hit; ++s) {
        hit = in_A3(y);
        y = unordered_step3(y);
      }
      REQUIRE(hit);
    }
  }
}
