#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mcflab/core.hpp"
#include "mcflab/sampling.hpp"

using namespace mcflab;

namespace {
Vec<Rat> rpoint(std::initializer_list<Rat> vals) { return Vec<Rat>(vals); }
}  // namespace

TEST_CASE("subtractive step on worked points") {
  SECTION("standard (1,2)") {
    MapParams p(1, 2);
    auto [y, pi] = subtractive_step(rpoint({1, 2, 3}), p);
    CHECK(y == rpoint({1, 1, 2}));
    CHECK(pi.is_identity());
  }
  SECTION("zero minimum is a fixed point") {
    MapParams p(1, 2);
    auto [y, pi] = subtractive_step(rpoint({0, 2, 5}), p);
    CHECK(y == rpoint({0, 2, 5}));
  }
  SECTION("standard (2,1) with a nontrivial shuffle") {
    MapParams p(2, 1);
    auto [y, pi] = subtractive_step(rpoint({2, 3, 4}), p);
    CHECK(y == rpoint({1, 2, 3}));
    CHECK(pi.dest == std::vector<int>{1, 2, 0});
  }
  SECTION("Selmer variant (2,1,i=1)") {
    MapParams p(2, 1, 1);
    auto [y, pi] = subtractive_step(rpoint({1, 2, 3}), p);
    CHECK(y == rpoint({1, 2, 2}));
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(subtractive_step(rpoint({1, 2}), MapParams(1, 2)),
                    usage_error);
  }
}

TEST_CASE("unordered three-branch map") {
  CHECK(unordered_step3(rpoint({1, 2, 3})) == rpoint({1, 1, 2}));
  CHECK(unordered_step3(rpoint({0, 2, 5})) == rpoint({0, 2, 5}));
  CHECK(unordered_step3(rpoint({5, 2, 4})) == rpoint({3, 2, 2}));
}

TEST_CASE("projections") {
  CHECK(project_to_simplex(rpoint({1, 1, 2})) ==
        rpoint({Rat(1, 4), Rat(1, 4), Rat(1, 2)}));
  CHECK(project_to_simplex(rpoint({Rat(1, 3), Rat(1, 3), Rat(1, 3)})) ==
        rpoint({Rat(1, 3), Rat(1, 3), Rat(1, 3)}));
  CHECK(project_to_simplex(rpoint({2, 3, 5})) ==
        rpoint({Rat(1, 5), Rat(3, 10), Rat(1, 2)}));
  CHECK_THROWS_AS(project_to_simplex(rpoint({0, 0, 0})), usage_error);

  CHECK(project_to_B(rpoint({1, 2, 4})) == rpoint({Rat(1, 4), Rat(1, 2)}));
  CHECK(project_to_B(rpoint({0, 0, 3})) == rpoint({0, 0}));
  CHECK(project_to_B(rpoint({1, 1, 1, 2})) ==
        rpoint({Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
  CHECK_THROWS_AS(project_to_B(rpoint({0, 0, 0})), usage_error);
}

TEST_CASE("projected map on B") {
  MapParams p(1, 2);
  CHECK(s_map_step(rpoint({Rat(1, 4), Rat(1, 2)}), p) ==
        rpoint({Rat(1, 3), Rat(1, 3)}));
  // zero first coordinate stays fixed
  CHECK(s_map_step(rpoint({0, Rat(3, 5)}), p) == rpoint({0, Rat(3, 5)}));
  // closed form on D: S_{1,2}(z) = T_{1,1}(z) / (1 - z_1)
  CHECK(s_map_step(rpoint({Rat(1, 3), Rat(1, 3)}), p) ==
        rpoint({0, Rat(1, 2)}));
}

TEST_CASE("region classification") {
  MapParams p12(1, 2);
  auto f1 = classify(rpoint({1, 1, 2}), p12);
  CHECK(f1.in_A);  // boundary, inclusive
  auto f2 = classify(rpoint({1, 2, Rat(5, 2)}), p12);
  CHECK_FALSE(f2.in_A);
  CHECK_FALSE(f2.in_Theta);  // 2 x_1 = 2 < 5/2
  MapParams p13(1, 3);
  CHECK(in_D(rpoint({1, 2, 10, 20}), p13));
  CHECK_THROWS_AS(in_D(rpoint({1, 2}), MapParams(1, 1)), usage_error);
  auto f3 = classify(rpoint({1, 2}), MapParams(1, 1));
  CHECK_FALSE(f3.in_D.has_value());
}

TEST_CASE("order preservation and forward invariance on random points") {
  Rng rng(42);
  for (auto [a, b] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    MapParams p(a, b);
    for (int i = 0; i < 2000; ++i) {
      Vec<Int> x = sample_ordered(rng, p.dim());
      auto [y, pi] = subtractive_step(x, p);
      REQUIRE(is_ordered(y));
      REQUIRE(pi.valid_for(p));
    }
    for (int i = 0; i < 1000; ++i) {
      Vec<Int> xa = sample_in_A(rng, p);
      REQUIRE(in_A(subtractive_step(xa, p).first, p));
      Vec<Int> xd = sample_in_D(rng, p);
      REQUIRE(in_D(subtractive_step(xd, p).first, p));
      REQUIRE(in_A(xd, p));  // D subset of A
    }
  }
}

TEST_CASE("telescoping sum along an orbit segment") {
  Rng rng(7);
  MapParams p(2, 2);
  Vec<Int> x = sample_ordered(rng, p.dim());
  Int s0 = sigma(x), acc = 0;
  Vec<Int> cur = x;
  for (int m = 0; m < 200; ++m) {
    acc += cur[p.a - 1];
    cur = subtractive_step(cur, p).first;
    REQUIRE(sigma(cur) == s0 - p.b * acc);
  }
}

TEST_CASE("sorting the unordered map matches the ordered map for (1,2)") {
  Rng rng(11);
  MapParams p(1, 2);
  for (int i = 0; i < 2000; ++i) {
    Vec<Int> x = sample_ordered(rng, 3);
    if (x[0] == x[1] || x[1] == x[2]) continue;
    Vec<Int> u = unordered_step3(x);
    std::sort(u.begin(), u.end());
    REQUIRE(u == subtractive_step(x, p).first);
  }
}

TEST_CASE("variant invariance of A over a parameter grid") {
  Rng rng(5);
  for (auto [a, b, i] : {std::tuple{2, 1, 1}, {2, 2, 1}, {3, 2, 2}, {3, 2, 1}}) {
    MapParams p(a, b, i);
    for (int k = 0; k < 500; ++k) {
      Vec<Int> x = sample_in_A(rng, p);
      REQUIRE(in_A(subtractive_step(x, p).first, p));
    }
    if (p.b <= p.a + 1 - p.sub_index) {
      for (int k = 0; k < 500; ++k) {
        Vec<Int> x = sample_in_cA(rng, p);
        REQUIRE_FALSE(in_A(subtractive_step(x, p).first, p));
      }
    }
  }
}

TEST_CASE("realized shuffles exhaust the binomial count") {
  Rng rng(3);
  for (auto [a, b] : {std::pair{1, 2}, {2, 1}, {2, 2}}) {
    MapParams p(a, b);
    auto all = all_shuffles(p);
    std::set<std::vector<int>> seen;
    for (int i = 0; i < 20000 && seen.size() < all.size(); ++i) {
      Vec<Int> x = sample_ordered(rng, p.dim());
      seen.insert(subtractive_step(x, p).second.dest);
    }
    CHECK(seen.size() == all.size());
    for (const auto& s : all) {
      Shuffle sh{s.dest};
      CHECK(sh.valid_for(p));
    }
  }
}
