#include <catch2/catch_amalgamated.hpp>

#include "mcflab/matrices.hpp"
#include "mcflab/sampling.hpp"

using namespace mcflab;

TEST_CASE("forward matrix rows") {
  MapParams p(1, 2);
  auto L = forward_matrix(Shuffle::identity(3), p);
  // rows e1, e2 - e1, e3 - e1
  std::vector<Int> want = {1, 0, 0, -1, 1, 0, -1, 0, 1};
  CHECK(L.e == want);

  MapParams euclid(1, 1);
  auto L2 = forward_matrix(Shuffle::identity(2), euclid);
  std::vector<Int> want2 = {1, 0, -1, 1};
  CHECK(L2.e == want2);
}

TEST_CASE("forward matrices are unimodular for every shuffle") {
  for (auto [a, b] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
    MapParams p(a, b);
    for (const auto& pi : all_shuffles(p)) {
      Int d = determinant(forward_matrix(pi, p));
      CHECK((d == 1 || d == -1));
    }
  }
}

TEST_CASE("inverse matrix columns and L*M = I") {
  MapParams p(1, 2);
  auto M = inverse_matrix(Shuffle::identity(3), p);
  std::vector<Int> want = {1, 0, 0, 1, 1, 0, 1, 0, 1};
  CHECK(M.e == want);
  CHECK(column_sums(M) == Vec<Int>{3, 1, 1});

  for (const auto& pi : all_shuffles(p)) {
    auto L = forward_matrix(pi, p);
    auto Mi = inverse_matrix(pi, p);
    CHECK(Mi.nonnegative());
    CHECK(is_inverse_pair(L, Mi));
  }
}

TEST_CASE("column sums of products") {
  MapParams p(1, 2);
  auto M = inverse_matrix(Shuffle::identity(3), p);
  CHECK(column_sums(TransitionMatrix::identity(3, MatKind::inverse)) ==
        Vec<Int>{1, 1, 1});
  auto M2 = multiply(M, M);
  std::vector<Int> want = {1, 0, 0, 2, 1, 0, 2, 0, 1};
  CHECK(M2.e == want);
  CHECK(column_sums(M2) == Vec<Int>{5, 1, 1});
  CHECK_THROWS_AS(column_sums(forward_matrix(Shuffle::identity(3), p)),
                  usage_error);
}

TEST_CASE("kind mixing is rejected") {
  MapParams p(1, 2);
  auto L = forward_matrix(Shuffle::identity(3), p);
  auto M = inverse_matrix(Shuffle::identity(3), p);
  CHECK_THROWS_AS(multiply(L, M), usage_error);
  CHECK_NOTHROW(multiply(L, L));
  CHECK_NOTHROW(multiply(M, M));
}

TEST_CASE("column claims hold for single matrices and random words") {
  Rng rng(17);
  for (auto [a, b] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
    MapParams p(a, b);
    auto shuffles = all_shuffles(p);
    for (const auto& pi : shuffles) {
      auto claims = check_column_claims(inverse_matrix(pi, p), p);
      REQUIRE(claims.max_property);
      REQUIRE(claims.prefix_bound);
    }
    auto id_claims =
        check_column_claims(TransitionMatrix::identity(p.dim(), MatKind::inverse), p);
    CHECK(id_claims.max_property);
    CHECK(id_claims.prefix_bound);
    for (int t = 0; t < 200; ++t) {
      int len = 1 + static_cast<int>(rng.index(50));
      auto prod = TransitionMatrix::identity(p.dim(), MatKind::inverse);
      for (int k = 0; k < len; ++k)
        prod = multiply(prod, inverse_matrix(shuffles[rng.index(shuffles.size())], p));
      REQUIRE(prod.nonnegative());
      Int d = determinant(prod);
      REQUIRE((d == 1 || d == -1));
      auto claims = check_column_claims(prod, p);
      REQUIRE(claims.max_property);
      REQUIRE(claims.prefix_bound);
    }
  }
}

TEST_CASE("every cylinder is full: inverse branches are right inverses") {
  Rng rng(23);
  for (auto [a, b] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
    MapParams p(a, b);
    for (const auto& pi : all_shuffles(p)) {
      auto M = inverse_matrix(pi, p);
      for (int t = 0; t < 300; ++t) {
        Vec<Int> y = sample_ordered(rng, p.dim());
        Vec<Int> x = mcflab::apply(M, y);
        REQUIRE(is_ordered(x));
        auto [img, pi2] = subtractive_step(x, p);
        REQUIRE(img == y);
      }
    }
  }
}

TEST_CASE("forward matrix realizes the step on its cylinder") {
  Rng rng(29);
  MapParams p(2, 2);
  for (int t = 0; t < 500; ++t) {
    Vec<Int> x = sample_ordered(rng, p.dim());
    auto [y, pi] = subtractive_step(x, p);
    CHECK(mcflab::apply(forward_matrix(pi, p), x) == y);
  }
}
