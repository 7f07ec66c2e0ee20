#pragma once

#include <array>

#include "mcflab/core.hpp"

namespace mcflab {

using Vec3 = std::array<Int, 3>;

inline Vec3 add3(const Vec3& u, const Vec3& v) {
  return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}

inline Int l1_norm(const Vec3& v) { return v[0] + v[1] + v[2]; }

inline Int det3(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) -
         c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
         c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
}

/// Simplicial cone in the positive octant, spanned by three nonnegative
/// integer vectors. depth tracks the level in the complement recursion.
struct ConeBasis {
  std::array<Vec3, 3> f;
  int depth = 0;

  ConeBasis() = default;
  ConeBasis(Vec3 f1, Vec3 f2, Vec3 f3, int d = 0) : f{f1, f2, f3}, depth(d) {
    for (const auto& v : f) {
      if (v[0] < 0 || v[1] < 0 || v[2] < 0)
        throw usage_error("cone basis vectors must be nonnegative");
      if (l1_norm(v) == 0) throw usage_error("cone basis vector is zero");
    }
    if (det() == 0) throw usage_error("cone basis is degenerate");
  }

  Int det() const { return det3(f[0], f[1], f[2]); }
  Int abs_det() const { Int d = det(); return d < 0 ? -d : d; }

  static ConeBasis canonical() {
    return ConeBasis({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 0);
  }
};

/// Decomposition by smallest coordinate: three sub-cones each containing the
/// diagonal direction f1+f2+f3. Determinant magnitude is preserved.
inline std::array<ConeBasis, 3> subdivide(const ConeBasis& c) {
  Vec3 s = add3(add3(c.f[0], c.f[1]), c.f[2]);
  int d = c.depth + 1;
  return {ConeBasis(s, c.f[0], c.f[1], d), ConeBasis(s, c.f[1], c.f[2], d),
          ConeBasis(s, c.f[0], c.f[2], d)};
}

/// The pairwise-sum cone: the part of a complement cone that the next inverse
/// image of A occupies. Determinant magnitude doubles.
inline ConeBasis middle_cone(const ConeBasis& c) {
  return ConeBasis(add3(c.f[0], c.f[1]), add3(c.f[1], c.f[2]),
                   add3(c.f[0], c.f[2]), c.depth + 1);
}

/// The three corner cones left after removing the middle cone; these form the
/// next level of the complement recursion.
inline std::array<ConeBasis, 3> corner_cones(const ConeBasis& c) {
  Vec3 s01 = add3(c.f[0], c.f[1]);
  Vec3 s12 = add3(c.f[1], c.f[2]);
  Vec3 s02 = add3(c.f[0], c.f[2]);
  int d = c.depth + 1;
  return {ConeBasis(c.f[0], s01, s02, d), ConeBasis(c.f[1], s01, s12, d),
          ConeBasis(c.f[2], s02, s12, d)};
}

/// Area of the cone's trace on the unit simplex, as an exact fraction of the
/// full simplex area (the sqrt(3)/2 factor cancels).
inline Rat normalized_area(const ConeBasis& c) {
  return Rat(c.abs_det(), l1_norm(c.f[0]) * l1_norm(c.f[1]) * l1_norm(c.f[2]));
}

/// Radial projections of the basis vectors onto the simplex.
inline std::array<std::array<Rat, 3>, 3> triangle_vertices(const ConeBasis& c) {
  std::array<std::array<Rat, 3>, 3> out;
  for (int i = 0; i < 3; ++i) {
    Int n = l1_norm(c.f[i]);
    for (int j = 0; j < 3; ++j) out[i][j] = Rat(c.f[i][j], n);
  }
  return out;
}

/// Barycentric coordinates of x with respect to the basis, by Cramer's rule.
inline std::array<Rat, 3> barycentric(const ConeBasis& c, const Vec<Rat>& x) {
  if (x.size() != 3) throw usage_error("barycentric expects dimension 3");
  // scale x to integers
  Int lcm = 1;
  for (const auto& v : x) {
    Int d = denominator(v);
    lcm = lcm / gcd(lcm, d) * d;
  }
  Vec3 xi;
  for (int i = 0; i < 3; ++i)
    xi[i] = numerator(x[i]) * (lcm / denominator(x[i]));
  Int d = c.det();
  std::array<Rat, 3> out;
  std::array<Vec3, 3> cols = c.f;
  for (int i = 0; i < 3; ++i) {
    std::array<Vec3, 3> m = cols;
    m[i] = xi;
    out[i] = make_rat(det3(m[0], m[1], m[2]), d * lcm);
  }
  return out;
}

inline bool cone_contains(const ConeBasis& c, const Vec<Rat>& x) {
  auto bc = barycentric(c, x);
  return bc[0] >= 0 && bc[1] >= 0 && bc[2] >= 0;
}

/// Levels of the complement recursion: at depth k the complement of the k-th
/// inverse image of A consists of 3^k cones; the middle cone of each is the
/// slice absorbed at the next step.
struct SubdivisionTree {
  int max_depth = 0;
  std::vector<std::vector<ConeBasis>> complement;  // [k] -> 3^k cones
  std::vector<std::vector<ConeBasis>> absorbed;    // [k] -> middle cones of level k
  std::vector<Rat> complement_area;                // exact, per depth
  std::vector<Rat> absorbed_area;                  // exact, per depth
};

inline constexpr int kMaxConeDepth = 12;

inline SubdivisionTree complement_recursion(int max_depth) {
  if (max_depth < 0) throw usage_error("depth must be nonnegative");
  if (max_depth > kMaxConeDepth)
    throw resource_error("cone recursion depth is capped at " +
                         std::to_string(kMaxConeDepth));
  SubdivisionTree tree;
  tree.max_depth = max_depth;
  tree.complement.resize(max_depth + 1);
  tree.absorbed.resize(max_depth + 1);
  tree.complement_area.assign(max_depth + 1, 0);
  tree.absorbed_area.assign(max_depth + 1, 0);

  ConeBasis root = ConeBasis::canonical();
  ConeBasis m0 = middle_cone(root);
  m0.depth = 0;
  tree.complement[0] = {m0};

  for (int k = 0; k <= max_depth; ++k) {
    for (const ConeBasis& c : tree.complement[k]) {
      tree.complement_area[k] += normalized_area(c);
      ConeBasis mid = middle_cone(c);
      tree.absorbed[k].push_back(mid);
      tree.absorbed_area[k] += normalized_area(mid);
      if (k < max_depth) {
        for (ConeBasis& child : corner_cones(c))
          tree.complement[k + 1].push_back(child);
      }
    }
  }
  return tree;
}

}  // namespace mcflab
