#pragma once

#include <algorithm>
#include <numeric>
#include <optional>

#include "mcflab/rational.hpp"

namespace mcflab {

/// Parameters of the subtractive map: deck sizes (a, b) and the index of the
/// coordinate that gets subtracted from the last b coordinates. sub_index == a
/// is the standard map; sub_index < a gives the variant family (Selmer for
/// a = 2, b = 1, sub_index = 1).
struct MapParams {
  int a = 1;
  int b = 1;
  int sub_index = 1;  // 1-based, in [1, a]

  MapParams() = default;
  MapParams(int a_, int b_) : a(a_), b(b_), sub_index(a_) { validate(); }
  MapParams(int a_, int b_, int i_) : a(a_), b(b_), sub_index(i_) { validate(); }

  int dim() const { return a + b; }
  bool is_variant() const { return sub_index < a; }

  void validate() const {
    if (a < 1 || b < 1) throw usage_error("map parameters require a >= 1, b >= 1");
    if (sub_index < 1 || sub_index > a)
      throw usage_error("subtraction index must lie in [1, a]");
    if (is_variant() && a < 2)
      throw usage_error("variant subtraction index requires a >= 2");
  }
};

/// A shuffle of two ordered decks, stored as the placement map:
/// dest[i] is the 0-based output slot of the i-th pre-sort coordinate.
struct Shuffle {
  std::vector<int> dest;

  int size() const { return static_cast<int>(dest.size()); }
  bool operator==(const Shuffle& o) const { return dest == o.dest; }
  bool operator!=(const Shuffle& o) const { return !(*this == o); }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (dest[i] != i) return false;
    return true;
  }

  /// Valid for (a, b) iff slots are increasing within each deck.
  bool valid_for(const MapParams& p) const {
    int n = p.dim();
    if (size() != n) return false;
    std::vector<char> seen(n, 0);
    for (int d : dest) {
      if (d < 0 || d >= n || seen[d]) return false;
      seen[d] = 1;
    }
    for (int i = 1; i < p.a; ++i)
      if (dest[i] <= dest[i - 1]) return false;
    for (int i = p.a + 1; i < n; ++i)
      if (dest[i] <= dest[i - 1]) return false;
    return true;
  }

  static Shuffle identity(int n) {
    Shuffle s;
    s.dest.resize(n);
    std::iota(s.dest.begin(), s.dest.end(), 0);
    return s;
  }
};

/// All binomial(a+b, a) shuffles, in lexicographic order of the slot set
/// occupied by the first deck.
inline std::vector<Shuffle> all_shuffles(const MapParams& p) {
  int n = p.dim(), a = p.a;
  std::vector<Shuffle> out;
  std::vector<char> mask(n, 0);
  std::fill(mask.begin(), mask.begin() + a, 1);
  // iterate over all a-subsets of {0,...,n-1} as deck-one slots
  std::vector<int> slots(a);
  std::iota(slots.begin(), slots.end(), 0);
  while (true) {
    Shuffle s;
    s.dest.resize(n);
    std::vector<char> taken(n, 0);
    for (int i = 0; i < a; ++i) {
      s.dest[i] = slots[i];
      taken[slots[i]] = 1;
    }
    int j = a;
    for (int d = 0; d < n; ++d)
      if (!taken[d]) s.dest[j++] = d;
    out.push_back(std::move(s));
    // next a-subset
    int i = a - 1;
    while (i >= 0 && slots[i] == n - a + i) --i;
    if (i < 0) break;
    ++slots[i];
    for (int k = i + 1; k < a; ++k) slots[k] = slots[k - 1] + 1;
  }
  return out;
}

namespace detail {
template <class T>
void check_dim(const Vec<T>& x, const MapParams& p) {
  if (static_cast<int>(x.size()) != p.dim())
    throw usage_error("point dimension does not match a + b");
}
}  // namespace detail

/// One step of the subtractive map. Subtracts x[sub_index] from the last b
/// coordinates, then reorders ascending with the stable tie-break (equal
/// values keep their pre-sort index order). Returns the image and the shuffle
/// that realized it.
template <class T>
std::pair<Vec<T>, Shuffle> subtractive_step(const Vec<T>& x, const MapParams& p) {
  detail::check_dim(x, p);
  int n = p.dim(), a = p.a;
  const T& sub = x[p.sub_index - 1];
  Vec<T> y(x.begin(), x.end());
  for (int i = a; i < n; ++i) y[i] -= sub;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return y[i] < y[j]; });
  Vec<T> z(n);
  Shuffle pi;
  pi.dest.resize(n);
  for (int slot = 0; slot < n; ++slot) {
    z[slot] = y[order[slot]];
    pi.dest[order[slot]] = slot;
  }
  return {std::move(z), std::move(pi)};
}

/// The three-branch map on the free positive octant: keep the minimal
/// coordinate (lowest index on ties), subtract it from the other two.
template <class T>
Vec<T> unordered_step3(const Vec<T>& x) {
  if (x.size() != 3) throw usage_error("unordered_step3 expects dimension 3");
  int m = 0;
  if (x[1] < x[m]) m = 1;
  if (x[2] < x[m]) m = 2;
  Vec<T> y = x;
  for (int i = 0; i < 3; ++i)
    if (i != m) y[i] -= x[m];
  return y;
}

inline Vec<Rat> project_to_simplex(const Vec<Rat>& x) {
  Rat s = sigma(x);
  if (s == 0) throw usage_error("cannot project a zero-sum point to the simplex");
  Vec<Rat> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] / s;
  return out;
}

/// Divide by the last coordinate and drop it: Lambda^n -> B subset Lambda^{n-1}.
inline Vec<Rat> project_to_B(const Vec<Rat>& x) {
  if (x.empty() || x.back() == 0)
    throw usage_error("cannot project: last coordinate is zero");
  Vec<Rat> out(x.size() - 1);
  for (size_t i = 0; i + 1 < x.size(); ++i) out[i] = x[i] / x.back();
  return out;
}

/// Projected map on B via the commutative diagram: lift with last
/// coordinate 1, apply the subtractive step, project back.
inline Vec<Rat> s_map_step(const Vec<Rat>& z, const MapParams& p) {
  if (static_cast<int>(z.size()) != p.dim() - 1)
    throw usage_error("projected point dimension must be a + b - 1");
  Vec<Rat> lift = z;
  lift.push_back(1);
  auto [y, pi] = subtractive_step(lift, p);
  return project_to_B(y);
}

template <class T>
bool in_A(const Vec<T>& x, const MapParams& p) {
  detail::check_dim(x, p);
  return sigma(x) <= p.b * x.back();
}

template <class T>
bool in_D(const Vec<T>& x, const MapParams& p) {
  detail::check_dim(x, p);
  if (p.b < 2) throw usage_error("the set D is defined only for b >= 2");
  T s = 0;
  for (int i = 0; i <= p.a; ++i) s += x[i];
  return s <= x[p.a + 1];
}

template <class T>
bool in_Theta(const Vec<T>& x, const MapParams& p) {
  detail::check_dim(x, p);
  return !in_A(x, p) && 2 * x[p.a - 1] >= x.back();
}

template <class T>
bool in_Gamma(const Vec<T>& x, const MapParams& p) {
  if (in_A(x, p)) return false;
  auto [y, pi] = subtractive_step(x, p);
  return in_A(y, p);
}

struct RegionFlags {
  bool in_A = false;
  bool in_Theta = false;
  bool in_Gamma = false;
  std::optional<bool> in_D;  // absent when b == 1
};

template <class T>
RegionFlags classify(const Vec<T>& x, const MapParams& p) {
  RegionFlags f;
  f.in_A = in_A(x, p);
  f.in_Theta = in_Theta(x, p);
  f.in_Gamma = in_Gamma(x, p);
  if (p.b >= 2) f.in_D = in_D(x, p);
  return f;
}

}  // namespace mcflab
