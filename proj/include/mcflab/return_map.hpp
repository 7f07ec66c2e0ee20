#pragma once

#include <cmath>

#include "mcflab/matrices.hpp"
#include "mcflab/sampling.hpp"

namespace mcflab {

enum class ReturnStatus { returned, absorbed, cap_exceeded };

/// One block of the conditioned first-return map to Theta: start and end
/// points, the shuffle word of the excursion and its forward matrix product.
template <class T>
struct ReturnRecord {
  ReturnStatus status = ReturnStatus::returned;
  Vec<T> start;
  Vec<T> end;
  long return_time = 0;
  std::vector<Shuffle> word;           // pi_1, ..., pi_k in visit order
  TransitionMatrix product;            // L_{pi_k} ... L_{pi_1}
};

/// First return to Theta, conditioned to stop on Gamma (return time 0 there).
/// Excursions provably stay outside A; an A entry is still checked and
/// reported as absorbed.
template <class T>
ReturnRecord<T> first_return(const Vec<T>& x, const MapParams& p, long cap) {
  detail::check_dim(x, p);
  if (cap < 1) throw usage_error("first-return cap must be >= 1");
  if (!in_Theta(x, p)) throw usage_error("first return requires a point of Theta");

  ReturnRecord<T> rec;
  rec.start = x;
  rec.product = TransitionMatrix::identity(p.dim(), MatKind::forward);
  if (in_Gamma(x, p)) {
    rec.end = x;
    return rec;
  }
  Vec<T> cur = x;
  for (long k = 1; k <= cap; ++k) {
    auto [y, pi] = subtractive_step(cur, p);
    rec.product = multiply(forward_matrix(pi, p), rec.product);
    rec.word.push_back(pi);
    cur = std::move(y);
    if (in_A(cur, p)) {
      rec.status = ReturnStatus::absorbed;
      rec.end = cur;
      rec.return_time = k;
      return rec;
    }
    if (in_Theta(cur, p)) {
      rec.end = cur;
      rec.return_time = k;
      return rec;
    }
  }
  rec.status = ReturnStatus::cap_exceeded;
  rec.end = cur;
  rec.return_time = cap;
  return rec;
}

/// Concatenation of first-return blocks; identifies the cylinder of the
/// n-th partition containing x.
struct CylinderCode {
  std::vector<std::vector<Shuffle>> blocks;
  bool absorbed = false;        // Gamma entered; orbit terminal there
  int absorbed_after = -1;      // number of complete blocks before Gamma
  bool cap_exceeded = false;
};

template <class T>
CylinderCode code_orbit(const Vec<T>& x, const MapParams& p, int n_returns,
                        long cap) {
  CylinderCode code;
  Vec<T> cur = x;
  for (int blk = 0; blk < n_returns; ++blk) {
    if (in_Gamma(cur, p)) {
      code.absorbed = true;
      code.absorbed_after = blk;
      return code;
    }
    auto rec = first_return(cur, p, cap);
    if (rec.status == ReturnStatus::cap_exceeded) {
      code.cap_exceeded = true;
      code.blocks.push_back(rec.word);
      return code;
    }
    code.blocks.push_back(rec.word);
    cur = rec.end;
  }
  return code;
}

/// Projective action of an integer matrix on the simplex.
inline Vec<Rat> projected_step(const Vec<Rat>& x, const TransitionMatrix& m) {
  return project_to_simplex(apply(m, x));
}

/// Shape of the inverse-branch Jacobian, 1 / (c . x)^n with c the column sums
/// of m; the dimensional constant K cancels in every ratio used here.
inline Rat jacobian_shape(const TransitionMatrix& m, const Vec<Rat>& x) {
  Vec<Int> c = column_sums(m);
  if (static_cast<int>(x.size()) != m.n)
    throw usage_error("matrix/point size mismatch");
  Rat dot = 0;
  for (int i = 0; i < m.n; ++i) dot += Rat(c[i]) * x[i];
  if (dot <= 0) throw invariant_error("nonpositive Jacobian denominator");
  Rat num = 1;
  for (int i = 0; i < m.n; ++i) num *= dot;
  return 1 / num;
}

struct AlphaEstimate {
  long n_samples = 0;
  long theta_hits = 0;
  long gamma_hits = 0;
  double leb_theta = 0;      // fraction of the ordered simplex
  double leb_gamma = 0;
  double theta_halfwidth = 0;  // 95% binomial CI half-widths
  double gamma_halfwidth = 0;
  double alpha_lower = 0;
  bool conclusive = false;
};

/// Monte Carlo measures of the projected Theta and Gamma on the ordered
/// simplex, and the implied lower bound on the absorbed proportion per
/// return block.
inline AlphaEstimate alpha_estimate(const MapParams& p, long n_samples,
                                    std::uint64_t seed) {
  if (n_samples < 1000)
    throw usage_error("alpha estimate needs at least 10^3 samples");
  AlphaEstimate est;
  est.n_samples = n_samples;
  Rng rng(seed);
  for (long i = 0; i < n_samples; ++i) {
    Vec<Int> x = sample_simplex_ordered(rng, p.dim());
    if (!in_Theta(x, p)) continue;
    ++est.theta_hits;
    if (in_Gamma(x, p)) ++est.gamma_hits;
  }
  auto ci = [&](long hits) {
    double q = static_cast<double>(hits) / static_cast<double>(n_samples);
    return 1.96 * std::sqrt(q * (1 - q) / static_cast<double>(n_samples));
  };
  est.leb_theta = static_cast<double>(est.theta_hits) / n_samples;
  est.leb_gamma = static_cast<double>(est.gamma_hits) / n_samples;
  est.theta_halfwidth = ci(est.theta_hits);
  est.gamma_halfwidth = ci(est.gamma_hits);
  if (est.theta_hits == 0) return est;  // inconclusive
  int n = p.dim();
  double factor = std::pow(1.0 / (2.0 * p.a * n), n);
  est.alpha_lower = factor * est.leb_gamma / est.leb_theta;
  est.conclusive = est.gamma_hits > 0;
  return est;
}

}  // namespace mcflab
