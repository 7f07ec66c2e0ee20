#pragma once

#include <map>
#include <optional>

#include "mcflab/core.hpp"
#include "mcflab/sampling.hpp"

namespace mcflab {

enum class StopReason { entered_A, entered_D, tail_below_eps, fixed_point, cap };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::entered_A: return "entered_A";
    case StopReason::entered_D: return "entered_D";
    case StopReason::tail_below_eps: return "tail_below_eps";
    case StopReason::fixed_point: return "fixed_point";
    case StopReason::cap: return "cap";
  }
  return "?";
}

template <class T>
struct OrbitSummary {
  Vec<T> start;
  MapParams params;
  long steps_taken = 0;
  StopReason stop_reason = StopReason::cap;
  std::optional<long> first_hit_A;
  std::optional<long> first_hit_D;
  Vec<T> final_point;
  Vec<T> limit_estimate;
  T partial_sum_xa{0};  // sum of x_a over all executed steps
};

struct IterateOptions {
  Rat eps = Rat(1, pow2(40));
  long cap = 100000;
  bool stop_on_A = false;
  bool stop_on_D = false;
  bool record_trace = false;
};

/// Iterate the subtractive map. Stops when the (a+1)-th coordinate drops
/// below eps times the initial largest coordinate, when the subtracted
/// coordinate is exactly zero (the map is then the identity), on a requested
/// region entry, or at the cap. The telescoping identity
/// sigma(x^(m)) = sigma(x) - b * sum_{k<m} x_a^(k) and the coordinatewise
/// monotonicity are asserted at every step.
template <class T>
OrbitSummary<T> iterate(const Vec<T>& x0, const MapParams& p,
                        const IterateOptions& opt = {},
                        std::vector<Vec<T>>* trace = nullptr) {
  detail::check_dim(x0, p);
  if (!is_ordered(x0)) throw usage_error("orbit start must be ordered");
  if (opt.eps <= 0) throw usage_error("eps must be positive");
  if (opt.cap < 0) throw usage_error("cap must be nonnegative");

  OrbitSummary<T> out;
  out.start = x0;
  out.params = p;

  const int n = p.dim(), a = p.a;
  const T sigma0 = sigma(x0);
  const Rat tail_threshold = opt.eps * Rat(x0.back());

  Vec<T> x = x0;
  if (trace) trace->push_back(x);

  auto record_hits = [&](const Vec<T>& pt, long k) {
    if (!out.first_hit_A && in_A(pt, p)) out.first_hit_A = k;
    if (p.b >= 2 && !out.first_hit_D && in_D(pt, p)) out.first_hit_D = k;
  };
  record_hits(x, 0);

  auto finish = [&](StopReason why) {
    out.stop_reason = why;
    out.final_point = x;
    out.limit_estimate = x;
    if (why == StopReason::tail_below_eps)
      for (int i = 0; i <= a; ++i) out.limit_estimate[i] = 0;
    return out;
  };

  while (true) {
    if (opt.stop_on_A && out.first_hit_A && *out.first_hit_A <= out.steps_taken)
      return finish(StopReason::entered_A);
    if (opt.stop_on_D && out.first_hit_D && *out.first_hit_D <= out.steps_taken)
      return finish(StopReason::entered_D);
    if (x[p.sub_index - 1] == 0) return finish(StopReason::fixed_point);
    if (Rat(x[a]) < tail_threshold) return finish(StopReason::tail_below_eps);
    if (out.steps_taken >= opt.cap) return finish(StopReason::cap);

    auto [y, pi] = subtractive_step(x, p);
    for (int i = 0; i < n; ++i)
      if (y[i] > x[i])
        throw invariant_error("sorted coordinate sequence increased");
    out.partial_sum_xa += x[p.sub_index - 1];
    if (sigma(y) != sigma0 - p.b * out.partial_sum_xa)
      throw invariant_error("telescoping sum identity violated");
    x = std::move(y);
    ++out.steps_taken;
    if (trace) trace->push_back(x);
    record_hits(x, out.steps_taken);
  }
}

/// Exact orbit limit for points of D: the head runs the b = 1 algorithm to
/// zero while each tail coordinate drops by the total head mass
/// s = x_1 + ... + x_{a+1}.
template <class T>
Vec<T> limit_closed_form_D(const Vec<T>& x, const MapParams& p) {
  detail::check_dim(x, p);
  if (!in_D(x, p)) throw usage_error("closed-form limit requires a point of D");
  T s{0};
  for (int i = 0; i <= p.a; ++i) s += x[i];
  Vec<T> out(x.size(), T(0));
  for (int j = p.a + 1; j < p.dim(); ++j) out[j] = x[j] - s;
  return out;
}

/// Limit of the last coordinate of the projected orbit on D: an invariant
/// function of the projected map, nonconstant for b >= 3.
inline Rat invariant_function(const Vec<Rat>& z, const MapParams& p) {
  if (static_cast<int>(z.size()) != p.dim() - 1)
    throw usage_error("projected point dimension must be a + b - 1");
  Rat s = 0;
  for (int i = 0; i <= p.a; ++i) s += z[i];
  Rat rhs = (p.a + 2 == p.dim()) ? Rat(1) : z[p.a + 1];
  if (s > rhs) throw usage_error("invariant function requires a point of projected D");
  if (s == 1) throw usage_error("degenerate boundary: head mass equals one");
  return (z.back() - s) / (1 - s);
}

struct ConjugacyResult {
  bool ok = true;
  int steps_verified = 0;
};

inline std::array<Rat, 2> phi_map(const Rat& x1, const Rat& x2) {
  Rat d = 1 + x1 + x2;
  return {x1 / d, x2 / d};
}

/// Checks phi . T_{1,1}^k == S_{1,2}^k . phi exactly, step by step. Stops at
/// a coordinate-zero boundary where both orbits are fixed.
inline ConjugacyResult conjugacy_check(const Rat& x1, const Rat& x2, int n_steps) {
  if (x1 < 0 || x2 < x1 || x1 + x2 == 0)
    throw usage_error("conjugacy check requires 0 <= x1 <= x2, not both zero");
  MapParams euclid(1, 1), schweiger(1, 2);
  Vec<Rat> t = {x1, x2};
  auto p0 = phi_map(x1, x2);
  Vec<Rat> s = {p0[0], p0[1]};
  ConjugacyResult res;
  for (int k = 0; k < n_steps; ++k) {
    if (t[0] == 0) break;  // both sides fixed from here on
    t = subtractive_step(t, euclid).first;
    s = s_map_step(s, schweiger);
    auto ph = phi_map(t[0], t[1]);
    if (s[0] != ph[0] || s[1] != ph[1]) {
      res.ok = false;
      return res;
    }
    res.steps_verified = k + 1;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Experiments

enum class SampleRegion { lambda, cA };

struct AbsorptionReport {
  MapParams params;
  long n_samples = 0;
  long cap = 0;
  std::uint64_t seed = 0;
  SampleRegion region = SampleRegion::cA;
  long absorbed_A = 0;
  long absorbed_D = 0;
  long unabsorbed = 0;
  std::map<long, long> hist_first_hit_A;
  std::map<long, long> hist_first_hit_D;
  long limit_checks = 0;     // D-entrants whose tail limit was cross-checked
  long limit_mismatches = 0; // exact mismatches of the closed form (expect 0)
};

/// First-hit statistics of A and D from random starts, with the closed-form
/// limit cross-checked from the point of D entry.
inline AbsorptionReport absorption_experiment(const MapParams& p,
                                              SampleRegion region,
                                              long n_samples, long cap,
                                              std::uint64_t seed,
                                              const Rat& limit_eps = Rat(1, pow2(40))) {
  if (p.b < 2)
    throw usage_error("absorption statistics for A and D require b >= 2");
  AbsorptionReport rep;
  rep.params = p;
  rep.n_samples = n_samples;
  rep.cap = cap;
  rep.seed = seed;
  rep.region = region;
  Rng rng(seed);
  IterateOptions opt;
  opt.cap = cap;
  opt.stop_on_D = true;
  // integer samples cannot trip a 2^-400 threshold, so the main loop stops
  // only on D entry, an exact fixed point, or the cap
  opt.eps = Rat(1, pow2(400));
  for (long i = 0; i < n_samples; ++i) {
    Vec<Int> x = (region == SampleRegion::cA) ? sample_in_cA(rng, p)
                                              : sample_ordered(rng, p.dim());
    auto summary = iterate(x, p, opt);
    if (summary.first_hit_A) {
      ++rep.absorbed_A;
      ++rep.hist_first_hit_A[*summary.first_hit_A];
    } else {
      ++rep.unabsorbed;
    }
    if (summary.first_hit_D) {
      ++rep.absorbed_D;
      ++rep.hist_first_hit_D[*summary.first_hit_D];
      // From D entry, the exact limit has a closed form; run the tail orbit
      // and compare against it at the eps resolution.
      Vec<Int> entry = summary.final_point;
      Vec<Int> closed = limit_closed_form_D(entry, p);
      IterateOptions tail_opt;
      tail_opt.eps = limit_eps;
      tail_opt.cap = cap;
      auto tail = iterate(entry, p, tail_opt);
      ++rep.limit_checks;
      if (tail.stop_reason == StopReason::tail_below_eps ||
          tail.stop_reason == StopReason::fixed_point) {
        // tail coordinates of the estimate must dominate the closed form and
        // approach it from above
        for (int j = p.a + 1; j < p.dim(); ++j)
          if (tail.limit_estimate[j] < closed[j]) {
            ++rep.limit_mismatches;
            break;
          }
      }
    }
  }
  return rep;
}

struct BrunReport {
  int a = 1;
  long n_samples = 0;
  long converged = 0;     // all coordinates below eps * initial scale
  long cap_hits = 0;
  long exact_terminations = 0;  // reached a fixed point exactly
  std::map<long, long> hist_steps;
};

/// b = 1 family: orbits converge to zero a.e.; with the telescoping identity
/// the residual sigma(x^(m)) is tracked exactly.
inline BrunReport brun_experiment(int a, long n_samples, const Rat& eps,
                                  long cap, std::uint64_t seed) {
  MapParams p(a, 1);
  BrunReport rep;
  rep.a = a;
  rep.n_samples = n_samples;
  Rng rng(seed);
  IterateOptions opt;
  opt.eps = eps;
  opt.cap = cap;
  for (long i = 0; i < n_samples; ++i) {
    Vec<Int> x = sample_ordered(rng, p.dim());
    auto s = iterate(x, p, opt);
    ++rep.hist_steps[s.steps_taken];
    if (s.stop_reason == StopReason::cap) {
      ++rep.cap_hits;
      continue;
    }
    if (s.stop_reason == StopReason::fixed_point) ++rep.exact_terminations;
    // converged when every coordinate is below eps * initial largest
    bool small = true;
    for (int j = 0; j < p.dim(); ++j)
      if (Rat(s.final_point[j]) >= eps * Rat(x.back())) { small = false; break; }
    if (small) ++rep.converged;
  }
  return rep;
}

struct VariantReport {
  MapParams params;
  long n_samples = 0;
  bool reverse_invariance_checked = false;  // only when b <= a+1-i
  bool absorbing_regime = false;            // b >= a+3-i
  long forward_violations = 0;              // images of A leaving A (expect 0)
  long reverse_violations = 0;              // images of cA entering A (expect 0)
  long hit_A = 0;                           // cA starts whose orbit reaches A
  long nonvanishing = 0;                    // orbits stopped with positive tail
};

/// Variant family checks: forward invariance of A always, reverse invariance
/// in the b <= a+1-i regime, and hit statistics toward A.
inline VariantReport variant_experiment(const MapParams& p, long n_samples,
                                        long cap, std::uint64_t seed) {
  if (!p.is_variant())
    throw usage_error("variant experiment requires sub_index < a");
  VariantReport rep;
  rep.params = p;
  rep.n_samples = n_samples;
  rep.reverse_invariance_checked = (p.b <= p.a + 1 - p.sub_index);
  rep.absorbing_regime = (p.b >= p.a + 3 - p.sub_index);
  Rng rng(seed);
  for (long i = 0; i < n_samples; ++i) {
    Vec<Int> xa = sample_in_A(rng, p);
    if (!in_A(subtractive_step(xa, p).first, p)) ++rep.forward_violations;
    Vec<Int> xc = sample_in_cA(rng, p);
    if (rep.reverse_invariance_checked &&
        in_A(subtractive_step(xc, p).first, p))
      ++rep.reverse_violations;
    IterateOptions opt;
    opt.cap = cap;
    opt.stop_on_A = true;
    auto s = iterate(xc, p, opt);
    if (s.first_hit_A) ++rep.hit_A;
    if (s.stop_reason == StopReason::tail_below_eps ||
        s.stop_reason == StopReason::fixed_point) {
      if (s.final_point.back() > 0) ++rep.nonvanishing;
    }
  }
  return rep;
}

}  // namespace mcflab
