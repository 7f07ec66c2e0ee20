#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcflab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

template <class T>
using Vec = std::vector<T>;

// Errors that the CLI maps onto distinct exit codes.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline Int pow2(unsigned k) { return Int(1) << k; }

/// Rational from a possibly negative denominator.
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw usage_error("zero denominator");
  if (den < 0) { num = -num; den = -den; }
  return Rat(num, den);
}

inline std::string rat_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r) << '/' << denominator(r);
  return os.str();
}

inline std::string rat_string(const Int& v) {
  return v.str() + "/1";
}

/// Decimal rendering with a fixed number of significant digits.
inline std::string rat_decimal(const Rat& r, int digits = 12) {
  if (r == 0) return "0";
  Int num = numerator(r), den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  // scale so that the integer division carries `digits` significant digits
  int exp10 = 0;
  Int n = num, d = den;
  while (n < d) { n *= 10; --exp10; }
  while (n >= 10 * d) { d *= 10; ++exp10; }
  Int scaled = n;
  Int q = 0;
  std::string ds;
  for (int i = 0; i < digits; ++i) {
    q = scaled / d;
    ds += static_cast<char>('0' + static_cast<int>(q));
    scaled = (scaled - q * d) * 10;
  }
  // round the last digit away from truncation
  if (scaled * 2 >= d * 10) {
    int i = digits - 1;
    while (i >= 0 && ds[i] == '9') { ds[i] = '0'; --i; }
    if (i < 0) { ds.insert(ds.begin(), '1'); ++exp10; ds.pop_back(); }
    else ds[i] += 1;
  }
  std::ostringstream os;
  if (neg) os << '-';
  os << ds[0] << '.' << ds.substr(1) << 'e' << exp10;
  return os.str();
}

/// Accepts "p/q", plain integers and decimal literals like "0.25".
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw usage_error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) throw usage_error("zero denominator in '" + s + "'");
      return make_rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Int den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rat(Int(digits), den);
  } catch (const std::exception& e) {
    throw usage_error("bad rational literal '" + s + "'");
  }
}

inline Vec<Rat> parse_point(const std::string& s) {
  Vec<Rat> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) out.push_back(parse_rational(cur));
  if (out.empty()) throw usage_error("empty point literal");
  return out;
}

template <class T>
T sigma(const Vec<T>& x) {
  T s = 0;
  for (const auto& v : x) s += v;
  return s;
}

template <class T>
bool is_ordered(const Vec<T>& x) {
  if (!x.empty() && x.front() < 0) return false;
  for (size_t i = 1; i < x.size(); ++i)
    if (x[i] < x[i - 1]) return false;
  return true;
}

inline Vec<Rat> to_rat(const Vec<Int>& x) {
  Vec<Rat> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = Rat(x[i]);
  return out;
}

}  // namespace mcflab
