#pragma once

// Weighted gcds, normalization over Q and over the algebraic closure,
// sign classes and canonical representatives.

#include <variant>

#include "wproj/wcore.hpp"

namespace wproj {

enum class Mode { rational, absolute };

namespace detail {

struct PrimeProfile {
  Integer p;
  // min over the support of v_p(x_i) / q_i
  Exponent min_ratio;
  // min over the support of floor(v_p(x_i) / q_i)
  std::uint64_t min_floor = 0;
};

// Only primes dividing every nonzero coordinate can contribute, so it is
// enough to factor the gcd of the support.
inline std::vector<PrimeProfile> prime_profiles(const WeightedTuple& t, const Support& sup) {
  Integer g = 0;
  for (std::size_t i : sup.indices) g = gcd(g, abs(t[i]));
  std::vector<PrimeProfile> out;
  if (g == 1) return out;
  for (const auto& [p, unused] : factorize(g)) {
    PrimeProfile prof{p, Exponent(0), 0};
    bool first = true;
    for (std::size_t i : sup.indices) {
      const auto v = static_cast<std::int64_t>(valuation(t[i], p));
      const auto q = static_cast<std::int64_t>(t.weights()[i]);
      const Exponent ratio(v, q);
      const auto fl = static_cast<std::uint64_t>(v / q);
      if (first || ratio < prof.min_ratio) prof.min_ratio = ratio;
      if (first || fl < prof.min_floor) prof.min_floor = fl;
      first = false;
    }
    out.push_back(std::move(prof));
  }
  return out;
}

}  // namespace detail

/// Largest positive integer d with d^{q_i} | x_i for every nonzero x_i.
inline Integer wgcd(const WeightedTuple& t) {
  Integer d = 1;
  for (const auto& prof : detail::prime_profiles(t, support(t))) d *= pow(prof.p, prof.min_floor);
  return d;
}

/// Largest radical prod p^{a_p}, a_p in (1/r_S)Z, whose q_i-th powers
/// divide every nonzero x_i.
inline FactoredRadical abs_wgcd(const WeightedTuple& t) {
  const Support sup = support(t);
  const auto r = static_cast<std::int64_t>(sup.r_s);
  FactoredRadical::map_type out;
  for (const auto& prof : detail::prime_profiles(t, sup)) {
    const Exponent scaled = prof.min_ratio * r;
    const std::int64_t fl = scaled.numerator() / scaled.denominator();
    if (fl > 0) out.emplace(prof.p, Exponent(fl, r));
  }
  return FactoredRadical(std::move(out));
}

struct NormalizedPoint {
  WeightedTuple tuple;
  // Integer for rational normalization, radical for absolute normalization.
  std::variant<Integer, FactoredRadical> removed;
  SignClass sign;
  bool canonical_sign_applied = false;
};

inline NormalizedPoint normalize(const WeightedTuple& t) {
  const Integer d = wgcd(t);
  if (d == 1) return NormalizedPoint{t, Integer(1), SignClass{}, false};
  return NormalizedPoint{star(Rational(Integer(1), d), t).to_integral(), d, SignClass{}, false};
}

inline NormalizedPoint normalize_abs(const WeightedTuple& t) {
  FactoredRadical s = abs_wgcd(t);
  if (s.is_one()) return NormalizedPoint{t, std::move(s), SignClass{}, false};
  WeightedTuple y = star_radical(s.inverse(), t).to_integral();
  return NormalizedPoint{std::move(y), std::move(s), SignClass{}, false};
}

/// Multiplies x_i by (-1)^{k q_i / r_S}.
inline WeightedTuple sign_twist(const WeightedTuple& t, SignClass c) {
  if (c.k == 0) return t;
  const Support sup = support(t);
  std::vector<Integer> x(t.coords().begin(), t.coords().end());
  for (std::size_t i : sup.indices) {
    if (c.sign_at(t.weights()[i], sup.r_s) < 0) x[i] = -x[i];
  }
  return WeightedTuple(t.weights(), std::move(x));
}

/// Sign class that makes the first support coordinate with odd q_i/r_S
/// positive. Such a coordinate always exists: the q_i/r_S are coprime.
inline SignClass canonical_sign(const WeightedTuple& t) {
  const Support sup = support(t);
  for (std::size_t i : sup.indices) {
    if ((t.weights()[i] / sup.r_s) & 1U) return SignClass{t[i] < 0 ? 1U : 0U};
  }
  return SignClass{};
}

inline NormalizedPoint canonical(const WeightedTuple& t, Mode mode = Mode::rational) {
  NormalizedPoint n = mode == Mode::rational ? normalize(t) : normalize_abs(t);
  n.sign = canonical_sign(n.tuple);
  n.tuple = sign_twist(n.tuple, n.sign);
  n.canonical_sign_applied = true;
  return n;
}

inline bool is_canonical(const WeightedTuple& t, Mode mode = Mode::rational) {
  return canonical(t, mode).tuple == t;
}

inline void require_same_weights(const WeightedTuple& a, const WeightedTuple& b) {
  if (!(a.weights() == b.weights())) {
    throw error(errc::weights_mismatch, "weights " + a.weights().str() + " and " + b.weights().str() + " differ");
  }
}

inline bool same_point(const WeightedTuple& a, const WeightedTuple& b) {
  require_same_weights(a, b);
  return canonical(a).tuple == canonical(b).tuple;
}

/// Equivalent over the algebraic closure but not as rational points.
inline bool is_twist(const WeightedTuple& a, const WeightedTuple& b) {
  require_same_weights(a, b);
  return canonical(a, Mode::absolute).tuple == canonical(b, Mode::absolute).tuple && !same_point(a, b);
}

}  // namespace wproj
