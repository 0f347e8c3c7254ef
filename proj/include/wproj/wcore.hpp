#pragma once

// Weights, weighted integer tuples, the star action and p-adic valuations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "wproj/error.hpp"
#include "wproj/factor.hpp"
#include "wproj/integer.hpp"

namespace wproj {

using Weight = std::uint32_t;

/// Ordered tuple of positive grading weights (q_0, ..., q_n) with its gcd.
class Weights {
 public:
  explicit Weights(std::vector<Weight> q) : q_(std::move(q)) {
    if (q_.empty()) throw error(errc::invalid_weights, "weights must be nonempty");
    for (Weight w : q_) {
      if (w == 0) throw error(errc::invalid_weights, "weights must be positive");
    }
    r_ = std::accumulate(q_.begin(), q_.end(), Weight{0}, [](Weight a, Weight b) { return std::gcd(a, b); });
  }

  std::span<const Weight> q() const noexcept { return q_; }
  Weight operator[](std::size_t i) const { return q_[i]; }
  std::size_t size() const noexcept { return q_.size(); }
  Weight r() const noexcept { return r_; }
  Weight max() const noexcept { return *std::max_element(q_.begin(), q_.end()); }

  friend bool operator==(const Weights& a, const Weights& b) { return a.q_ == b.q_; }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < q_.size(); ++i) {
      if (i != 0) s += ',';
      s += std::to_string(q_[i]);
    }
    return s;
  }

 private:
  std::vector<Weight> q_;
  Weight r_ = 1;
};

/// Signed-input convenience; rejects nonpositive entries with invalid-weights.
inline Weights make_weights(const std::vector<std::int64_t>& q) {
  std::vector<Weight> out;
  out.reserve(q.size());
  for (auto w : q) {
    if (w <= 0 || w > std::numeric_limits<Weight>::max()) {
      throw error(errc::invalid_weights, "weight " + std::to_string(w) + " is not a positive 32-bit integer");
    }
    out.push_back(static_cast<Weight>(w));
  }
  return Weights(std::move(out));
}

/// True iff every leave-one-out gcd of the weights is 1.
inline bool is_well_formed(const Weights& w) {
  const auto q = w.q();
  if (q.size() == 1) return q[0] == 1;
  for (std::size_t skip = 0; skip < q.size(); ++skip) {
    Weight g = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (i != skip) g = std::gcd(g, q[i]);
    }
    if (g != 1) return false;
  }
  return true;
}

/// Nonzero integer vector bound to a set of weights.
class WeightedTuple {
 public:
  WeightedTuple(Weights w, std::vector<Integer> x) : w_(std::move(w)), x_(std::move(x)) {
    if (x_.size() != w_.size()) {
      throw error(errc::arity, "tuple has " + std::to_string(x_.size()) + " coordinates but " +
                                   std::to_string(w_.size()) + " weights");
    }
    if (std::all_of(x_.begin(), x_.end(), [](const Integer& v) { return v == 0; })) {
      throw error(errc::invalid_tuple, "the all-zero tuple is not a point");
    }
  }

  const Weights& weights() const noexcept { return w_; }
  std::span<const Integer> coords() const noexcept { return x_; }
  const Integer& operator[](std::size_t i) const { return x_[i]; }
  std::size_t size() const noexcept { return x_.size(); }

  friend bool operator==(const WeightedTuple& a, const WeightedTuple& b) {
    return a.w_ == b.w_ && a.x_ == b.x_;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (i != 0) s += ',';
      s += x_[i].str();
    }
    return s + ")";
  }

 private:
  Weights w_;
  std::vector<Integer> x_;
};

/// Coordinate order used for every deterministic listing: position by
/// position, smaller magnitude first, positive before negative. So
/// 0 < 1 < -1 < 2 < -2 < ...
inline bool coord_less(std::span<const Integer> a, std::span<const Integer> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    const Integer ma = abs(a[i]), mb = abs(b[i]);
    if (ma != mb) return ma < mb;
    return a[i] > b[i];
  }
  return a.size() < b.size();
}

/// Result of the star action: exact rational coordinates.
class RationalTuple {
 public:
  RationalTuple(Weights w, std::vector<Rational> x) : w_(std::move(w)), x_(std::move(x)) {}

  const Weights& weights() const noexcept { return w_; }
  std::span<const Rational> coords() const noexcept { return x_; }

  bool integral() const {
    return std::all_of(x_.begin(), x_.end(),
                       [](const Rational& v) { return boost::multiprecision::denominator(v) == 1; });
  }

  WeightedTuple to_integral() const {
    if (!integral()) throw error(errc::not_integral, "scaled tuple has non-integral coordinates");
    std::vector<Integer> out;
    out.reserve(x_.size());
    for (const auto& v : x_) out.push_back(boost::multiprecision::numerator(v));
    return WeightedTuple(w_, std::move(out));
  }

 private:
  Weights w_;
  std::vector<Rational> x_;
};

/// Nonzero coordinate positions and the gcd r_S of their weights.
struct Support {
  std::vector<std::size_t> indices;
  Weight r_s = 1;

  bool contains(std::size_t i) const { return std::find(indices.begin(), indices.end(), i) != indices.end(); }
};

inline Support support(const WeightedTuple& t) {
  Support s;
  Weight g = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != 0) {
      s.indices.push_back(i);
      g = std::gcd(g, t.weights()[i]);
    }
  }
  s.r_s = g;
  return s;
}

/// Largest e with p^e | x.
inline unsigned valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw error(errc::undefined_valuation, "valuation of zero is undefined");
  if (p < 2) throw error(errc::invalid_scalar, "valuation base must be a prime");
  unsigned e = 0;
  Integer m = abs(x);
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  return e;
}

/// lambda * (x_0, ..., x_n) = (lambda^q_0 x_0, ..., lambda^q_n x_n).
inline RationalTuple star(const Rational& lambda, const WeightedTuple& t) {
  if (lambda == 0) throw error(errc::invalid_scalar, "star action requires a nonzero scalar");
  std::vector<Rational> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) {
      out.emplace_back(0);
      continue;
    }
    out.push_back(pow(lambda, static_cast<std::int64_t>(t.weights()[i])) * t[i]);
  }
  return RationalTuple(t.weights(), std::move(out));
}

/// Scaling by a positive integer always stays integral.
inline WeightedTuple star(const Integer& m, const WeightedTuple& t) {
  return star(Rational(m), t).to_integral();
}

/// Positive real scalar prod p^{e_p} with rational exponents, kept factored.
/// Exponents are nonzero; negative exponents arise from inverses.
class FactoredRadical {
 public:
  using map_type = std::map<Integer, Exponent>;

  FactoredRadical() = default;
  explicit FactoredRadical(map_type factors) {
    for (auto& [p, e] : factors) {
      if (e.numerator() == 0) continue;
      if (!is_prime(p)) throw error(errc::invalid_scalar, "radical factor " + p.str() + " is not prime");
      factors_.emplace(p, e);
    }
  }

  const map_type& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }

  Exponent exponent(const Integer& p) const {
    auto it = factors_.find(p);
    return it == factors_.end() ? Exponent(0) : it->second;
  }

  FactoredRadical inverse() const {
    FactoredRadical out;
    for (const auto& [p, e] : factors_) out.factors_.emplace(p, -e);
    return out;
  }

  friend FactoredRadical operator*(const FactoredRadical& a, const FactoredRadical& b) {
    FactoredRadical out = a;
    for (const auto& [p, e] : b.factors_) {
      auto& slot = out.factors_[p];
      slot += e;
      if (slot.numerator() == 0) out.factors_.erase(p);
    }
    return out;
  }

  friend bool operator==(const FactoredRadical&, const FactoredRadical&) = default;

  /// Nearest double, display only.
  double approx() const {
    long double lg = 0;
    for (const auto& [p, e] : factors_) {
      lg += log_abs(p) * static_cast<long double>(e.numerator()) / static_cast<long double>(e.denominator());
    }
    return static_cast<double>(std::exp(lg));
  }

  /// e.g. "2^(1/2)*3^(1/2)"; "1" for the empty product.
  std::string str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [p, e] : factors_) {
      if (!s.empty()) s += '*';
      s += p.str();
      if (e != Exponent(1)) s += "^(" + to_string(e) + ")";
    }
    return s;
  }

 private:
  map_type factors_;
};

/// Residual sign pattern (-1)^{k q_i / r_S} on the support, k in {0, 1}.
struct SignClass {
  unsigned k = 0;

  int sign_at(Weight q, Weight r_s) const { return (k & 1U) && ((q / r_s) & 1U) ? -1 : 1; }
  friend bool operator==(SignClass, SignClass) = default;
};

/// Multiplies coordinate i by sign^{q_i/r_S} * prod p^{q_i e_p}. Every
/// q_i e_p on the support must be an integer.
inline RationalTuple star_radical(const FactoredRadical& s, SignClass sign, const WeightedTuple& t) {
  const Support sup = support(t);
  std::vector<Rational> out(t.size(), Rational(0));
  for (std::size_t i : sup.indices) {
    const Weight q = t.weights()[i];
    Integer num = t[i] * sign.sign_at(q, sup.r_s);
    Integer den = 1;
    for (const auto& [p, e] : s.factors()) {
      const Exponent scaled = e * static_cast<std::int64_t>(q);
      if (scaled.denominator() != 1) {
        throw error(errc::non_rational_result, "radical " + s.str() + " does not act rationally on weight " +
                                                   std::to_string(q));
      }
      const auto n = scaled.numerator();
      if (n > 0) num *= pow(p, static_cast<std::uint64_t>(n));
      else den *= pow(p, static_cast<std::uint64_t>(-n));
    }
    out[i] = Rational(num, den);
  }
  return RationalTuple(t.weights(), std::move(out));
}

inline RationalTuple star_radical(const FactoredRadical& s, const WeightedTuple& t) {
  return star_radical(s, SignClass{}, t);
}

}  // namespace wproj
