#pragma once

// Exact weighted heights, bounded-height enumeration and twist listing.

#include <compare>
#include <cstdio>
#include <functional>
#include <thread>

#include "wproj/wnormal.hpp"

namespace wproj {

/// The real number base^{1/root}. Comparisons are exact.
struct HeightValue {
  Integer base = 0;
  std::uint64_t root = 1;

  /// Display approximation.
  double approx() const {
    if (base == 0) return 0.0;
    return static_cast<double>(std::exp(log_abs(base) / static_cast<long double>(root)));
  }

  std::string approx_text() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", approx());
    return buf;
  }

  /// "240^(1/2)", or just the base for root 1.
  std::string str() const {
    if (root == 1) return base.str();
    return base.str() + "^(1/" + std::to_string(root) + ")";
  }
};

/// A positive real bound (num/den)^{1/root}; integers, fractions and
/// heights all convert to it.
struct HeightBound {
  Rational base = 1;
  std::uint64_t root = 1;

  HeightBound() = default;
  HeightBound(Rational b, std::uint64_t r = 1) : base(std::move(b)), root(r) {}
  HeightBound(const HeightValue& h) : base(h.base), root(h.root) {}
};

/// Exact three-way comparison of a.base^{1/a.root} and b.base^{1/b.root}.
inline std::strong_ordering cmp_height(const HeightBound& a, const HeightBound& b) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const std::uint64_t m = lcm(a.root, b.root);
  const std::uint64_t ea = m / a.root, eb = m / b.root;
  const Integer lhs = pow(numerator(a.base), ea) * pow(denominator(b.base), eb);
  const Integer rhs = pow(numerator(b.base), eb) * pow(denominator(a.base), ea);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline std::strong_ordering cmp_height(const HeightValue& a, const HeightValue& b) {
  return cmp_height(HeightBound(a), HeightBound(b));
}

inline bool operator==(const HeightValue& a, const HeightValue& b) { return cmp_height(a, b) == 0; }
inline std::strong_ordering operator<=>(const HeightValue& a, const HeightValue& b) { return cmp_height(a, b); }

/// max_i |x_i|^{1/q_i} of the tuple as given (no normalization). Ties keep
/// the smallest index.
inline HeightValue tuple_height(const WeightedTuple& t) {
  HeightValue best{0, 1};
  bool have = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) continue;
    HeightValue h{abs(t[i]), t.weights()[i]};
    if (!have || cmp_height(h, best) > 0) {
      best = std::move(h);
      have = true;
    }
  }
  return best;
}

inline HeightValue height(const WeightedTuple& t) { return tuple_height(normalize(t).tuple); }

inline HeightValue abs_height(const WeightedTuple& t) { return tuple_height(normalize_abs(t).tuple); }

namespace detail {

// 0, 1, -1, 2, -2, ..., b, -b
inline std::vector<Integer> magnitude_order(const Integer& b) {
  std::vector<Integer> v{Integer(0)};
  for (Integer k = 1; k <= b; ++k) {
    v.push_back(k);
    v.push_back(-k);
  }
  return v;
}

// Canonical normalized tuples with first coordinate fixed, in order.
inline std::vector<NormalizedPoint> enumerate_slice(const Weights& w, const std::vector<std::vector<Integer>>& axes,
                                                    const Integer& first) {
  std::vector<NormalizedPoint> out;
  const std::size_t n = axes.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<Integer> x(n);
  x[0] = first;
  while (true) {
    for (std::size_t i = 1; i < n; ++i) x[i] = axes[i][idx[i]];
    if (std::any_of(x.begin(), x.end(), [](const Integer& v) { return v != 0; })) {
      WeightedTuple t(w, x);
      if (canonical_sign(t).k == 0 && wgcd(t) == 1) {
        out.push_back(NormalizedPoint{std::move(t), Integer(1), SignClass{}, true});
      }
    }
    std::size_t pos = n;
    while (pos > 1) {
      --pos;
      if (++idx[pos] < axes[pos].size()) break;
      idx[pos] = 0;
      if (pos == 1) return out;
    }
    if (n == 1) return out;
  }
}

}  // namespace detail

/// Every canonical normalized point of height <= c, each exactly once, in
/// coord_less order. `threads` only affects how the work is split.
inline std::vector<NormalizedPoint> enumerate_bounded(const Weights& w, const Rational& c, unsigned threads = 1) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  std::vector<NormalizedPoint> result;
  if (c < 1) return result;
  // |x_i|^{1/q_i} <= c  <=>  |x_i| * den^{q_i} <= num^{q_i}
  std::vector<std::vector<Integer>> axes;
  for (Weight q : w.q()) {
    const Integer box = pow(numerator(c), q) / pow(denominator(c), q);
    axes.push_back(detail::magnitude_order(box));
  }
  const auto& firsts = axes[0];
  std::vector<std::vector<NormalizedPoint>> slices(firsts.size());
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(firsts.size())));
  if (threads == 1) {
    for (std::size_t j = 0; j < firsts.size(); ++j) slices[j] = detail::enumerate_slice(w, axes, firsts[j]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (std::size_t j = tid; j < firsts.size(); j += threads) slices[j] = detail::enumerate_slice(w, axes, firsts[j]);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& s : slices) {
    for (auto& p : s) result.push_back(std::move(p));
  }
  return result;
}

/// All canonical rational points equivalent to t over the algebraic closure
/// with height <= bound, sorted by height then coord_less.
inline std::vector<NormalizedPoint> twists_up_to(const WeightedTuple& t, const HeightBound& bound) {
  const NormalizedPoint pbar = canonical(t, Mode::absolute);
  const HeightValue h_abs = tuple_height(pbar.tuple);
  std::vector<NormalizedPoint> out;
  if (cmp_height(HeightBound(h_abs), bound) > 0) return out;

  const auto r = static_cast<std::uint64_t>(support(pbar.tuple).r_s);
  // N^{1/r} * h_abs <= bound, evaluated exactly as (N^R * B^r)^{1/(R r)}.
  auto fits = [&](const Integer& n) {
    const HeightBound scaled(Rational(pow(n, h_abs.root) * pow(h_abs.base, r)), h_abs.root * r);
    return cmp_height(scaled, bound) <= 0;
  };

  std::vector<Integer> primes;
  if (r > 1) {
    for (Integer p = 2; fits(p); ++p) {
      if (is_prime(p)) primes.push_back(p);
    }
  }

  struct Found {
    HeightValue h;
    WeightedTuple u;
    FactoredRadical scalar;
  };
  std::vector<Found> found;
  FactoredRadical::map_type scalar;
  std::function<void(std::size_t, const Integer&)> visit = [&](std::size_t from, const Integer& n) {
    FactoredRadical s(scalar);
    WeightedTuple u = canonical(star_radical(s, pbar.tuple).to_integral()).tuple;
    HeightValue h = tuple_height(u);
    found.push_back(Found{std::move(h), std::move(u), std::move(s)});
    for (std::size_t j = from; j < primes.size(); ++j) {
      Integer m = n * primes[j];
      if (!fits(m)) break;
      for (std::uint64_t k = 1; k < r; ++k) {
        scalar[primes[j]] = Exponent(static_cast<std::int64_t>(k), static_cast<std::int64_t>(r));
        visit(j + 1, m);
        m *= primes[j];
        if (!fits(m)) break;
      }
      scalar.erase(primes[j]);
    }
  };
  visit(0, Integer(1));

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    const auto c = cmp_height(a.h, b.h);
    if (c != 0) return c < 0;
    return coord_less(a.u.coords(), b.u.coords());
  });
  // `removed` holds the twisting scalar relative to the absolute form.
  for (auto& f : found) out.push_back(NormalizedPoint{std::move(f.u), std::move(f.scalar), SignClass{}, true});
  return out;
}

}  // namespace wproj
