#pragma once

// Integer factorization: trial division up to 2^20, then Miller-Rabin and
// Pollard-Brent on whatever cofactor remains. Word-sized cofactors take a
// native 64-bit path.

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "wproj/integer.hpp"

namespace wproj {

using Factorization = std::map<Integer, unsigned>;

namespace detail {

inline constexpr std::uint64_t trial_limit = std::uint64_t{1} << 20;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's variant of Pollard rho. n must be an odd composite.
inline std::uint64_t pollard_brent_u64(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t block = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += block;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline bool is_prime_big(const Integer& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime_u64(n.convert_to<std::uint64_t>());
  std::mt19937_64 rng(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, 32, rng);
}

inline Integer pollard_brent_big(const Integer& n) {
  for (unsigned c = 1;; ++c) {
    Integer y = 2, x = 2, g = 1, q = 1, ys = 2;
    const unsigned long block = 128;
    unsigned long r = 1;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        g = gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_cofactor(const Integer& n, Factorization& out) {
  if (n == 1) return;
  if (is_prime_big(n)) {
    ++out[n];
    return;
  }
  Integer d;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    d = pollard_brent_u64(n.convert_to<std::uint64_t>());
  } else {
    d = pollard_brent_big(n);
  }
  split_cofactor(d, out);
  split_cofactor(Integer(n / d), out);
}

}  // namespace detail

/// True iff n is prime. Exact below 2^64, probabilistic (32 rounds) above.
inline bool is_prime(const Integer& n) { return n >= 2 && detail::is_prime_big(n); }

/// Prime factorization of |n| for n != 0; empty for |n| == 1.
inline Factorization factorize(const Integer& n) {
  if (n == 0) throw error(errc::undefined_valuation, "cannot factor zero");
  Factorization out;
  Integer m = abs(n);
  // Trial division while the cofactor still needs it.
  auto divide_out = [&](std::uint64_t p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e != 0) out[Integer(p)] += e;
  };
  divide_out(2);
  for (std::uint64_t p = 3; p < detail::trial_limit; p += 2) {
    if (Integer(p) * p > m) break;
    if (m <= std::numeric_limits<std::uint64_t>::max()) {
      // Finish on native words; the remaining loop is the hot path.
      std::uint64_t w = m.convert_to<std::uint64_t>();
      for (; p < detail::trial_limit && static_cast<unsigned __int128>(p) * p <= w; p += 2) {
        if (w % p != 0) continue;
        unsigned e = 0;
        while (w % p == 0) {
          w /= p;
          ++e;
        }
        out[Integer(p)] += e;
      }
      m = w;
      break;
    }
    divide_out(p);
  }
  if (m != 1) detail::split_cofactor(m, out);
  return out;
}

/// Primes up to and including `limit`, ascending.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace wproj
