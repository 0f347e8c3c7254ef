// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "wproj/wproj.hpp"

using namespace wproj;

namespace {

using clock_type = std::chrono::steady_clock;

int failures = 0;

struct Check {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void report(int n, const std::string& name, const Check& c, double ms) {
  std::ostringstream line;
  line << (c.ok ? "PASS" : "FAIL") << "  " << n << "  " << name << "  (" << ms << " ms)";
  if (!c.ok) line << "  " << c.why;
  std::cout << line.str() << std::endl;
  if (!c.ok) ++failures;
}

std::vector<Integer> ints(std::initializer_list<Integer> v) { return v; }
Integer pw(int b, unsigned e) { return pow(Integer(b), e); }

const Weights igusa({2, 4, 6, 10});
const WeightedTuple igusa_point(igusa, ints({240, 1620, 119880, 46656}));

std::vector<Integer> coords(const WeightedTuple& t) { return {t.coords().begin(), t.coords().end()}; }

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = clock_type::now();
    f();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

void criterion1() {
  Check c;
  const WeightedTuple t(igusa, ints({3 * pw(5, 2), pw(3, 2) * pw(5, 4), pw(3, 3) * pw(5, 6), pw(3, 5) * pw(5, 10)}));
  Integer d;
  const double ms = best_of(5, [&] { d = wgcd(t); });
  c.require(d == 5, "wgcd = " + d.str());
  c.require(ms < 1.0, "too slow");
  report(1, "weighted gcd golden value", c, ms);
}

void criterion2() {
  Check c;
  const auto t0 = clock_type::now();
  const Weights w({2, 3, 4, 5, 6, 7, 8});
  const WeightedTuple t(w, ints({-pw(2, 3) * 5 * 7, 0, pw(2, 10) * pw(7, 4), 0, pw(2, 15) * pw(7, 6), 0,
                                 -pw(2, 19) * 5 * pw(7, 8)}));
  const auto n = normalize(t);
  const auto want = ints({-2 * 5 * 7, 0, pw(2, 6) * pw(7, 4), 0, pw(2, 9) * pw(7, 6), 0, -pw(2, 11) * 5 * pw(7, 8)});
  c.require(coords(n.tuple) == want, "normalized " + n.tuple.str());
  const auto* removed = std::get_if<Integer>(&n.removed);
  c.require(removed && *removed == 2, "removed scalar");
  report(2, "normalization golden value", c, ms_since(t0));
}

void criterion3() {
  Check c;
  const auto t0 = clock_type::now();
  const auto s = abs_wgcd(igusa_point);
  c.require(s == FactoredRadical({{2, Exponent(1, 2)}, {3, Exponent(1, 2)}}), "abs_wgcd " + s.str());
  const auto pbar = normalize_abs(igusa_point).tuple;
  c.require(coords(pbar) == ints({40, 45, 555, 6}), "absolute form " + pbar.str());
  const auto via2 = star_radical(FactoredRadical({{2, Exponent(1, 2)}}), pbar);
  const auto via3 = star_radical(FactoredRadical({{3, Exponent(1, 2)}}), pbar);
  c.require(via3.integral() && coords(via3.to_integral()) == ints({120, 405, 14985, 1458}), "sqrt 3 twist");
  c.require(via2.integral() && coords(via2.to_integral()) == ints({80, 180, 4440, 192}), "sqrt 2 twist");
  report(3, "absolute normalization and twists", c, ms_since(t0));
}

void criterion4() {
  Check c;
  double worst = 0;
  auto timed = [&](auto f) {
    const double ms = best_of(5, f);
    worst = std::max(worst, ms);
  };
  const WeightedTuple e8a(igusa, ints({pw(2, 2), 2 * pw(3, 4), pw(2, 6) * 3, pw(2, 10) * pw(5, 10)}));
  const WeightedTuple e8b(igusa, ints({pw(2, 2), pw(2, 4) * pw(3, 4), pw(2, 6) * 3, pw(2, 10) * pw(5, 10)}));
  HeightValue h;
  timed([&] { h = height(e8a); });
  c.require(h == HeightValue{10, 1}, "first tuple height " + h.str());
  timed([&] { h = height(e8b); });
  c.require(h == HeightValue{5, 1}, "second tuple height " + h.str());
  timed([&] { h = height(igusa_point); });
  c.require(h.base == 240 && h.root == 2, "height " + h.str());
  c.require(cmp_height(h, HeightValue{3600, 4}) > 0, "height vs 3600^(1/4)");
  c.require(cmp_height(h, HeightValue{pow(Integer(240), 3), 6}) == 0, "height vs 240^(3/6)");
  timed([&] { h = abs_height(igusa_point); });
  c.require(h.base == 40 && h.root == 2, "absolute height " + h.str());
  c.require(cmp_height(h, HeightValue{3600, 4}) < 0, "absolute height vs sqrt 60");
  c.require(cmp_height(HeightValue{3600, 4}, HeightValue{60, 2}) == 0, "3600^(1/4) = 60^(1/2)");
  timed([&] { h = abs_height(WeightedTuple(igusa, ints({0, 2, 0, 0}))); });
  c.require(h == HeightValue{1, 1}, "absolute height of [0:2:0:0] " + h.str());
  c.require(worst < 1.0, "too slow");
  report(4, "height golden values", c, worst);
}

void criterion5() {
  Check c;
  const auto t0 = clock_type::now();
  oracle::TupleGen gen(5);
  int done = 0;
  while (done < 100) {
    const auto x = gen.coords(4, 1'000'000, 0.0);
    const auto t = normalize(WeightedTuple(igusa, oracle::to_integers(x))).tuple;
    if (support(t).indices.size() != 4) continue;
    ++done;
    const auto u = sign_twist(t, SignClass{1});
    c.require(!(u == t), "twin equals original " + t.str());
    c.require(wgcd(u) == 1, "twin not normalized " + u.str());
    c.require(tuple_height(u) == tuple_height(t), "height differs " + t.str());
    c.require(canonical(u).tuple == canonical(t).tuple, "canonical differs " + t.str());
  }
  report(5, "sign class pairing", c, ms_since(t0));
}

// Brute force: scale the absolute form by sqrt(m) for every squarefree m
// built from primes <= 7 with sqrt(m) <= sqrt(6), keep what fits the bound.
std::set<std::vector<Integer>> twist_oracle(const WeightedTuple& pbar, const HeightValue& bound) {
  std::set<std::vector<Integer>> out;
  const int primes[] = {2, 3, 5, 7};
  for (int mask = 0; mask < 16; ++mask) {
    Integer m = 1;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) m *= primes[i];
    if (m > 6) continue;
    std::vector<Integer> x;
    bool fits = true;
    for (std::size_t i = 0; i < pbar.size(); ++i) {
      const unsigned q = pbar.weights()[i];
      // weights are even, so sqrt(m)^q = m^{q/2}
      x.push_back(pbar[i] * pow(m, q / 2));
      // |x_i|^{1/q} <= base^{1/root}  iff  |x_i|^root <= base^q
      fits = fits && pow(abs(x.back()), bound.root) <= pow(bound.base, q);
    }
    if (fits) out.insert(x);
  }
  return out;
}

void criterion6() {
  Check c;
  const auto t0 = clock_type::now();
  const HeightValue bound = height(igusa_point);
  const auto list = twists_up_to(igusa_point, bound);
  std::set<std::vector<Integer>> got;
  for (const auto& n : list) got.insert(coords(n.tuple));
  c.require(list.size() == 5, std::to_string(list.size()) + " twists");
  c.require(got.count(ints({200, 1125, 69375, 18750})) == 1, "sqrt 5 twist missing");
  c.require(got == twist_oracle(normalize_abs(igusa_point).tuple, bound), "differs from brute force");
  for (const auto& n : list) c.require(is_canonical(n.tuple), "not canonical " + n.tuple.str());
  const double ms = ms_since(t0);
  c.require(ms < 1000.0, "too slow");
  report(6, "twist completeness", c, ms);
}

void criterion7() {
  Check c;
  const auto t0 = clock_type::now();
  c.require(enumerate_bounded(Weights({1, 2}), Rational(3, 2)).size() == 7, "(1,2) at 3/2");
  c.require(enumerate_bounded(Weights({1, 1}), Rational(1)).size() == 4, "(1,1) at 1");
  const std::pair<int, int> bounds[] = {{1, 1}, {3, 2}, {2, 1}};
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<unsigned> q(len, 1);
    while (true) {
      for (const auto& [num, den] : bounds) {
        const auto got = enumerate_bounded(Weights({q.begin(), q.end()}), Rational(num, den));
        const auto want = oracle::bounded_points(q, num, den);
        std::ostringstream what;
        what << "weights";
        for (unsigned w : q) what << ' ' << w;
        what << " bound " << num << '/' << den << ": " << got.size() << " vs " << want.size();
        c.require(got.size() == want.size(), what.str());
      }
      std::size_t i = 0;
      while (i < len && q[i] == 3) q[i++] = 1;
      if (i == len) break;
      ++q[i];
    }
  }
  const double ms = ms_since(t0);
  c.require(ms < 30'000.0, "too slow");
  report(7, "bounded height enumeration", c, ms);
}

void criterion8() {
  Check c;
  const auto t0 = clock_type::now();
  oracle::TupleGen gen(8);
  constexpr oracle::i64 big = 1'000'000'000'000;
  auto random_tuple = [&] {
    const std::size_t len = static_cast<std::size_t>(gen.uniform(2, 5));
    const auto q = gen.weights(len, 6);
    return WeightedTuple(Weights({q.begin(), q.end()}), oracle::to_integers(gen.coords(len, big)));
  };
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_tuple();
    const auto n = normalize(t).tuple;
    c.require(normalize(n).tuple == n, "normalize not idempotent on " + t.str());
  }
  const int ms_list[] = {2, 3, 5, 30};
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_tuple();
    const Integer m = ms_list[i % 4];
    c.require(wgcd(star(m, t)) == m * wgcd(t), "wgcd scaling on " + t.str());
  }
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_tuple();
    c.require(cmp_height(abs_height(t), height(t)) <= 0, "absolute height above height on " + t.str());
  }
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_tuple();
    const Integer m = gen.uniform(-30, 30) | 1;
    c.require(height(star(m, t)) == height(t), "height not invariant on " + t.str());
  }
  for (int i = 0; i < 1000; ++i) {
    const auto t = normalize(random_tuple()).tuple;
    const oracle::i64 num = gen.uniform(2, 12);
    const oracle::i64 den = gen.uniform(1, num - 1);
    const auto u = star(Rational(num, den), t);
    if (!u.integral()) continue;
    const auto ui = u.to_integral();
    for (std::size_t k : support(t).indices) c.require(abs(ui[k]) >= abs(t[k]), "smaller representative of " + t.str());
  }
  const double ms = ms_since(t0);
  c.require(ms < 60'000.0, "too slow");
  report(8, "property suites", c, ms);
}

void criterion9() {
  Check c;
  const auto t0 = clock_type::now();
  const std::string text =
      "{\"label\":\"p\",\"preset\":\"genus2-igusa\",\"coords\":[\"240\",\"1620\",\"119880\",\"46656\"]}\n"
      "{\"label\":\"p1\",\"preset\":\"genus2-igusa\",\"coords\":[\"120\",\"405\",\"14985\",\"1458\"]}\n"
      "{\"label\":\"p2\",\"preset\":\"genus2-igusa\",\"coords\":[\"80\",\"180\",\"4440\",\"192\"]}\n"
      "{\"label\":\"pbar\",\"preset\":\"genus2-igusa\",\"coords\":[\"40\",\"45\",\"555\",\"6\"]}\n";
  Database db;
  std::istringstream in(text);
  const auto rep = db.ingest(in);
  c.require(rep.accepted == 4 && rep.rejected_total() == 0, "ingest counts");
  const auto d = db.dedupe(Mode::absolute);
  c.require(d.size() == 1 && coords(d.records()[0].tuple) == ints({40, 45, 555, 6}), "absolute dedupe survivor");
  std::vector<std::string> order;
  const Database sorted = db.sort_by_height(Mode::rational);
  for (const auto& r : sorted.records()) order.push_back(r.label);
  c.require(order == std::vector<std::string>{"pbar", "p2", "p1", "p"}, "sort order");
  std::ostringstream first;
  db.write(first);
  Database again;
  std::istringstream back(first.str());
  again.ingest(back);
  std::ostringstream second;
  again.write(second);
  c.require(first.str() == second.str(), "round trip not byte-identical");
  report(9, "database workflow", c, ms_since(t0));
}

}  // namespace

int main() {
  const auto guard = [](auto f) {
    try {
      f();
    } catch (const std::exception& e) {
      std::cout << "FAIL  exception: " << e.what() << std::endl;
      ++failures;
    }
  };
  guard(criterion1);
  guard(criterion2);
  guard(criterion3);
  guard(criterion4);
  guard(criterion5);
  guard(criterion6);
  guard(criterion7);
  guard(criterion8);
  guard(criterion9);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
