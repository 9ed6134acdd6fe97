#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "symqm/trace_algebra.hpp"

using namespace symqm;

namespace {

// coeff * product of pure-creation traces given as lengths; a length-0
// factor is tr(1) = N and a length-1 factor kills the term (tracelessness).
TraceExpr pure(int n, Rational coeff, std::vector<int> lengths,
               const TraceWord* mixed = nullptr) {
  std::vector<TraceWord> words;
  for (int k : lengths) {
    if (k == 0) {
      coeff *= n;
      continue;
    }
    if (k == 1) return TraceExpr(n);
    words.push_back(TraceWord::creators(k));
  }
  std::sort(words.begin(), words.end());
  if (mixed) words.push_back(*mixed);
  TraceExpr e(n);
  e.add_term(coeff, std::move(words));
  return e;
}

TraceExpr op_aa(int n) { return TraceExpr::single(n, TraceWord::annihilators(2)); }
TraceExpr op_creators(int n, int k) {
  return TraceExpr::single(n, TraceWord::creators(k));
}
TraceExpr op_creators_pow(int n, int k, int m) {
  TraceExpr e = TraceExpr::identity(n);
  for (int i = 0; i < m; ++i) e = e * op_creators(n, k);
  return e;
}

// [(aa), (a+^n)] expanded in closed form.
TraceExpr comm_aa_single(int n, int len) {
  TraceExpr rhs(n);
  TraceWord mix = TraceWord::mixed(len - 1, 1);
  rhs += pure(n, len, {}, &mix);
  rhs += pure(n, frac(len * n, 2) * (frac(1, 2) - frac(len - 1, 2 * n * n)),
              {len - 2});
  for (int j = 2; j <= len - 2; ++j) {
    rhs += pure(n, frac(len, 4), {j, len - 2 - j});
  }
  return rhs;
}

// [(aa), (a+^len)^m] expanded in closed form.
TraceExpr comm_aa_power(int n, int len, int m) {
  TraceExpr rhs(n);
  {
    std::vector<int> lens(m - 2 > 0 ? m - 2 : 0, len);
    if (m >= 2) {
      auto l1 = lens;
      l1.push_back(2 * len - 2);
      rhs += pure(n, frac(m * (m - 1) * len * len, 4), l1);
      auto l2 = lens;
      l2.push_back(len - 1);
      l2.push_back(len - 1);
      rhs += pure(n, frac(-m * (m - 1) * len * len, 4 * n), l2);
    }
  }
  {
    std::vector<int> lens(m - 1, len);
    TraceWord mix = TraceWord::mixed(len - 1, 1);
    rhs += pure(n, m * len, lens, &mix);
    auto l1 = lens;
    l1.push_back(len - 2);
    rhs += pure(n, frac(m * len * n, 2) *
                       (frac(1, 2) - frac(len - 1, 2 * n * n)),
                l1);
    for (int j = 2; j <= len - 2; ++j) {
      auto l2 = lens;
      l2.push_back(j);
      l2.push_back(len - 2 - j);
      rhs += pure(n, frac(m * len, 4), l2);
    }
  }
  return rhs;
}

// [(a+^p a), (a+^m)^k] expanded in closed form.
TraceExpr comm_mixed_power(int n, int p, int m, int k) {
  std::vector<int> lens(k - 1, m);
  auto l1 = lens;
  l1.push_back(p + m - 1);
  TraceExpr rhs = pure(n, frac(k * m, 2), l1);
  auto l2 = lens;
  l2.push_back(p);
  l2.push_back(m - 1);
  rhs += pure(n, frac(-k * m, 2 * n), l2);
  return rhs;
}

}  // namespace

TEST_CASE("cyclic word canonicalization") {
  TraceWord w({Letter::annihilate, Letter::create, Letter::create});
  CHECK(w == TraceWord::mixed(2, 1));
  CHECK(w.str() == "A2a1");
  CHECK(TraceWord::creators(3).str() == "A3");
  CHECK(TraceWord::annihilators(2).str() == "a2");
  CHECK(TraceWord::creators(2) < TraceWord::annihilators(2));
  CHECK(TraceWord::creators(2) < TraceWord::creators(3));
  CHECK(TraceWord::mixed(2, 1).num_creates() == 2);
  CHECK(TraceWord::mixed(2, 1).num_annihilates() == 1);
  CHECK(TraceWord::mixed(2, 1).conjugated() == TraceWord::mixed(1, 2));
  CHECK(TraceWord::creators(4).conjugated() == TraceWord::annihilators(4));
  CHECK_THROWS_AS(TraceWord(std::vector<Letter>{}), std::invalid_argument);
}

TEST_CASE("expression arithmetic and text form") {
  TraceExpr e = TraceExpr::single(3, TraceWord::creators(2), frac(3, 2));
  e += TraceExpr::scalar(3, 2);
  CHECK(e.str() == "2 + 3/2*(A2)");
  e -= TraceExpr::scalar(3, 2);
  e -= TraceExpr::single(3, TraceWord::creators(2), frac(3, 2));
  CHECK(e.zero());
  CHECK(e.str() == "0");

  TraceExpr p = op_creators(2, 2) * op_creators(2, 3);
  CHECK(p.terms().size() == 1);
  CHECK(p.terms()[0].traces.size() == 2);
  CHECK_THROWS_AS(op_creators(2, 2) + op_creators(3, 2), std::invalid_argument);
}

TEST_CASE("normal order is the identity on normal forms") {
  TraceExpr e = pure(3, frac(5, 7), {2, 2, 3});
  TraceWord mix = TraceWord::mixed(2, 1);
  e += pure(3, 1, {2}, &mix);
  CHECK(normal_order(e) == e);
  CHECK(normal_order(normal_order(op_aa(3) * op_creators_pow(3, 2, 2))) ==
        normal_order(op_aa(3) * op_creators_pow(3, 2, 2)));
}

TEST_CASE("basic commutators") {
  for (int n : {2, 3, 4, 5}) {
    // [(aa), (a+ a+)] = 2 (a+ a) + (N^2-1)/2
    TraceExpr lhs = commutator(op_aa(n), op_creators(n, 2));
    TraceWord mix = TraceWord::mixed(1, 1);
    TraceExpr rhs = pure(n, 2, {}, &mix);
    rhs += TraceExpr::scalar(n, frac(n * n - 1, 2));
    CHECK(lhs == rhs);

    // [(a+ a), (a+^k)] = (k/2)(a+^k)
    for (int k : {2, 3, 4}) {
      TraceExpr num = commutator(
          TraceExpr::single(n, TraceWord::mixed(1, 1)), op_creators(n, k));
      CHECK(num == pure(n, frac(k, 2), {k}));
    }
  }
}

TEST_CASE("commutator of two annihilators with a single creation trace") {
  for (int n : {2, 3, 4}) {
    for (int len = 2; len <= 6; ++len) {
      TraceExpr lhs = commutator(op_aa(n), op_creators(n, len));
      CHECK(lhs == comm_aa_single(n, len));
    }
  }
}

TEST_CASE("commutator of two annihilators with a power of a creation trace") {
  for (int n : {2, 3, 4}) {
    for (auto [len, m] : std::vector<std::pair<int, int>>{
             {2, 2}, {2, 3}, {2, 4}, {3, 2}, {4, 2}, {3, 3}}) {
      TraceExpr lhs = commutator(op_aa(n), op_creators_pow(n, len, m));
      CHECK(lhs == comm_aa_power(n, len, m));
    }
  }
}

TEST_CASE("commutator of a mixed trace with a power of a creation trace") {
  for (int n : {2, 3, 4}) {
    for (int p : {1, 2, 3}) {
      for (int m : {2, 3}) {
        for (int k : {1, 2}) {
          TraceExpr lhs = commutator(
              TraceExpr::single(n, TraceWord::mixed(p, 1)),
              op_creators_pow(n, m, k));
          CHECK(lhs == comm_mixed_power(n, p, m, k));
        }
      }
    }
  }
}

TEST_CASE("vacuum expectation values") {
  for (int n : {2, 3, 4, 5}) {
    CHECK(vacuum_expectation(op_aa(n) * op_creators(n, 2)) ==
          frac(n * n - 1, 2));
    CHECK(vacuum_expectation(op_creators(n, 2) * op_aa(n)) == 0);
    CHECK(vacuum_expectation(TraceExpr::scalar(n, frac(7, 3))) ==
          frac(7, 3));
    // <0| (aa)(aa)(a+2)(a+2) |0> = 2 * ((N^2-1)/2)^2 + corrections; check
    // instead against the conjugation symmetry which must hold exactly.
    TraceExpr x = op_aa(n) * op_aa(n) * op_creators_pow(n, 2, 2);
    TraceExpr xc = symqm::conjugate(x);
    CHECK(vacuum_expectation(x) == vacuum_expectation(xc));
  }
  // N=2, quanta 4: <(aa)^2 (a+2)^2> computed by the scalar recursion
  // (aa)(a+2)^2|0> = (2 + (N^2-1)/2 + ... ) style action; cross check a
  // closed value via the single-mode analogy is not available, so pin the
  // engine value once it matches the dense oracle (see fock basis tests).
  CHECK(vacuum_expectation(op_aa(2) * op_creators(2, 2)) == frac(3, 2));
}

TEST_CASE("conjugation") {
  TraceExpr e = TraceExpr::product(
      3, frac(2, 5), {TraceWord::creators(2), TraceWord::mixed(2, 1)});
  TraceExpr c = symqm::conjugate(e);
  TraceExpr expect = TraceExpr::product(
      3, frac(2, 5), {TraceWord::mixed(1, 2), TraceWord::annihilators(2)});
  CHECK(c == expect);
  CHECK(symqm::conjugate(c) == e);
}

TEST_CASE("unrepresentable normal forms are rejected, not silently wrong") {
  TraceExpr mixed_sq = TraceExpr::single(3, TraceWord::mixed(1, 1));
  CHECK_THROWS_AS(normal_order(mixed_sq * mixed_sq), std::logic_error);
  CHECK(normal_ordered_creation_part(mixed_sq * mixed_sq).zero());
  CHECK(vacuum_expectation(mixed_sq * mixed_sq) == 0);
}

TEST_CASE("trace length reduction via characteristic polynomial") {
  // N=2: (a+^3) -> 0, (a+^4) -> 1/2 (a+^2)^2
  CHECK(cayley_hamilton_reduce(op_creators(2, 3)).zero());
  CHECK(cayley_hamilton_reduce(op_creators(2, 4)) ==
        pure(2, frac(1, 2), {2, 2}));
  // N=3: (a+^4) -> 1/2 (a+^2)^2, (a+^5) -> 5/6 (a+^2)(a+^3)
  CHECK(cayley_hamilton_reduce(op_creators(3, 4)) ==
        pure(3, frac(1, 2), {2, 2}));
  CHECK(cayley_hamilton_reduce(op_creators(3, 5)) ==
        pure(3, frac(5, 6), {2, 3}));
  // Short traces pass through untouched.
  CHECK(cayley_hamilton_reduce(op_creators(4, 4)) == op_creators(4, 4));
  TraceExpr mix = TraceExpr::single(3, TraceWord::mixed(2, 1));
  CHECK(cayley_hamilton_reduce(mix) == mix);
  // Long traces with annihilators are not reducible.
  CHECK_THROWS_AS(
      cayley_hamilton_reduce(TraceExpr::single(2, TraceWord::mixed(2, 1))),
      std::domain_error);
}

TEST_CASE("reduction consistency: vacuum matrix elements are reduction invariant") {
  // <0| (aa)^2 X |0> must agree whether X is length-reduced or not.
  for (int n : {2, 3}) {
    TraceExpr x = op_creators(n, 4);
    TraceExpr bra = op_aa(n) * op_aa(n);
    CHECK(vacuum_expectation(bra * x) ==
          vacuum_expectation(bra * cayley_hamilton_reduce(x)));
  }
}

TEST_CASE("single elementary contraction") {
  // In (a+ a) contract the a (stored pos 1) with the a+ (stored pos 0):
  // 1/2 tr(1) tr(1) - 1/(2N) tr(1) -> N^2/2 - 1/2.
  TraceWord w = TraceWord::mixed(1, 1);
  for (int n : {2, 3, 5}) {
    TraceExpr got = fierz_contract(n, w, 1, 0);
    CHECK(got == TraceExpr::scalar(n, frac(n * n - 1, 2)));
  }
  // Cross-trace fuse of (a a) against (a+ a+): pick one a and one a+.
  TraceExpr fused = fierz_contract(3, TraceWord::annihilators(2), 0,
                                   TraceWord::creators(2), 0);
  TraceWord aAd({Letter::create, Letter::annihilate});
  TraceExpr expect = TraceExpr::single(3, aAd, frac(1, 2));
  expect += TraceExpr::scalar(3, frac(-1, 2 * 3) * 0);  // singles vanish
  CHECK(fused == TraceExpr::single(3, aAd, frac(1, 2)));

  CHECK_THROWS_AS(fierz_contract(3, w, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(fierz_contract(3, w, 5, 0), std::invalid_argument);
}
