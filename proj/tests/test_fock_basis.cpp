#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "symqm/fock_basis.hpp"

using namespace symqm;

namespace {

Partition part(std::vector<int> p) { return Partition{std::move(p)}; }

// Number of partitions of each m <= cap into parts {2..n}, by direct DP.
std::vector<long> partition_counts(int n, int cap) {
  std::vector<long> c(cap + 1, 0);
  c[0] = 1;
  for (int k = 2; k <= n; ++k) {
    for (int m = k; m <= cap; ++m) c[m] += c[m - k];
  }
  return c;
}

}  // namespace

TEST_CASE("basis enumeration") {
  CutBasis b = enumerate_basis(3, 6);
  REQUIRE(b.states.size() == 7);
  std::set<std::vector<int>> got;
  for (const auto& s : b.states) got.insert(s.p);
  std::set<std::vector<int>> expect = {{0, 0}, {1, 0}, {2, 0}, {3, 0},
                                       {0, 1}, {1, 1}, {0, 2}};
  CHECK(got == expect);
  CHECK(std::is_sorted(b.states.begin(), b.states.end()));

  CutBasis b2 = enumerate_basis(2, 0);
  REQUIRE(b2.states.size() == 1);
  CHECK(b2.states[0].p == std::vector<int>{0});

  CutBasis b4 = enumerate_basis(4, 4);
  REQUIRE(b4.states.size() == 5);
  std::set<std::vector<int>> got4;
  for (const auto& s : b4.states) got4.insert(s.p);
  CHECK(got4 == std::set<std::vector<int>>{
                    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {0, 0, 1}});

  CHECK_THROWS_AS(enumerate_basis(1, 4), std::invalid_argument);
}

TEST_CASE("enumeration count matches the generating function") {
  for (int n : {2, 3, 4, 5}) {
    for (int cap : {0, 1, 5, 9, 12}) {
      auto counts = partition_counts(n, cap);
      long total = 0;
      for (long c : counts) total += c;
      CHECK(static_cast<long>(enumerate_basis(n, cap).states.size()) == total);
    }
  }
}

TEST_CASE("smaller cutoff gives a prefix of the larger basis") {
  CutBasis small = enumerate_basis(3, 6);
  CutBasis big = enumerate_basis(3, 10);
  REQUIRE(big.states.size() >= small.states.size());
  for (std::size_t i = 0; i < small.states.size(); ++i) {
    CHECK(big.states[i] == small.states[i]);
  }
}

TEST_CASE("state expressions") {
  CHECK(state_expr(part({0, 0})) == TraceExpr::identity(3));
  TraceExpr e = state_expr(part({2, 1}));
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms()[0].coeff == 1);
  CHECK(e.terms()[0].traces ==
        std::vector<TraceWord>{TraceWord::creators(2), TraceWord::creators(2),
                               TraceWord::creators(3)});
  CHECK(state_expr(part({0, 0, 2})).terms()[0].traces ==
        std::vector<TraceWord>{TraceWord::creators(4), TraceWord::creators(4)});
}

TEST_CASE("gram matrix basics") {
  for (int n : {2, 3, 4}) {
    CutBasis b = enumerate_basis(n, 4);
    RationalMatrix s = gram_matrix(b);
    const std::size_t d = b.states.size();
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(s[i][i] > 0);
      for (std::size_t j = 0; j < d; ++j) {
        CHECK(s[i][j] == s[j][i]);
        if (b.states[i].quanta() != b.states[j].quanta()) CHECK(s[i][j] == 0);
      }
    }
    // |1,0,...> single double-trace brick: norm (N^2-1)/2.
    std::vector<int> one(n - 1, 0);
    one[0] = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (b.states[i].p == one) CHECK(s[i][i] == frac(n * n - 1, 2));
    }
  }
  // The SU(3) states (0,2) and (3,0) overlap despite being distinct.
  CutBasis b3 = enumerate_basis(3, 6);
  RationalMatrix s3 = gram_matrix(b3);
  std::size_t i02 = 0, i30 = 0;
  for (std::size_t i = 0; i < b3.states.size(); ++i) {
    if (b3.states[i].p == std::vector<int>{0, 2}) i02 = i;
    if (b3.states[i].p == std::vector<int>{3, 0}) i30 = i;
  }
  CHECK(s3[i02][i30] != 0);
}

TEST_CASE("gram blocks have full rank") {
  for (int n : {2, 3, 4, 5}) {
    CutBasis b = enumerate_basis(n, 8);
    CHECK(gram_full_rank(b, gram_matrix(b)));
  }
}

TEST_CASE("exact rank") {
  RationalMatrix m = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(exact_rank(m) == 2);
  RationalMatrix id = {{1, 0}, {0, 1}};
  CHECK(exact_rank(id) == 2);
  CHECK(exact_rank(RationalMatrix{}) == 0);
}

TEST_CASE("expand in basis") {
  TraceExpr e = state_expr(part({2, 1}));
  e += frac(5, 3) * state_expr(part({0, 2}));
  auto terms = expand_in_basis(e);
  REQUIRE(terms.size() == 2);
  for (const auto& [p, c] : terms) {
    if (p.p == std::vector<int>{2, 1}) CHECK(c == 1);
    if (p.p == std::vector<int>{0, 2}) CHECK(c == frac(5, 3));
  }
  CHECK_THROWS_AS(
      expand_in_basis(TraceExpr::single(2, TraceWord::annihilators(2))),
      std::invalid_argument);
  CHECK_THROWS_AS(expand_in_basis(TraceExpr::single(2, TraceWord::creators(3))),
                  std::invalid_argument);
}

TEST_CASE("dense oracle agrees with the exact gram matrix") {
  CHECK(oracle_inner_product(part({0}), part({0}), 2) == doctest::Approx(1.0));

  // SU(2): all pairs with quanta <= 8.
  {
    CutBasis b = enumerate_basis(2, 8);
    RationalMatrix s = gram_matrix(b);
    for (std::size_t i = 0; i < b.states.size(); ++i) {
      for (std::size_t j = i; j < b.states.size(); ++j) {
        double got = oracle_inner_product(b.states[i], b.states[j], 2);
        CHECK(std::abs(got - to_double(s[i][j])) <=
              1e-10 * (1.0 + std::abs(to_double(s[i][j]))));
      }
    }
  }
  // SU(3): all pairs with quanta <= 6.
  {
    CutBasis b = enumerate_basis(3, 6);
    RationalMatrix s = gram_matrix(b);
    for (std::size_t i = 0; i < b.states.size(); ++i) {
      for (std::size_t j = i; j < b.states.size(); ++j) {
        double got = oracle_inner_product(b.states[i], b.states[j], 3);
        CHECK(std::abs(got - to_double(s[i][j])) <=
              1e-10 * (1.0 + std::abs(to_double(s[i][j]))));
      }
    }
  }
  CHECK_THROWS_AS(oracle_inner_product(part({0, 0, 0}), part({0, 0, 0}), 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_inner_product(part({5}), part({5}), 2),
                  std::invalid_argument);
}
