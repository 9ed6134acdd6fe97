#include "symqm/reference_forms.hpp"

#include <algorithm>
#include <vector>

namespace symqm {

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

}  // namespace

TraceExpr comm_aa_single(int n, int len) {
  TraceExpr rhs(n);
  TraceWord mix = TraceWord::mixed(len - 1, 1);
  rhs += pure(n, len, {}, &mix);
  rhs += pure(n, frac(len * n, 2) * (frac(1, 2) - frac(len - 1, 2 * n * n)),
              {len - 2});
  for (int j = 2; j <= len - 2; ++j) rhs += pure(n, frac(len, 4), {j, len - 2 - j});
  return rhs;
}

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
    rhs += pure(n,
                frac(m * len * n, 2) * (frac(1, 2) - frac(len - 1, 2 * n * n)),
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

}  // namespace symqm
