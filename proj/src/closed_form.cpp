#include "symqm/closed_form.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symqm {

int Family::tail_weight() const {
  int w = 0;
  for (std::size_t i = 0; i < pTail.size(); ++i)
    w += (static_cast<int>(i) + 3) * pTail[i];
  return w;
}

Rational Family::gamma(int n) const {
  return tail_weight() + frac(n * n - 1, 2) - 1 + nB;
}

std::vector<double> SpectrumClosedForm::energies() const {
  std::vector<double> e;
  e.reserve(entries.size());
  for (const auto& s : entries) e.push_back(s.e);
  return e;
}

double laguerre_eval(const LaguerreSpec& spec, double x) {
  const double g = to_double(spec.gamma);
  double prev = 1.0;  // L_0
  if (spec.m == 0) return prev;
  double cur = g + 1.0 - x;  // L_1
  for (int k = 1; k < spec.m; ++k) {
    double next = ((2 * k + 1 + g - x) * cur - (k + g) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational laguerre_eval_exact(int m, const Rational& gamma, const Rational& x) {
  Rational prev = 1;
  if (m == 0) return prev;
  Rational cur = gamma + 1 - x;
  for (int k = 1; k < m; ++k) {
    Rational next = ((2 * k + 1 + gamma - x) * cur - (k + gamma) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> laguerre_roots(const LaguerreSpec& spec) {
  if (spec.m < 1) throw std::invalid_argument("laguerre_roots: order < 1");
  const double g = to_double(spec.gamma);
  const int m = spec.m;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    j(i, i) = 2 * i + g + 1;
    if (i > 0) {
      const double off = std::sqrt(i * (i + g));
      j(i, i - 1) = off;
      j(i - 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("laguerre_roots: eigensolver failed");
  std::vector<double> roots(es.eigenvalues().data(),
                            es.eigenvalues().data() + m);
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    // Local scale from the recurrence neighbour; L_m' = -L_{m-1}^{g+1}.
    LaguerreSpec der{m - 1, spec.gamma + 1};
    const double scale =
        std::max(1.0, std::abs(laguerre_eval(der, r)) * std::abs(r));
    if (std::abs(laguerre_eval(spec, r)) > 1e-8 * scale)
      throw std::runtime_error("laguerre_roots: root verification failed");
  }
  return roots;
}

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// All tails (p_3..p_N) with weight <= budget, with their level counts.
void families_for_budget(int n, int budget, int nB, int alpha,
                         std::vector<std::pair<Family, int>>& out) {
  std::vector<int> tail(n >= 3 ? n - 2 : 0, 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k > n) {
      const int m = floor_div(left, 2) + 1;
      if (m >= 1) out.push_back({Family{tail, nB, alpha}, m});
      return;
    }
    for (int v = 0; v * k <= left; ++v) {
      tail[k - 3] = v;
      self(self, k + 1, left - v * k);
    }
    tail[k - 3] = 0;
  };
  if (n < 3) {
    const int m = floor_div(budget, 2) + 1;
    if (m >= 1) out.push_back({Family{{}, nB, alpha}, m});
    return;
  }
  rec(rec, 3, budget);
}

SpectrumClosedForm roots_of_families(
    int n, const std::vector<std::pair<Family, int>>& fams) {
  SpectrumClosedForm out;
  for (const auto& [fam, m] : fams) {
    LaguerreSpec spec{m, fam.gamma(n)};
    auto roots = laguerre_roots(spec);
    for (int i = 0; i < m; ++i) {
      out.entries.push_back({roots[static_cast<std::size_t>(i)] / 2, fam, i});
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              return a.e < b.e;
            });
  return out;
}

// Number of multisets of odd brick sizes {3, 5, ..., 2N-1} summing to nF.
int count_pure_brick_products(int n, int nF) {
  std::vector<long> c(nF + 1, 0);
  c[0] = 1;
  for (int k = 3; k <= 2 * n - 1; k += 2) {
    for (int m = k; m <= nF; ++m) c[m] += c[m - k];
  }
  return nF >= 0 ? static_cast<int>(c[nF]) : 0;
}

}  // namespace

std::vector<std::pair<Family, int>> enumerate_families(int n, int ncut) {
  if (n < 2) throw std::invalid_argument("enumerate_families: N must be >= 2");
  std::vector<std::pair<Family, int>> out;
  families_for_budget(n, ncut, 0, -1, out);
  return out;
}

std::vector<std::pair<Family, int>> enumerate_families(int n, int ncut,
                                                       const BrickTable& table) {
  if (n < 2) throw std::invalid_argument("enumerate_families: N must be >= 2");
  std::vector<std::pair<Family, int>> out;
  for (const auto& brick : table.bricks) {
    if (brick.nB < 0)
      throw std::invalid_argument("enumerate_families: negative n_B");
    families_for_budget(n, ncut - brick.nB, brick.nB, brick.alpha, out);
  }
  // Purely fermionic bricks carry no bosonic quanta.
  const int pure = count_pure_brick_products(n, table.nF);
  for (int i = 0; i < pure; ++i) {
    families_for_budget(n, ncut, 0, 1000 + i, out);
  }
  if (out.empty() && table.bricks.empty() && pure == 0) {
    throw std::runtime_error(
        "brick data unavailable for this sector: supply a brick table");
  }
  return out;
}

SpectrumClosedForm theta_bosonic(int n, int ncut) {
  return roots_of_families(n, enumerate_families(n, ncut));
}

SpectrumClosedForm theta_fermionic(int n, int ncut, const BrickTable& table) {
  return roots_of_families(n, enumerate_families(n, ncut, table));
}

}  // namespace symqm
