#include "symqm/eigenstates.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "symqm/hamiltonian.hpp"

namespace symqm {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

const std::vector<std::pair<Partition, Rational>>& lowering_image(
    const Partition& p) {
  static std::map<Partition, std::vector<std::pair<Partition, Rational>>>
      cache;
  auto it = cache.find(p);
  if (it == cache.end())
    it = cache.emplace(p, expand_in_basis(apply_lowering(p))).first;
  return it->second;
}

std::vector<Partition> partitions_at_quanta(int n, int quanta) {
  std::vector<Partition> out;
  for (const Partition& p : enumerate_basis(n, quanta).states)
    if (p.quanta() == quanta) out.push_back(p);
  return out;
}

// rising factorial (gamma+1)(gamma+2)...(gamma+m); the tower profile uses
// L_m / poch, the normalization in which the row recurrence closes
Rational poch(const Rational& gamma, int m) {
  Rational out(1);
  for (int i = 1; i <= m; ++i) out *= gamma + i;
  return out;
}

Rational guarded(const std::function<Rational(const Partition&)>& a,
                 std::vector<int> occ) {
  for (int v : occ)
    if (v < 0) return Rational(0);
  return a(Partition{std::move(occ)});
}

// Rows of the cut recursion, cached per (n, ncut): rows[i] holds the
// (column, -2 c_{i,j}) pairs; the energy enters as +2E a_i.
struct RowTable {
  CutBasis basis;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<char> interior;
};

const RowTable& row_table(int n, int ncut) {
  static std::map<std::pair<int, int>, RowTable> cache;
  auto it = cache.find({n, ncut});
  if (it != cache.end()) return it->second;

  RowTable t;
  t.basis = enumerate_basis(n, ncut);
  const std::size_t dim = t.basis.states.size();
  std::map<Partition, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index[t.basis.states[i]] = i;
  t.rows.resize(dim);
  t.interior.resize(dim);
  for (std::size_t i = 0; i < dim; ++i)
    t.interior[i] = t.basis.states[i].quanta() <= ncut - 2;
  for (std::size_t j = 0; j < dim; ++j) {
    for (const auto& [q, c] :
         expand_in_basis(apply_hamiltonian(t.basis.states[j]))) {
      auto hit = index.find(q);
      if (hit != index.end())
        t.rows[hit->second].push_back({j, -2.0 * to_double(c)});
    }
  }
  return cache.emplace(std::pair{n, ncut}, std::move(t)).first->second;
}

// Exact Gaussian elimination on an augmented system M [x; 1] = 0 with
// `unknowns` leading columns; throws on inconsistent or underdetermined.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> m,
                                  std::size_t unknowns) {
  std::size_t row = 0;
  std::vector<std::size_t> pivot_row(unknowns);
  for (std::size_t col = 0; col < unknowns; ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size())
      throw std::runtime_error("mixing solve: underdetermined system");
    std::swap(m[sel], m[row]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < m[r].size(); ++c)
        m[r][c] -= f * m[row][c];
    }
    pivot_row[col] = row;
    ++row;
  }
  for (std::size_t r = row; r < m.size(); ++r)
    if (m[r].back() != 0)
      throw std::runtime_error("mixing solve: inconsistent system");
  std::vector<Rational> x(unknowns);
  for (std::size_t col = 0; col < unknowns; ++col)
    x[col] = -m[pivot_row[col]].back() / m[pivot_row[col]][col];
  return x;
}

int tuple_weight(const std::vector<int>& t) {
  int w = 0;
  for (std::size_t i = 0; i < t.size(); ++i) w += static_cast<int>(i + 3) * t[i];
  return w;
}

std::vector<int> tail_minus(const std::vector<int>& tail,
                            const std::vector<int>& t) {
  std::vector<int> out(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) out[i] = tail[i] - t[i];
  return out;
}

// Equations for the mixing amplitudes at one sample energy and cutoff:
// interior recursion rows of the ansatz, each a linear form over
// (A_1..A_T, 1).
void append_equations(int n, const std::vector<int>& tail,
                      const std::vector<std::vector<int>>& support,
                      const Rational& gamma, const Rational& e, int ncut,
                      const std::set<std::vector<int>>* rowTails,
                      std::vector<std::vector<Rational>>* eqs) {
  const std::size_t nt = support.size();
  const int w = [&] {
    int s = 0;
    for (std::size_t i = 0; i < tail.size(); ++i)
      s += static_cast<int>(i + 3) * tail[i];
    return s;
  }();

  // component 0 is the undressed series; component k >= 1 the tuple k-1
  std::map<Partition, std::vector<Rational>> rows;
  auto at = [&](const Partition& q) -> std::vector<Rational>& {
    auto it = rows.find(q);
    if (it == rows.end())
      it = rows.emplace(q, std::vector<Rational>(nt + 2, Rational(0))).first;
    return it->second;
  };

  const Rational half_casimir = frac(static_cast<long>(n) * n - 1, 2);
  for (std::size_t k = 0; k <= nt; ++k) {
    std::vector<int> ctail = k == 0 ? tail : tail_minus(tail, support[k - 1]);
    const int shift = k == 0 ? 0 : tuple_weight(support[k - 1]) / 2;
    for (int m = 0; 2 * m + w <= ncut; ++m) {
      Rational val = laguerre_eval_exact(m, gamma, 2 * e) / poch(gamma, m);
      if (val == 0) continue;
      Partition s;
      s.p.assign(n - 1, 0);
      s.p[0] = m + shift;
      for (std::size_t i = 0; i < ctail.size(); ++i) s.p[i + 1] = ctail[i];

      at(s)[k] -= (Rational(s.quanta()) + half_casimir - 2 * e) * val;
      Partition up = s;
      up.p[0] += 1;
      at(up)[k] += val;  // s is the a_{p2-1} neighbour of row `up`
      for (const auto& [tgt, c] : lowering_image(s)) at(tgt)[k] += c * val;
    }
  }

  for (auto& [q, form] : rows) {
    if (q.quanta() > ncut - 2) continue;
    if (rowTails) {
      std::vector<int> qt(q.p.begin() + 1, q.p.end());
      if (!rowTails->count(qt)) continue;
    }
    bool nonzero = false;
    for (std::size_t k = 0; k <= nt; ++k)
      if (form[k] != 0) nonzero = true;
    if (!nonzero) continue;
    // augmented layout: A_1..A_T then the inhomogeneous (base) column
    std::vector<Rational> eq(nt + 1, Rational(0));
    for (std::size_t k = 1; k <= nt; ++k) eq[k - 1] = form[k];
    eq[nt] = form[0];
    eqs->push_back(std::move(eq));
  }
}

std::vector<Rational> solve_support(int n, const std::vector<int>& tail,
                                    const std::vector<std::vector<int>>& sup,
                                    const Rational& gamma, int ncut,
                                    const std::set<std::vector<int>>* rowTails) {
  std::vector<std::vector<Rational>> eqs;
  for (const Rational& e : {frac(1, 3), frac(2, 5), frac(7, 11)})
    append_equations(n, tail, sup, gamma, e, ncut, rowTails, &eqs);
  if (sup.empty()) {
    for (const auto& eq : eqs)
      if (eq.back() != 0)
        throw std::runtime_error("mixing solve: inconsistent system");
    return {};
  }
  return solve_exact(std::move(eqs), sup.size());
}

long double log_bessel_i(long double nu, long double x) {
  if (x < 600.0L) return std::log(std::cyl_bessel_il(nu, x));
  const long double mu = 4.0L * nu * nu;
  const long double t = 1.0L / (8.0L * x);
  const long double corr =
      1.0L - (mu - 1.0L) * t + (mu - 1.0L) * (mu - 9.0L) * t * t / 2.0L -
      (mu - 1.0L) * (mu - 9.0L) * (mu - 25.0L) * t * t * t / 6.0L;
  return x - 0.5L * std::log(2.0L * static_cast<long double>(M_PI) * x) +
         std::log(corr);
}

std::map<Partition, double> ansatz_coeffs(int n, const Family& family,
                                          double e, int levels,
                                          const MixingCoeffs& mix) {
  const double gamma = to_double(family.gamma(n));
  const int w = family.tail_weight();
  const double damp = std::exp(-e);
  std::map<Partition, double> coeffs;
  double lm2 = 0.0, lm1 = 1.0;  // L_{m-2}, L_{m-1} seeds for the recurrence
  double fall = 1.0;            // (gamma+1)...(gamma+m)
  for (int m = 0; m < levels; ++m) {
    double val;
    if (m == 0)
      val = 1.0;
    else if (m == 1)
      val = gamma + 1.0 - 2.0 * e;
    else
      val = ((2.0 * (m - 1) + 1.0 + gamma - 2.0 * e) * lm1 -
             ((m - 1) + gamma) * lm2) /
            m;
    lm2 = lm1;
    lm1 = val;
    if (m > 0) fall *= gamma + m;
    val /= fall;

    Partition base;
    base.p.assign(n - 1, 0);
    base.p[0] = m;
    for (std::size_t i = 0; i + 2 < static_cast<std::size_t>(n + 1) &&
                            i < family.pTail.size();
         ++i)
      base.p[i + 1] = family.pTail[i];
    coeffs[base] += damp * val;
    for (const auto& [t, a] : mix.a) {
      Partition img = base;
      img.p[0] = m + tuple_weight(t) / 2;
      for (std::size_t i = 0; i < t.size(); ++i) img.p[i + 1] -= t[i];
      coeffs[img] += damp * val * to_double(a);
    }
    (void)w;
  }
  return coeffs;
}

}  // namespace

Rational generic_row(const Partition& q,
                     const std::function<Rational(const Partition&)>& a,
                     const Rational& e) {
  const int n = q.n();
  Rational row(0);
  if (q.p[0] >= 1) {
    Partition qm = q;
    qm.p[0] -= 1;
    row += a(qm);
  }
  row -= (Rational(q.quanta()) + frac(static_cast<long>(n) * n - 1, 2) -
          2 * e) *
         a(q);
  for (const Partition& src : partitions_at_quanta(n, q.quanta() + 2)) {
    for (const auto& [tgt, c] : lowering_image(src))
      if (tgt == q) row += c * a(src);
  }
  return row;
}

Rational su3_printed_row(int p2, int p3,
                         const std::function<Rational(const Partition&)>& a,
                         const Rational& e) {
  Rational row(0);
  row += guarded(a, {p2 - 1, p3});
  row -= (Rational(2 * p2 + 3 * p3 + 4) - 2 * e) * guarded(a, {p2, p3});
  row += Rational(p2 + 1) * Rational(p2 + 3 * p3 + 4) * guarded(a, {p2 + 1, p3});
  row += frac(3, 8) * Rational(p3 + 1) * Rational(p3 + 2) *
         guarded(a, {p2 - 2, p3 + 2});
  return row;
}

Rational su4_printed_row(int p2, int p3, int p4,
                         const std::function<Rational(const Partition&)>& a,
                         const Rational& e) {
  Rational row(0);
  row += guarded(a, {p2 - 1, p3, p4});
  row -= (Rational(2 * p2 + 3 * p3 + 4 * p4) + frac(15, 2) - 2 * e) *
         guarded(a, {p2, p3, p4});
  row += Rational(p2 + 1) * (Rational(p2 + 3 * p3 + 4 * p4) + frac(15, 2)) *
         guarded(a, {p2 + 1, p3, p4});
  row += (frac(7, 2) * Rational(p3 * (p4 + 1)) +
          Rational(3 * p4 * (p4 + 1)) + frac(29, 4) * Rational(p4 + 1)) *
         guarded(a, {p2 - 1, p3, p4 + 1});
  row += frac(1, 3) * Rational(p4 + 1) * Rational(p4 + 2) *
         guarded(a, {p2, p3 - 2, p4 + 2});
  row -= frac(1, 2) * Rational(p4 + 1) * Rational(p4 + 2) *
         guarded(a, {p2 - 3, p3, p4 + 2});
  row += frac(9, 4) * Rational(p3 + 1) * Rational(p3 + 2) *
         guarded(a, {p2, p3 + 2, p4 - 1});
  row -= frac(9, 16) * Rational(p3 + 1) * Rational(p3 + 2) *
         guarded(a, {p2 - 2, p3 + 2, p4});
  return row;
}

double recursion_residual(const std::vector<double>& coeffs, int n, int ncut,
                          double e) {
  const RowTable& t = row_table(n, ncut);
  if (coeffs.size() != t.basis.states.size())
    throw std::invalid_argument(
        "recursion_residual: coefficient count does not match the basis");
  double worst = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (!t.interior[i]) continue;
    double r = 2.0 * e * coeffs[i];
    for (const auto& [j, wgt] : t.rows[i]) r += wgt * coeffs[j];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<std::vector<int>> mixing_support(const Family& family) {
  // every tail of smaller weight with an even weight gap can appear in
  // the eigenstate (lowering can fuse bricks into sizes the tail does not
  // contain, so the difference tuple may have negative entries)
  const int w = family.tail_weight();
  std::vector<std::vector<int>> out;
  std::vector<int> tau(family.pTail.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int wt) {
    if (wt > w - 2) return;
    if (i == tau.size()) {
      if ((w - wt) % 2 == 0) {
        std::vector<int> t(tau.size());
        for (std::size_t j = 0; j < tau.size(); ++j)
          t[j] = family.pTail[j] - tau[j];
        out.push_back(std::move(t));
      }
      return;
    }
    const int step = static_cast<int>(i) + 3;
    for (tau[i] = 0; wt + step * tau[i] <= w - 2; ++tau[i])
      rec(i + 1, wt + step * tau[i]);
    tau[i] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

MixingCoeffs solve_mixing_coeffs(int n, const Family& family) {
  if (static_cast<int>(family.pTail.size()) != n - 2)
    throw std::invalid_argument("solve_mixing_coeffs: tail length must be N-2");
  if (family.nB != 0 || family.alpha != -1)
    throw std::invalid_argument(
        "solve_mixing_coeffs: only the bosonic sector is supported");
  const auto sup = mixing_support(family);
  MixingCoeffs mc;
  if (sup.empty()) return mc;

  const Rational gamma = family.gamma(n);
  const int w = family.tail_weight();
  auto first = solve_support(n, family.pTail, sup, gamma, w + 6, nullptr);
  auto second = solve_support(n, family.pTail, sup, gamma, w + 8, nullptr);
  if (first != second)
    throw std::runtime_error("mixing solve: cutoff-dependent solution");
  for (std::size_t k = 0; k < sup.size(); ++k) mc.a[sup[k]] = first[k];
  return mc;
}

MixingCoeffs solve_mixing_coeffs_subtractive(int n, const Family& family) {
  if (static_cast<int>(family.pTail.size()) != n - 2)
    throw std::invalid_argument("solve_mixing_coeffs: tail length must be N-2");
  if (family.nB != 0 || family.alpha != -1)
    throw std::invalid_argument(
        "solve_mixing_coeffs: only the bosonic sector is supported");

  // even-weight tuples with 0 <= t_k <= p_k, at least one entry nonzero
  std::vector<std::vector<int>> sup;
  {
    std::vector<int> t(family.pTail.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == t.size()) {
        int wt = tuple_weight(t);
        if (wt > 0 && wt % 2 == 0) sup.push_back(t);
        return;
      }
      for (t[i] = 0; t[i] <= family.pTail[i]; ++t[i]) rec(i + 1);
      t[i] = 0;
    };
    rec(0);
    std::sort(sup.begin(), sup.end());
  }
  MixingCoeffs mc;
  if (sup.empty()) return mc;

  std::set<std::vector<int>> rowTails{family.pTail};
  for (const auto& t : sup) rowTails.insert(tail_minus(family.pTail, t));

  const Rational gamma = family.gamma(n);
  const int w = family.tail_weight();
  auto first = solve_support(n, family.pTail, sup, gamma, w + 6, &rowTails);
  auto second = solve_support(n, family.pTail, sup, gamma, w + 8, &rowTails);
  if (first != second)
    throw std::runtime_error("mixing solve: cutoff-dependent solution");
  for (std::size_t k = 0; k < sup.size(); ++k) mc.a[sup[k]] = first[k];
  return mc;
}

FamilySolution build_family_state(int n, const Family& family, double e,
                                  const FiniteMode& mode) {
  const int w = family.tail_weight();
  const long d = floor_div(mode.ncut - family.nB - w, 2) + 1;
  if (d < 1)
    throw std::invalid_argument(
        "build_family_state: family has no levels at this cutoff");
  const LaguerreSpec spec{static_cast<int>(d), family.gamma(n)};
  bool is_root = false;
  for (double r : laguerre_roots(spec))
    if (std::abs(2.0 * e - r) <= 1e-8 * (1.0 + std::abs(r))) is_root = true;
  if (!is_root)
    throw std::invalid_argument(
        "build_family_state: E is not an eigenvalue of this family");

  MixingCoeffs mix;
  if (family.nB == 0 && family.alpha == -1)
    mix = solve_mixing_coeffs(n, family);
  else if (!mixing_support(family).empty())
    throw std::runtime_error(
        "build_family_state: mixing amplitudes unavailable in dressed "
        "sectors");

  FamilySolution out;
  out.family = family;
  out.e = e;
  out.levels = static_cast<int>(d);
  out.nF = 0;
  out.coeffs = ansatz_coeffs(n, family, e, static_cast<int>(d), mix);
  return out;
}

FamilySolution build_family_state(int n, const Family& family, double e,
                                  const ContinuumMode& mode) {
  if (e <= 0.0)
    throw std::invalid_argument("build_family_state: E must be positive");
  const double gamma = to_double(family.gamma(n));

  // truncate when the squared-norm contribution of a level, in the
  // diagonal weight m! Gamma(gamma+1) / Gamma(m+gamma+1), stalls
  int levels = 1;
  {
    double lm2 = 0.0, lm1 = 1.0, accum = 0.0;
    int quiet = 0;
    for (int m = 0; m < 20000; ++m) {
      double val;
      if (m == 0)
        val = 1.0;
      else if (m == 1)
        val = gamma + 1.0 - 2.0 * e;
      else
        val = ((2.0 * (m - 1) + 1.0 + gamma - 2.0 * e) * lm1 -
               ((m - 1) + gamma) * lm2) /
              m;
      lm2 = lm1;
      lm1 = val;
      const double wgt = std::exp(std::lgamma(m + 1.0) +
                                  std::lgamma(gamma + 1.0) -
                                  std::lgamma(m + gamma + 1.0));
      const double term = val * val * wgt;
      accum += term;
      quiet = (term < mode.tol * accum) ? quiet + 1 : 0;
      levels = m + 1;
      if (quiet >= 8) break;
    }
  }

  MixingCoeffs mix;
  if (family.nB == 0 && family.alpha == -1)
    mix = solve_mixing_coeffs(n, family);
  else if (!mixing_support(family).empty())
    throw std::runtime_error(
        "build_family_state: mixing amplitudes unavailable in dressed "
        "sectors");

  FamilySolution out;
  out.family = family;
  out.e = e;
  out.levels = levels;
  out.nF = 0;
  out.coeffs = ansatz_coeffs(n, family, e, levels, mix);
  return out;
}

FamilySolution dress_fermionic(const FamilySolution& state,
                               const std::set<int>& fermionIndices) {
  FamilySolution out = state;
  const int n = static_cast<int>(state.family.pTail.size()) + 2;
  int nF = 0;
  for (int k : fermionIndices) {
    if (k < 3 || k % 2 == 0 || k > 2 * n - 1)
      throw std::invalid_argument(
          "dress_fermionic: brick sizes must be odd, between 3 and 2N-1");
    nF += k;
  }
  out.nF = nF;
  return out;
}

OverlapPair continuum_overlap(int n, double e, double e2, double z) {
  if (!(z > 0.0 && z < 1.0))
    throw std::invalid_argument("continuum_overlap: z must lie in (0, 1)");
  if (e <= 0.0 || e2 <= 0.0)
    throw std::invalid_argument("continuum_overlap: energies must be positive");
  const double g0 = (static_cast<double>(n) * n - 1.0) / 2.0 - 1.0;

  OverlapPair out;
  {
    const long double le = e, le2 = e2, lz = z, lg0 = g0;
    long double la2 = 0.0L, la1 = 1.0L, lb2 = 0.0L, lb1 = 1.0L;
    long double zm = 1.0L, sum = 0.0L;
    int quiet = 0;
    for (int m = 0; m < 2000000; ++m) {
      long double va, vb;
      if (m == 0) {
        va = 1.0L;
        vb = 1.0L;
      } else if (m == 1) {
        va = lg0 + 1.0L - 2.0L * le;
        vb = lg0 + 1.0L - 2.0L * le2;
      } else {
        va = ((2.0L * (m - 1) + 1.0L + lg0 - 2.0L * le) * la1 -
              ((m - 1) + lg0) * la2) /
             m;
        vb = ((2.0L * (m - 1) + 1.0L + lg0 - 2.0L * le2) * lb1 -
              ((m - 1) + lg0) * lb2) /
             m;
      }
      la2 = la1;
      la1 = va;
      lb2 = lb1;
      lb1 = vb;
      const long double wgt =
          std::exp(std::lgamma(static_cast<long double>(m) + 1.0L) -
                   std::lgamma(m + lg0 + 1.0L) - std::lgamma(lg0 + 1.0L));
      const long double term = wgt * va * vb * zm;
      sum += term;
      zm *= lz;
      quiet = (std::abs(term) <= 1e-20L * (1.0L + std::abs(sum))) ? quiet + 1 : 0;
      if (quiet >= 12) break;
    }
    out.series = static_cast<double>(std::exp(-le - le2) * sum);
  }
  {
    const long double le = e, le2 = e2, lz = z, lg0 = g0;
    const long double x = 4.0L * std::sqrt(le * le2 * lz) / (1.0L - lz);
    const long double lg = -(le + le2) - std::lgamma(lg0 + 1.0L) -
                           std::log(1.0L - lz) -
                           2.0L * lz * (le + le2) / (1.0L - lz) -
                           0.5L * lg0 * std::log(4.0L * le * le2 * lz) +
                           log_bessel_i(lg0, x);
    out.closed = static_cast<double>(std::exp(lg));
  }
  return out;
}

Rational suppression_exponent(const Family& family) {
  return Rational(family.tail_weight() + family.nB);
}

FamilySolution vacuum_profile(int n, int nF, double tol) {
  // the pure bricks (f+^k) have odd sizes 3, 5, ..., 2N-1, each at most once
  std::vector<int> sizes;
  for (int k = 3; k <= 2 * n - 1; k += 2) sizes.push_back(k);
  std::set<int> picked;
  std::function<bool(std::size_t, int)> pick = [&](std::size_t i,
                                                   int left) -> bool {
    if (left == 0) return true;
    if (i == sizes.size() || left < 0) return false;
    picked.insert(sizes[i]);
    if (pick(i + 1, left - sizes[i])) return true;
    picked.erase(sizes[i]);
    return pick(i + 1, left);
  };
  if (!pick(0, nF))
    throw std::runtime_error("no vacuum in sector " + std::to_string(nF));

  // E -> 0 limit of the empty-tail profile: L_m^g(0) = C(m + g, m)
  const double gamma = to_double(Family{std::vector<int>(n - 2, 0)}.gamma(n));
  FamilySolution out;
  out.family = Family{std::vector<int>(n - 2, 0)};
  out.e = 0.0;
  out.levels = 32;
  out.coeffs.clear();
  double val = 1.0;
  for (int m = 0; m < out.levels; ++m) {
    if (m > 0) val *= (m + gamma) / m;
    Partition p;
    p.p.assign(n - 1, 0);
    p.p[0] = m;
    out.coeffs[p] = val;
  }
  out.nF = nF;
  (void)tol;
  return out;
}

}  // namespace symqm
