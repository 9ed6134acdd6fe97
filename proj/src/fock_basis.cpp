#include "symqm/fock_basis.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <stdexcept>

namespace symqm {

int Partition::quanta() const {
  int q = 0;
  for (std::size_t i = 0; i < p.size(); ++i) q += (static_cast<int>(i) + 2) * p[i];
  return q;
}

bool Partition::operator<(const Partition& o) const {
  int qa = quanta(), qb = o.quanta();
  if (qa != qb) return qa < qb;
  return p < o.p;
}

CutBasis enumerate_basis(int n, int ncut) {
  if (n < 2) throw std::invalid_argument("enumerate_basis: N must be >= 2");
  if (ncut < 0) throw std::invalid_argument("enumerate_basis: negative cutoff");
  CutBasis b;
  b.n = n;
  b.ncut = ncut;
  Partition cur;
  cur.p.assign(n - 1, 0);
  // Depth-first over p_2..p_N with the running weighted sum bounded.
  auto rec = [&](auto&& self, int k, int budget) -> void {
    if (k > n) {
      b.states.push_back(cur);
      return;
    }
    for (int v = 0; v * k <= budget; ++v) {
      cur.p[k - 2] = v;
      self(self, k + 1, budget - v * k);
    }
    cur.p[k - 2] = 0;
  };
  rec(rec, 2, ncut);
  std::sort(b.states.begin(), b.states.end());
  return b;
}

TraceExpr state_expr(const Partition& p) {
  const int n = p.n();
  std::vector<TraceWord> words;
  for (int k = 2; k <= n; ++k) {
    for (int i = 0; i < p.p[k - 2]; ++i) words.push_back(TraceWord::creators(k));
  }
  return TraceExpr::product(n, 1, std::move(words));
}

Rational vacuum_pairing(const Partition& bra, const TraceExpr& ket) {
  const int n = ket.n();
  if (bra.n() != n) throw std::invalid_argument("vacuum_pairing: mixed N");
  TraceExpr cur = ket;
  for (int k = n; k >= 2; --k) {
    TraceExpr ann = TraceExpr::single(n, TraceWord::annihilators(k));
    for (int i = 0; i < bra.p[k - 2]; ++i) {
      if (cur.zero()) return 0;
      cur = cayley_hamilton_reduce(normal_ordered_creation_part(ann * cur));
    }
  }
  for (const auto& t : cur.terms()) {
    if (t.scalar()) return t.coeff;
  }
  return 0;
}

RationalMatrix gram_matrix(const CutBasis& b) {
  const std::size_t d = b.states.size();
  RationalMatrix s(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t j = 0; j < d; ++j) {
    TraceExpr ket = state_expr(b.states[j]);
    const int qj = b.states[j].quanta();
    for (std::size_t i = 0; i <= j; ++i) {
      if (b.states[i].quanta() != qj) continue;
      s[i][j] = vacuum_pairing(b.states[i], ket);
      s[j][i] = s[i][j];
    }
  }
  return s;
}

std::vector<std::pair<Partition, Rational>> expand_in_basis(
    const TraceExpr& e) {
  const int n = e.n();
  std::vector<std::pair<Partition, Rational>> out;
  for (const auto& t : e.terms()) {
    Partition p;
    p.p.assign(n - 1, 0);
    for (const auto& w : t.traces) {
      const int len = static_cast<int>(w.size());
      if (!w.pure_creation() || len < 2 || len > n) {
        throw std::invalid_argument(
            "expand_in_basis: monomial is not a product of creation bricks "
            "of length 2..N");
      }
      ++p.p[len - 2];
    }
    out.emplace_back(std::move(p), t.coeff);
  }
  return out;
}

int exact_rank(RationalMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  std::size_t rr = 0;
  for (std::size_t c = 0; c < cols && rr < rows; ++c) {
    std::size_t piv = rr;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rr], m[piv]);
    for (std::size_t r = rr + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rr][c];
      for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rr][cc];
    }
    ++rr;
    ++rank;
  }
  return rank;
}

bool gram_full_rank(const CutBasis& b, const RationalMatrix& s) {
  std::map<int, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < b.states.size(); ++i) {
    blocks[b.states[i].quanta()].push_back(i);
  }
  for (const auto& [q, idx] : blocks) {
    RationalMatrix blk(idx.size(), std::vector<Rational>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t c = 0; c < idx.size(); ++c) blk[a][c] = s[idx[a]][idx[c]];
    }
    if (exact_rank(std::move(blk)) != static_cast<int>(idx.size())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Dense occupation-number oracle
// ---------------------------------------------------------------------------

namespace {

using Cplx = std::complex<double>;
using CMat = std::vector<std::vector<Cplx>>;  // fundamental generators

std::vector<CMat> generators(int n) {
  auto zeros = [n] { return CMat(n, std::vector<Cplx>(n, 0.0)); };
  std::vector<CMat> t;
  const Cplx I(0.0, 1.0);
  // Off-diagonal pairs.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      CMat sym = zeros();
      sym[i][j] = 0.5;
      sym[j][i] = 0.5;
      t.push_back(sym);
      CMat asym = zeros();
      asym[i][j] = -0.5 * I;
      asym[j][i] = 0.5 * I;
      t.push_back(asym);
    }
  }
  // Diagonal (Cartan) generators.
  for (int l = 1; l < n; ++l) {
    CMat d = zeros();
    const double norm = 1.0 / std::sqrt(2.0 * l * (l + 1));
    for (int i = 0; i < l; ++i) d[i][i] = norm;
    d[l][l] = -static_cast<double>(l) * norm;
    t.push_back(d);
  }
  return t;
}

constexpr int kOracleQuantaCap = 8;

struct OracleSpace {
  int modes;
  std::vector<std::vector<int>> occ;        // index -> occupation tuple
  std::map<std::vector<int>, int> index;    // occupation tuple -> index

  explicit OracleSpace(int modes_) : modes(modes_) {
    std::vector<int> cur(modes, 0);
    auto rec = [&](auto&& self, int m, int budget) -> void {
      if (m == modes) {
        index.emplace(cur, static_cast<int>(occ.size()));
        occ.push_back(cur);
        return;
      }
      for (int v = 0; v <= budget; ++v) {
        cur[m] = v;
        self(self, m + 1, budget - v);
      }
      cur[m] = 0;
    };
    rec(rec, 0, kOracleQuantaCap);
  }

  std::vector<Cplx> vacuum() const {
    std::vector<Cplx> v(occ.size(), 0.0);
    std::vector<int> zero(modes, 0);
    v[index.at(zero)] = 1.0;
    return v;
  }

  // a+_mode applied to v; components raised above the cap are dropped.
  std::vector<Cplx> raise(const std::vector<Cplx>& v, int mode) const {
    std::vector<Cplx> out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0.0) continue;
      std::vector<int> o = occ[i];
      ++o[mode];
      auto it = index.find(o);
      if (it == index.end()) continue;
      out[static_cast<std::size_t>(it->second)] +=
          v[i] * std::sqrt(static_cast<double>(o[mode]));
    }
    return out;
  }

  std::vector<Cplx> lower(const std::vector<Cplx>& v, int mode) const {
    std::vector<Cplx> out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0.0 || occ[i][mode] == 0) continue;
      std::vector<int> o = occ[i];
      --o[mode];
      out[static_cast<std::size_t>(index.at(o))] +=
          v[i] * std::sqrt(static_cast<double>(occ[i][mode]));
    }
    return out;
  }
};

// Applies the trace brick tr((a+)^len) to v, where (a+)_{ij} is the matrix
// sum_A (T_A)_{ij} a+_A. Entry recursion P_k = (a+) P_{k-1}, trace at the end.
std::vector<Cplx> apply_brick(const OracleSpace& sp,
                              const std::vector<CMat>& t,
                              const std::vector<Cplx>& v, int len) {
  const int n = static_cast<int>(t[0].size());
  const int modes = static_cast<int>(t.size());
  // raised[A] = a+_A v, reused across matrix entries.
  auto raise_all = [&](const std::vector<Cplx>& x) {
    std::vector<std::vector<Cplx>> r;
    r.reserve(modes);
    for (int a = 0; a < modes; ++a) r.push_back(sp.raise(x, a));
    return r;
  };
  // P[i][j] vectors; start with P_1.
  std::vector<std::vector<std::vector<Cplx>>> p(
      n, std::vector<std::vector<Cplx>>(n));
  {
    auto rv = raise_all(v);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::vector<Cplx> acc(v.size(), 0.0);
        for (int a = 0; a < modes; ++a) {
          const Cplx c = t[a][i][j];
          if (c == 0.0) continue;
          for (std::size_t s = 0; s < acc.size(); ++s) acc[s] += c * rv[a][s];
        }
        p[i][j] = std::move(acc);
      }
    }
  }
  for (int step = 2; step <= len; ++step) {
    std::vector<std::vector<std::vector<Cplx>>> q(
        n, std::vector<std::vector<Cplx>>(n));
    for (int l = 0; l < n; ++l) {
      for (int j = 0; j < n; ++j) {
        auto rv = raise_all(p[l][j]);
        for (int i = 0; i < n; ++i) {
          if (q[i][j].empty()) q[i][j].assign(v.size(), 0.0);
          for (int a = 0; a < modes; ++a) {
            const Cplx c = t[a][i][l];
            if (c == 0.0) continue;
            for (std::size_t s = 0; s < v.size(); ++s)
              q[i][j][s] += c * rv[a][s];
          }
        }
      }
    }
    p = std::move(q);
  }
  std::vector<Cplx> out(v.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < out.size(); ++s) out[s] += p[i][i][s];
  }
  return out;
}

std::vector<Cplx> oracle_state(const OracleSpace& sp,
                               const std::vector<CMat>& t, const Partition& p) {
  std::vector<Cplx> v = sp.vacuum();
  for (int k = 2; k <= p.n(); ++k) {
    for (int i = 0; i < p.p[k - 2]; ++i) v = apply_brick(sp, t, v, k);
  }
  return v;
}

}  // namespace

double oracle_inner_product(const Partition& p, const Partition& q, int n) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("oracle_inner_product: N must be 2 or 3");
  if (p.n() != n || q.n() != n)
    throw std::invalid_argument("oracle_inner_product: partition size");
  if (p.quanta() > kOracleQuantaCap || q.quanta() > kOracleQuantaCap)
    throw std::invalid_argument("oracle_inner_product: quanta above cap");
  static std::map<int, OracleSpace> spaces;
  auto it = spaces.find(n);
  if (it == spaces.end()) it = spaces.emplace(n, OracleSpace(n * n - 1)).first;
  const OracleSpace& sp = it->second;
  const auto t = generators(n);
  auto vp = oracle_state(sp, t, p);
  auto vq = oracle_state(sp, t, q);
  Cplx acc = 0.0;
  for (std::size_t s = 0; s < vp.size(); ++s) acc += std::conj(vp[s]) * vq[s];
  if (std::abs(acc.imag()) > 1e-9 * (1.0 + std::abs(acc.real())))
    throw std::runtime_error("oracle_inner_product: non-real inner product");
  return acc.real();
}

double oracle_hamiltonian_element(const Partition& p, const Partition& q,
                                  int n) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("oracle_hamiltonian_element: N must be 2 or 3");
  if (p.quanta() > kOracleQuantaCap - 2 || q.quanta() > kOracleQuantaCap - 2)
    throw std::invalid_argument("oracle_hamiltonian_element: quanta above cap");
  static std::map<int, OracleSpace> spaces;
  auto it = spaces.find(n);
  if (it == spaces.end()) it = spaces.emplace(n, OracleSpace(n * n - 1)).first;
  const OracleSpace& sp = it->second;
  const auto t = generators(n);
  auto vp = oracle_state(sp, t, p);
  auto vq = oracle_state(sp, t, q);
  const int modes = n * n - 1;
  std::vector<Cplx> hv(vq.size(), 0.0);
  for (int a = 0; a < modes; ++a) {
    auto num = sp.raise(sp.lower(vq, a), a);     // a+_A a_A
    auto up = sp.raise(sp.raise(vq, a), a);      // a+_A a+_A
    auto down = sp.lower(sp.lower(vq, a), a);    // a_A a_A
    for (std::size_t s = 0; s < hv.size(); ++s) {
      hv[s] += 0.5 * num[s] - 0.25 * up[s] - 0.25 * down[s];
    }
  }
  const double c0 = (n * n - 1) / 4.0;
  for (std::size_t s = 0; s < hv.size(); ++s) hv[s] += c0 * vq[s];
  Cplx acc = 0.0;
  for (std::size_t s = 0; s < hv.size(); ++s) acc += std::conj(vp[s]) * hv[s];
  if (std::abs(acc.imag()) > 1e-9 * (1.0 + std::abs(acc.real())))
    throw std::runtime_error("oracle_hamiltonian_element: non-real element");
  return acc.real();
}

}  // namespace symqm
