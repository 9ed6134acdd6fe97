#pragma once

#include <utility>
#include <vector>

#include "symqm/trace_algebra.hpp"

namespace symqm {

// Occupation numbers (p_2, ..., p_N) of the single-trace creation bricks;
// p[k-2] is the power of (a+^k).
struct Partition {
  std::vector<int> p;

  int n() const { return static_cast<int>(p.size()) + 1; }
  int quanta() const;

  bool operator==(const Partition& o) const { return p == o.p; }
  // Graded lexicographic: by total quanta, then by p.
  bool operator<(const Partition& o) const;
};

// All partitions with 2 p_2 + ... + N p_N <= ncut, graded-lex ordered. The
// ordering makes a smaller cutoff's basis a prefix of a larger one's.
struct CutBasis {
  int n = 0;
  int ncut = 0;
  std::vector<Partition> states;
};

CutBasis enumerate_basis(int n, int ncut);

// Product of creation bricks prod_k (a+^k)^{p_k}, coefficient 1.
TraceExpr state_expr(const Partition& p);

using RationalMatrix = std::vector<std::vector<Rational>>;

// <bra| expr |0> for a pure-creation expr whose traces are of length <= N.
// Annihilation bricks of the conjugated bra are applied one at a time,
// shortening traces via the characteristic-polynomial rewrite after each
// step, so intermediate expressions stay at basis-partition size.
Rational vacuum_pairing(const Partition& bra, const TraceExpr& ket);

// S[i][j] = <state_i | state_j>, exact and symmetric; states with different
// total quanta are orthogonal (number operator) and are skipped outright.
RationalMatrix gram_matrix(const CutBasis& b);

// Writes a pure-creation, length-reduced expression as a combination of
// basis partitions. Throws std::invalid_argument when a monomial is not a
// product of bricks of length 2..N (i.e. not reduced, or has annihilators).
std::vector<std::pair<Partition, Rational>> expand_in_basis(
    const TraceExpr& e);

// Exact rank of a rational matrix by fraction-free elimination.
int exact_rank(RationalMatrix m);

// True when every fixed-quanta diagonal block of the Gram matrix has full
// rank, i.e. the cut states are linearly independent.
bool gram_full_rank(const CutBasis& b, const RationalMatrix& s);

// Independent check: dense matrices for the N^2-1 oscillators on the
// occupation space truncated at total quanta <= 8, explicit fundamental
// generators (tr T_A T_B = 1/2 delta_AB), trace bricks applied to the
// vacuum vector. Slow and small by design; n must be 2 or 3.
double oracle_inner_product(const Partition& p, const Partition& q, int n);

// <p| H |q> through the same dense oracle, with
// H = tr(a+a) + (N^2-1)/4 - 1/2 tr(a+a+) - 1/2 tr(aa)
// assembled from the mode operators (tr(a+a) = 1/2 sum_A a+_A a_A, etc).
// Quanta of p and q must be <= 6 so the raising term stays inside the cap.
double oracle_hamiltonian_element(const Partition& p, const Partition& q,
                                  int n);

}  // namespace symqm
