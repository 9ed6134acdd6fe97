#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symqm/rational.hpp"

namespace symqm {

// Generalized Laguerre polynomial L_m^gamma; gamma can be a half-integer
// (even N makes (N^2-1)/2 half-integral).
struct LaguerreSpec {
  int m = 0;
  Rational gamma;
};

// One tower of eigenstates: a fixed tail (p_3, ..., p_N) of higher bricks
// (plus an optional fermionic offset n_B), with p_2 running.
struct Family {
  std::vector<int> pTail;  // p_3 ... p_N
  int nB = 0;
  int alpha = -1;  // brick label, -1 for the bosonic sector

  int tail_weight() const;  // sum k p_k over k >= 3
  // Laguerre index of the tower: tail_weight + (N^2-1)/2 - 1 + nB.
  Rational gamma(int n) const;
};

struct Brick {
  int alpha = 0;
  int nB = 0;
};

// Fermionic-sector input: the composite bricks for one (N, n_F).
struct BrickTable {
  int n = 0;
  int nF = 0;
  std::vector<Brick> bricks;
};

struct SpectrumEntry {
  double e = 0.0;
  Family family;
  int rootIndex = 0;
};

struct SpectrumClosedForm {
  std::vector<SpectrumEntry> entries;  // ascending in e

  std::vector<double> energies() const;
};

// Three-term recurrence evaluation; exact-rational twin below feeds the
// mixing-coefficient solver.
double laguerre_eval(const LaguerreSpec& spec, double x);
Rational laguerre_eval_exact(int m, const Rational& gamma, const Rational& x);

// All m zeros, ascending, from the symmetric tridiagonal Jacobi matrix
// (diagonal 2i+gamma+1, off-diagonal sqrt(i(i+gamma))); each root is
// verified against the recurrence before being returned.
std::vector<double> laguerre_roots(const LaguerreSpec& spec);

// Bosonic towers at a cutoff: every tail with weight <= ncut, paired with
// the number of allowed radial levels m = floor((ncut - weight)/2) + 1.
std::vector<std::pair<Family, int>> enumerate_families(int n, int ncut);

// Fermionic towers: same enumeration per brick with the cutoff budget
// reduced by n_B; families with no levels are omitted.
std::vector<std::pair<Family, int>> enumerate_families(int n, int ncut,
                                                       const BrickTable& table);

SpectrumClosedForm theta_bosonic(int n, int ncut);

// The table's bricks plus the automatic purely fermionic bricks (products
// of the odd bricks of size 3, 5, ..., 2N-1 summing to n_F, each n_B = 0).
// Throws std::runtime_error("brick data unavailable...") when the sector
// has neither.
SpectrumClosedForm theta_fermionic(int n, int ncut, const BrickTable& table);

}  // namespace symqm
