#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "symqm/closed_form.hpp"
#include "symqm/fock_basis.hpp"

namespace symqm {

// One closed-form eigenstate (or continuum state) expanded in the Fock
// basis: coefficient map over partitions, e^{-E} prefactor included.
struct FamilySolution {
  Family family;
  double e = 0.0;
  int levels = 0;  // upper limit d of the radial sum (finite mode)
  int nF = 0;
  std::map<Partition, double> coeffs;
};

// Exact mixing amplitudes A_t of a family, keyed by the tuple (t3..tN)
// subtracted from the tail; cutoff independent.
struct MixingCoeffs {
  std::map<std::vector<int>, Rational> a;
};

struct OverlapPair {
  double series = 0.0;  // independent partial-sum oracle
  double closed = 0.0;  // Bessel-function closed form
};

// Value of the recursion row q: a_{q-} - (quanta + (N^2-1)/2 - 2E) a_q +
// sum over two-quanta-higher sources of their lowering amplitude into q.
// The lookup must return a coefficient for any partition (0 outside the
// chosen cutoff). Derived from the operator algebra, valid for any N.
Rational generic_row(const Partition& q,
                     const std::function<Rational(const Partition&)>& a,
                     const Rational& e);

// Hard-coded transcriptions of the published N=3 and N=4 recursion rows,
// kept as independent oracles for generic_row. One N=4 coefficient (the
// a_{p2-1,p3,p4+1} term) is corrected here: the published form fails the
// spectrum cross-check, the transcribed one reproduces it.
Rational su3_printed_row(int p2, int p3,
                         const std::function<Rational(const Partition&)>& a,
                         const Rational& e);
Rational su4_printed_row(int p2, int p3, int p4,
                         const std::function<Rational(const Partition&)>& a,
                         const Rational& e);

// Max |row| over the interior rows (quanta <= ncut - 2, where the cut
// drops nothing) for a coefficient vector indexed by enumerate_basis.
double recursion_residual(const std::vector<double>& coeffs, int n, int ncut,
                          double e);

// Difference tuples t = tail - tail' over every tail' of smaller weight
// with an even weight gap (the partner head shift is half the gap).
// Lowering can fuse bricks into sizes the tail lacks, so entries of t may
// be negative.
std::vector<std::vector<int>> mixing_support(const Family& family);

// Solves the interior recursion rows for the mixing amplitudes, exactly,
// at several rational sample energies and two cutoffs; throws
// std::runtime_error on inconsistency or cutoff dependence.
MixingCoeffs solve_mixing_coeffs(int n, const Family& family);

// Restricted variant of the solve: only tuples subtracted entrywise from
// the tail, fitted on the rows of those tails alone. Lowering can fuse
// bricks into sizes the tail lacks, so this ansatz misses components at
// N >= 4 (its off-support rows are unsatisfiable); solve_mixing_coeffs
// gives the complete set. Kept because the classic single-amplitude
// closed form for the {2,0,...,0} family, (18/N)/(24+6(N^2-1)), is the
// unique solution of this restricted system.
MixingCoeffs solve_mixing_coeffs_subtractive(int n, const Family& family);

struct FiniteMode {
  int ncut = 0;
};
struct ContinuumMode {
  double tol = 1e-10;
};

FamilySolution build_family_state(int n, const Family& family, double e,
                                  const FiniteMode& mode);
FamilySolution build_family_state(int n, const Family& family, double e,
                                  const ContinuumMode& mode);

// Tags the state with the fermion content of distinct pure bricks
// (f+^k), k in {3, 5, ..., 2N-1}; bosonic coefficients are untouched.
FamilySolution dress_fermionic(const FamilySolution& state,
                               const std::set<int>& fermionIndices);

// Series and closed form of the z-regularized continuum overlap.
OverlapPair continuum_overlap(int n, double e, double e2, double z);

// (2E)^gamma suppression exponent of a family relative to the empty tail.
Rational suppression_exponent(const Family& family);

// E -> 0 limit of the dressed empty-tail continuum state for the sector
// n_F, when the sector is a sum of distinct odd brick sizes; throws
// std::runtime_error("no vacuum in sector ...") otherwise.
FamilySolution vacuum_profile(int n, int nF, double tol = 1e-10);

}  // namespace symqm
