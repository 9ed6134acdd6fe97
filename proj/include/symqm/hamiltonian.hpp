#pragma once

#include <vector>

#include "symqm/fock_basis.hpp"

namespace symqm {

// H = tr(a+a) + (N^2-1)/4 - 1/2 tr(a+a+) - 1/2 tr(aa) in the cut basis,
// exact in the basis ordering of `basis`. Raising images above the cutoff
// are dropped: this matrix represents the projected operator P H P.
struct HamiltonianMatrix {
  CutBasis basis;
  RationalMatrix h;
};

struct SpectrumNumeric {
  std::vector<double> eigenvalues;               // ascending
  std::vector<std::vector<double>> eigenvectors; // S-orthonormal columns
};

// H |p> as a pure-creation, length-reduced expression, computed by moving
// the annihilation bricks through the state with the operator algebra (no
// transcription of printed recursion coefficients). No cutoff is applied.
TraceExpr apply_hamiltonian(const Partition& p);

// The image of the lowering part alone: (aa) |p>, length-reduced.
TraceExpr apply_lowering(const Partition& p);

// H[i][j] = <state_i| H |state_j> with images truncated to the cutoff.
HamiltonianMatrix hamiltonian_matrix(const CutBasis& b);

// Generalized symmetric-definite eigenproblem H c = E S c. Throws
// std::runtime_error (reporting the smallest S eigenvalue) when S is not
// positive definite.
SpectrumNumeric solve_spectrum_numeric(const HamiltonianMatrix& h,
                                       const RationalMatrix& s);

}  // namespace symqm
