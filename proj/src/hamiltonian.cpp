#include "symqm/hamiltonian.hpp"

#include <Eigen/Dense>
#include <sstream>
#include <stdexcept>

namespace symqm {

TraceExpr apply_lowering(const Partition& p) {
  const int n = p.n();
  TraceExpr aa = TraceExpr::single(n, TraceWord::annihilators(2));
  return cayley_hamilton_reduce(
      normal_ordered_creation_part(aa * state_expr(p)));
}

TraceExpr apply_hamiltonian(const Partition& p) {
  const int n = p.n();
  TraceExpr st = state_expr(p);
  TraceExpr num = TraceExpr::single(n, TraceWord::mixed(1, 1));
  TraceExpr out = cayley_hamilton_reduce(
      normal_ordered_creation_part(num * st));
  out += frac(n * n - 1, 4) * st;
  TraceExpr raise = TraceExpr::single(n, TraceWord::creators(2), frac(-1, 2));
  out += raise * st;
  out += frac(-1, 2) * apply_lowering(p);
  return out;
}

HamiltonianMatrix hamiltonian_matrix(const CutBasis& b) {
  const std::size_t d = b.states.size();
  HamiltonianMatrix hm;
  hm.basis = b;
  hm.h.assign(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t j = 0; j < d; ++j) {
    TraceExpr image = apply_hamiltonian(b.states[j]);
    // The cut: drop image components above the cutoff.
    TraceExpr cut_image(b.n);
    for (const auto& [part, coeff] : expand_in_basis(image)) {
      if (part.quanta() <= b.ncut) cut_image += coeff * state_expr(part);
    }
    const int qj = b.states[j].quanta();
    for (std::size_t i = 0; i < d; ++i) {
      const int qi = b.states[i].quanta();
      if (qi != qj && qi != qj - 2 && qi != qj + 2) continue;
      hm.h[i][j] = vacuum_pairing(b.states[i], cut_image);
    }
  }
  // P H P is symmetric by construction; verify assembly.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (hm.h[i][j] != hm.h[j][i])
        throw std::logic_error("hamiltonian_matrix: asymmetric assembly");
    }
  }
  return hm;
}

SpectrumNumeric solve_spectrum_numeric(const HamiltonianMatrix& hm,
                                       const RationalMatrix& s) {
  const std::size_t d = hm.h.size();
  if (s.size() != d)
    throw std::invalid_argument("solve_spectrum_numeric: size mismatch");
  Eigen::MatrixXd he(d, d), se(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      he(i, j) = to_double(hm.h[i][j]);
      se(i, j) = to_double(s[i][j]);
    }
  }
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> schk(se);
    const double smin = schk.eigenvalues().minCoeff();
    if (smin <= 0.0) {
      std::ostringstream os;
      os << "solve_spectrum_numeric: overlap matrix not positive definite "
            "(smallest eigenvalue "
         << smin << ")";
      throw std::runtime_error(os.str());
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(he, se);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("solve_spectrum_numeric: eigensolver failed");
  SpectrumNumeric out;
  out.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + d);
  out.eigenvectors.assign(d, std::vector<double>(d));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      out.eigenvectors[k][i] = es.eigenvectors()(i, k);
    }
  }
  return out;
}

}  // namespace symqm
