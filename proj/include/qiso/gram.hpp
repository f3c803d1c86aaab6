#pragma once

#include "qiso/words.hpp"

// Gram matrices of non-orthonormal spanning families and the metric
// operations built on them.  Entry convention, fixed once for the whole
// project and pinned by tests:
//
//   entries(a, b) = <e_a, e_b>,  linear in the first argument,
//
// which for permutation word pairs equals q_scalar(b, a).  With this
// orientation the metric adjoint of A : X -> Y is
//
//   adj(A) = conj(G_X)^{-1} A^H conj(G_Y),
//
// the unique B with <A x, y>_Y = <x, B y>_X.

namespace qiso {

struct GramMatrix {
  Eigen::MatrixXcd m;

  int size() const { return int(m.rows()); }

  bool is_hermitian() const {
    return m.rows() == m.cols() && (m.size() == 0 || (m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }

  /// The matrix N with <x,y> = conj(x^H N y); N is Hermitian positive
  /// definite exactly when the form is, and x^H N x gives ||x||^2.
  Eigen::MatrixXcd phys() const { return m.conjugate(); }

  /// <x, y> for coordinate vectors, linear in x.
  cplx inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
    return (y.adjoint() * (m.transpose() * x))(0, 0);
  }

  double norm(const Eigen::VectorXcd& x) const {
    return std::sqrt(std::max(0.0, std::real(inner(x, x))));
  }

  GramMatrix submatrix(const std::vector<int>& idx) const;
};

/// Connected components of the exact nonzero pattern; the per-block
/// structure positivity checks exploit.
std::vector<std::vector<int>> zero_pattern_blocks(const Eigen::MatrixXcd& m);

struct Positivity {
  double min_eigenvalue = 0.0;
  bool ok = false;
};

/// Smallest eigenvalue over the Hermitian blocks of G.  Throws on a
/// non-Hermitian input.
Positivity positivity(const GramMatrix& G, double tol = 1e-12);

/// Metric adjoint of A : X -> Y (see header comment).  Throws when a
/// Gram factorization fails.
Eigen::MatrixXcd gram_adjoint(const Eigen::MatrixXcd& A, const GramMatrix& GX,
                              const GramMatrix& GY);

}  // namespace qiso
