#pragma once

#include "qiso/window.hpp"

// Metric projection machinery on representation windows: orthogonal
// range projections, the biorthogonal partners  t_j = (I-P_j) s_j M_j^{-1}
// with  M_j = s_j^adj (I-P_j) s_j  and  P_j  the projection onto the
// joint range of the other generators, the prefix operators
// s_{m_1..m_n} t_{m_1..m_n}^adj, and the kernel probe for a vector
// annihilated by every s_j^adj.

namespace qiso::dual {

/// Metric-orthogonal projection onto the span of the given coordinate
/// columns.  Rank is decided by a column-pivoted QR of the whitened
/// columns at the given relative threshold.
Eigen::MatrixXcd range_projection(const Eigen::MatrixXcd& columns, const GramMatrix& G,
                                  double rel_tol = 1e-10);

struct DualIsometry {
  int letter = 0;
  std::vector<int> domain;        ///< window columns the construction covers
  Eigen::MatrixXcd iso;           ///< t_j, zero outside the domain columns
  Eigen::MatrixXcd dual_star;     ///< metric adjoint of t_j as a window operator
  double m_min_eig = 0.0;         ///< spectral bounds of M_j on the domain
  double m_max_eig = 0.0;
  double condition = 0.0;
};

/// Builds t_j on the window.  Throws when M_j is numerically singular
/// (condition above cond_limit or a nonpositive eigenvalue), naming the
/// window.
DualIsometry dual_isometry(const QMatrix& Q, int j, const RepWindow& W,
                           double cond_limit = 1e12);

/// s_{m_1} ... s_{m_n} t_{m_n}^adj ... t_{m_1}^adj restricted to the
/// window; idempotent where the chain is exact.  Requires n <= depth.
Eigen::MatrixXcd prefix_projection(const Word& mu, const RepWindow& W,
                                   const std::vector<DualIsometry>& duals);

struct VacuumReport {
  int kernel_dim = 0;
  double min_singular = 0.0;
  Eigen::MatrixXcd kernel;    ///< window-coordinate kernel basis (columns)
  std::vector<int> interior;  ///< columns the probe ran on
};

/// Stacks the s_j^adj matrices over the annihilation interior and
/// reports the metric kernel dimension and smallest singular value.
VacuumReport vacuum_kernel(const RepWindow& W, double null_tol = 1e-9);

}  // namespace qiso::dual
