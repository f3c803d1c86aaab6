#include "qiso/dual.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qiso::dual {

namespace {

Eigen::MatrixXcd select_cols(const Eigen::MatrixXcd& A, const std::vector<int>& idx) {
  Eigen::MatrixXcd out(A.rows(), idx.size());
  for (int c = 0; c < int(idx.size()); ++c) out.col(c) = A.col(idx[c]);
  return out;
}

Eigen::MatrixXcd select_sub(const Eigen::MatrixXcd& A, const std::vector<int>& idx) {
  Eigen::MatrixXcd out(idx.size(), idx.size());
  for (int r = 0; r < int(idx.size()); ++r)
    for (int c = 0; c < int(idx.size()); ++c) out(r, c) = A(idx[r], idx[c]);
  return out;
}

// Upper-triangular whitener R with N = R^H R.
Eigen::MatrixXcd whitener(const Eigen::MatrixXcd& N, const char* who) {
  Eigen::LLT<Eigen::MatrixXcd> llt(N);
  if (llt.info() != Eigen::Success)
    throw std::domain_error(std::string(who) + ": metric is not positive definite");
  return llt.matrixL().adjoint();
}

}  // namespace

Eigen::MatrixXcd range_projection(const Eigen::MatrixXcd& columns, const GramMatrix& G,
                                  double rel_tol) {
  const int n = G.size();
  if (columns.rows() != n) throw std::domain_error("range_projection: shape mismatch");
  if (columns.cols() == 0) return Eigen::MatrixXcd::Zero(n, n);

  const Eigen::MatrixXcd R = whitener(G.phys(), "range_projection");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(R * columns);
  qr.setThreshold(rel_tol);
  const int rank = int(qr.rank());
  if (rank == 0) return Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd Qthin =
      qr.householderQ() * Eigen::MatrixXcd::Identity(n, rank);
  Eigen::MatrixXcd Pw = Qthin * Qthin.adjoint();
  return R.triangularView<Eigen::Upper>().solve(Pw * R);
}

DualIsometry dual_isometry(const QMatrix& Q, int j, const RepWindow& W, double cond_limit) {
  const int d = W.d;
  const int n = W.size();
  if (j < 1 || j > d) throw std::domain_error("dual_isometry: letter out of range");

  DualIsometry out;
  out.letter = j;
  for (int c = 0; c < n; ++c)
    if (W.gen_ok[j - 1][c]) out.domain.push_back(c);
  if (out.domain.empty())
    throw std::runtime_error("dual_isometry: no exact generator columns in " + W.name);

  // Joint range of the other generators, from their exact columns.
  int other_count = 0;
  for (int k = 1; k <= d; ++k)
    if (k != j)
      for (int c = 0; c < n; ++c) other_count += W.gen_ok[k - 1][c] ? 1 : 0;
  Eigen::MatrixXcd others(n, other_count);
  for (int k = 1, c0 = 0; k <= d; ++k) {
    if (k == j) continue;
    for (int c = 0; c < n; ++c)
      if (W.gen_ok[k - 1][c]) others.col(c0++) = W.gen[k - 1].col(c);
  }
  const Eigen::MatrixXcd complement =
      Eigen::MatrixXcd::Identity(n, n) - range_projection(others, W.gram);

  const Eigen::MatrixXcd S = select_cols(W.gen[j - 1], out.domain);
  const Eigen::MatrixXcd C = complement * S;

  const Eigen::MatrixXcd N = W.gram.phys();
  Eigen::MatrixXcd K = C.adjoint() * N * C;
  K = 0.5 * (K + K.adjoint());
  const Eigen::MatrixXcd NI = select_sub(N, out.domain);

  // Spectrum of M_j = NI^{-1} K, the compression of s_j^adj (I-P_j) s_j.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(K, NI);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("dual_isometry: eigensolver failed on " + W.name);
  out.m_min_eig = ges.eigenvalues().minCoeff();
  out.m_max_eig = ges.eigenvalues().maxCoeff();
  out.condition = out.m_min_eig > 0 ? out.m_max_eig / out.m_min_eig
                                    : std::numeric_limits<double>::infinity();
  if (out.m_min_eig <= 0.0 || out.condition > cond_limit)
    throw std::runtime_error("dual_isometry: M_" + std::to_string(j) +
                             " numerically singular on " + W.name +
                             " (min eig " + std::to_string(out.m_min_eig) + ", condition " +
                             std::to_string(out.condition) + ")");

  Eigen::LDLT<Eigen::MatrixXcd> kfac(K);
  const Eigen::MatrixXcd T = C * kfac.solve(NI);            // t_j = C M_j^{-1}
  const Eigen::MatrixXcd Dr = kfac.solve(C.adjoint() * N);  // adj(t_j) = K^{-1} C^H N

  out.iso = Eigen::MatrixXcd::Zero(n, n);
  out.dual_star = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < int(out.domain.size()); ++c) {
    out.iso.col(out.domain[c]) = T.col(c);
    out.dual_star.row(out.domain[c]) = Dr.row(c);
  }
  return out;
}

Eigen::MatrixXcd prefix_projection(const Word& mu, const RepWindow& W,
                                   const std::vector<DualIsometry>& duals) {
  const int n = W.size();
  if (int(mu.size()) > W.depth)
    throw std::domain_error("prefix_projection: window too shallow for a prefix of length " +
                            std::to_string(mu.size()));
  for (int x : mu)
    if (x < 1 || x > W.d) throw std::domain_error("prefix_projection: letter out of range");

  Eigen::MatrixXcd up = Eigen::MatrixXcd::Identity(n, n);
  for (int x : mu) up = up * W.gen[x - 1];
  Eigen::MatrixXcd down = Eigen::MatrixXcd::Identity(n, n);
  for (auto it = mu.rbegin(); it != mu.rend(); ++it) down = down * duals[*it - 1].dual_star;
  return up * down;
}

VacuumReport vacuum_kernel(const RepWindow& W, double null_tol) {
  const int n = W.size();
  VacuumReport out;
  out.interior = W.ann_interior();
  const int ni = int(out.interior.size());
  if (ni == 0) throw std::domain_error("vacuum_kernel: empty annihilation interior");

  const Eigen::MatrixXcd N = W.gram.phys();
  const Eigen::MatrixXcd Rcod = whitener(N, "vacuum_kernel");
  const Eigen::MatrixXcd Rdom = whitener(select_sub(N, out.interior), "vacuum_kernel");

  Eigen::MatrixXcd stacked(W.d * n, ni);
  for (int j = 0; j < W.d; ++j)
    stacked.middleRows(j * n, n) = Rcod * select_cols(W.ann[j], out.interior);
  // Whiten the domain: right-divide by Rdom.
  Rdom.triangularView<Eigen::Upper>().template solveInPlace<Eigen::OnTheRight>(stacked);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  out.min_singular = sv.size() ? sv(sv.size() - 1) : 0.0;
  int null_count = 0;
  for (int i = 0; i < sv.size(); ++i) null_count += sv(i) < null_tol ? 1 : 0;
  out.kernel_dim = null_count;

  out.kernel = Eigen::MatrixXcd::Zero(n, null_count);
  for (int c = 0; c < null_count; ++c) {
    Eigen::VectorXcd xw = svd.matrixV().col(sv.size() - null_count + c);
    Eigen::VectorXcd x = Rdom.triangularView<Eigen::Upper>().solve(xw);
    for (int r = 0; r < ni; ++r) out.kernel(out.interior[r], c) = x(r);
  }
  return out;
}

}  // namespace qiso::dual
