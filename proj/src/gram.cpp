#include "qiso/gram.hpp"

#include <Eigen/Eigenvalues>

namespace qiso {

GramMatrix GramMatrix::submatrix(const std::vector<int>& idx) const {
  GramMatrix out;
  out.m.resize(idx.size(), idx.size());
  for (int r = 0; r < int(idx.size()); ++r)
    for (int c = 0; c < int(idx.size()); ++c) out.m(r, c) = m(idx[r], idx[c]);
  return out;
}

std::vector<std::vector<int>> zero_pattern_blocks(const Eigen::MatrixXcd& m) {
  const int n = int(m.rows());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> blocks;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = int(blocks.size());
    blocks.emplace_back();
    std::vector<int> stack = {start};
    comp[start] = id;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      blocks[id].push_back(i);
      for (int j = 0; j < n; ++j) {
        if (comp[j] < 0 && (m(i, j) != 0.0 || m(j, i) != 0.0)) {
          comp[j] = id;
          stack.push_back(j);
        }
      }
    }
    std::sort(blocks[id].begin(), blocks[id].end());
  }
  return blocks;
}

Positivity positivity(const GramMatrix& G, double tol) {
  if (!G.is_hermitian()) throw std::domain_error("positivity: input is not Hermitian");
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& block : zero_pattern_blocks(G.m)) {
    Eigen::MatrixXcd sub(block.size(), block.size());
    for (int r = 0; r < int(block.size()); ++r)
      for (int c = 0; c < int(block.size()); ++c) sub(r, c) = G.m(block[r], block[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("positivity: eigensolver failed on a block");
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  return Positivity{min_eig, min_eig > tol};
}

Eigen::MatrixXcd gram_adjoint(const Eigen::MatrixXcd& A, const GramMatrix& GX,
                              const GramMatrix& GY) {
  if (GY.size() != A.rows() || GX.size() != A.cols())
    throw std::domain_error("gram_adjoint: shape mismatch");
  Eigen::LLT<Eigen::MatrixXcd> llt(GX.m.conjugate());
  if (llt.info() != Eigen::Success)
    throw std::domain_error("gram_adjoint: Gram matrix is not positive definite");
  return llt.solve(A.adjoint() * GY.m.conjugate());
}

}  // namespace qiso
