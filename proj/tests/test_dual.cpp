#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qiso/dual.hpp"
#include "qiso/fock.hpp"
#include "qiso/tailrep.hpp"

using namespace qiso;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

constexpr double kInv = 1e-8;

double biorth_residual(const QMatrix& Q, const RepWindow& W,
                       std::vector<dual::DualIsometry>* duals_out = nullptr) {
  std::vector<dual::DualIsometry> duals;
  for (int j = 1; j <= Q.dim(); ++j) duals.push_back(dual::dual_isometry(Q, j, W));
  const auto interior = W.gen_interior();
  double worst = 0.0;
  for (int j = 1; j <= Q.dim(); ++j)
    for (int k = 1; k <= Q.dim(); ++k) {
      MatrixXcd prod = duals[j - 1].dual_star * W.gen[k - 1];
      if (j == k) prod -= MatrixXcd::Identity(W.size(), W.size());
      for (int c : interior) worst = std::max(worst, prod.col(c).norm());
    }
  if (duals_out) *duals_out = std::move(duals);
  return worst;
}

// Largest cosine of a principal angle between two metric subspaces.
double max_range_cosine(const MatrixXcd& A, const MatrixXcd& B, const GramMatrix& G) {
  Eigen::LLT<MatrixXcd> llt(G.phys());
  MatrixXcd R = llt.matrixL().adjoint();
  auto orth = [&](const MatrixXcd& V) {
    Eigen::ColPivHouseholderQR<MatrixXcd> qr(R * V);
    qr.setThreshold(1e-10);
    return MatrixXcd(qr.householderQ() * MatrixXcd::Identity(V.rows(), qr.rank()));
  };
  MatrixXcd QA = orth(A), QB = orth(B);
  Eigen::JacobiSVD<MatrixXcd> svd(QA.adjoint() * QB);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace

TEST_CASE("range projection basics") {
  QMatrix Q = QMatrix::random(2, 0.6, 301);
  RepWindow W = fock::make_window(Q, 3);
  const int n = W.size();

  CHECK(dual::range_projection(MatrixXcd::Zero(n, 0), W.gram).norm() == 0.0);
  MatrixXcd full = MatrixXcd::Identity(n, n);
  CHECK((dual::range_projection(full, W.gram) - full).norm() < 1e-9);

  VectorXcd v = VectorXcd::Random(n);
  MatrixXcd P = dual::range_projection(v, W.gram);
  CHECK((P * v - v).norm() < 1e-9 * v.norm());
  CHECK((P * P - P).norm() < 1e-9);
  CHECK((gram_adjoint(P, W.gram, W.gram) - P).norm() < 1e-9);

  // Rank detection: duplicated and scaled columns collapse to rank one.
  MatrixXcd cols(n, 3);
  cols.col(0) = v;
  cols.col(1) = 2.0 * v;
  cols.col(2) = cplx(0.0, 1.5) * v;
  CHECK((dual::range_projection(cols, W.gram) - P).norm() < 1e-9);
}

TEST_CASE("orthogonal case reproduces the generators exactly") {
  QMatrix Q = QMatrix::zero(2);
  for (const RepWindow& W :
       {fock::make_window(Q, 4), tailrep::make_window(Q, Tail({}, {2}), 4, 4)}) {
    for (int j = 1; j <= 2; ++j) {
      auto dj = dual::dual_isometry(Q, j, W);
      double dev = 0.0;
      for (int c : dj.domain) dev = std::max(dev, (dj.iso.col(c) - W.gen[j - 1].col(c)).norm());
      CHECK(dev == 0.0);
      CHECK(dj.m_min_eig == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("biorthogonality on level and tail windows") {
  for (auto seed : {311u, 313u}) {
    QMatrix Q = QMatrix::random(2, 0.7, seed);
    std::vector<dual::DualIsometry> duals;
    CHECK(biorth_residual(Q, fock::make_window(Q, 4)) < kInv);
    double r = biorth_residual(Q, tailrep::make_window(Q, Tail({}, {2}), 4, 4), &duals);
    CHECK(r < kInv);
    for (const auto& dj : duals) {
      CHECK(dj.m_min_eig > 0.0);
      CHECK(dj.condition < 1e6);
    }
  }
}

TEST_CASE("complement projection fixes the other ranges") {
  QMatrix Q = QMatrix::random(2, 0.7, 317);
  RepWindow W = fock::make_window(Q, 4);
  // p_check(1) acts as the identity on the exact columns of s_2.
  std::vector<int> cols2;
  for (int c = 0; c < W.size(); ++c)
    if (W.gen_ok[1][c]) cols2.push_back(c);
  MatrixXcd V2(W.size(), cols2.size());
  for (int i = 0; i < int(cols2.size()); ++i) V2.col(i) = W.gen[1].col(cols2[i]);
  MatrixXcd pcheck = dual::range_projection(V2, W.gram);
  CHECK((pcheck * V2 - V2).norm() < 1e-9);
  // Projection rank equals the rank of the stacked range columns.
  CHECK(std::abs(pcheck.trace().real() - double(cols2.size())) < 1e-9);

  // The range of s_1 meets that span only at zero: all principal-angle
  // cosines stay clearly below one.
  std::vector<int> cols1;
  for (int c = 0; c < W.size(); ++c)
    if (W.gen_ok[0][c]) cols1.push_back(c);
  MatrixXcd V1(W.size(), cols1.size());
  for (int i = 0; i < int(cols1.size()); ++i) V1.col(i) = W.gen[0].col(cols1[i]);
  CHECK(max_range_cosine(V1, V2, W.gram) < 1.0 - 1e-6);
}

TEST_CASE("prefix projections: fixed points, decay, idempotence") {
  QMatrix Q = QMatrix::uniform(2, 0.5);
  Tail ref({}, {2});
  RepWindow W = tailrep::make_window(Q, ref, 4, 4);
  std::vector<dual::DualIsometry> duals;
  for (int j = 1; j <= 2; ++j) duals.push_back(dual::dual_isometry(Q, j, W));

  VectorXcd e_ref = VectorXcd::Zero(W.size());
  e_ref(0) = 1.0;
  for (int n = 1; n <= W.depth; ++n) {
    MatrixXcd P = dual::prefix_projection(ref.head(n), W, duals);
    CHECK((P * e_ref - e_ref).norm() < kInv);
    CHECK((P * P - P).cwiseAbs().maxCoeff() < kInv);
  }

  // A prefix from an inequivalent class drives the tracked vectors to
  // zero once their prefixes diverge from it.
  Tail other({}, {1});
  REQUIRE_FALSE(W.probes.empty());
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= W.depth; ++n) {
    MatrixXcd P = dual::prefix_projection(other.head(n), W, duals);
    double worst = 0.0;
    for (int b : W.probes) worst = std::max(worst, W.gram.norm(P.col(b)));
    CHECK(worst <= prev + 1e-12);
    prev = worst;
  }
  CHECK(prev < 1e-6);

  // Per-vector sequences are monotone past the divergence point and
  // eventually exactly small; a full-depth head keeps norm one exactly
  // as long as its prefix matches, which is why only short labels are
  // tracked above.
  for (int b : W.probes) {
    double p = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= W.depth; ++n) {
      double v = W.gram.norm(dual::prefix_projection(other.head(n), W, duals).col(b));
      CHECK(v <= p + 1e-12);
      p = v;
    }
    CHECK(p < 1e-6);
  }

  CHECK_THROWS_AS(dual::prefix_projection(other.head(W.depth + 1), W, duals),
                  std::domain_error);
}

TEST_CASE("prefix projections are metric self-adjoint in the orthogonal case") {
  QMatrix Q = QMatrix::zero(2);
  RepWindow W = fock::make_window(Q, 4);
  std::vector<dual::DualIsometry> duals;
  for (int j = 1; j <= 2; ++j) duals.push_back(dual::dual_isometry(Q, j, W));
  MatrixXcd P = dual::prefix_projection({2, 1}, W, duals);
  CHECK((gram_adjoint(P, W.gram, W.gram) - P).norm() < 1e-10);
}

TEST_CASE("vacuum probe: level window keeps exactly the bottom vector") {
  QMatrix Q = QMatrix::random(2, 0.7, 331);
  RepWindow W = fock::make_window(Q, 4);
  auto probe = dual::vacuum_kernel(W);
  CHECK(probe.kernel_dim == 1);
  VectorXcd k = probe.kernel.col(0);
  VectorXcd e0 = VectorXcd::Zero(W.size());
  e0(0) = 1.0;
  CHECK(std::abs(W.gram.inner(k, e0)) / W.gram.norm(k) > 1.0 - 1e-8);
}

TEST_CASE("vacuum probe: tail windows have none") {
  QMatrix Qz = QMatrix::zero(2);
  auto probe0 = dual::vacuum_kernel(tailrep::make_window(Qz, Tail({}, {2}), 4, 4));
  CHECK(probe0.kernel_dim == 0);
  CHECK(probe0.min_singular == doctest::Approx(1.0).epsilon(1e-12));

  QMatrix Q = QMatrix::uniform(2, 0.5);
  auto probe = dual::vacuum_kernel(tailrep::make_window(Q, Tail({}, {2}), 4, 4));
  CHECK(probe.kernel_dim == 0);
  CHECK(probe.min_singular > 1e-3);
}

TEST_CASE("singular compression is rejected, not regularized") {
  QMatrix Q = QMatrix::uniform(2, 0.5);
  RepWindow W = fock::make_window(Q, 3);
  CHECK_THROWS_AS(dual::dual_isometry(Q, 1, W, /*cond_limit=*/1.0 + 1e-9),
                  std::runtime_error);

  // No usable generator columns at all: the construction refuses.
  RepWindow tiny = tailrep::make_window(Q, Tail({}, {2}), 0, 0);
  CHECK_THROWS_AS(dual::dual_isometry(Q, 1, tiny), std::runtime_error);
}
