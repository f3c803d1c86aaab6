#include "qiso/fock.hpp"

#include <algorithm>
#include <map>

#include "qiso/text.hpp"

namespace qiso::fock {

std::vector<Word> level_basis(int d, int n) {
  std::vector<Word> out;
  Word w(n, 1);
  for (;;) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[i] == d) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

int level_index(const Word& w, int d) {
  int idx = 0;
  for (int x : w) idx = idx * d + (x - 1);
  return idx;
}

std::vector<std::vector<int>> multiset_blocks(const std::vector<Word>& basis) {
  std::map<Word, std::vector<int>> by_multiset;
  for (int i = 0; i < int(basis.size()); ++i) {
    Word key = basis[i];
    std::sort(key.begin(), key.end());
    by_multiset[key].push_back(i);
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_multiset.size());
  for (auto& [key, idx] : by_multiset) blocks.push_back(std::move(idx));
  return blocks;
}

GramMatrix gram(const QMatrix& Q, int n) {
  if (n < 0) throw std::domain_error("fock::gram: negative level");
  const auto basis = level_basis(Q.dim(), n);
  GramMatrix G;
  G.m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (const auto& block : multiset_blocks(basis)) {
    for (int r = 0; r < int(block.size()); ++r) {
      G.m(block[r], block[r]) = 1.0;
      for (int c = r + 1; c < int(block.size()); ++c) {
        const cplx v = q_scalar(basis[block[c]], basis[block[r]], Q);
        G.m(block[r], block[c]) = v;
        G.m(block[c], block[r]) = std::conj(v);
      }
    }
  }
  return G;
}

Eigen::MatrixXcd creation_matrix(const QMatrix& Q, int j, int n) {
  const int d = Q.dim();
  if (j < 1 || j > d) throw std::domain_error("creation_matrix: letter out of range");
  const int dn = int(std::llround(std::pow(double(d), n)));
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(dn * d, dn);
  for (int c = 0; c < dn; ++c) S((j - 1) * dn + c, c) = 1.0;
  return S;
}

Eigen::MatrixXcd annihilation_matrix(const QMatrix& Q, int j, int n) {
  const int d = Q.dim();
  if (j < 1 || j > d) throw std::domain_error("annihilation_matrix: letter out of range");
  if (n < 1) throw std::domain_error("annihilation_matrix: needs level >= 1");
  const auto basis = level_basis(d, n);
  const int dn1 = int(basis.size()) / d;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dn1, basis.size());
  for (int c = 0; c < int(basis.size()); ++c) {
    if (auto r = remove_first(basis[c], j, Q)) A(level_index(r->rest, d), c) = r->factor;
  }
  return A;
}

Eigen::MatrixXcd tail_embedding(const Tail& tail, int k, int d) {
  if (k < 0) throw std::domain_error("tail_embedding: negative level");
  const int a = tail.at(k + 1);
  if (a > d) throw std::domain_error("tail_embedding: tail letter exceeds alphabet");
  const int dk = int(std::llround(std::pow(double(d), k)));
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(dk * d, dk);
  for (int c = 0; c < dk; ++c) J(c * d + (a - 1), c) = 1.0;
  return J;
}

std::vector<int> level_offsets(int d, int N) {
  std::vector<int> off(N + 2, 0);
  for (int n = 0; n <= N; ++n) off[n + 1] = off[n] + int(std::llround(std::pow(double(d), n)));
  return off;
}

RepWindow make_window(const QMatrix& Q, int N) {
  const int d = Q.dim();
  const auto off = level_offsets(d, N);
  const int total = off[N + 1];

  RepWindow W;
  W.name = "fock(d=" + std::to_string(d) + ",N=" + std::to_string(N) + ")";
  W.d = d;
  W.depth = N;
  W.labels.reserve(total);
  W.gram.m = Eigen::MatrixXcd::Zero(total, total);
  for (int n = 0; n <= N; ++n) {
    for (const Word& w : level_basis(d, n)) W.labels.push_back(text::format_word(w));
    W.gram.m.block(off[n], off[n], off[n + 1] - off[n], off[n + 1] - off[n]) = gram(Q, n).m;
  }

  for (int i = 0; i < off[std::min(2, N + 1)]; ++i) W.probes.push_back(i);

  W.gen.assign(d, Eigen::MatrixXcd::Zero(total, total));
  W.gen_ok.assign(d, std::vector<char>(total, 0));
  W.ann.assign(d, Eigen::MatrixXcd::Zero(total, total));
  W.ann_ok.assign(d, std::vector<char>(total, 1));
  for (int j = 1; j <= d; ++j) {
    for (int n = 0; n < N; ++n) {
      W.gen[j - 1].block(off[n + 1], off[n], off[n + 2] - off[n + 1], off[n + 1] - off[n]) =
          creation_matrix(Q, j, n);
      std::fill(W.gen_ok[j - 1].begin() + off[n], W.gen_ok[j - 1].begin() + off[n + 1], 1);
    }
    // s_j^* never leaves the window: level 0 goes to zero exactly.
    for (int n = 1; n <= N; ++n)
      W.ann[j - 1].block(off[n - 1], off[n], off[n] - off[n - 1], off[n + 1] - off[n]) =
          annihilation_matrix(Q, j, n);
  }
  return W;
}

}  // namespace qiso::fock
