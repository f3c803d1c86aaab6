#pragma once

#include "qiso/window.hpp"

// Finite Fock levels: the span of e_w over words w of a fixed length n,
// with <e_a, e_b> = q_scalar(b, a) for permuted pairs and 0 otherwise.
// Levels are mutually orthogonal; generators map level n to n+1 and
// their adjoints map n to n-1.

namespace qiso::fock {

/// All words of length n over 1..d in lexicographic order.
std::vector<Word> level_basis(int d, int n);

/// Lexicographic rank of w within its level.
int level_index(const Word& w, int d);

/// Partition of a level basis by letter multiset; Gram matrices are
/// block diagonal across these classes.
std::vector<std::vector<int>> multiset_blocks(const std::vector<Word>& basis);

/// Level-n Gram matrix, computed blockwise; exact zeros off the blocks.
GramMatrix gram(const QMatrix& Q, int n);

/// Matrix of s_j from level n to level n+1 (e_w -> e_{(j,w)}).
Eigen::MatrixXcd creation_matrix(const QMatrix& Q, int j, int n);

/// Matrix of s_j^* from level n to level n-1; requires n >= 1.
Eigen::MatrixXcd annihilation_matrix(const QMatrix& Q, int j, int n);

/// Isometric embedding of level k into level k+1 appending the
/// (k+1)-th letter of the given tail.
Eigen::MatrixXcd tail_embedding(const Tail& tail, int k, int d);

/// Stacked window over levels 0..N.
RepWindow make_window(const QMatrix& Q, int N);

/// Start offset of level n inside the stacked window, plus total size.
std::vector<int> level_offsets(int d, int N);

}  // namespace qiso::fock
