#pragma once

#include "qiso/window.hpp"

// Shift-tail representations on finite windows.  A basis vector is
// labelled by a finite head glued onto a shifted reference tail,
//
//     label (h, m)  denotes the sequence  h . shift^m(ref),
//
// and every sequence sharing a tail with ref arises this way.  Labels
// are canonicalized so that equal sequences have equal labels:
//
//   * the offset m is reduced into [0, |u|+|v|) where ref = u v^inf,
//     since shift^m(ref) repeats beyond that range;
//   * a head letter equal to the letter that shift^{m} dropped is
//     absorbed into the tail.  The absorbing offsets k of m are m-1
//     (when m >= 1) and additionally |u|+|v|-1 when m == |u|, because
//     the reduced shift orbit is a rho-shape: 0,1,...,|u| followed by
//     the cycle |u|,...,|u|+|v|-1.  Absorption fires when the (k+1)-th
//     reference letter equals the last head letter, and repeats until
//     the head is a minimal-length representative.
//
// The Gram form on a window is <e_a, e_b> = q_limit(seq_a, seq_b).

namespace qiso::tailrep {

struct TailLabel {
  Word head;
  int offset = 0;
  bool operator==(const TailLabel&) const = default;
  bool operator<(const TailLabel& o) const {
    return std::tuple(offset, head.size(), head) < std::tuple(o.offset, o.head.size(), o.head);
  }
};

/// The p-th letter (1-indexed) of the denoted sequence; works for
/// non-canonical labels too.
int label_letter(const TailLabel& l, const Tail& ref, int p);

/// Canonical representative of head . shift^offset(ref).
TailLabel canonical_label(Word head, int offset, const Tail& ref);

bool is_canonical(const TailLabel& l, const Tail& ref);

/// The denoted sequence as a canonical eventually periodic word.
Tail to_tail(const TailLabel& l, const Tail& ref);

/// Position of the first occurrence of j in the denoted sequence, or
/// nullopt.  Scanning the head, the rest of the preperiod and one full
/// period decides absence everywhere.
std::optional<int> first_occurrence(const TailLabel& l, const Tail& ref, int j);

struct LabelRemoval {
  TailLabel target;
  cplx factor;
};

/// s_j^* action on a basis label: delete the first occurrence of j
/// (head letters shift into the head as needed) and collect the
/// crossing factor over the letters before it.  Absent j -> nullopt.
std::optional<LabelRemoval> annihilate(const TailLabel& l, const Tail& ref, int j,
                                       const QMatrix& Q);

/// <e_a, e_b> over one reference class, evaluated at the least aligned
/// cut and cross-checked one period later (the limit is stationary).
cplx label_inner(const TailLabel& a, const TailLabel& b, const Tail& ref, const QMatrix& Q);

struct TailWindow {
  Tail ref;
  int L = 0;  // head length cap
  int M = 0;  // offset cap
  std::vector<TailLabel> basis;  // ordered by (offset, head length, lex head)
  GramMatrix gram;

  int index_of(const TailLabel& l) const;
  int size() const { return int(basis.size()); }
};

TailWindow make_tail_window(const QMatrix& Q, const Tail& ref, int L, int M);

/// Matrix of s_j between two windows over the same reference; throws
/// when an image falls outside the target basis (window too small).
Eigen::MatrixXcd creation_matrix(const QMatrix& Q, int j, const TailWindow& from,
                                 const TailWindow& to);

struct MaskedMatrix {
  Eigen::MatrixXcd m;
  std::vector<char> ok;  // per column: exact, no truncation
};

/// Matrix of s_j^*; columns whose exact target leaves the window are
/// zeroed with ok = false.  A genuinely vanishing column keeps ok.
MaskedMatrix annihilation_matrix(const QMatrix& Q, int j, const TailWindow& from,
                                 const TailWindow& to);

/// Inner products between two windows, possibly over different
/// reference classes; inequivalent classes give exact zeros.
Eigen::MatrixXcd cross_gram(const TailWindow& A, const TailWindow& B, const QMatrix& Q);

/// Square-operator window over (ref, L, M) for the projection and
/// duality machinery.
RepWindow make_window(const QMatrix& Q, const Tail& ref, int L, int M);

std::string format_label(const TailLabel& l);

}  // namespace qiso::tailrep
