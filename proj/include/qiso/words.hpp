#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

// Multiindex combinatorics for an alphabet {1,...,d} and the scalar
// coefficients attached to words of isometries satisfying
//
//   s_i^* s_i = I,   s_i^* s_j = q_ij s_j s_i^*   (i != j),
//
// with q_ij = conj(q_ji), |q_ij| < 1.  Finite words label Fock basis
// vectors; eventually periodic infinite words (Tail) label the basis
// vectors of the shift-tail representations.

namespace qiso {

using cplx = std::complex<double>;

/// A finite word over {1,...,d}; the empty word stands for the identity.
using Word = std::vector<int>;

/// Deformation coefficients q_ij.  Off-diagonal entries are Hermitian
/// (q_ij = conj(q_ji)) with modulus < 1.  The diagonal is meaningless:
/// reading q_ii is a contract violation and throws.
class QMatrix {
 public:
  QMatrix(int d, Eigen::MatrixXcd entries);

  /// q_ij = q for all i < j (mirrored conjugate below the diagonal).
  static QMatrix uniform(int d, cplx q);
  static QMatrix zero(int d) { return uniform(d, 0.0); }

  /// Moduli uniform in [0, max_modulus], phases uniform in [0, 2pi),
  /// mirrored to enforce Hermitian symmetry.  Deterministic in the seed.
  static QMatrix random(int d, double max_modulus, std::uint64_t seed);

  int dim() const { return d_; }
  cplx operator()(int i, int j) const;

  const Eigen::MatrixXcd& entries() const { return q_; }

 private:
  int d_;
  Eigen::MatrixXcd q_;
};

/// Drops the first letter.  Throws on the empty word.
Word shift(const Word& w);

/// (j, w_1, ..., w_m).
Word prepend(int j, const Word& w);

/// True iff a and b have equal letter multisets.
bool is_permutation(const Word& a, const Word& b);

struct Removal {
  Word rest;    ///< w with the first occurrence of j deleted
  cplx factor;  ///< product of q_{j,w_k} over the prefix before that occurrence
};

/// First-occurrence removal of j from w.  Absent letter -> nullopt.
std::optional<Removal> remove_first(const Word& w, int j, const QMatrix& Q);

/// a with the letters of b removed one by one (first occurrences);
/// letters of b absent from the current residual are skipped.
Word word_minus(Word a, const Word& b);

/// The scalar q(a,b) in   s_a^* s_b = q(a,b) s_{b\a} s_{a\b}^* ,
/// computed by peeling the letters of a through b.  q(a,a) = 1 and
/// q({},b) = q(a,{}) = 1.
cplx q_scalar(const Word& a, const Word& b, const QMatrix& Q);

/// An eventually periodic infinite word u v v v ... in canonical form:
/// the period is primitive and the preperiod never ends with the last
/// period letter (such a letter is absorbed by rotating the period).
/// Canonical forms are equal componentwise iff they denote the same
/// infinite sequence, so operator== is semantic equality.
class Tail {
 public:
  Tail(Word preperiod, Word period);

  const Word& preperiod() const { return u_; }
  const Word& period() const { return v_; }

  /// The k-th letter, 1-indexed.
  int at(int k) const;

  /// The first m letters.
  Word head(int m) const;

  /// The sequence with its first letter dropped, recanonicalized.
  Tail shifted() const;

  /// j followed by the sequence, recanonicalized.
  Tail prepended(int j) const;

  /// Largest distinct shift offset: shifts beyond preperiod+period-1
  /// repeat earlier tails.
  int max_offset() const { return int(u_.size() + v_.size()) - 1; }

  bool operator==(const Tail&) const = default;

 private:
  Word u_, v_;
};

/// True iff the two sequences share a common tail up to (possibly
/// different) shifts; for canonical representations this holds exactly
/// when the primitive periods are rotations of each other.
bool tails_equivalent(const Tail& a, const Tail& b);

/// Least m >= 0 with shift^m(a) == shift^m(b) as infinite sequences,
/// if any.  Distinct rotations of one period never align at equal
/// shifts, so equivalent tails may still return nullopt.
std::optional<int> align_shift(const Tail& a, const Tail& b);

/// The inner product <e_a, e_b> of tail-labelled vectors: zero unless
/// the sequences agree from some position m on with permuted length-m
/// heads, in which case it is q_scalar(head_b, head_a) -- the limit of
/// the finite scalars, stationary in m.
cplx q_limit(const Tail& a, const Tail& b, const QMatrix& Q);

}  // namespace qiso
