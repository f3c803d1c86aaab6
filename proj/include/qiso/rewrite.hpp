#pragma once

#include "qiso/words.hpp"

// Exact normal ordering for words in the generators s_j, s_j^*.  Both
// rewrite rules (s_i^* s_i -> I, s_i^* s_j -> q_ij s_j s_i^*) have a
// single-term right-hand side, so every word reduces to one monomial
// coeff * s_mu s_nu^*.  This engine is the ground-truth oracle for the
// scalar computations in words.hpp.

namespace qiso::rewrite {

struct Symbol {
  int letter = 1;
  bool starred = false;
  bool operator==(const Symbol&) const = default;
};

/// coeff * s_creators s_annihilators^*, normal-ordered.  coeff == 0
/// forces both words empty (canonical zero).
struct Monomial {
  cplx coeff = 1.0;
  Word creators;
  Word annihilators;
  bool operator==(const Monomial&) const = default;
};

enum class Strategy { LeftmostFirst, RightmostFirst };

/// Number of (starred, unstarred) inverted pairs; strictly decreases
/// under every rewrite step, which proves termination.
int inversion_count(const std::vector<Symbol>& word);

/// Measure values recorded before the first and after every step.
struct Trace {
  std::vector<int> measures;
};

Monomial normal_order(std::vector<Symbol> word, const QMatrix& Q,
                      Strategy strategy = Strategy::LeftmostFirst, Trace* trace = nullptr);

/// Normal-orders s_a^* s_b.  Returns the monomial whose coefficient,
/// creators and annihilators must agree with q_scalar(a,b),
/// word_minus(b,a) and word_minus(a,b).
Monomial star_product(const Word& a, const Word& b, const QMatrix& Q);

/// Formal adjoint: reverse the word and toggle the stars.
std::vector<Symbol> adjoint_word(std::vector<Symbol> word);

/// (coeff s_mu s_nu^*)^* = conj(coeff) s_nu s_mu^*.
Monomial adjoint(const Monomial& m);

}  // namespace qiso::rewrite
