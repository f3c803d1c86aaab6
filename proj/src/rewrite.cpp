#include "qiso/rewrite.hpp"

#include <algorithm>

namespace qiso::rewrite {

int inversion_count(const std::vector<Symbol>& word) {
  int stars = 0, inv = 0;
  for (const Symbol& s : word) {
    if (s.starred)
      ++stars;
    else
      inv += stars;
  }
  return inv;
}

namespace {

// Index of the redex (starred immediately before unstarred), or -1.
int find_redex(const std::vector<Symbol>& w, Strategy strategy) {
  if (strategy == Strategy::LeftmostFirst) {
    for (int i = 0; i + 1 < int(w.size()); ++i)
      if (w[i].starred && !w[i + 1].starred) return i;
  } else {
    for (int i = int(w.size()) - 2; i >= 0; --i)
      if (w[i].starred && !w[i + 1].starred) return i;
  }
  return -1;
}

}  // namespace

Monomial normal_order(std::vector<Symbol> word, const QMatrix& Q, Strategy strategy,
                      Trace* trace) {
  const int d = Q.dim();
  for (const Symbol& s : word)
    if (s.letter < 1 || s.letter > d)
      throw std::domain_error("normal_order: letter out of range 1.." + std::to_string(d));

  cplx coeff = 1.0;
  int measure = inversion_count(word);
  if (trace) trace->measures = {measure};

  for (;;) {
    int i = find_redex(word, strategy);
    if (i < 0) break;
    if (word[i].letter == word[i + 1].letter) {
      word.erase(word.begin() + i, word.begin() + i + 2);
    } else {
      coeff *= Q(word[i].letter, word[i + 1].letter);
      std::swap(word[i], word[i + 1]);
    }
    const int next = inversion_count(word);
    if (next >= measure) throw std::logic_error("normal_order: termination measure failed");
    measure = next;
    if (trace) trace->measures.push_back(measure);
    if (coeff == 0.0) return Monomial{0.0, {}, {}};
  }

  Monomial m;
  m.coeff = coeff;
  for (const Symbol& s : word) {
    if (!s.starred) m.creators.push_back(s.letter);
  }
  // s_{x_1}^* s_{x_2}^* ... s_{x_r}^* = s_{(x_r,...,x_1)}^*
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    if (it->starred) m.annihilators.push_back(it->letter);
  return m;
}

Monomial star_product(const Word& a, const Word& b, const QMatrix& Q) {
  std::vector<Symbol> w;
  w.reserve(a.size() + b.size());
  for (auto it = a.rbegin(); it != a.rend(); ++it) w.push_back({*it, true});
  for (int x : b) w.push_back({x, false});
  return normal_order(std::move(w), Q);
}

std::vector<Symbol> adjoint_word(std::vector<Symbol> word) {
  std::reverse(word.begin(), word.end());
  for (Symbol& s : word) s.starred = !s.starred;
  return word;
}

Monomial adjoint(const Monomial& m) {
  return Monomial{std::conj(m.coeff), m.annihilators, m.creators};
}

}  // namespace qiso::rewrite
