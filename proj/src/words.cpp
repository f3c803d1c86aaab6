#include "qiso/words.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qiso {

QMatrix::QMatrix(int d, Eigen::MatrixXcd entries) : d_(d), q_(std::move(entries)) {
  if (d_ < 2) throw std::domain_error("QMatrix: need at least two generators");
  if (q_.rows() != d_ || q_.cols() != d_)
    throw std::domain_error("QMatrix: entry matrix must be d x d");
  for (int i = 0; i < d_; ++i)
    for (int j = i + 1; j < d_; ++j) {
      if (q_(i, j) != std::conj(q_(j, i)))
        throw std::domain_error("QMatrix: q(" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") != conj(q(" +
                                std::to_string(j + 1) + "," + std::to_string(i + 1) + "))");
      if (!(std::abs(q_(i, j)) < 1.0))
        throw std::domain_error("QMatrix: |q(" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ")| must be < 1");
    }
}

QMatrix QMatrix::uniform(int d, cplx q) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      m(i, j) = q;
      m(j, i) = std::conj(q);
    }
  return QMatrix(d, std::move(m));
}

QMatrix QMatrix::random(int d, double max_modulus, std::uint64_t seed) {
  if (!(max_modulus >= 0.0 && max_modulus < 1.0))
    throw std::domain_error("QMatrix::random: max_modulus must lie in [0,1)");
  std::mt19937_64 rng(seed);
  // Portable uniform in [0,1): top 53 bits of the generator output.
  auto unit = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double mod = max_modulus * unit();
      double phase = 2.0 * std::numbers::pi * unit();
      m(i, j) = std::polar(mod, phase);
      m(j, i) = std::conj(m(i, j));
    }
  return QMatrix(d, std::move(m));
}

cplx QMatrix::operator()(int i, int j) const {
  if (i < 1 || i > d_ || j < 1 || j > d_)
    throw std::domain_error("QMatrix: letter out of range 1.." + std::to_string(d_));
  if (i == j) throw std::domain_error("QMatrix: diagonal q(i,i) is undefined");
  return q_(i - 1, j - 1);
}

Word shift(const Word& w) {
  if (w.empty()) throw std::domain_error("shift: empty word");
  return Word(w.begin() + 1, w.end());
}

Word prepend(int j, const Word& w) {
  Word out;
  out.reserve(w.size() + 1);
  out.push_back(j);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool is_permutation(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  Word sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

std::optional<Removal> remove_first(const Word& w, int j, const QMatrix& Q) {
  auto hit = std::find(w.begin(), w.end(), j);
  if (hit == w.end()) return std::nullopt;
  Removal r;
  r.factor = 1.0;
  for (auto it = w.begin(); it != hit; ++it) r.factor *= Q(j, *it);
  r.rest.assign(w.begin(), hit);
  r.rest.insert(r.rest.end(), hit + 1, w.end());
  return r;
}

Word word_minus(Word a, const Word& b) {
  for (int y : b) {
    auto hit = std::find(a.begin(), a.end(), y);
    if (hit != a.end()) a.erase(hit);
  }
  return a;
}

cplx q_scalar(const Word& a, const Word& b, const QMatrix& Q) {
  Word rest = b;
  cplx acc = 1.0;
  for (int x : a) {
    auto hit = std::find(rest.begin(), rest.end(), x);
    // x crosses every residual letter before its first occurrence; if x
    // never occurs it crosses all of them and stays as an annihilator.
    for (auto it = rest.begin(); it != hit; ++it) acc *= Q(x, *it);
    if (hit != rest.end()) rest.erase(hit);
  }
  return acc;
}

namespace {

void check_letters(const Word& w) {
  for (int x : w)
    if (x < 1) throw std::domain_error("Tail: letters start at 1");
}

Word primitive_root(Word v) {
  const int n = int(v.size());
  for (int p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool rep = true;
    for (int i = p; i < n && rep; ++i) rep = (v[i] == v[i % p]);
    if (rep) {
      v.resize(p);
      return v;
    }
  }
  return v;
}

}  // namespace

Tail::Tail(Word preperiod, Word period) : u_(std::move(preperiod)), v_(std::move(period)) {
  if (v_.empty()) throw std::domain_error("Tail: period must be nonempty");
  check_letters(u_);
  check_letters(v_);
  v_ = primitive_root(std::move(v_));
  // Absorb trailing preperiod letters equal to the last period letter:
  // u x (v_1..v_k)^inf = u (x v_1..v_{k-1})^inf when x = v_k.
  while (!u_.empty() && u_.back() == v_.back()) {
    u_.pop_back();
    std::rotate(v_.rbegin(), v_.rbegin() + 1, v_.rend());
  }
}

int Tail::at(int k) const {
  if (k < 1) throw std::domain_error("Tail::at: positions are 1-indexed");
  const int pu = int(u_.size());
  if (k <= pu) return u_[k - 1];
  return v_[(k - pu - 1) % v_.size()];
}

Word Tail::head(int m) const {
  Word h;
  h.reserve(m);
  for (int k = 1; k <= m; ++k) h.push_back(at(k));
  return h;
}

Tail Tail::shifted() const {
  if (!u_.empty()) return Tail(Word(u_.begin() + 1, u_.end()), v_);
  Word v = v_;
  std::rotate(v.begin(), v.begin() + 1, v.end());
  return Tail({}, std::move(v));
}

Tail Tail::prepended(int j) const { return Tail(prepend(j, u_), v_); }

bool tails_equivalent(const Tail& a, const Tail& b) {
  const Word& va = a.period();
  const Word& vb = b.period();
  if (va.size() != vb.size()) return false;
  Word doubled = va;
  doubled.insert(doubled.end(), va.begin(), va.end());
  return std::search(doubled.begin(), doubled.end(), vb.begin(), vb.end()) != doubled.end();
}

std::optional<int> align_shift(const Tail& a, const Tail& b) {
  if (!tails_equivalent(a, b)) return std::nullopt;
  // Valid shifts are upward closed, and past both preperiods the two
  // phases advance in lockstep, so it suffices to scan m = 0..m0.
  const int m0 = int(std::max(a.preperiod().size(), b.preperiod().size()));
  Tail x = a, y = b;
  for (int m = 0; m <= m0; ++m) {
    if (x == y) return m;
    x = x.shifted();
    y = y.shifted();
  }
  return std::nullopt;
}

cplx q_limit(const Tail& a, const Tail& b, const QMatrix& Q) {
  auto m = align_shift(a, b);
  if (!m) return 0.0;
  Word ha = a.head(*m), hb = b.head(*m);
  if (!is_permutation(ha, hb)) return 0.0;
  return q_scalar(hb, ha, Q);
}

}  // namespace qiso
