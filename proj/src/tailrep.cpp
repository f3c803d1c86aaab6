#include "qiso/tailrep.hpp"

#include <algorithm>
#include <map>

#include "qiso/text.hpp"

namespace qiso::tailrep {

namespace {

int reduced_offset(int m, const Tail& ref) {
  const int pu = int(ref.preperiod().size());
  const int pv = int(ref.period().size());
  if (m <= pu) return m;
  return pu + (m - pu) % pv;
}

// Offsets k with shift^{k+1}(ref) == shift^m(ref) in the reduced orbit.
void absorbing_offsets(int m, const Tail& ref, int out[2], int& count) {
  const int pu = int(ref.preperiod().size());
  const int pv = int(ref.period().size());
  count = 0;
  if (m >= 1) out[count++] = m - 1;
  if (m == pu) out[count++] = pu + pv - 1;
}

}  // namespace

int label_letter(const TailLabel& l, const Tail& ref, int p) {
  if (p < 1) throw std::domain_error("label_letter: positions are 1-indexed");
  if (p <= int(l.head.size())) return l.head[p - 1];
  return ref.at(l.offset + (p - int(l.head.size())));
}

TailLabel canonical_label(Word head, int offset, const Tail& ref) {
  if (offset < 0) throw std::domain_error("canonical_label: negative offset");
  int m = reduced_offset(offset, ref);
  while (!head.empty()) {
    int ks[2];
    int n = 0;
    absorbing_offsets(m, ref, ks, n);
    bool absorbed = false;
    for (int i = 0; i < n; ++i) {
      if (ref.at(ks[i] + 1) == head.back()) {
        head.pop_back();
        m = ks[i];
        absorbed = true;
        break;
      }
    }
    if (!absorbed) break;
  }
  return TailLabel{std::move(head), m};
}

bool is_canonical(const TailLabel& l, const Tail& ref) {
  if (l.offset < 0 || l.offset != reduced_offset(l.offset, ref)) return false;
  if (l.head.empty()) return true;
  int ks[2];
  int n = 0;
  absorbing_offsets(l.offset, ref, ks, n);
  for (int i = 0; i < n; ++i)
    if (ref.at(ks[i] + 1) == l.head.back()) return false;
  return true;
}

Tail to_tail(const TailLabel& l, const Tail& ref) {
  Tail t = ref;
  for (int i = 0; i < l.offset; ++i) t = t.shifted();
  for (auto it = l.head.rbegin(); it != l.head.rend(); ++it) t = t.prepended(*it);
  return t;
}

std::optional<int> first_occurrence(const TailLabel& l, const Tail& ref, int j) {
  for (int p = 0; p < int(l.head.size()); ++p)
    if (l.head[p] == j) return p + 1;
  const int pu = int(ref.preperiod().size());
  const int pv = int(ref.period().size());
  const int remaining = std::max(0, pu - l.offset) + pv;
  for (int t = 1; t <= remaining; ++t)
    if (ref.at(l.offset + t) == j) return int(l.head.size()) + t;
  return std::nullopt;
}

std::optional<LabelRemoval> annihilate(const TailLabel& l, const Tail& ref, int j,
                                       const QMatrix& Q) {
  auto pos = first_occurrence(l, ref, j);
  if (!pos) return std::nullopt;
  LabelRemoval out;
  out.factor = 1.0;
  for (int k = 1; k < *pos; ++k) out.factor *= Q(j, label_letter(l, ref, k));
  if (*pos <= int(l.head.size())) {
    Word head = l.head;
    head.erase(head.begin() + (*pos - 1));
    out.target = canonical_label(std::move(head), l.offset, ref);
  } else {
    // Deleting inside the tail pulls the skipped tail letters into the head.
    const int t = *pos - int(l.head.size());
    Word head = l.head;
    for (int k = 1; k < t; ++k) head.push_back(ref.at(l.offset + k));
    out.target = canonical_label(std::move(head), l.offset + t, ref);
  }
  return out;
}

cplx label_inner(const TailLabel& a, const TailLabel& b, const Tail& ref, const QMatrix& Q) {
  const Tail sa = to_tail(a, ref), sb = to_tail(b, ref);
  auto m = align_shift(sa, sb);
  if (!m) return 0.0;
  const Word ha = sa.head(*m), hb = sb.head(*m);
  if (!is_permutation(ha, hb)) return 0.0;
  const cplx value = q_scalar(hb, ha, Q);
  // Stationarity cross-check one period later.
  const int m2 = *m + int(sa.period().size());
  const Word ha2 = sa.head(m2), hb2 = sb.head(m2);
  if (!is_permutation(ha2, hb2))
    throw std::logic_error("label_inner: permutation class not stable in the cut");
  if (std::abs(q_scalar(hb2, ha2, Q) - value) > 1e-12)
    throw std::logic_error("label_inner: aligned-cut value not stationary");
  return value;
}

int TailWindow::index_of(const TailLabel& l) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), l);
  if (it == basis.end() || !(*it == l)) return -1;
  return int(it - basis.begin());
}

TailWindow make_tail_window(const QMatrix& Q, const Tail& ref, int L, int M) {
  const int d = Q.dim();
  for (int k = 1; k <= ref.max_offset() + 1; ++k)
    if (ref.at(k) > d) throw std::domain_error("make_tail_window: tail letter exceeds alphabet");
  if (L < 0 || M < 0) throw std::domain_error("make_tail_window: negative window bounds");

  TailWindow W{ref, L, M, {}, {}};
  const int max_off = std::min(M, ref.max_offset());
  for (int m = 0; m <= max_off; ++m) {
    for (int len = 0; len <= L; ++len) {
      Word w(len, 1);
      for (;;) {
        TailLabel l{w, m};
        if (is_canonical(l, ref)) W.basis.push_back(l);
        int i = len - 1;
        while (i >= 0 && w[i] == d) w[i--] = 1;
        if (i < 0) break;
        ++w[i];
      }
    }
  }
  // Enumeration order is already (offset, head length, lex head).

  const int n = W.size();
  W.gram.m = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    W.gram.m(r, r) = 1.0;
    for (int c = r + 1; c < n; ++c) {
      const cplx v = label_inner(W.basis[r], W.basis[c], ref, Q);
      W.gram.m(r, c) = v;
      W.gram.m(c, r) = std::conj(v);
    }
  }
  return W;
}

Eigen::MatrixXcd creation_matrix(const QMatrix& Q, int j, const TailWindow& from,
                                 const TailWindow& to) {
  if (j < 1 || j > Q.dim()) throw std::domain_error("creation_matrix: letter out of range");
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(to.size(), from.size());
  for (int c = 0; c < from.size(); ++c) {
    const TailLabel img =
        canonical_label(prepend(j, from.basis[c].head), from.basis[c].offset, from.ref);
    const int r = to.index_of(img);
    if (r < 0)
      throw std::domain_error("creation_matrix: image " + format_label(img) +
                              " outside the target window (window too small)");
    S(r, c) = 1.0;
  }
  return S;
}

MaskedMatrix annihilation_matrix(const QMatrix& Q, int j, const TailWindow& from,
                                 const TailWindow& to) {
  MaskedMatrix A;
  A.m = Eigen::MatrixXcd::Zero(to.size(), from.size());
  A.ok.assign(from.size(), 1);
  for (int c = 0; c < from.size(); ++c) {
    auto hit = annihilate(from.basis[c], from.ref, j, Q);
    if (!hit) continue;  // exact zero column
    const int r = to.index_of(hit->target);
    if (r < 0) {
      A.ok[c] = 0;  // truncation artifact, not a true zero
      continue;
    }
    A.m(r, c) = hit->factor;
  }
  return A;
}

Eigen::MatrixXcd cross_gram(const TailWindow& A, const TailWindow& B, const QMatrix& Q) {
  Eigen::MatrixXcd G(A.size(), B.size());
  for (int r = 0; r < A.size(); ++r)
    for (int c = 0; c < B.size(); ++c)
      G(r, c) = q_limit(to_tail(A.basis[r], A.ref), to_tail(B.basis[c], B.ref), Q);
  return G;
}

RepWindow make_window(const QMatrix& Q, const Tail& ref, int L, int M) {
  const TailWindow tw = make_tail_window(Q, ref, L, M);
  const int d = Q.dim();
  const int n = tw.size();

  RepWindow W;
  W.name = "tail(" + text::format_tail(ref) + ",L=" + std::to_string(L) +
           ",M=" + std::to_string(M) + ")";
  W.d = d;
  W.depth = L;
  W.gram = tw.gram;
  W.labels.reserve(n);
  for (const TailLabel& l : tw.basis) W.labels.push_back(format_label(l));
  for (int i = 0; i < n; ++i)
    if (tw.basis[i].head.size() <= 1) W.probes.push_back(i);

  W.gen.assign(d, Eigen::MatrixXcd::Zero(n, n));
  W.gen_ok.assign(d, std::vector<char>(n, 0));
  W.ann.assign(d, Eigen::MatrixXcd::Zero(n, n));
  W.ann_ok.assign(d, std::vector<char>(n, 1));
  for (int j = 1; j <= d; ++j) {
    for (int c = 0; c < n; ++c) {
      const TailLabel img =
          canonical_label(prepend(j, tw.basis[c].head), tw.basis[c].offset, ref);
      if (int r = tw.index_of(img); r >= 0) {
        W.gen[j - 1](r, c) = 1.0;
        W.gen_ok[j - 1][c] = 1;
      }
      if (auto hit = annihilate(tw.basis[c], ref, j, Q)) {
        if (int r = tw.index_of(hit->target); r >= 0)
          W.ann[j - 1](r, c) = hit->factor;
        else
          W.ann_ok[j - 1][c] = 0;
      }
    }
  }
  return W;
}

std::string format_label(const TailLabel& l) {
  return text::format_word(l.head) + "@" + std::to_string(l.offset);
}

}  // namespace qiso::tailrep
