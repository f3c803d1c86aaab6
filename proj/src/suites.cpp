#include "qiso/suites.hpp"

#include <chrono>
#include <future>
#include <random>

#include "qiso/dual.hpp"
#include "qiso/fock.hpp"
#include "qiso/tailrep.hpp"
#include "qiso/text.hpp"

namespace qiso::suites {

namespace {

using Eigen::MatrixXcd;
using nlohmann::json;

// Largest Frobenius residual over a family of differences, remembering
// where the worst entry sits.
struct ResidualAcc {
  double worst = 0.0;
  json witness;

  void add(const MatrixXcd& diff, json where) {
    const double fro = diff.norm();
    if (fro <= worst) return;
    worst = fro;
    int r = 0, c = 0;
    if (diff.size() > 0) diff.cwiseAbs().maxCoeff(&r, &c);
    where["row"] = r;
    where["col"] = c;
    witness = std::move(where);
  }

  void finish(CheckResult& out, double tol) const {
    out.data["residual"] = worst;
    out.data["tolerance"] = tol;
    out.pass = worst < tol;
    if (!out.pass) out.witness = witness;
  }
};

template <class F>
CheckResult timed(const std::string& name, json params, F&& body) {
  CheckResult out;
  out.name = name;
  out.params = std::move(params);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.data["error"] = e.what();
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

std::vector<Tail> embedding_tails(int d) {
  std::vector<Tail> tails = {Tail({}, {2}), Tail({1}, {2}), Tail({}, {1, 2})};
  if (d >= 3) tails.push_back(Tail({}, {1, 2, 3}));
  return tails;
}

Tail cross_ref_for(const Tail& ref) {
  Tail ones({}, {1});
  if (!tails_equivalent(ref, ones)) return ones;
  return Tail({}, {2});
}

MatrixXcd select_cols(const MatrixXcd& A, const std::vector<int>& idx) {
  MatrixXcd out(A.rows(), idx.size());
  for (int c = 0; c < int(idx.size()); ++c) out.col(c) = A.col(idx[c]);
  return out;
}

}  // namespace

std::vector<CheckResult> fock_suite(const QMatrix& Q, const RunConfig& cfg) {
  const int d = Q.dim();
  const int N = cfg.fock_depth;
  std::vector<CheckResult> out;

  std::vector<GramMatrix> grams;
  for (int n = 0; n <= N; ++n) grams.push_back(fock::gram(Q, n));

  out.push_back(timed("fock.gram_positivity", {{"d", d}, {"N", N}}, [&](CheckResult& c) {
    double min_eig = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= N; ++n) min_eig = std::min(min_eig, positivity(grams[n]).min_eigenvalue);
    c.data["min_eigenvalue"] = min_eig;
    c.pass = min_eig > 1e-12;
  }));

  out.push_back(timed("fock.gram_block_structure", {{"d", d}, {"N", N}}, [&](CheckResult& c) {
    int off_block_nonzeros = 0;
    for (int n = 0; n <= N; ++n) {
      const auto basis = fock::level_basis(d, n);
      const auto blocks = fock::multiset_blocks(basis);
      std::vector<int> block_of(basis.size());
      for (int b = 0; b < int(blocks.size()); ++b)
        for (int i : blocks[b]) block_of[i] = b;
      for (int r = 0; r < int(basis.size()); ++r)
        for (int cidx = 0; cidx < int(basis.size()); ++cidx)
          if (block_of[r] != block_of[cidx] && grams[n].m(r, cidx) != 0.0) ++off_block_nonzeros;
    }
    c.data["off_block_nonzeros"] = off_block_nonzeros;
    c.pass = off_block_nonzeros == 0;
  }));

  out.push_back(timed("fock.adjointness", {{"d", d}, {"N", N}}, [&](CheckResult& c) {
    ResidualAcc acc;
    for (int j = 1; j <= d; ++j)
      for (int n = 0; n < N; ++n) {
        const MatrixXcd adj = gram_adjoint(fock::creation_matrix(Q, j, n), grams[n], grams[n + 1]);
        acc.add(adj - fock::annihilation_matrix(Q, j, n + 1), {{"j", j}, {"level", n + 1}});
      }
    acc.finish(c, cfg.tol.metric);
  }));

  out.push_back(timed("fock.isometry", {{"d", d}, {"N", N}}, [&](CheckResult& c) {
    ResidualAcc acc;
    for (int j = 1; j <= d; ++j)
      for (int n = 0; n < N; ++n) {
        const int dim = int(std::llround(std::pow(double(d), n)));
        acc.add(fock::annihilation_matrix(Q, j, n + 1) * fock::creation_matrix(Q, j, n) -
                    MatrixXcd::Identity(dim, dim),
                {{"j", j}, {"level", n}});
      }
    acc.finish(c, cfg.tol.exact);
  }));

  out.push_back(timed("fock.commutation", {{"d", d}, {"N", N}}, [&](CheckResult& c) {
    ResidualAcc acc;
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        if (i == j) continue;
        for (int n = 1; n < N; ++n) {
          const MatrixXcd lhs =
              fock::annihilation_matrix(Q, i, n + 1) * fock::creation_matrix(Q, j, n);
          const MatrixXcd rhs =
              Q(i, j) * fock::creation_matrix(Q, j, n - 1) * fock::annihilation_matrix(Q, i, n);
          acc.add(lhs - rhs, {{"i", i}, {"j", j}, {"level", n}});
        }
      }
    acc.finish(c, cfg.tol.exact);
  }));

  out.push_back(timed("fock.embedding_isometry", {{"d", d}, {"N", N}}, [&](CheckResult& c) {
    ResidualAcc acc;
    for (const Tail& tail : embedding_tails(d))
      for (int k = 0; k < N; ++k) {
        const MatrixXcd J = fock::tail_embedding(tail, k, d);
        acc.add(J.adjoint() * grams[k + 1].m * J - grams[k].m,
                {{"tail", text::format_tail(tail)}, {"k", k}});
      }
    acc.finish(c, cfg.tol.metric);
  }));

  return out;
}

std::vector<CheckResult> tail_suite(const QMatrix& Q, const RunConfig& cfg) {
  const int d = Q.dim();
  const Tail ref = text::parse_tail(cfg.tail.ref);
  const int L = cfg.tail.L, M = cfg.tail.M;
  std::vector<CheckResult> out;
  const json base_params = {{"d", d}, {"ref", text::format_tail(ref)}, {"L", L}, {"M", M}};

  std::optional<tailrep::TailWindow> lo_opt, hi_opt;
  std::string construction_error;
  try {
    lo_opt = tailrep::make_tail_window(Q, ref, L, M);
    hi_opt = tailrep::make_tail_window(Q, ref, L + 1, M);
  } catch (const std::exception& e) {
    construction_error = e.what();
  }
  if (!construction_error.empty()) {
    out.push_back(timed("tail.window_construction", base_params, [&](CheckResult& c) {
      throw std::runtime_error(construction_error);
    }));
    return out;
  }
  const tailrep::TailWindow& lo = *lo_opt;
  const tailrep::TailWindow& hi = *hi_opt;

  // Index embedding of the smaller window into the larger one.
  MatrixXcd inc = MatrixXcd::Zero(hi.size(), lo.size());
  for (int c = 0; c < lo.size(); ++c) inc(hi.index_of(lo.basis[c]), c) = 1.0;

  out.push_back(timed("tail.gram_positivity", base_params, [&](CheckResult& c) {
    const double min_eig =
        std::min(positivity(lo.gram).min_eigenvalue, positivity(hi.gram).min_eigenvalue);
    c.data["min_eigenvalue"] = min_eig;
    c.data["basis_size"] = lo.size();
    c.pass = min_eig > 1e-12;
  }));

  out.push_back(timed("tail.adjointness", base_params, [&](CheckResult& c) {
    ResidualAcc acc;
    for (int j = 1; j <= d; ++j) {
      const MatrixXcd up = tailrep::creation_matrix(Q, j, lo, hi);
      const auto down = tailrep::annihilation_matrix(Q, j, hi, lo);
      const MatrixXcd adj = gram_adjoint(up, lo.gram, hi.gram);
      std::vector<int> cols;
      for (int i = 0; i < hi.size(); ++i)
        if (down.ok[i]) cols.push_back(i);
      acc.add(select_cols(adj - down.m, cols), {{"j", j}});
    }
    acc.finish(c, cfg.tol.metric);
  }));

  out.push_back(timed("tail.isometry", base_params, [&](CheckResult& c) {
    ResidualAcc acc;
    for (int j = 1; j <= d; ++j) {
      const MatrixXcd up = tailrep::creation_matrix(Q, j, lo, hi);
      const auto down = tailrep::annihilation_matrix(Q, j, hi, lo);
      acc.add(down.m * up - MatrixXcd::Identity(lo.size(), lo.size()), {{"j", j}});
    }
    acc.finish(c, cfg.tol.exact);
  }));

  out.push_back(timed("tail.commutation", base_params, [&](CheckResult& c) {
    ResidualAcc acc;
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        if (i == j) continue;
        const MatrixXcd up = tailrep::creation_matrix(Q, j, lo, hi);
        const auto down_hi = tailrep::annihilation_matrix(Q, i, hi, lo);
        const auto down_lo = tailrep::annihilation_matrix(Q, i, lo, lo);
        const MatrixXcd lhs = inc * (down_hi.m * up);
        const MatrixXcd rhs = Q(i, j) * (tailrep::creation_matrix(Q, j, lo, hi) * down_lo.m);
        std::vector<int> cols;
        for (int b = 0; b < lo.size(); ++b) {
          const tailrep::TailLabel img =
              tailrep::canonical_label(prepend(j, lo.basis[b].head), lo.basis[b].offset, ref);
          if (down_hi.ok[hi.index_of(img)] && down_lo.ok[b]) cols.push_back(b);
        }
        acc.add(select_cols(lhs - rhs, cols), {{"i", i}, {"j", j}});
      }
    acc.finish(c, cfg.tol.exact);
  }));

  if (ref.period().size() == 1) {
    // Constant tails fix every label whose head avoids the period
    // letter: deleting the first tail letter reproduces the sequence.
    out.push_back(timed("tail.fixed_point", base_params, [&](CheckResult& c) {
      const int letter = ref.period()[0];
      int checked = 0;
      bool exact = true;
      for (int b = 0; b < lo.size(); ++b) {
        const auto& head = lo.basis[b].head;
        if (std::find(head.begin(), head.end(), letter) != head.end()) continue;
        auto hit = tailrep::annihilate(lo.basis[b], ref, letter, Q);
        if (!hit) continue;
        cplx expected = 1.0;
        for (int x : head) expected *= Q(letter, x);
        exact = exact && hit->target == lo.basis[b] && hit->factor == expected;
        ++checked;
      }
      c.data["labels_checked"] = checked;
      c.pass = exact && checked > 0;
    }));
  }

  out.push_back(timed("tail.cross_class_orthogonality", base_params, [&](CheckResult& c) {
    const Tail other = cross_ref_for(ref);
    c.params["other_ref"] = text::format_tail(other);
    const auto otherw = tailrep::make_tail_window(Q, other, std::min(L, 2), std::min(M, 2));
    const MatrixXcd cross = tailrep::cross_gram(lo, otherw, Q);
    c.data["max_abs_entry"] = cross.size() ? cross.cwiseAbs().maxCoeff() : 0.0;
    c.data["classes_equivalent"] = tails_equivalent(ref, other);
    c.pass = !tails_equivalent(ref, other) && (cross.array() == 0.0).all();
  }));

  // Pairs in one class that never align at equal shifts carry inner
  // product zero; they are flagged, not failed.
  out.push_back(timed("tail.same_class_zero_pairs", base_params, [&](CheckResult& c) {
    int flagged = 0;
    json examples = json::array();
    for (int r = 0; r < lo.size(); ++r)
      for (int cc = r + 1; cc < lo.size(); ++cc) {
        if (align_shift(tailrep::to_tail(lo.basis[r], ref), tailrep::to_tail(lo.basis[cc], ref)))
          continue;
        ++flagged;
        if (examples.size() < 5)
          examples.push_back({tailrep::format_label(lo.basis[r]),
                              tailrep::format_label(lo.basis[cc])});
      }
    c.data["pairs"] = flagged;
    c.data["examples"] = examples;
    c.pass = true;
  }));

  return out;
}

namespace {

void dual_checks_for_window(const QMatrix& Q, const RunConfig& cfg, const RepWindow& W,
                            const Tail& decay_source, std::vector<CheckResult>& out,
                            std::vector<DecayTable>* decay) {
  const int d = Q.dim();
  const json params = {{"window", W.name}};

  std::vector<dual::DualIsometry> duals;
  out.push_back(timed("dual.biorthogonality", params, [&](CheckResult& c) {
    for (int j = 1; j <= d; ++j) duals.push_back(dual::dual_isometry(Q, j, W));
    const auto interior = W.gen_interior();
    ResidualAcc acc;
    json spectra = json::array();
    for (int j = 1; j <= d; ++j) {
      spectra.push_back({{"j", j},
                         {"m_min_eig", duals[j - 1].m_min_eig},
                         {"condition", duals[j - 1].condition}});
      for (int k = 1; k <= d; ++k) {
        const MatrixXcd prod = duals[j - 1].dual_star * W.gen[k - 1];
        MatrixXcd expected = MatrixXcd::Zero(W.size(), W.size());
        if (j == k) expected.setIdentity();
        acc.add(select_cols(prod - expected, interior), {{"j", j}, {"k", k}});
      }
    }
    c.data["m_spectra"] = spectra;
    acc.finish(c, cfg.tol.inverted);
  }));
  if (int(duals.size()) != d) return;  // construction failed; recorded above

  if (Q.entries().cwiseAbs().maxCoeff() == 0.0) {
    out.push_back(timed("dual.orthogonal_case_reproduces_generators", params,
                        [&](CheckResult& c) {
                          double worst = 0.0;
                          for (int j = 1; j <= d; ++j)
                            worst = std::max(worst,
                                             (duals[j - 1].iso - W.gen[j - 1]).cwiseAbs().maxCoeff());
                          c.data["max_abs_deviation"] = worst;
                          c.pass = worst == 0.0;
                        }));
  }

  out.push_back(timed("dual.prefix_decay", params, [&](CheckResult& c) {
    c.params["prefix_source"] = text::format_tail(decay_source);
    std::vector<double> norms;
    for (int n = 1; n <= W.depth; ++n) {
      const MatrixXcd P = dual::prefix_projection(decay_source.head(n), W, duals);
      double worst = 0.0;
      for (int b : W.probes) worst = std::max(worst, W.gram.norm(P.col(b)));
      norms.push_back(worst);
    }
    c.data["max_norms"] = norms;
    bool monotone = true;
    for (size_t i = 1; i < norms.size(); ++i)
      monotone = monotone && norms[i] <= norms[i - 1] + 1e-12;
    c.data["final"] = norms.empty() ? 0.0 : norms.back();
    c.pass = monotone && (norms.empty() || norms.back() < 1e-6);
    if (decay)
      decay->push_back(DecayTable{W.name, text::format_tail(decay_source), norms});
  }));

  out.push_back(timed("dual.prefix_idempotence", params, [&](CheckResult& c) {
    ResidualAcc acc;
    const auto interior = W.gen_interior();
    for (int n = 1; n <= std::min(W.depth, 3); ++n) {
      const MatrixXcd P = dual::prefix_projection(decay_source.head(n), W, duals);
      acc.add(select_cols(P * P - P, interior), {{"n", n}});
    }
    acc.finish(c, cfg.tol.inverted);
  }));

  out.push_back(timed("dual.vacuum", params, [&](CheckResult& c) {
    const auto probe = dual::vacuum_kernel(W);
    c.data["kernel_dim"] = probe.kernel_dim;
    c.data["min_singular"] = probe.min_singular;
    c.data["interior_size"] = int(probe.interior.size());
    if (W.name.rfind("fock", 0) == 0) {
      // The level-0 vector must span the kernel.
      bool spans = probe.kernel_dim == 1;
      if (spans) {
        Eigen::VectorXcd k = probe.kernel.col(0);
        Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(W.size());
        e0(0) = 1.0;
        const double overlap = std::abs(W.gram.inner(k, e0)) / W.gram.norm(k);
        c.data["vacuum_overlap"] = overlap;
        spans = overlap > 1.0 - 1e-8;
      }
      c.pass = spans;
    } else {
      c.pass = probe.kernel_dim == 0;
    }
  }));
}

}  // namespace

std::vector<CheckResult> dual_suite(const QMatrix& Q, const RunConfig& cfg,
                                    std::vector<DecayTable>* decay) {
  std::vector<CheckResult> out;
  const Tail ref = text::parse_tail(cfg.tail.ref);

  const RepWindow fockw = fock::make_window(Q, cfg.fock_depth);
  dual_checks_for_window(Q, cfg, fockw, ref, out, decay);

  const RepWindow tailw = tailrep::make_window(Q, ref, cfg.tail.L, cfg.tail.M);
  dual_checks_for_window(Q, cfg, tailw, cross_ref_for(ref), out, decay);

  // Same-class prefixes fix the reference vector itself.
  out.push_back(timed("dual.prefix_fixed_point", {{"window", tailw.name}}, [&](CheckResult& c) {
    std::vector<dual::DualIsometry> duals;
    for (int j = 1; j <= Q.dim(); ++j) duals.push_back(dual::dual_isometry(Q, j, tailw));
    Eigen::VectorXcd e_ref = Eigen::VectorXcd::Zero(tailw.size());
    e_ref(0) = 1.0;  // the pure tail label sorts first
    ResidualAcc acc;
    for (int n = 1; n <= tailw.depth; ++n) {
      const MatrixXcd P = dual::prefix_projection(ref.head(n), tailw, duals);
      acc.add(P * e_ref - e_ref, {{"n", n}});
    }
    acc.finish(c, cfg.tol.inverted);
  }));

  return out;
}

std::vector<CheckResult> normal_order_suite(const QMatrix& Q, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  const int d = Q.dim();

  auto triple_matches = [&](const Word& a, const Word& b, json& witness) {
    const auto m = rewrite::star_product(a, b, Q);
    const bool ok = m.creators == word_minus(b, a) && m.annihilators == word_minus(a, b) &&
                    std::abs(m.coeff - q_scalar(a, b, Q)) < cfg.tol.exact;
    if (!ok)
      witness = {{"a", text::format_word(a)}, {"b", text::format_word(b)}};
    return ok;
  };

  out.push_back(timed("normal_order.oracle_exhaustive", {{"d", d}, {"max_len", 4}},
                      [&](CheckResult& c) {
                        std::vector<Word> words;
                        Word w;
                        std::function<void(int)> rec = [&](int len) {
                          if (len == 0) {
                            words.push_back(w);
                            return;
                          }
                          for (int x = 1; x <= std::min(d, 2); ++x) {
                            w.push_back(x);
                            rec(len - 1);
                            w.pop_back();
                          }
                        };
                        for (int len = 0; len <= 4; ++len) rec(len);
                        int mismatches = 0;
                        for (const Word& a : words)
                          for (const Word& b : words)
                            if (!triple_matches(a, b, c.witness)) ++mismatches;
                        c.data["pairs"] = int(words.size() * words.size());
                        c.data["mismatches"] = mismatches;
                        c.pass = mismatches == 0;
                      }));

  out.push_back(timed("normal_order.oracle_random", {{"d", d}, {"max_len", 5}},
                      [&](CheckResult& c) {
                        std::mt19937 rng(913);
                        std::uniform_int_distribution<int> len(0, 5), letter(1, d);
                        int mismatches = 0;
                        for (int t = 0; t < 200; ++t) {
                          Word a(len(rng)), b(len(rng));
                          for (int& x : a) x = letter(rng);
                          for (int& x : b) x = letter(rng);
                          if (!triple_matches(a, b, c.witness)) ++mismatches;
                        }
                        c.data["pairs"] = 200;
                        c.data["mismatches"] = mismatches;
                        c.pass = mismatches == 0;
                      }));

  out.push_back(timed("normal_order.termination", {{"d", d}}, [&](CheckResult& c) {
    std::mt19937 rng(917);
    std::uniform_int_distribution<int> len(0, 12), letter(1, d), star(0, 1);
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
      std::vector<rewrite::Symbol> w(len(rng));
      for (auto& s : w) s = {letter(rng), star(rng) == 1};
      rewrite::Trace trace;
      rewrite::normal_order(w, Q, rewrite::Strategy::LeftmostFirst, &trace);
      for (size_t i = 1; i < trace.measures.size(); ++i)
        violations += trace.measures[i] < trace.measures[i - 1] ? 0 : 1;
    }
    c.data["violations"] = violations;
    c.pass = violations == 0;
  }));

  out.push_back(timed("normal_order.confluence", {{"d", d}}, [&](CheckResult& c) {
    std::mt19937 rng(919);
    std::uniform_int_distribution<int> len(0, 12), letter(1, d), star(0, 1);
    double worst = 0.0;
    bool words_match = true;
    for (int t = 0; t < 1000; ++t) {
      std::vector<rewrite::Symbol> w(len(rng));
      for (auto& s : w) s = {letter(rng), star(rng) == 1};
      const auto l = rewrite::normal_order(w, Q, rewrite::Strategy::LeftmostFirst);
      const auto r = rewrite::normal_order(w, Q, rewrite::Strategy::RightmostFirst);
      words_match = words_match && l.creators == r.creators && l.annihilators == r.annihilators;
      worst = std::max(worst, std::abs(l.coeff - r.coeff));
    }
    c.data["max_coeff_deviation"] = worst;
    c.pass = words_match && worst < cfg.tol.exact;
  }));

  return out;
}

Report run(const RunConfig& cfg) {
  const QMatrix Q = make_q(cfg);
  Report report;
  report.config_echo = config_to_json(cfg);

  const bool do_fock = cfg.mode == "fock-check" || cfg.mode == "all";
  const bool do_tail = cfg.mode == "tail-check" || cfg.mode == "all";
  const bool do_dual = cfg.mode == "dual-check" || cfg.mode == "all";
  const bool do_norm = cfg.mode == "normal-order" || cfg.mode == "all";

  if (cfg.parallel && cfg.mode == "all") {
    auto f = std::async(std::launch::async, [&] { return fock_suite(Q, cfg); });
    auto t = std::async(std::launch::async, [&] { return tail_suite(Q, cfg); });
    auto n = std::async(std::launch::async, [&] { return normal_order_suite(Q, cfg); });
    std::vector<DecayTable> decay;
    auto dchecks = dual_suite(Q, cfg, &decay);
    for (auto& c : f.get()) report.checks.push_back(std::move(c));
    for (auto& c : t.get()) report.checks.push_back(std::move(c));
    for (auto& c : dchecks) report.checks.push_back(std::move(c));
    for (auto& c : n.get()) report.checks.push_back(std::move(c));
    report.decay = std::move(decay);
  } else {
    if (do_fock)
      for (auto& c : fock_suite(Q, cfg)) report.checks.push_back(std::move(c));
    if (do_tail)
      for (auto& c : tail_suite(Q, cfg)) report.checks.push_back(std::move(c));
    if (do_dual)
      for (auto& c : dual_suite(Q, cfg, &report.decay)) report.checks.push_back(std::move(c));
    if (do_norm)
      for (auto& c : normal_order_suite(Q, cfg)) report.checks.push_back(std::move(c));
  }

  write_report(report, cfg.out);
  if (do_dual && !report.decay.empty()) write_decay_csv(report, decay_csv_path(cfg.out));
  return report;
}

}  // namespace qiso::suites
