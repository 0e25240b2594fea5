// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "fixtures.h"
#include "lgse/adapt.h"
#include "lgse/bench.h"
#include "lgse/embedding.h"
#include "lgse/io.h"
#include "lgse/morphseg.h"
#include "lgse/status.h"
#include "lgse/tokenizer.h"
#include "lgse/vocab.h"
#include "oracles.h"
#include "test_support.h"

namespace {

using namespace lgse;
using testing_support::lexicon_of;

struct Outcome {
  bool ok = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

RowMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  RowMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = n(rng);
  }
  return m;
}

// ------------------------------------------------------------------------

Outcome budget_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  fixture::LanguageSpec spec;
  spec.stems = 6000;
  spec.words = 20000;
  spec.seed = 11;
  const auto lang = fixture::make_language(spec);
  const auto corpus = fixture::make_corpus(lang, 100000, 10, 0.0, 5);
  const auto lex = lexicon_of(lang);
  std::set<std::string> alphabet;
  for (const auto& w : lang.words) {
    for (const auto& c : oracle::chars(w)) alphabet.insert(c);
  }
  std::size_t failures = 0;
  std::ostringstream bad;
  for (std::size_t s : {200u, 1000u, 5000u}) {
    for (int quarter = 0; quarter <= 4; ++quarter) {
      VocabConfig cfg;
      cfg.size = s;
      cfg.morph_ratio = quarter / 4.0;
      BuildStats st;
      const HybridVocab v = build_hybrid_vocab(corpus, lex, cfg, &st);
      const std::size_t budget = s - cfg.special_tokens.size() - alphabet.size();
      const std::size_t expected = budget * static_cast<std::size_t>(quarter) / 4;
      if (v.size() != s || st.morph_slots != expected ||
          v.count(TokenKind::kMorph) != expected) {
        ++failures;
        bad << " s=" << s << ",r=" << cfg.morph_ratio << ":size=" << v.size()
            << ",slots=" << st.morph_slots << ",morph=" << v.count(TokenKind::kMorph)
            << ",want=" << expected;
      }
    }
  }
  const double secs = seconds_since(t0);
  std::string detail = "15 configs, " + std::to_string(failures) + " mismatches, " +
                       fmt(secs) + " s on 100000 words" + bad.str();
  return {failures == 0 && secs < 30.0, detail};
}

Outcome boundary_purity() {
  fixture::LanguageSpec spec;
  spec.stems = 1500;
  spec.words = 6000;
  spec.seed = 21;
  const auto lang = fixture::make_language(spec);
  const auto corpus = fixture::make_corpus(lang, 40000, 10, 0.7, 3);
  const auto lex = lexicon_of(lang);
  VocabConfig cfg;
  cfg.size = 1200;
  const HybridVocab vocab = build_hybrid_vocab(corpus, lex, cfg);
  const Tokenizer tok(vocab, lex);
  const auto seg = lang.segmenter();

  std::mt19937_64 rng(77);
  std::size_t checked = 0, violations = 0, novel = 0;
  while (checked < 10000) {
    std::string word;
    if (checked % 2 == 0) {
      word = lang.words[fixture::below(rng, lang.words.size())];
    } else {
      // Novel combination, segmented by the greedy fallback.
      std::vector<std::string> ms;
      if (fixture::unit(rng) < 0.5) ms.push_back(lang.prefixes[fixture::below(rng, lang.prefixes.size())]);
      ms.push_back(lang.stems[fixture::below(rng, lang.stems.size())]);
      for (std::size_t k = fixture::below(rng, 3); k > 0; --k) {
        ms.push_back(lang.suffixes[fixture::below(rng, lang.suffixes.size())]);
      }
      word = oracle::join(ms);
    }
    const auto [morphs, ok] = seg(word);
    if (!ok) continue;
    if (!lang.segmentation.count(word)) ++novel;
    std::set<std::size_t> cuts;
    std::size_t at = 0;
    for (const auto& m : morphs) cuts.insert(at += oracle::chars(m).size());
    std::set<std::size_t> token_ends;
    at = 0;
    for (const auto& t : tok.tokenize_word(word)) token_ends.insert(at += oracle::chars(t).size());
    for (auto c : cuts) {
      if (!token_ends.count(c)) ++violations;
    }
    ++checked;
  }
  return {violations == 0, std::to_string(checked) + " words (" + std::to_string(novel) +
                               " novel), " + std::to_string(violations) + " crossing tokens"};
}

Outcome bpe_oracle() {
  std::size_t merges_compared = 0, words_compared = 0, mismatches = 0;
  for (std::uint64_t trial = 0; trial < 12; ++trial) {
    fixture::LanguageSpec spec;
    spec.alphabet = 12 + trial % 5;
    spec.stems = 30 + 5 * trial;
    spec.prefixes = 4;
    spec.suffixes = 6;
    spec.words = 120 + 10 * trial;
    spec.seed = 100 + trial;
    const auto lang = fixture::make_language(spec);
    const auto corpus = fixture::make_corpus(lang, 400 + 50 * trial, 8, 0.6, 200 + trial);
    const auto lex = lexicon_of(lang);
    const auto seg = lang.segmenter();

    std::map<std::string, std::uint64_t> spans;
    for (const auto& [w, n] : fixture::word_counts(corpus)) {
      for (const auto& m : seg(w).first) spans[m] += n;
    }
    const auto want = oracle::train_bpe(spans, 1u << 20);
    const auto got = train_bpe_within_morphemes(corpus, lex, 1u << 20);
    merges_compared += want.merges.size();
    bool same = got.size() == want.merges.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) {
      same = got[i].left == want.merges[i].left && got[i].right == want.merges[i].right &&
             got[i].count == want.merges[i].count;
    }
    if (!same) ++mismatches;

    // Tokenizations under the built vocabulary, plus words with characters
    // outside it.
    std::set<std::string> alphabet;
    for (const auto& [s, n] : spans) {
      for (const auto& c : oracle::chars(s)) alphabet.insert(c);
    }
    std::optional<HybridVocab> vocab;
    for (std::size_t extra = 40; extra > 0 && !vocab; --extra) {
      VocabConfig cfg;
      cfg.size = 5 + alphabet.size() + extra;
      try {
        vocab = build_hybrid_vocab(corpus, lex, cfg);
      } catch (const CapacityError&) {
      }
    }
    if (!vocab) {
      ++mismatches;
      continue;
    }
    const Tokenizer tok(*vocab, lex);
    const auto morph_tokens = testing_support::tokens_of_kind(*vocab, TokenKind::kMorph);
    const auto known = testing_support::non_special_tokens(*vocab);
    std::vector<std::string> words;
    for (const auto& [w, n] : fixture::word_counts(corpus)) words.push_back(w);
    for (std::size_t i = 0; i < 20 && i < lang.words.size(); ++i) {
      words.push_back(lang.words[i] + "x" + lang.stems[i % lang.stems.size()]);
    }
    for (const auto& w : words) {
      ++words_compared;
      if (tok.tokenize_word(w) !=
          oracle::tokenize_word(w, seg, morph_tokens, known, vocab->merges())) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(merges_compared) + " merges and " +
                               std::to_string(words_compared) + " word tokenizations over 12 corpora, " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome lgse_oracle() {
  fixture::LanguageSpec spec;
  spec.stems = 60;
  spec.words = 300;
  spec.seed = 5;
  const auto lang = fixture::make_language(spec);
  const auto lex = lexicon_of(lang);
  const auto seg = lang.segmenter();
  const auto morphs = lang.morphs();

  std::size_t per_method[3] = {0, 0, 0};
  double worst = 0.0;
  std::size_t method_mismatch = 0;
  for (std::uint64_t inst = 0; inst < 500; ++inst) {
    std::mt19937_64 rng(1000 + inst);
    const NgramRange range{inst % 7 == 0 ? 2 : 3, inst % 5 == 0 ? 4 : 6};

    std::string token;
    switch (inst % 4) {
      case 0: token = lang.words[fixture::below(rng, lang.words.size())]; break;
      case 1: token = lang.stems[fixture::below(rng, lang.stems.size())]; break;
      case 2:
        token = lang.stems[fixture::below(rng, lang.stems.size())] +
                lang.suffixes[fixture::below(rng, lang.suffixes.size())];
        break;
      default: token = "q" + lang.stems[fixture::below(rng, lang.stems.size())]; break;
    }

    // Candidate keys: every n-gram and whole string of the token and its
    // morphemes, each kept with probability 0.4, plus unrelated noise keys.
    std::set<std::string> candidates;
    auto add_all = [&](const std::string& s) {
      for (const auto& g : oracle::ngrams(s, range.min, range.max)) candidates.insert(g);
      candidates.insert(s);
    };
    add_all(token);
    for (const auto& m : seg(token).first) add_all(m);
    for (int k = 0; k < 5; ++k) candidates.insert("noise" + std::to_string(k));
    const std::size_t df = 3 + inst % 4;
    const std::size_t dm = 4 + inst % 3;
    std::normal_distribution<double> normal(0.0, 1.0);
    oracle::Table otable;
    NgramVectorTable table(df);
    const double keep = inst % 25 == 3 ? 0.0 : 0.4;
    for (const auto& key : candidates) {
      if (fixture::unit(rng) >= keep) continue;
      oracle::Vec v(df);
      for (auto& x : v) x = normal(rng);
      otable[key] = v;
      table.add(key, Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(df)));
    }
    std::vector<oracle::Vec> w(dm, oracle::Vec(df));
    ProjectionMap proj;
    proj.matrix.resize(static_cast<Eigen::Index>(dm), static_cast<Eigen::Index>(df));
    for (std::size_t i = 0; i < dm; ++i) {
      for (std::size_t j = 0; j < df; ++j) {
        w[i][j] = normal(rng);
        proj.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w[i][j];
      }
    }
    EmbeddingMatrix pre;
    pre.rows = gaussian_matrix(12, dm, rng);
    const GaussianModel gauss = fit_gaussian(pre, true, 0.1);

    const InitRecord rec = init_new_token(token, lex, table, proj, gauss, inst, range);
    const auto [src, method] = oracle::source_vector(token, seg, otable, range.min, range.max);
    Vector want;
    InitMethod want_method;
    if (method == oracle::Method::kNone) {
      want_method = InitMethod::kGaussian;
      want = sample_fallback(gauss, inst);
    } else {
      want_method = method == oracle::Method::kMorph ? InitMethod::kMorphAverage : InitMethod::kCharNgram;
      const auto y = oracle::apply(w, *src);
      want = Eigen::Map<const Vector>(y.data(), static_cast<Eigen::Index>(y.size()));
    }
    ++per_method[static_cast<int>(want_method)];
    if (rec.method != want_method || rec.vector.size() != want.size()) {
      ++method_mismatch;
      continue;
    }
    worst = std::max(worst, (rec.vector - want).cwiseAbs().maxCoeff());
  }
  return {method_mismatch == 0 && worst <= 1e-6,
          "500 instances (morph_average " + std::to_string(per_method[0]) + ", char_ngram " +
              std::to_string(per_method[1]) + ", gaussian " + std::to_string(per_method[2]) +
              "), method mismatches " + std::to_string(method_mismatch) + ", max abs err " +
              fmt(worst)};
}

Outcome projection_recovery() {
  std::mt19937_64 rng(42);
  const RowMatrix w = gaussian_matrix(24, 16, rng);
  const RowMatrix f = gaussian_matrix(64, 16, rng);
  std::vector<Anchor> anchors;
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    Vector src = f.row(i).transpose();
    anchors.push_back({src, w * src});
  }
  const ProjectionMap exact = fit_projection(anchors, 0.0);
  const double err = (exact.matrix - w).cwiseAbs().maxCoeff();
  const ProjectionMap ridge = fit_projection(anchors, 1e-3);
  const bool residuals_ok = exact.residual >= 0.0 && ridge.residual >= 0.0 &&
                            std::isfinite(ridge.residual);
  return {err <= 1e-6 && residuals_ok,
          "max abs err " + fmt(err) + ", residual(alpha=0) " + fmt(exact.residual) +
              ", residual(alpha=1e-3) " + fmt(ridge.residual)};
}

Outcome gaussian_fallback() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int d = 8;
  std::mt19937_64 rng(9);
  // Correlated source rows: x = A z + b.
  const RowMatrix a = gaussian_matrix(d, d, rng);
  Vector b(d);
  for (int i = 0; i < d; ++i) b(i) = 0.5 * i - 1.0;
  EmbeddingMatrix e;
  e.rows = gaussian_matrix(400, d, rng) * a.transpose();
  e.rows.rowwise() += b.transpose();
  const double gamma = 0.1;
  const GaussianModel g = fit_gaussian(e, true, gamma);

  // Reference shrunken covariance, scalar loops.
  std::vector<double> mu(d, 0.0);
  const auto n = static_cast<double>(e.rows.rows());
  for (Eigen::Index r = 0; r < e.rows.rows(); ++r) {
    for (int i = 0; i < d; ++i) mu[i] += e.rows(r, i) / n;
  }
  Eigen::MatrixXd ref(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (Eigen::Index r = 0; r < e.rows.rows(); ++r) {
        s += (e.rows(r, i) - mu[i]) * (e.rows(r, j) - mu[j]);
      }
      ref(i, j) = s / (n - 1.0);
    }
  }
  const double tr = ref.trace();
  ref = (1.0 - gamma) * ref + gamma * (tr / d) * Eigen::MatrixXd::Identity(d, d);
  const double fit_err = (g.cov - ref).cwiseAbs().maxCoeff();

  constexpr int kSamples = 100000;
  Vector mean = Vector::Zero(d);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
  std::vector<Vector> xs;
  xs.reserve(kSamples);
  for (int s = 0; s < kSamples; ++s) {
    xs.push_back(sample_fallback(g, token_seed(3, "tok" + std::to_string(s))));
    mean += xs.back();
  }
  mean /= kSamples;
  for (const auto& x : xs) second += (x - mean) * (x - mean).transpose();
  second /= (kSamples - 1);

  double worst_sigmas = 0.0;
  for (int i = 0; i < d; ++i) {
    const double tol = std::sqrt(g.cov(i, i)) / std::sqrt(static_cast<double>(kSamples));
    worst_sigmas = std::max(worst_sigmas, std::abs(mean(i) - g.mean(i)) / tol);
  }
  const double rel = (second - g.cov).norm() / g.cov.norm();
  const double secs = seconds_since(t0);
  return {fit_err < 1e-9 && worst_sigmas <= 4.0 && rel <= 0.05 && secs < 10.0,
          "covariance fit err " + fmt(fit_err) + ", worst mean deviation " + fmt(worst_sigmas) +
              " x sigma/sqrt(N), relative Frobenius " + fmt(rel) + ", " + fmt(secs) + " s"};
}

Outcome gradients() {
  std::mt19937_64 rng(3);
  EmbeddingMatrix e;
  e.rows = gaussian_matrix(6, 4, rng);
  e.new_token_ids = {3, 4, 5};
  AnchorMap anchors;
  for (TokenId id : e.new_token_ids) {
    anchors[id] = e.rows.row(id).transpose() + 0.3 * Vector::Ones(4);
  }
  MaskingSpec spec;
  spec.pad_id = 0;
  spec.mask_id = 1;
  spec.special = {true, true, false, false, false, false};
  std::vector<MaskedSequence> batch(2);
  batch[0].ids = {2, 1, 4, 5, 0};
  batch[0].positions = {1};
  batch[0].targets = {3};
  batch[1].ids = {1, 3, 2, 1, 5};
  batch[1].positions = {0, 3};
  batch[1].targets = {4, 5};
  const double lambda = 0.7;

  RowMatrix grad;
  mlm_loss_and_grad(batch, e, anchors, lambda, spec, &grad);
  const double h = 1e-5;
  auto total = [&](const EmbeddingMatrix& m) {
    return mlm_loss_and_grad(batch, m, anchors, lambda, spec).total();
  };
  RowMatrix numeric = RowMatrix::Zero(6, 4);
  for (Eigen::Index r = 0; r < 6; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) {
      EmbeddingMatrix p = e, q = e;
      p.rows(r, c) += h;
      q.rows(r, c) -= h;
      numeric(r, c) = (total(p) - total(q)) / (2 * h);
    }
  }
  auto rel = [](const RowMatrix& x, const RowMatrix& y) {
    return (x - y).norm() / std::max(y.norm(), 1e-12);
  };
  const RowMatrix new_rows_a = grad.bottomRows(3), new_rows_n = numeric.bottomRows(3);
  const double full_rel = rel(new_rows_a, new_rows_n);

  // Regularizer alone.
  double reg_worst = 0.0;
  for (TokenId id : e.new_token_ids) {
    const Vector x = e.rows.row(id).transpose();
    const Vector an = reg_grad(x, anchors[id], lambda);
    Vector num(4);
    for (int c = 0; c < 4; ++c) {
      Vector p = x, q = x;
      p(c) += h;
      q(c) -= h;
      num(c) = (lambda * (p - anchors[id]).squaredNorm() - lambda * (q - anchors[id]).squaredNorm()) / (2 * h);
    }
    reg_worst = std::max(reg_worst, (an - num).norm() / std::max(num.norm(), 1e-12));
  }

  // One plain SGD step moves new rows by exactly -lr * gradient.
  AdaptConfig cfg;
  cfg.optimizer = OptimizerKind::kSgd;
  cfg.weight_decay = 0.0;
  cfg.lr = 1e-3;
  cfg.lambda = lambda;
  EmbeddingMatrix stepped = e;
  OptimizerState state;
  mlm_step(batch, stepped, anchors, cfg, spec, state);
  const RowMatrix implied = (e.rows - stepped.rows) / cfg.lr;
  const RowMatrix implied_new = implied.bottomRows(3);
  const double step_rel = rel(implied_new, new_rows_n);
  const bool frozen = stepped.rows.topRows(3) == e.rows.topRows(3);

  return {full_rel < 1e-4 && reg_worst < 1e-4 && step_rel < 1e-4 && frozen,
          "relative error: mlm grad " + fmt(full_rel) + ", reg_grad " + fmt(reg_worst) +
              ", mlm_step " + fmt(step_rel) + (frozen ? ", old rows untouched" : ", OLD ROWS MOVED")};
}

Outcome drift_control() {
  fixture::LanguageSpec spec;
  spec.alphabet = 20;
  spec.stems = 60;
  spec.words = 250;
  spec.seed = 8;
  const auto lang = fixture::make_language(spec);
  const auto corpus = fixture::make_corpus(lang, 3000, 12, 0.5, 4);
  const auto lex = lexicon_of(lang);
  VocabConfig vcfg;
  vcfg.size = 120;
  const HybridVocab vocab = build_hybrid_vocab(corpus, lex, vcfg);
  const Tokenizer tok(vocab, lex);
  std::size_t original = 0;
  while (original < vocab.size() && (vocab.kinds()[original] == TokenKind::kSpecial ||
                                     vocab.kinds()[original] == TokenKind::kChar)) {
    ++original;
  }

  double drift[2] = {0.0, 0.0};
  bool frozen = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(500 + seed);
    EmbeddingMatrix e;
    e.rows = 0.5 * gaussian_matrix(vocab.size(), 8, rng);
    for (std::size_t id = original; id < vocab.size(); ++id) e.new_token_ids.push_back(static_cast<TokenId>(id));
    const AnchorMap anchors = snapshot_anchors(e);
    for (int k = 0; k < 2; ++k) {
      AdaptConfig cfg;
      cfg.lambda = k == 0 ? 1.0 : 0.0;
      cfg.epochs = 3;
      cfg.lr = 0.02;
      cfg.batch_size = 16;
      cfg.max_len = 64;
      cfg.seed = seed;
      const AdaptReport rep = adapt(corpus, tok, e, anchors, cfg);
      drift[k] += mean_drift(rep.final_matrix, anchors) / 10.0;
      frozen = frozen && rep.final_matrix.rows.topRows(static_cast<Eigen::Index>(original)) ==
                             e.rows.topRows(static_cast<Eigen::Index>(original));
    }
  }
  return {drift[0] < drift[1] && frozen,
          "mean drift lambda=1: " + fmt(drift[0]) + ", lambda=0: " + fmt(drift[1]) +
              (frozen ? "; original rows bit-identical" : "; ORIGINAL ROWS CHANGED")};
}

Outcome fertility() {
  std::ostringstream detail;
  bool ok = true;
  for (std::size_t s : {500u, 2000u}) {
    fixture::LanguageSpec spec;
    spec.stems = s * 8 / 10;
    spec.stem_min = 4;
    spec.stem_max = 7;
    spec.affix_min = 2;
    spec.affix_max = 3;
    spec.prefixes = 10;
    spec.suffixes = 15;
    spec.words = spec.stems * 5;
    spec.seed = 3;
    const auto lang = fixture::make_language(spec);
    const auto corpus = fixture::make_corpus(lang, 60000, 12, 0.5, 9);
    const auto lex = lexicon_of(lang);
    VocabConfig cfg;
    cfg.size = s;
    const HybridVocab hv = build_hybrid_vocab(corpus, lex, cfg);
    const HybridVocab pv = build_plain_bpe_vocab(corpus, cfg);
    const MorphemeLexicon none;
    const Tokenizer ht(hv, lex), pt(pv, none);
    const double a = token_fertility(corpus, ht).tf;
    const double b = token_fertility(corpus, pt).tf;
    ok = ok && a < b;
    detail << "s=" << s << ": hybrid TF " << fmt(a) << " vs plain " << fmt(b) << "; ";
  }

  // Three words, six morphemes.
  MorphemeLexicon lex;
  lex.add_entry("ሰላም", {"ሰላ", "ም"});
  lex.add_entry("ንኩሉ", {"ን", "ኩሉ"});
  lex.add_entry("ፍጡር", {"ፍጡ", "ር"});
  const std::vector<std::string> corpus(4, "ሰላም ንኩሉ ፍጡር");
  VocabConfig cfg;
  cfg.size = 17;  // 5 specials + 9 characters + 3 multi-character morphemes
  cfg.morph_ratio = 1.0;
  const HybridVocab v = build_hybrid_vocab(corpus, lex, cfg);
  const Tokenizer tok(v, lex);
  const TokenSequence seq = tok.encode("ሰላም ንኩሉ ፍጡር");
  std::vector<std::string> got;
  for (TokenId id : seq.ids) got.push_back(v.token(id));
  const std::vector<std::string> want = {"ሰላ", "ም", "ን", "ኩሉ", "ፍጡ", "ር"};
  ok = ok && got == want;
  detail << "phrase -> " << seq.ids.size() << " tokens";
  return {ok, detail.str()};
}

Outcome masking() {
  fixture::LanguageSpec spec;
  spec.stems = 20;
  spec.words = 60;
  const auto lang = fixture::make_language(spec);
  const auto corpus = fixture::make_corpus(lang, 500, 10, 0.0, 1);
  const auto lex = lexicon_of(lang);
  VocabConfig vcfg;
  vcfg.size = 60;
  const HybridVocab vocab = build_hybrid_vocab(corpus, lex, vcfg);
  const MaskingSpec mspec = MaskingSpec::from_vocab(vocab);
  AdaptConfig cfg;
  std::mt19937_64 rng(123);
  std::size_t eligible = 0, masked = 0;
  const TokenId first_plain = static_cast<TokenId>(vcfg.special_tokens.size());
  const TokenId span = static_cast<TokenId>(vocab.size()) - first_plain;
  for (int seq = 0; seq < 100; ++seq) {
    std::vector<TokenId> ids;
    for (int i = 0; i < 100; ++i) ids.push_back(first_plain + static_cast<TokenId>(fixture::below(rng, span)));
    const MaskedSequence m = mask_sequence(ids, cfg, mspec, rng);
    eligible += ids.size();
    masked += m.targets.size();
  }
  const double rate = static_cast<double>(masked) / static_cast<double>(eligible);

  std::vector<TokenId> short_ids(10, first_plain), long_ids(400, first_plain);
  const bool lengths = cfg.max_len == 256 && mask_sequence(short_ids, cfg, mspec, rng).ids.size() == 256 &&
                       mask_sequence(long_ids, cfg, mspec, rng).ids.size() == 256;
  return {rate >= 0.135 && rate <= 0.165 && lengths,
          "rate " + fmt(rate) + " over " + std::to_string(eligible) + " eligible positions; " +
              (lengths ? "padded/truncated to 256" : "LENGTH NOT 256")};
}

// ------------------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LGSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string strip_timing(const std::string& json_text) {
  auto j = nlohmann::ordered_json::parse(json_text);
  for (const char* k : {"run_ns", "mean_ns_per_kchar", "p50_ns_per_kchar", "p95_ns_per_kchar"}) j.erase(k);
  return j.dump();
}

Outcome cli_determinism() {
  using testing_support::write_file;
  testing_support::TempDir dir("acceptance_cli");
  fixture::LanguageSpec spec;
  spec.stems = 40;
  spec.words = 150;
  spec.seed = 31;
  const auto lang = fixture::make_language(spec);
  const auto corpus = fixture::make_corpus(lang, 1500, 10, 0.5, 2);
  write_file(dir.file("corpus.txt"), testing_support::join_lines(corpus));
  write_file(dir.file("lex.tsv"), lang.lexicon_tsv());

  // Vector table over every n-gram of the morphemes, and a pretrained
  // matrix for specials plus characters (the ids a vocabulary starts with).
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::set<std::string> keys;
  for (const auto& m : lang.morphs()) {
    for (const auto& g : oracle::ngrams(m, 3, 6)) keys.insert(g);
    keys.insert(m);
  }
  std::set<std::string> alphabet;
  for (const auto& w : lang.words) {
    for (const auto& c : oracle::chars(w)) alphabet.insert(c), keys.insert(c);
  }
  std::string table = std::to_string(keys.size()) + " 6\n";
  for (const auto& k : keys) {
    table += k;
    for (int i = 0; i < 6; ++i) table += " " + io::format_double(n01(rng));
    table += "\n";
  }
  write_file(dir.file("vectors.txt"), table);
  std::vector<std::string> base = {"<pad>", "<unk>", "<mask>", "<s>", "</s>"};
  base.insert(base.end(), alphabet.begin(), alphabet.end());
  std::string pre = std::to_string(base.size()) + " 8\n";
  for (const auto& k : base) {
    pre += k;
    for (int i = 0; i < 8; ++i) pre += " " + io::format_double(n01(rng));
    pre += "\n";
  }
  write_file(dir.file("pretrained.txt"), pre);

  const std::string d = dir.path().string() + "/";
  std::vector<std::string> failures;
  std::size_t compared = 0;
  for (int run = 1; run <= 2; ++run) {
    const std::string o = d + "run" + std::to_string(run) + "_";
    const std::vector<std::string> cmds = {
        "--seed 5 vocab train --corpus " + d + "corpus.txt --lexicon " + d + "lex.tsv --size 150 --out " + o + "vocab.json --json " + o + "vocab_summary.json",
        "--seed 5 vocab train --plain --corpus " + d + "corpus.txt --size 150 --out " + o + "plain.json",
        "--seed 5 init --vocab " + o + "vocab.json --lexicon " + d + "lex.tsv --vectors " + d + "vectors.txt --pretrained " + d + "pretrained.txt --out " + o + "init.bin --out-text " + o + "init.txt --audit " + o + "audit.jsonl --json " + o + "init_summary.json",
        "--seed 5 tokenize --vocab " + o + "vocab.json --lexicon " + d + "lex.tsv --input " + d + "corpus.txt --output " + o + "ids.txt --json " + o + "ids.json",
        "--seed 5 adapt --vocab " + o + "vocab.json --lexicon " + d + "lex.tsv --corpus " + d + "corpus.txt --matrix " + o + "init.bin --original-rows " + std::to_string(base.size()) + " --epochs 2 --lr 0.01 --lambda 0.5 --max-len 64 --out " + o + "adapted.bin --report " + o + "adapt.jsonl",
        "--seed 5 stats fertility --vocab " + o + "vocab.json --lexicon " + d + "lex.tsv --corpus " + d + "corpus.txt --json " + o + "fertility.json",
        "--seed 5 bench latency --vocab " + o + "vocab.json --lexicon " + d + "lex.tsv --corpus " + d + "corpus.txt --reps 2 --json " + o + "latency.json",
        "--seed 5 compare --corpus " + d + "corpus.txt --tokenizer hybrid=" + o + "vocab.json," + d + "lex.tsv --tokenizer plain=" + o + "plain.json --json " + o + "compare.json --text " + o + "compare.txt",
    };
    for (const auto& c : cmds) {
      if (const int rc = run_cli(c); rc != 0) failures.push_back("exit " + std::to_string(rc) + ": " + c.substr(0, 40));
    }
  }
  for (const std::string f : {"vocab.json", "vocab_summary.json", "plain.json", "init.bin", "init.txt", "audit.jsonl",
                              "init_summary.json", "ids.txt", "ids.json", "adapted.bin", "adapt.jsonl",
                              "fertility.json", "compare.json", "compare.txt"}) {
    const auto a = testing_support::slurp(d + "run1_" + f);
    const auto b = testing_support::slurp(d + "run2_" + f);
    ++compared;
    if (a.empty() || a != b) failures.push_back(f);
  }
  ++compared;
  try {
    if (strip_timing(testing_support::slurp(d + "run1_latency.json")) !=
        strip_timing(testing_support::slurp(d + "run2_latency.json"))) {
      failures.push_back("latency.json (non-timing fields)");
    }
  } catch (const std::exception&) {
    failures.push_back("latency.json unreadable");
  }
  std::string detail = "8 subcommand invocations x 2 runs, " + std::to_string(compared) + " outputs compared";
  for (const auto& f : failures) detail += "; differs/failed: " + f;
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"vocab_budget_sweep", budget_sweep},
      {"boundary_purity", boundary_purity},
      {"bpe_oracle_equivalence", bpe_oracle},
      {"lgse_init_oracle", lgse_oracle},
      {"projection_recovery", projection_recovery},
      {"gaussian_fallback", gaussian_fallback},
      {"regularizer_gradients", gradients},
      {"drift_control", drift_control},
      {"fertility_inequality", fertility},
      {"masking_rate", masking},
      {"cli_determinism", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
