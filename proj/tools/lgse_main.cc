// Command-line entry point. Every subcommand is a pure function of its
// input files, flags and seed; outputs are written atomically.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lgse/adapt.h"
#include "lgse/bench.h"
#include "lgse/embedding.h"
#include "lgse/io.h"
#include "lgse/morphseg.h"
#include "lgse/status.h"
#include "lgse/tokenizer.h"
#include "lgse/version.h"
#include "lgse/vocab.h"

namespace lgse::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 0;
  bool quiet = false;
};

// `--json` with an optional path: present -> JSON on stdout, path -> file.
struct JsonOut {
  CLI::Option* opt = nullptr;
  std::string path;

  void attach(CLI::App* app, const std::string& what) {
    opt = app->add_option("--json", path,
                          "emit " + what + " as JSON on stdout; with a path, "
                          "also write it there")
              ->expected(0, 1);
  }
  bool enabled() const { return opt != nullptr && opt->count() > 0; }

  void emit(const std::string& json, const Globals& g) const {
    if (!enabled()) return;
    if (!path.empty()) io::atomic_write(path, json);
    if (!g.quiet) std::cout << json;
  }
};

std::vector<std::string> read_corpus(const std::string& path) {
  const std::string text = io::read_file(path);
  std::vector<std::string> lines;
  for (auto l : io::split_lines(text)) lines.emplace_back(l);
  return lines;
}

MorphemeLexicon read_lexicon(const std::string& path, const std::string& freq) {
  if (path.empty()) return MorphemeLexicon{};
  LexiconLoadStats stats;
  MorphemeLexicon lex = load_lexicon(
      path, freq.empty() ? std::nullopt : std::optional<std::filesystem::path>(freq),
      &stats);
  if (stats.duplicates > 0) {
    std::cerr << "warning: " << stats.duplicates
              << " duplicate lexicon entries ignored (first occurrence kept)\n";
  }
  return lex;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  for (auto part : io::split(s, ',')) out.emplace_back(part);
  return out;
}

// ---------------------------------------------------------------- vocab

struct VocabTrainArgs {
  std::string corpus, lexicon, freq, out, specials;
  std::size_t size = 0;
  double ratio = 0.5;
  bool plain = false;
  JsonOut json;
};

int cmd_vocab_train(const VocabTrainArgs& a, const Globals& g) {
  VocabConfig cfg;
  cfg.size = a.size;
  cfg.morph_ratio = a.plain ? 0.0 : a.ratio;
  if (!a.specials.empty()) cfg.special_tokens = split_csv(a.specials);
  cfg.validate();

  const auto corpus = read_corpus(a.corpus);
  const MorphemeLexicon lex = a.plain ? MorphemeLexicon{} : read_lexicon(a.lexicon, a.freq);
  BuildStats st;
  const HybridVocab vocab = build_hybrid_vocab(corpus, lex, cfg, &st);
  io::atomic_write(a.out, vocab.to_json());

  ordered_json s;
  s["size"] = vocab.size();
  s["special"] = vocab.count(TokenKind::kSpecial);
  s["char"] = vocab.count(TokenKind::kChar);
  s["morph"] = vocab.count(TokenKind::kMorph);
  s["bpe"] = vocab.count(TokenKind::kBpe);
  s["morph_slots"] = st.morph_slots;
  s["merges"] = vocab.merges().size();
  if (a.json.enabled()) {
    a.json.emit(s.dump() + "\n", g);
  } else if (!g.quiet) {
    std::cout << "wrote " << a.out << ": size=" << vocab.size()
              << " special=" << s["special"] << " char=" << s["char"]
              << " morph=" << s["morph"] << " bpe=" << s["bpe"]
              << " merges=" << s["merges"] << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- init

struct InitArgs {
  std::string vocab, lexicon, freq, vectors, pretrained, anchor_matrix, projection;
  std::string out, out_text, audit;
  double alpha = 1e-3;
  double gamma = 0.1;
  bool diag = false;
  bool procrustes = false;
  int nmin = 3;
  int nmax = 6;
  JsonOut json;
};

int cmd_init(const InitArgs& a, const Globals& g) {
  const NgramRange range{a.nmin, a.nmax};
  range.validate();
  const HybridVocab vocab = load_vocab(a.vocab);
  const MorphemeLexicon lex = read_lexicon(a.lexicon, a.freq);
  const NgramVectorTable table = load_vector_table(a.vectors);

  std::vector<std::string> keys;
  EmbeddingMatrix pretrained;
  pretrained.rows = load_matrix(a.pretrained, &keys);
  if (pretrained.size() > vocab.size()) {
    throw ValidationError("pretrained matrix has more rows than the vocabulary");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] != vocab.tokens()[i]) {
      throw ValidationError("pretrained row " + std::to_string(i) + " is keyed '" +
                            keys[i] + "' but vocab id " + std::to_string(i) +
                            " is '" + vocab.tokens()[i] + "'");
    }
  }

  const GaussianModel gauss = fit_gaussian(pretrained, true, a.gamma, a.diag);

  ProjectionMap proj;
  if (!a.projection.empty()) {
    proj.matrix = load_matrix(a.projection);
    proj.ridge_alpha = a.alpha;
  } else {
    std::vector<std::string> anchor_tokens;
    std::vector<Anchor> anchors = collect_anchors(table, vocab, pretrained, &anchor_tokens);
    if (!a.anchor_matrix.empty()) {
      std::vector<std::string> extra_keys;
      const RowMatrix extra = load_matrix(a.anchor_matrix, &extra_keys);
      if (static_cast<std::size_t>(extra.cols()) != pretrained.dim()) {
        throw ValidationError("anchor matrix dim " + std::to_string(extra.cols()) +
                              " differs from pretrained dim " +
                              std::to_string(pretrained.dim()));
      }
      std::set<std::string> seen(anchor_tokens.begin(), anchor_tokens.end());
      for (std::size_t i = 0; i < extra_keys.size(); ++i) {
        if (seen.contains(extra_keys[i])) continue;
        if (const Vector* v = table.find(extra_keys[i])) {
          anchors.push_back({*v, extra.row(static_cast<Eigen::Index>(i)).transpose()});
          seen.insert(extra_keys[i]);
        }
      }
    }
    if (anchors.empty()) {
      throw ValidationError(
          "no anchor tokens shared by the vector table and the pretrained "
          "vocabulary; pass --anchor-matrix or --projection");
    }
    proj = a.procrustes ? fit_procrustes(anchors) : fit_projection(anchors, a.alpha);
  }
  if (proj.target_dim() != pretrained.dim()) {
    throw ValidationError("projection target dim " + std::to_string(proj.target_dim()) +
                          " differs from pretrained dim " +
                          std::to_string(pretrained.dim()));
  }

  std::vector<InitRecord> records;
  std::map<std::string, std::size_t> per_method;
  std::string audit;
  for (std::size_t id = pretrained.size(); id < vocab.size(); ++id) {
    const std::string& tok = vocab.tokens()[id];
    records.push_back(init_new_token(tok, lex, table, proj, gauss,
                                     token_seed(g.seed, tok), range));
    ++per_method[std::string(method_name(records.back().method))];
    audit += audit_json(records.back());
    audit.push_back('\n');
  }
  const EmbeddingMatrix expanded = expand_matrix(pretrained, records, vocab);

  io::atomic_write(a.out, encode_binary_matrix(expanded.rows));
  if (!a.out_text.empty()) {
    io::atomic_write(a.out_text, format_text_rows(vocab.tokens(), expanded.rows));
  }
  if (!a.audit.empty()) io::atomic_write(a.audit, audit);

  ordered_json s;
  s["rows"] = expanded.size();
  s["dim"] = expanded.dim();
  s["original_rows"] = pretrained.size();
  s["new_rows"] = records.size();
  s["anchors"] = proj.anchor_count;
  s["projection_residual"] = proj.residual;
  for (auto m : {InitMethod::kMorphAverage, InitMethod::kCharNgram, InitMethod::kGaussian}) {
    const std::string name(method_name(m));
    s[name] = per_method.contains(name) ? per_method[name] : 0;
  }
  if (a.json.enabled()) {
    a.json.emit(s.dump() + "\n", g);
  } else if (!g.quiet) {
    std::cout << "wrote " << a.out << ": " << s["rows"] << "x" << s["dim"]
              << " new=" << s["new_rows"] << " morph_average=" << s["morph_average"]
              << " char_ngram=" << s["char_ngram"] << " gaussian=" << s["gaussian"]
              << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- tokenize

struct TokenizeArgs {
  std::string vocab, lexicon, freq, input, output;
  std::string format = "ids";
  JsonOut json;
};

int cmd_tokenize(const TokenizeArgs& a, const Globals& g) {
  const HybridVocab vocab = load_vocab(a.vocab);
  const MorphemeLexicon lex = read_lexicon(a.lexicon, a.freq);
  const Tokenizer tok(vocab, lex);
  std::string out;
  ordered_json docs = ordered_json::array();
  for (const auto& line : read_corpus(a.input)) {
    const TokenSequence seq = tok.encode(line);
    for (std::size_t i = 0; i < seq.ids.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += a.format == "tokens" ? vocab.token(seq.ids[i]) : std::to_string(seq.ids[i]);
    }
    out.push_back('\n');
    if (a.json.enabled()) {
      ordered_json d;
      d["ids"] = seq.ids;
      d["word_spans"] = seq.word_spans;
      docs.push_back(std::move(d));
    }
  }
  if (!a.output.empty()) {
    io::atomic_write(a.output, out);
  } else if (!g.quiet && !a.json.enabled()) {
    std::cout << out;
  }
  a.json.emit(docs.dump() + "\n", g);
  return 0;
}

// ---------------------------------------------------------------- adapt

struct AdaptArgs {
  std::string vocab, lexicon, freq, corpus, matrix, out, report;
  std::size_t original_rows = 0;
  std::string optimizer = "adam";
  AdaptConfig cfg;
  JsonOut json;
};

int cmd_adapt(AdaptArgs a, const Globals& g) {
  a.cfg.seed = g.seed;
  a.cfg.optimizer = a.optimizer == "sgd" ? OptimizerKind::kSgd : OptimizerKind::kAdam;
  a.cfg.validate();
  const HybridVocab vocab = load_vocab(a.vocab);
  const MorphemeLexicon lex = read_lexicon(a.lexicon, a.freq);
  const Tokenizer tok(vocab, lex);
  EmbeddingMatrix e;
  e.rows = load_matrix(a.matrix);
  if (e.size() != vocab.size()) {
    throw ValidationError("matrix has " + std::to_string(e.size()) +
                          " rows, vocabulary has " + std::to_string(vocab.size()));
  }
  if (a.original_rows > e.size()) {
    throw ValidationError("--original-rows exceeds the matrix row count");
  }
  for (std::size_t id = a.original_rows; id < e.size(); ++id) {
    e.new_token_ids.push_back(static_cast<TokenId>(id));
  }
  const AnchorMap anchors = snapshot_anchors(e);
  const auto corpus = read_corpus(a.corpus);
  const AdaptReport report = adapt(corpus, tok, std::move(e), anchors, a.cfg);

  io::atomic_write(a.out, encode_binary_matrix(report.final_matrix.rows));
  const std::string jsonl = report.to_jsonl();
  if (!a.report.empty()) io::atomic_write(a.report, jsonl);
  if (a.json.enabled()) {
    a.json.emit(jsonl, g);
  } else if (!g.quiet) {
    for (const auto& s : report.epochs) {
      std::cout << "epoch " << s.epoch << " task_loss=" << s.task_loss
                << " reg_loss=" << s.reg_loss << " mean_drift=" << s.mean_drift << "\n";
    }
    std::cout << "wrote " << a.out << "\n";
  }
  return 0;
}

// ------------------------------------------------------- stats / bench

struct StatsArgs {
  std::string vocab, lexicon, freq, corpus;
  JsonOut json;
};

int cmd_stats_fertility(const StatsArgs& a, const Globals& g) {
  const HybridVocab vocab = load_vocab(a.vocab);
  const MorphemeLexicon lex = read_lexicon(a.lexicon, a.freq);
  const Tokenizer tok(vocab, lex);
  const FertilityReport r = token_fertility(read_corpus(a.corpus), tok);
  if (a.json.enabled()) {
    a.json.emit(fertility_json(r), g);
  } else if (!g.quiet) {
    std::cout << "words=" << r.total_words << " tokens=" << r.total_tokens
              << " tf=" << io::format_double(r.tf)
              << " unk_rate=" << io::format_double(r.unk_rate) << "\n";
  }
  return 0;
}

struct BenchArgs {
  std::string vocab, lexicon, freq, corpus;
  std::size_t reps = 5;
  std::size_t warmup = 1;
  JsonOut json;
};

int cmd_bench_latency(const BenchArgs& a, const Globals& g) {
  const HybridVocab vocab = load_vocab(a.vocab);
  const MorphemeLexicon lex = read_lexicon(a.lexicon, a.freq);
  const Tokenizer tok(vocab, lex);
  const LatencyReport r = latency_benchmark(read_corpus(a.corpus), tok, a.reps, a.warmup);
  if (a.json.enabled()) {
    a.json.emit(latency_json(r), g);
  } else if (!g.quiet) {
    std::cout << "reps=" << r.repetitions << " chars=" << r.total_chars
              << " tokens=" << r.total_tokens
              << " mean_ns_per_kchar=" << io::format_double(r.mean_ns_per_kchar)
              << " p50=" << io::format_double(r.p50_ns_per_kchar)
              << " p95=" << io::format_double(r.p95_ns_per_kchar) << "\n";
  }
  return 0;
}

struct CompareArgs {
  std::string corpus, text_out;
  std::vector<std::string> tokenizers;
  std::size_t reps = 0;
  std::size_t warmup = 0;
  JsonOut json;
};

int cmd_compare(const CompareArgs& a, const Globals& g) {
  if (a.tokenizers.size() < 2) {
    throw ArgumentError("compare needs at least two --tokenizer name=vocab[,lexicon]");
  }
  struct Loaded {
    std::string name;
    HybridVocab vocab;
    MorphemeLexicon lex;
  };
  std::vector<std::unique_ptr<Loaded>> loaded;
  for (const auto& spec : a.tokenizers) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ArgumentError("--tokenizer expects name=vocab[,lexicon], got '" + spec + "'");
    }
    auto l = std::make_unique<Loaded>();
    l->name = spec.substr(0, eq);
    const auto paths = split_csv(spec.substr(eq + 1));
    l->vocab = load_vocab(paths.at(0));
    if (paths.size() > 1) l->lex = read_lexicon(paths[1], "");
    loaded.push_back(std::move(l));
  }
  std::vector<std::unique_ptr<Tokenizer>> toks;
  std::vector<NamedTokenizer> named;
  for (const auto& l : loaded) {
    toks.push_back(std::make_unique<Tokenizer>(l->vocab, l->lex));
    named.push_back({l->name, toks.back().get()});
  }
  const Comparison c = compare(read_corpus(a.corpus), named, a.reps, a.warmup);
  const std::string text = c.to_text();
  if (!a.text_out.empty()) io::atomic_write(a.text_out, text);
  if (a.json.enabled()) {
    a.json.emit(c.to_json(), g);
  } else if (!g.quiet) {
    std::cout << text;
  }
  return 0;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LGSE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ArgumentError(std::string("LGSE_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Morphology-aware hybrid vocabularies, boundary-respecting "
               "tokenization and embedding initialization for new tokens"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Globals g;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "random seed (default: $LGSE_SEED or 0)");
  app.add_flag("--quiet", g.quiet, "suppress stdout summaries");

  auto add_lexicon = [](CLI::App* sub, std::string& lex, std::string& freq, bool required) {
    auto* o = sub->add_option("--lexicon", lex, "morpheme lexicon TSV");
    if (required) o->required();
    sub->add_option("--morph-freq", freq, "optional morpheme<TAB>count file");
  };

  // vocab train
  auto* vocab_cmd = app.add_subcommand("vocab", "vocabulary construction");
  vocab_cmd->require_subcommand(1);
  VocabTrainArgs vt;
  auto* train = vocab_cmd->add_subcommand("train", "build a hybrid vocabulary");
  train->add_option("--corpus", vt.corpus, "training text, one document per line")->required();
  add_lexicon(train, vt.lexicon, vt.freq, false);
  train->add_option("--size", vt.size, "total vocabulary size s")->required();
  train->add_option("--morph-ratio", vt.ratio, "share r of non-base slots for morphemes")
      ->check(CLI::Range(0.0, 1.0));
  train->add_option("--special", vt.specials, "comma-separated special tokens");
  train->add_flag("--plain", vt.plain, "whole-word BPE comparator (no morphemes)");
  train->add_option("--out", vt.out, "output vocab JSON")->required();
  vt.json.attach(train, "the build summary");

  // init
  InitArgs ia;
  auto* init = app.add_subcommand("init", "initialize embeddings for new tokens");
  init->add_option("--vocab", ia.vocab, "vocab JSON")->required();
  add_lexicon(init, ia.lexicon, ia.freq, true);
  init->add_option("--vectors", ia.vectors, "n-gram vector table (text)")->required();
  init->add_option("--pretrained", ia.pretrained,
                   "pretrained matrix for vocab ids [0, rows) (text or binary)")
      ->required();
  init->add_option("--anchor-matrix", ia.anchor_matrix,
                   "extra keyed text matrix supplying projection anchors");
  init->add_option("--projection", ia.projection, "precomputed d_m x d_f projection");
  init->add_option("--alpha", ia.alpha, "ridge strength")->check(CLI::NonNegativeNumber);
  init->add_option("--gamma", ia.gamma, "covariance shrinkage")->check(CLI::Range(0.0, 1.0));
  init->add_flag("--diag", ia.diag, "diagonal covariance for the Gaussian fallback");
  init->add_flag("--procrustes", ia.procrustes, "orthogonal projection instead of ridge");
  init->add_option("--nmin", ia.nmin, "shortest n-gram")->check(CLI::PositiveNumber);
  init->add_option("--nmax", ia.nmax, "longest n-gram")->check(CLI::PositiveNumber);
  init->add_option("--out", ia.out, "expanded matrix (binary)")->required();
  init->add_option("--out-text", ia.out_text, "expanded matrix (text)");
  init->add_option("--audit", ia.audit, "per-token audit JSONL");
  ia.json.attach(init, "the init summary");

  // tokenize
  TokenizeArgs ta;
  auto* tokenize = app.add_subcommand("tokenize", "encode text, one line per document");
  tokenize->add_option("--vocab", ta.vocab, "vocab JSON")->required();
  add_lexicon(tokenize, ta.lexicon, ta.freq, false);
  tokenize->add_option("--input", ta.input, "input text")->required();
  tokenize->add_option("--output", ta.output, "output file (default stdout)");
  tokenize->add_option("--format", ta.format, "ids or tokens")
      ->check(CLI::IsMember({"ids", "tokens"}));
  ta.json.attach(tokenize, "ids and word spans");

  // adapt
  AdaptArgs aa;
  auto* adapt_cmd = app.add_subcommand("adapt", "adapt new embeddings with the drift penalty");
  adapt_cmd->add_option("--vocab", aa.vocab, "vocab JSON")->required();
  add_lexicon(adapt_cmd, aa.lexicon, aa.freq, false);
  adapt_cmd->add_option("--corpus", aa.corpus, "adaptation text")->required();
  adapt_cmd->add_option("--matrix", aa.matrix, "expanded matrix")->required();
  adapt_cmd->add_option("--original-rows", aa.original_rows,
                        "rows [0, N) are pretrained and stay frozen")
      ->required();
  adapt_cmd->add_option("--lambda", aa.cfg.lambda, "drift penalty strength")
      ->check(CLI::NonNegativeNumber);
  adapt_cmd->add_option("--mask-prob", aa.cfg.mask_prob)->check(CLI::Range(0.0, 1.0));
  adapt_cmd->add_option("--max-len", aa.cfg.max_len)->check(CLI::Range(2, 1 << 20));
  adapt_cmd->add_option("--batch-size", aa.cfg.batch_size)->check(CLI::PositiveNumber);
  adapt_cmd->add_option("--epochs", aa.cfg.epochs);
  adapt_cmd->add_option("--lr", aa.cfg.lr)->check(CLI::PositiveNumber);
  adapt_cmd->add_option("--weight-decay", aa.cfg.weight_decay)->check(CLI::NonNegativeNumber);
  adapt_cmd->add_option("--optimizer", aa.optimizer)->check(CLI::IsMember({"adam", "sgd"}));
  adapt_cmd->add_option("--out", aa.out, "final matrix (binary)")->required();
  adapt_cmd->add_option("--report", aa.report, "per-epoch JSONL report");
  aa.json.attach(adapt_cmd, "the per-epoch report");

  // stats fertility
  auto* stats = app.add_subcommand("stats", "corpus statistics");
  stats->require_subcommand(1);
  StatsArgs sa;
  auto* fert = stats->add_subcommand("fertility", "token fertility (tokens per word)");
  fert->add_option("--vocab", sa.vocab, "vocab JSON")->required();
  add_lexicon(fert, sa.lexicon, sa.freq, false);
  fert->add_option("--corpus", sa.corpus, "text corpus")->required();
  sa.json.attach(fert, "the fertility report");

  // bench latency
  auto* bench = app.add_subcommand("bench", "benchmarks");
  bench->require_subcommand(1);
  BenchArgs ba;
  auto* lat = bench->add_subcommand("latency", "encode latency per 1,000 characters");
  lat->add_option("--vocab", ba.vocab, "vocab JSON")->required();
  add_lexicon(lat, ba.lexicon, ba.freq, false);
  lat->add_option("--corpus", ba.corpus, "text corpus")->required();
  lat->add_option("--reps", ba.reps, "timed repetitions")->check(CLI::PositiveNumber);
  lat->add_option("--warmup", ba.warmup, "discarded warmup runs");
  ba.json.attach(lat, "the latency report");

  // compare
  CompareArgs ca;
  auto* cmp = app.add_subcommand("compare", "side-by-side tokenizer comparison");
  cmp->add_option("--corpus", ca.corpus, "text corpus")->required();
  cmp->add_option("--tokenizer", ca.tokenizers, "name=vocab[,lexicon]; repeat")->required();
  cmp->add_option("--reps", ca.reps, "timed repetitions per tokenizer (0: no timing)");
  cmp->add_option("--warmup", ca.warmup, "discarded warmup runs");
  cmp->add_option("--text", ca.text_out, "also write the aligned table here");
  ca.json.attach(cmp, "the comparison table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }

  try {
    g.seed = seed_flag ? *seed_flag : default_seed();
    if (train->parsed()) {
      if (!vt.plain && vt.lexicon.empty()) {
        std::cerr << "--lexicon is required unless --plain is given\n"
                  << train->help();
        return static_cast<int>(ExitCode::kUsage);
      }
      return cmd_vocab_train(vt, g);
    }
    if (init->parsed()) return cmd_init(ia, g);
    if (tokenize->parsed()) return cmd_tokenize(ta, g);
    if (adapt_cmd->parsed()) return cmd_adapt(aa, g);
    if (fert->parsed()) return cmd_stats_fertility(sa, g);
    if (lat->parsed()) return cmd_bench_latency(ba, g);
    if (cmp->parsed()) return cmd_compare(ca, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kValidation);
  }
  return static_cast<int>(ExitCode::kUsage);
}

}  // namespace
}  // namespace lgse::cli

int main(int argc, char** argv) { return lgse::cli::run(argc, argv); }
