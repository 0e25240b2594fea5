#include "lgse/embedding.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lgse/status.h"
#include "lgse/utf8.h"

namespace lgse {

NgramVectorTable::NgramVectorTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ValidationError("vector table dimension must be >= 1");
}

void NgramVectorTable::add(std::string key, Vector v) {
  if (static_cast<std::size_t>(v.size()) != dim_) {
    throw ValidationError("vector for '" + key + "' has length " +
                          std::to_string(v.size()) + ", expected " +
                          std::to_string(dim_));
  }
  if (!v.allFinite()) {
    throw ValidationError("non-finite value in vector for '" + key + "'");
  }
  if (vectors_.contains(key)) {
    throw ValidationError("duplicate vector key '" + key + "'");
  }
  keys_.push_back(key);
  vectors_.emplace(std::move(key), std::move(v));
}

const Vector* NgramVectorTable::find(std::string_view key) const {
  auto it = vectors_.find(std::string(key));
  return it == vectors_.end() ? nullptr : &it->second;
}

bool EmbeddingMatrix::is_new(TokenId id) const {
  return std::binary_search(new_token_ids.begin(), new_token_ids.end(), id);
}

void NgramRange::validate() const {
  if (min < 1 || max < min) {
    throw ArgumentError("n-gram range needs 1 <= nmin <= nmax");
  }
}

std::vector<std::string> extract_ngrams(std::string_view s, int nmin,
                                        int nmax) {
  if (s.empty()) throw ArgumentError("cannot extract n-grams of an empty string");
  NgramRange{nmin, nmax}.validate();
  std::string wrapped;
  wrapped.reserve(s.size() + 2);
  wrapped.push_back('<');
  wrapped.append(s);
  wrapped.push_back('>');
  const auto chars = utf8::split_chars(wrapped);
  std::vector<std::string> grams;
  std::unordered_set<std::string> seen;
  for (int n = nmin; n <= nmax; ++n) {
    const auto len = static_cast<std::size_t>(n);
    if (len > chars.size()) break;
    for (std::size_t i = 0; i + len <= chars.size(); ++i) {
      const char* begin = chars[i].data();
      const char* end = chars[i + len - 1].data() + chars[i + len - 1].size();
      std::string gram(begin, end);
      if (seen.insert(gram).second) grams.push_back(std::move(gram));
    }
  }
  return grams;
}

Composition morpheme_embedding(std::string_view m, const NgramVectorTable& table,
                               const NgramRange& range) {
  if (m.empty()) throw ArgumentError("empty morpheme");
  Composition out;
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(table.dim()));
  bool whole_is_gram = false;
  for (const auto& gram : extract_ngrams(m, range.min, range.max)) {
    if (gram == m) whole_is_gram = true;
    if (const Vector* v = table.find(gram)) {
      sum += *v;
      ++out.hits;
    } else {
      ++out.misses;
    }
  }
  if (!whole_is_gram) {
    if (const Vector* v = table.find(m)) {
      sum += *v;
      ++out.hits;
    }
  }
  if (out.hits > 0) out.vector = sum / static_cast<double>(out.hits);
  return out;
}

std::string_view method_name(InitMethod m) {
  switch (m) {
    case InitMethod::kMorphAverage: return "morph_average";
    case InitMethod::kCharNgram: return "char_ngram";
    case InitMethod::kGaussian: return "gaussian";
  }
  return "?";
}

SourceEmbedding token_embedding_source(std::string_view t,
                                       const MorphemeLexicon& lex,
                                       const NgramVectorTable& table,
                                       const NgramRange& range) {
  if (t.empty()) throw ArgumentError("empty token");
  SourceEmbedding out;
  const SegmentedWord seg = segment(t, lex);
  if (seg.segmentable) {
    Vector sum = Vector::Zero(static_cast<Eigen::Index>(table.dim()));
    for (const auto& m : seg.morphemes) {
      Composition c = morpheme_embedding(m, table, range);
      out.hits += c.hits;
      out.misses += c.misses;
      if (c.vector) {
        sum += *c.vector;
        out.morphemes_used.push_back(m);
      }
    }
    if (!out.morphemes_used.empty()) {
      out.vector = sum / static_cast<double>(out.morphemes_used.size());
      out.method = InitMethod::kMorphAverage;
      return out;
    }
  }
  Composition whole = morpheme_embedding(t, table, range);
  out.hits += whole.hits;
  out.misses += whole.misses;
  if (whole.vector) {
    out.vector = std::move(whole.vector);
    out.method = InitMethod::kCharNgram;
  }
  return out;
}

namespace {

void check_anchors(std::span<const Anchor> anchors) {
  if (anchors.empty()) throw ValidationError("projection needs at least one anchor");
  const auto df = anchors[0].source.size();
  const auto dm = anchors[0].target.size();
  if (df == 0 || dm == 0) throw ValidationError("zero-length anchor vectors");
  for (const auto& a : anchors) {
    if (a.source.size() != df || a.target.size() != dm) {
      throw ValidationError("anchor vectors differ in length");
    }
    if (!a.source.allFinite() || !a.target.allFinite()) {
      throw ValidationError("non-finite anchor vector");
    }
  }
}

void stack(std::span<const Anchor> anchors, Eigen::MatrixXd& f,
           Eigen::MatrixXd& e) {
  const auto n = static_cast<Eigen::Index>(anchors.size());
  f.resize(n, anchors[0].source.size());
  e.resize(n, anchors[0].target.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    f.row(i) = anchors[static_cast<std::size_t>(i)].source.transpose();
    e.row(i) = anchors[static_cast<std::size_t>(i)].target.transpose();
  }
}

double rms_residual(const Eigen::MatrixXd& f, const Eigen::MatrixXd& e,
                    const Eigen::MatrixXd& w) {
  const Eigen::MatrixXd r = f * w.transpose() - e;
  return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

}  // namespace

ProjectionMap fit_projection(std::span<const Anchor> anchors, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ArgumentError("ridge alpha must be a finite value >= 0");
  }
  check_anchors(anchors);
  Eigen::MatrixXd f, e;
  stack(anchors, f, e);
  const auto df = f.cols();
  Eigen::MatrixXd wt;
  if (alpha == 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(f);
    if (qr.rank() < df) {
      throw ValidationError(
          "anchor system is singular with alpha=0; use alpha > 0 or more "
          "linearly independent anchors");
    }
    wt = qr.solve(e);
  } else {
    Eigen::MatrixXd a = f.transpose() * f;
    a.diagonal().array() += alpha;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) {
      throw ValidationError("ridge normal equations are not positive definite");
    }
    wt = llt.solve(f.transpose() * e);
  }
  ProjectionMap p;
  p.matrix = wt.transpose();
  p.ridge_alpha = alpha;
  p.anchor_count = anchors.size();
  p.residual = rms_residual(f, e, p.matrix);
  p.mode = ProjectionMode::kRidge;
  return p;
}

ProjectionMap fit_procrustes(std::span<const Anchor> anchors) {
  check_anchors(anchors);
  Eigen::MatrixXd f, e;
  stack(anchors, f, e);
  if (f.cols() != e.cols()) {
    throw ValidationError("orthogonal projection needs equal source and target dims");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e.transpose() * f,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProjectionMap p;
  p.matrix = svd.matrixU() * svd.matrixV().transpose();
  p.anchor_count = anchors.size();
  p.residual = rms_residual(f, e, p.matrix);
  p.mode = ProjectionMode::kProcrustes;
  return p;
}

Vector align(const Vector& e, const ProjectionMap& proj) {
  if (static_cast<std::size_t>(e.size()) != proj.source_dim()) {
    throw ValidationError("cannot project a vector of length " +
                          std::to_string(e.size()) + " with a map expecting " +
                          std::to_string(proj.source_dim()));
  }
  return proj.matrix * e;
}

std::vector<Anchor> collect_anchors(const NgramVectorTable& table,
                                    const HybridVocab& vocab,
                                    const EmbeddingMatrix& pretrained,
                                    std::vector<std::string>* tokens) {
  std::vector<Anchor> anchors;
  const std::size_t n = std::min(pretrained.size(), vocab.size());
  for (std::size_t id = 0; id < n; ++id) {
    if (pretrained.is_new(static_cast<TokenId>(id))) continue;
    const std::string& tok = vocab.tokens()[id];
    if (const Vector* v = table.find(tok)) {
      anchors.push_back({*v, pretrained.rows.row(static_cast<Eigen::Index>(id))
                                 .transpose()});
      if (tokens) tokens->push_back(tok);
    }
  }
  return anchors;
}

GaussianModel fit_gaussian(const EmbeddingMatrix& e, bool original_rows_only,
                           double gamma, bool diagonal) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ArgumentError("shrinkage gamma must lie in [0, 1]");
  }
  std::vector<Eigen::Index> scope;
  for (Eigen::Index i = 0; i < e.rows.rows(); ++i) {
    if (original_rows_only && e.is_new(static_cast<TokenId>(i))) continue;
    scope.push_back(i);
  }
  if (scope.size() < 2) {
    throw ValidationError("covariance needs at least 2 rows in scope");
  }
  const auto d = e.rows.cols();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(scope.size()), d);
  for (std::size_t k = 0; k < scope.size(); ++k) {
    x.row(static_cast<Eigen::Index>(k)) = e.rows.row(scope[k]);
  }
  if (!x.allFinite()) throw ValidationError("non-finite embedding entries");

  GaussianModel g;
  g.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - g.mean.transpose();
  Eigen::MatrixXd emp = centered.transpose() * centered /
                        static_cast<double>(scope.size() - 1);
  const double avg_var = emp.trace() / static_cast<double>(d);
  g.cov = (1.0 - gamma) * emp;
  g.cov.diagonal().array() += gamma * avg_var;
  g.shrinkage_gamma = gamma;
  g.diagonal = diagonal;
  if (diagonal) {
    const Vector diag = g.cov.diagonal();
    g.cov = diag.asDiagonal();
    if ((diag.array() <= 0.0).any()) {
      throw ValidationError(
          "covariance is not positive definite after shrinkage; increase "
          "gamma");
    }
    g.chol = diag.cwiseSqrt().asDiagonal();
    return g;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g.cov);
  if (llt.info() != Eigen::Success) {
    throw ValidationError(
        "Cholesky factorization failed after shrinkage; increase gamma");
  }
  g.chol = llt.matrixL();
  return g;
}

Vector sample_fallback(const GaussianModel& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Box-Muller on 53-bit uniforms; the standard library's normal
  // distribution is implementation-defined, this stays portable.
  auto uniform = [&rng] {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  };
  const auto d = g.mean.size();
  Vector z(d);
  for (Eigen::Index i = 0; i < d; i += 2) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * M_PI * uniform();
    z(i) = r * std::cos(theta);
    if (i + 1 < d) z(i + 1) = r * std::sin(theta);
  }
  return g.mean + g.chol.triangularView<Eigen::Lower>() * z;
}

std::uint64_t token_seed(std::uint64_t global_seed, std::string_view token) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = h ^ (global_seed + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

InitRecord init_new_token(std::string_view t, const MorphemeLexicon& lex,
                          const NgramVectorTable& table,
                          const ProjectionMap& proj, const GaussianModel& gauss,
                          std::uint64_t seed, const NgramRange& range) {
  if (proj.source_dim() != table.dim()) {
    throw ValidationError("projection expects " +
                          std::to_string(proj.source_dim()) +
                          "-dim sources but the vector table has dim " +
                          std::to_string(table.dim()));
  }
  if (proj.target_dim() != gauss.dim()) {
    throw ValidationError("projection target dim " +
                          std::to_string(proj.target_dim()) +
                          " differs from the embedding dim " +
                          std::to_string(gauss.dim()));
  }
  SourceEmbedding src = token_embedding_source(t, lex, table, range);
  InitRecord rec;
  rec.token = std::string(t);
  rec.ngrams_hit = src.hits;
  rec.ngrams_missed = src.misses;
  rec.morphemes_used = std::move(src.morphemes_used);
  if (src.vector) {
    rec.method = src.method;
    rec.vector = align(*src.vector, proj);
  } else {
    rec.method = InitMethod::kGaussian;
    rec.vector = sample_fallback(gauss, seed);
  }
  return rec;
}

EmbeddingMatrix expand_matrix(const EmbeddingMatrix& e,
                              std::span<const InitRecord> records,
                              const HybridVocab& vocab) {
  const std::size_t original = e.size();
  if (vocab.size() < original) {
    throw ValidationError("vocabulary is smaller than the pretrained matrix");
  }
  const std::size_t total = vocab.size();
  std::vector<int> covered(total - original, 0);
  std::vector<std::string> problems;
  std::vector<std::pair<std::size_t, const InitRecord*>> placed;
  for (const auto& r : records) {
    auto id = vocab.find(r.token);
    if (!id) {
      problems.push_back("'" + r.token + "' not in vocabulary");
      continue;
    }
    const auto idx = static_cast<std::size_t>(*id);
    if (idx < original) {
      problems.push_back("id " + std::to_string(idx) + " overlaps original rows");
      continue;
    }
    if (static_cast<std::size_t>(r.vector.size()) != e.dim()) {
      problems.push_back("id " + std::to_string(idx) + " has wrong dimension");
      continue;
    }
    if (++covered[idx - original] == 2) {
      problems.push_back("id " + std::to_string(idx) + " initialized twice");
    }
    placed.emplace_back(idx, &r);
  }
  for (std::size_t k = 0; k < covered.size(); ++k) {
    if (covered[k] == 0) {
      problems.push_back("id " + std::to_string(original + k) + " not covered");
    }
  }
  if (!problems.empty()) {
    std::string msg = "cannot expand matrix:";
    for (std::size_t i = 0; i < problems.size() && i < 20; ++i) {
      msg += " " + problems[i] + ";";
    }
    if (problems.size() > 20) msg += " ...";
    throw ValidationError(msg);
  }
  EmbeddingMatrix out;
  out.rows.resize(static_cast<Eigen::Index>(total), e.rows.cols());
  out.rows.topRows(e.rows.rows()) = e.rows;
  for (const auto& [idx, r] : placed) {
    out.rows.row(static_cast<Eigen::Index>(idx)) = r->vector.transpose();
  }
  out.new_token_ids = e.new_token_ids;
  for (std::size_t id = original; id < total; ++id) {
    out.new_token_ids.push_back(static_cast<TokenId>(id));
  }
  std::sort(out.new_token_ids.begin(), out.new_token_ids.end());
  return out;
}

std::string audit_json(const InitRecord& r) {
  nlohmann::ordered_json j;
  j["token"] = r.token;
  j["method"] = method_name(r.method);
  j["ngrams_hit"] = r.ngrams_hit;
  j["ngrams_missed"] = r.ngrams_missed;
  j["morphemes_used"] = r.morphemes_used;
  return j.dump();
}

}  // namespace lgse
