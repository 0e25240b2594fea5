#ifndef LGSE_EMBEDDING_H_
#define LGSE_EMBEDDING_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "lgse/morphseg.h"
#include "lgse/vocab.h"

namespace lgse {

using Vector = Eigen::VectorXd;
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// String key -> fixed-length vector. Keys are character n-grams (with the
// `<` `>` boundary markers) and, optionally, whole words.
class NgramVectorTable {
 public:
  explicit NgramVectorTable(std::size_t dim);

  // Throws ValidationError on a length mismatch, non-finite value or
  // duplicate key.
  void add(std::string key, Vector v);

  const Vector* find(std::string_view key) const;
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return keys_.size(); }
  // Keys in insertion (file) order.
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::size_t dim_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, Vector> vectors_;
};

// |V| x d_m model-space embeddings; row i belongs to token id i.
struct EmbeddingMatrix {
  RowMatrix rows;
  // Ids added beyond the pretrained vocabulary, ascending.
  std::vector<TokenId> new_token_ids;

  std::size_t size() const { return static_cast<std::size_t>(rows.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(rows.cols()); }
  bool is_new(TokenId id) const;
};

struct NgramRange {
  int min = 3;
  int max = 6;

  void validate() const;
};

// Contiguous codepoint n-grams of `<s>` for n in [nmin, nmax], in (n,
// position) order with later duplicates dropped.
std::vector<std::string> extract_ngrams(std::string_view s, int nmin, int nmax);

struct Composition {
  std::optional<Vector> vector;
  std::size_t hits = 0;
  std::size_t misses = 0;
};

// Mean of the table vectors of the string's n-grams, plus its whole-string
// vector when the table has one. Absent when nothing hits.
Composition morpheme_embedding(std::string_view m, const NgramVectorTable& table,
                               const NgramRange& range = {});

enum class InitMethod { kMorphAverage, kCharNgram, kGaussian };

std::string_view method_name(InitMethod m);

struct SourceEmbedding {
  std::optional<Vector> vector;
  InitMethod method = InitMethod::kGaussian;
  std::vector<std::string> morphemes_used;
  std::size_t hits = 0;
  std::size_t misses = 0;
};

// Morpheme-average source vector for a token, falling back to the token's
// own n-grams when it is unsegmentable or none of its morphemes hit.
SourceEmbedding token_embedding_source(std::string_view t,
                                       const MorphemeLexicon& lex,
                                       const NgramVectorTable& table,
                                       const NgramRange& range = {});

enum class ProjectionMode { kRidge, kProcrustes };

// Linear map W (d_m x d_f) from n-gram vector space into model space.
struct ProjectionMap {
  Eigen::MatrixXd matrix;
  double ridge_alpha = 0.0;
  std::size_t anchor_count = 0;
  double residual = 0.0;  // RMS over every anchor coordinate
  ProjectionMode mode = ProjectionMode::kRidge;

  std::size_t source_dim() const { return static_cast<std::size_t>(matrix.cols()); }
  std::size_t target_dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

struct Anchor {
  Vector source;
  Vector target;
};

// Ridge least squares: W^T = (F^T F + alpha I)^-1 F^T E.
ProjectionMap fit_projection(std::span<const Anchor> anchors, double alpha);

// Orthogonal W maximizing agreement; needs d_f == d_m.
ProjectionMap fit_procrustes(std::span<const Anchor> anchors);

Vector align(const Vector& e, const ProjectionMap& proj);

// Tokens that are whole-word keys of the table and ids below
// `original_rows` of the pretrained matrix.
std::vector<Anchor> collect_anchors(const NgramVectorTable& table,
                                    const HybridVocab& vocab,
                                    const EmbeddingMatrix& pretrained,
                                    std::vector<std::string>* tokens = nullptr);

struct GaussianModel {
  Vector mean;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd chol;  // lower triangular
  double shrinkage_gamma = 0.0;
  bool diagonal = false;

  std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
};

// Mean and shrunken covariance (1-g) S + g (tr S / d) I of the rows in
// scope, where S is the unbiased sample covariance.
GaussianModel fit_gaussian(const EmbeddingMatrix& e, bool original_rows_only,
                           double gamma, bool diagonal = false);

// mean + chol * z with z drawn from a generator seeded by `seed`.
Vector sample_fallback(const GaussianModel& g, std::uint64_t seed);

// Order-independent per-token seed.
std::uint64_t token_seed(std::uint64_t global_seed, std::string_view token);

struct InitRecord {
  std::string token;
  InitMethod method = InitMethod::kGaussian;
  Vector vector;
  std::vector<std::string> morphemes_used;
  std::size_t ngrams_hit = 0;
  std::size_t ngrams_missed = 0;
};

InitRecord init_new_token(std::string_view t, const MorphemeLexicon& lex,
                          const NgramVectorTable& table,
                          const ProjectionMap& proj, const GaussianModel& gauss,
                          std::uint64_t seed, const NgramRange& range = {});

// Appends rows for the records, which must cover vocab ids
// [e.size(), vocab.size()) exactly once each. Original rows are copied
// untouched.
EmbeddingMatrix expand_matrix(const EmbeddingMatrix& e,
                              std::span<const InitRecord> records,
                              const HybridVocab& vocab);

std::string audit_json(const InitRecord& r);

// --- file formats ------------------------------------------------------

// Text form: `count dim` header, then `key v1 ... v_dim` lines.
struct KeyedRows {
  std::vector<std::string> keys;
  RowMatrix rows;
};

KeyedRows parse_text_rows(std::string_view text);
std::string format_text_rows(std::span<const std::string> keys,
                             const RowMatrix& rows);

NgramVectorTable parse_vector_table(std::string_view text);
NgramVectorTable load_vector_table(const std::filesystem::path& path);

// Binary form: "LGSE", u32 version=1, u32 rows, u32 dim, then row-major
// little-endian float32.
std::string encode_binary_matrix(const RowMatrix& rows);
RowMatrix decode_binary_matrix(std::string_view bytes);

// Reads either form, detected by the magic bytes. Text keys, when present,
// are returned through `keys`.
RowMatrix load_matrix(const std::filesystem::path& path,
                      std::vector<std::string>* keys = nullptr);

}  // namespace lgse

#endif  // LGSE_EMBEDDING_H_
