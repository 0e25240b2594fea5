#ifndef LGSE_ADAPT_H_
#define LGSE_ADAPT_H_

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lgse/embedding.h"
#include "lgse/tokenizer.h"

namespace lgse {

enum class OptimizerKind { kSgd, kAdam };

// Defaults: mask probability 0.15, max length 256, batch 32, 10 epochs,
// constant lr 5e-5, Adam, decoupled weight decay 0.01.
struct AdaptConfig {
  double lambda = 0.0;
  double mask_prob = 0.15;
  std::size_t max_len = 256;
  std::size_t batch_size = 32;
  std::size_t epochs = 10;
  double lr = 5e-5;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
  std::uint64_t seed = 0;

  void validate() const;
};

// Per-new-token drift anchors (the vectors each new row started from).
using AnchorMap = std::map<TokenId, Vector>;

AnchorMap snapshot_anchors(const EmbeddingMatrix& e);

// lambda * sum over new tokens of ||e - e_init||^2.
double reg_loss(const EmbeddingMatrix& e, const AnchorMap& anchors,
                double lambda);

Vector reg_grad(const Vector& e, const Vector& e_init, double lambda);

// Ids the masker needs: padding, the mask symbol, and which ids are special.
struct MaskingSpec {
  TokenId pad_id = 0;
  TokenId mask_id = 0;
  std::vector<bool> special;

  // Throws ValidationError if the vocab lacks <pad> or <mask>.
  static MaskingSpec from_vocab(const HybridVocab& vocab);
  bool is_special(TokenId id) const;
};

struct MaskedSequence {
  std::vector<TokenId> ids;  // padded/truncated to max_len, masks applied
  std::vector<std::size_t> positions;
  std::vector<TokenId> targets;
};

// Uniform integer in [0, n) by rejection; portable across standard
// libraries.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);
// Uniform double in [0, 1) from 53 random bits.
double uniform_unit(std::mt19937_64& rng);

// Truncates or pads to cfg.max_len, then selects every non-pad, non-special
// position independently with probability cfg.mask_prob and replaces it by
// <mask>. At least one eligible position is always selected. A sequence
// with nothing eligible comes back with empty targets.
MaskedSequence mask_sequence(std::span<const TokenId> ids,
                             const AdaptConfig& cfg, const MaskingSpec& spec,
                             std::mt19937_64& rng);

struct LossParts {
  double task = 0.0;
  double reg = 0.0;
  std::size_t targets = 0;

  double total() const { return task + reg; }
};

// Bag-of-context scorer with tied embeddings: for each target, the context
// vector is the mean of the sequence's unmasked non-pad rows and the logits
// are E * h. Task loss is the mean cross-entropy over the batch's targets.
// When `grad` is given it receives d(task + reg)/dE for every row.
LossParts mlm_loss_and_grad(std::span<const MaskedSequence> batch,
                            const EmbeddingMatrix& e, const AnchorMap& anchors,
                            double lambda, const MaskingSpec& spec,
                            RowMatrix* grad = nullptr);

struct OptimizerState {
  RowMatrix m;
  RowMatrix v;
  std::uint64_t step = 0;
};

// One update applied only to e.new_token_ids; every other row is left
// bit-identical. Returns the pre-update loss.
LossParts mlm_step(std::span<const MaskedSequence> batch, EmbeddingMatrix& e,
                   const AnchorMap& anchors, const AdaptConfig& cfg,
                   const MaskingSpec& spec, OptimizerState& state,
                   std::size_t batch_index = 0);

struct EpochStats {
  std::size_t epoch = 0;
  double task_loss = 0.0;
  double reg_loss = 0.0;
  double mean_drift = 0.0;
};

struct AdaptReport {
  std::vector<EpochStats> epochs;
  EmbeddingMatrix final_matrix;

  // One JSON object per epoch, newline-terminated.
  std::string to_jsonl() const;
};

double mean_drift(const EmbeddingMatrix& e, const AnchorMap& anchors);

AdaptReport adapt(std::span<const std::string> corpus, const Tokenizer& tok,
                  EmbeddingMatrix e, const AnchorMap& anchors,
                  const AdaptConfig& cfg);

}  // namespace lgse

#endif  // LGSE_ADAPT_H_
