#include "lgse/adapt.h"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "lgse/status.h"

namespace lgse {

void AdaptConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("lambda must be a finite value >= 0");
  }
  if (!(mask_prob >= 0.0 && mask_prob <= 1.0)) {
    throw ArgumentError("mask probability must lie in [0, 1]");
  }
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ArgumentError("learning rate must be > 0");
  if (max_len < 2) throw ArgumentError("max length must be >= 2");
  if (batch_size < 1) throw ArgumentError("batch size must be >= 1");
  if (!(weight_decay >= 0.0)) throw ArgumentError("weight decay must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ArgumentError("Adam betas must lie in [0, 1)");
  }
  if (!(eps > 0.0)) throw ArgumentError("Adam epsilon must be > 0");
}

AnchorMap snapshot_anchors(const EmbeddingMatrix& e) {
  AnchorMap anchors;
  for (TokenId id : e.new_token_ids) {
    anchors.emplace(id, e.rows.row(id).transpose());
  }
  return anchors;
}

namespace {

const Vector& anchor_for(const AnchorMap& anchors, TokenId id) {
  auto it = anchors.find(id);
  if (it == anchors.end()) {
    throw ValidationError("no drift anchor for new token id " + std::to_string(id));
  }
  return it->second;
}

}  // namespace

double reg_loss(const EmbeddingMatrix& e, const AnchorMap& anchors,
                double lambda) {
  double sum = 0.0;
  for (TokenId id : e.new_token_ids) {
    const Vector& a = anchor_for(anchors, id);
    if (a.size() != e.rows.cols()) {
      throw ValidationError("anchor dimension differs from embedding dimension");
    }
    sum += (e.rows.row(id).transpose() - a).squaredNorm();
  }
  return lambda * sum;
}

Vector reg_grad(const Vector& e, const Vector& e_init, double lambda) {
  if (e.size() != e_init.size()) {
    throw ValidationError("reg_grad: vectors differ in length");
  }
  return 2.0 * lambda * (e - e_init);
}

MaskingSpec MaskingSpec::from_vocab(const HybridVocab& vocab) {
  auto pad = vocab.special_id(kPadToken);
  auto mask = vocab.special_id(kMaskToken);
  if (!pad || !mask) {
    throw ValidationError("vocabulary needs <pad> and <mask> special tokens");
  }
  MaskingSpec spec;
  spec.pad_id = *pad;
  spec.mask_id = *mask;
  spec.special.resize(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    spec.special[i] = vocab.kinds()[i] == TokenKind::kSpecial;
  }
  return spec;
}

bool MaskingSpec::is_special(TokenId id) const {
  const auto i = static_cast<std::size_t>(id);
  return id == pad_id || id == mask_id || (i < special.size() && special[i]);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

MaskedSequence mask_sequence(std::span<const TokenId> ids,
                             const AdaptConfig& cfg, const MaskingSpec& spec,
                             std::mt19937_64& rng) {
  if (ids.empty()) throw ArgumentError("cannot mask an empty sequence");
  MaskedSequence out;
  out.ids.assign(ids.begin(), ids.begin() + std::min(ids.size(), cfg.max_len));
  out.ids.resize(cfg.max_len, spec.pad_id);

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < out.ids.size(); ++i) {
    if (!spec.is_special(out.ids[i])) eligible.push_back(i);
  }
  if (eligible.empty()) return out;
  for (std::size_t pos : eligible) {
    if (uniform_unit(rng) < cfg.mask_prob) out.positions.push_back(pos);
  }
  if (out.positions.empty()) {
    out.positions.push_back(eligible[uniform_index(rng, eligible.size())]);
  }
  for (std::size_t pos : out.positions) {
    out.targets.push_back(out.ids[pos]);
    out.ids[pos] = spec.mask_id;
  }
  return out;
}

LossParts mlm_loss_and_grad(std::span<const MaskedSequence> batch,
                            const EmbeddingMatrix& e, const AnchorMap& anchors,
                            double lambda, const MaskingSpec& spec,
                            RowMatrix* grad) {
  const auto vocab = e.rows.rows();
  const auto dim = e.rows.cols();
  if (grad) grad->setZero(vocab, dim);

  LossParts loss;
  for (const auto& seq : batch) loss.targets += seq.targets.size();

  if (loss.targets > 0) {
    const double inv_targets = 1.0 / static_cast<double>(loss.targets);
    std::vector<bool> is_target;
    for (const auto& seq : batch) {
      if (seq.targets.empty()) continue;
      is_target.assign(seq.ids.size(), false);
      for (std::size_t pos : seq.positions) is_target[pos] = true;

      Vector h = Vector::Zero(dim);
      std::vector<TokenId> context;
      for (std::size_t i = 0; i < seq.ids.size(); ++i) {
        if (is_target[i] || seq.ids[i] == spec.pad_id) continue;
        if (seq.ids[i] < 0 || seq.ids[i] >= vocab) {
          throw RangeError("token id " + std::to_string(seq.ids[i]) +
                           " outside the embedding matrix");
        }
        context.push_back(seq.ids[i]);
        h += e.rows.row(seq.ids[i]).transpose();
      }
      if (!context.empty()) h /= static_cast<double>(context.size());

      const Vector logits = e.rows * h;
      const double top = logits.maxCoeff();
      const double lse = top + std::log((logits.array() - top).exp().sum());
      for (TokenId t : seq.targets) {
        if (t < 0 || t >= vocab) {
          throw RangeError("target id " + std::to_string(t) +
                           " outside the embedding matrix");
        }
        loss.task += (lse - logits(t)) * inv_targets;
      }
      if (!grad) continue;

      // d loss / d logits = (n_targets * softmax - target counts) / T
      Vector dlogits = (logits.array() - lse).exp().matrix() *
                       static_cast<double>(seq.targets.size());
      for (TokenId t : seq.targets) dlogits(t) -= 1.0;
      dlogits *= inv_targets;

      const Vector dh = e.rows.transpose() * dlogits;
      grad->noalias() += dlogits * h.transpose();
      if (!context.empty()) {
        const Vector share = dh / static_cast<double>(context.size());
        for (TokenId id : context) grad->row(id) += share.transpose();
      }
    }
  }

  loss.reg = reg_loss(e, anchors, lambda);
  if (grad && lambda != 0.0) {
    for (TokenId id : e.new_token_ids) {
      grad->row(id) +=
          reg_grad(e.rows.row(id).transpose(), anchor_for(anchors, id), lambda)
              .transpose();
    }
  }
  return loss;
}

LossParts mlm_step(std::span<const MaskedSequence> batch, EmbeddingMatrix& e,
                   const AnchorMap& anchors, const AdaptConfig& cfg,
                   const MaskingSpec& spec, OptimizerState& state,
                   std::size_t batch_index) {
  RowMatrix grad;
  const LossParts loss =
      mlm_loss_and_grad(batch, e, anchors, cfg.lambda, spec, &grad);
  if (!std::isfinite(loss.total()) || !grad.allFinite()) {
    throw ValidationError("non-finite loss in batch " + std::to_string(batch_index));
  }
  if (e.new_token_ids.empty()) return loss;

  ++state.step;
  if (cfg.optimizer == OptimizerKind::kAdam &&
      (state.m.rows() != e.rows.rows() || state.m.cols() != e.rows.cols())) {
    state.m.setZero(e.rows.rows(), e.rows.cols());
    state.v.setZero(e.rows.rows(), e.rows.cols());
  }
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  for (TokenId id : e.new_token_ids) {
    auto row = e.rows.row(id);
    const auto g = grad.row(id);
    const RowMatrix decay = cfg.lr * cfg.weight_decay * row;
    if (cfg.optimizer == OptimizerKind::kAdam) {
      auto m = state.m.row(id);
      auto v = state.v.row(id);
      m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
      v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
      row.array() -= cfg.lr * (m.array() / bc1) /
                     ((v.array() / bc2).sqrt() + cfg.eps);
    } else {
      row -= cfg.lr * g;
    }
    row -= decay;
  }
  return loss;
}

double mean_drift(const EmbeddingMatrix& e, const AnchorMap& anchors) {
  if (e.new_token_ids.empty()) return 0.0;
  double sum = 0.0;
  for (TokenId id : e.new_token_ids) {
    sum += (e.rows.row(id).transpose() - anchor_for(anchors, id)).norm();
  }
  return sum / static_cast<double>(e.new_token_ids.size());
}

std::string AdaptReport::to_jsonl() const {
  std::string out;
  for (const auto& s : epochs) {
    nlohmann::ordered_json j;
    j["epoch"] = s.epoch;
    j["task_loss"] = s.task_loss;
    j["reg_loss"] = s.reg_loss;
    j["mean_drift"] = s.mean_drift;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

AdaptReport adapt(std::span<const std::string> corpus, const Tokenizer& tok,
                  EmbeddingMatrix e, const AnchorMap& anchors,
                  const AdaptConfig& cfg) {
  cfg.validate();
  if (e.size() != tok.vocab().size()) {
    throw ValidationError("embedding matrix has " + std::to_string(e.size()) +
                          " rows but the vocabulary has " +
                          std::to_string(tok.vocab().size()) + " tokens");
  }
  const MaskingSpec spec = MaskingSpec::from_vocab(tok.vocab());
  std::vector<std::vector<TokenId>> sequences;
  for (const auto& line : corpus) {
    auto seq = tok.encode(line);
    if (!seq.ids.empty()) sequences.push_back(std::move(seq.ids));
  }
  if (sequences.empty()) throw ArgumentError("adaptation corpus is empty");
  for (TokenId id : e.new_token_ids) anchor_for(anchors, id);

  AdaptReport report;
  std::mt19937_64 rng(cfg.seed);
  OptimizerState state;
  std::size_t batch_index = 0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::vector<MaskedSequence> masked;
    masked.reserve(sequences.size());
    for (const auto& ids : sequences) {
      masked.push_back(mask_sequence(ids, cfg, spec, rng));
    }
    double task_sum = 0.0;
    std::size_t target_sum = 0;
    for (std::size_t start = 0; start < masked.size(); start += cfg.batch_size) {
      const std::size_t n = std::min(cfg.batch_size, masked.size() - start);
      const auto batch = std::span<const MaskedSequence>(masked).subspan(start, n);
      const LossParts loss = mlm_step(batch, e, anchors, cfg, spec, state, batch_index++);
      task_sum += loss.task * static_cast<double>(loss.targets);
      target_sum += loss.targets;
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.task_loss = target_sum ? task_sum / static_cast<double>(target_sum) : 0.0;
    stats.reg_loss = reg_loss(e, anchors, cfg.lambda);
    stats.mean_drift = mean_drift(e, anchors);
    report.epochs.push_back(stats);
  }
  report.final_matrix = std::move(e);
  return report;
}

}  // namespace lgse
