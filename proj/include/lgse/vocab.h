#ifndef LGSE_VOCAB_H_
#define LGSE_VOCAB_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lgse/morphseg.h"

namespace lgse {

using TokenId = std::int32_t;

enum class TokenKind { kSpecial, kMorph, kBpe, kChar };

std::string_view kind_name(TokenKind kind);
TokenKind parse_kind(std::string_view name);

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kMaskToken = "<mask>";

struct VocabConfig {
  std::size_t size = 0;
  // Share of the non-base budget given to whole morphemes.
  double morph_ratio = 0.5;
  std::vector<std::string> special_tokens = {"<pad>", "<unk>", "<mask>", "<s>",
                                             "</s>"};

  // Throws ArgumentError if the ratio, size or special list is invalid.
  void validate() const;
};

using MergePair = std::pair<std::string, std::string>;

// One learned merge and the pair frequency it was selected with.
struct MergeRule {
  std::string left;
  std::string right;
  std::uint64_t count = 0;

  bool operator==(const MergeRule&) const = default;
};

class HybridVocab {
 public:
  HybridVocab() = default;
  // Throws ValidationError when the tables are inconsistent: duplicate
  // tokens, specials not at the lowest ids, or merge outputs missing.
  HybridVocab(std::vector<std::string> tokens, std::vector<TokenKind> kinds,
              std::vector<MergePair> merges,
              std::vector<std::string> special_tokens);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const;
  TokenKind kind(TokenId id) const;
  std::optional<TokenId> find(std::string_view text) const;
  bool contains(std::string_view text) const { return find(text).has_value(); }

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<TokenKind>& kinds() const { return kinds_; }
  const std::vector<MergePair>& merges() const { return merges_; }
  const std::vector<std::string>& special_tokens() const { return specials_; }

  // Rank of a merge in learned order, or nullopt.
  std::optional<std::size_t> merge_rank(std::string_view left,
                                        std::string_view right) const;

  TokenId unk_id() const;
  std::optional<TokenId> special_id(std::string_view text) const;
  std::size_t count(TokenKind kind) const;

  std::string to_json() const;
  static HybridVocab from_json(std::string_view text);

 private:
  std::vector<std::string> tokens_;
  std::vector<TokenKind> kinds_;
  std::vector<MergePair> merges_;
  std::vector<std::string> specials_;
  std::unordered_map<std::string, TokenId> index_;
  std::unordered_map<std::string, std::size_t> merge_rank_;
};

HybridVocab load_vocab(const std::filesystem::path& path);

// Pre-tokenizes every line and counts word occurrences.
std::map<std::string, std::uint64_t> count_words(
    std::span<const std::string> corpus);

// The k most frequent morphemes over segmentable corpus words; ties go to
// the lexicographically smaller morpheme.
std::vector<std::string> top_morphemes(std::span<const std::string> corpus,
                                       const MorphemeLexicon& lex,
                                       std::size_t k);

// Span multiset for BPE: every word contributes the morphemes of its
// segmentation, so an uncoverable word is a single span.
std::map<std::string, std::uint64_t> collect_spans(
    std::span<const std::string> corpus, const MorphemeLexicon& lex);

// Incremental BPE learner over a fixed span multiset. Pairs are counted
// only inside a span, so no merge can straddle two spans. Each call to
// next() selects the most frequent pair (ties: lexicographically smallest
// (left, right)) and applies it everywhere; learning ends once no pair
// occurs at least twice.
class BpeTrainer {
 public:
  explicit BpeTrainer(const std::map<std::string, std::uint64_t>& spans);
  ~BpeTrainer();
  BpeTrainer(const BpeTrainer&) = delete;
  BpeTrainer& operator=(const BpeTrainer&) = delete;

  std::optional<MergeRule> next();

  // Current symbolization of every distinct span, in span-key order.
  std::vector<std::vector<std::string>> segmentations() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

std::vector<MergeRule> train_bpe_within_morphemes(
    std::span<const std::string> corpus, const MorphemeLexicon& lex,
    std::size_t n_merges);

struct BuildStats {
  std::size_t base_chars = 0;
  std::size_t budget = 0;        // s' = s - |special| - |char base|
  std::size_t morph_slots = 0;   // floor(s' * r)
  std::size_t morph_tokens = 0;  // < morph_slots only on morpheme shortfall
  std::size_t bpe_tokens = 0;
  std::size_t merges_used = 0;
  std::size_t bpe_skipped = 0;
};

// Morph-slot count for a given budget and ratio.
std::size_t morph_slot_count(std::size_t budget, double ratio);

HybridVocab build_hybrid_vocab(std::span<const std::string> corpus,
                               const MorphemeLexicon& lex,
                               const VocabConfig& cfg,
                               BuildStats* stats = nullptr);

// Plain comparator: whole words as BPE spans, no morpheme tokens.
HybridVocab build_plain_bpe_vocab(std::span<const std::string> corpus,
                                  VocabConfig cfg,
                                  BuildStats* stats = nullptr);

}  // namespace lgse

#endif  // LGSE_VOCAB_H_
