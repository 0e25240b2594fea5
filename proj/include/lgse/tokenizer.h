#ifndef LGSE_TOKENIZER_H_
#define LGSE_TOKENIZER_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lgse/morphseg.h"
#include "lgse/vocab.h"

namespace lgse {

struct TokenSequence {
  std::vector<TokenId> ids;
  // Half-open [start, end) token ranges, one per input word, in order.
  std::vector<std::pair<std::size_t, std::size_t>> word_spans;

  bool operator==(const TokenSequence&) const = default;
};

// Two-stage encoder: words are segmented into morphemes and BPE merges are
// replayed inside each morpheme, never across a boundary. Holds references
// to the vocabulary and lexicon, which must outlive it. Thread-safe for
// concurrent const use.
class Tokenizer {
 public:
  Tokenizer(const HybridVocab& vocab, const MorphemeLexicon& lex);

  // Per-morpheme token ids for one word, in order.
  std::vector<std::vector<TokenId>> tokenize_morphemes(
      std::string_view word) const;

  std::vector<TokenId> tokenize_word_ids(std::string_view word) const;
  std::vector<std::string> tokenize_word(std::string_view word) const;

  TokenSequence encode(std::string_view text) const;
  std::string decode(const TokenSequence& seq) const;

  const HybridVocab& vocab() const { return vocab_; }
  const MorphemeLexicon& lexicon() const { return lex_; }

 private:
  struct MergeInfo {
    std::size_t rank;
    TokenId merged;
  };

  void apply_merges(std::vector<TokenId>& symbols) const;

  const HybridVocab& vocab_;
  const MorphemeLexicon& lex_;
  std::unordered_map<std::uint64_t, MergeInfo> merges_;
  TokenId unk_id_;
};

std::vector<std::string> tokenize_word(std::string_view word,
                                       const HybridVocab& vocab,
                                       const MorphemeLexicon& lex);
TokenSequence encode(std::string_view text, const HybridVocab& vocab,
                     const MorphemeLexicon& lex);
std::string decode(const TokenSequence& seq, const HybridVocab& vocab);

// Collapses whitespace runs to single spaces and trims both ends, after the
// same pre-tokenization the encoder uses.
std::string normalize_text(std::string_view text);

}  // namespace lgse

#endif  // LGSE_TOKENIZER_H_
