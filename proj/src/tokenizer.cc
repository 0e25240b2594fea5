#include "lgse/tokenizer.h"

#include <limits>

#include "lgse/status.h"
#include "lgse/utf8.h"

namespace lgse {

namespace {

constexpr TokenId kUnknownChar = -1;

std::uint64_t pair_key(TokenId l, TokenId r) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l)) << 32) |
         static_cast<std::uint32_t>(r);
}

}  // namespace

Tokenizer::Tokenizer(const HybridVocab& vocab, const MorphemeLexicon& lex)
    : vocab_(vocab), lex_(lex), unk_id_(vocab.unk_id()) {
  const auto& merges = vocab.merges();
  merges_.reserve(merges.size());
  for (std::size_t rank = 0; rank < merges.size(); ++rank) {
    const auto& [l, r] = merges[rank];
    // The vocab constructor guarantees all three strings are tokens.
    merges_.emplace(pair_key(*vocab.find(l), *vocab.find(r)),
                    MergeInfo{rank, *vocab.find(l + r)});
  }
}

// Replays merges in learned order. A merge whose pair is absent is skipped
// for good, so at each step the next merge applied is the lowest-ranked
// adjacent pair above the last applied rank.
void Tokenizer::apply_merges(std::vector<TokenId>& symbols) const {
  std::size_t floor_rank = 0;
  bool any_applied = false;
  while (symbols.size() > 1) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    const MergeInfo* best_info = nullptr;
    TokenId left = 0;
    TokenId right = 0;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      if (symbols[i] == kUnknownChar || symbols[i + 1] == kUnknownChar) {
        continue;
      }
      auto it = merges_.find(pair_key(symbols[i], symbols[i + 1]));
      if (it == merges_.end()) continue;
      const std::size_t rank = it->second.rank;
      if (any_applied && rank <= floor_rank) continue;
      if (rank < best) {
        best = rank;
        best_info = &it->second;
        left = symbols[i];
        right = symbols[i + 1];
      }
    }
    if (best_info == nullptr) return;
    std::vector<TokenId> out;
    out.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i + 1 < symbols.size() && symbols[i] == left &&
          symbols[i + 1] == right) {
        out.push_back(best_info->merged);
        ++i;
      } else {
        out.push_back(symbols[i]);
      }
    }
    symbols = std::move(out);
    floor_rank = best;
    any_applied = true;
  }
}

std::vector<std::vector<TokenId>> Tokenizer::tokenize_morphemes(
    std::string_view word) const {
  const SegmentedWord seg = segment(word, lex_);
  std::vector<std::vector<TokenId>> out;
  out.reserve(seg.morphemes.size());
  for (const auto& m : seg.morphemes) {
    auto& ids = out.emplace_back();
    if (auto id = vocab_.find(m);
        id && vocab_.kinds()[static_cast<std::size_t>(*id)] == TokenKind::kMorph) {
      ids.push_back(*id);
      continue;
    }
    for (auto c : utf8::split_chars(m)) {
      auto id = vocab_.find(c);
      ids.push_back(id && vocab_.kinds()[static_cast<std::size_t>(*id)] !=
                              TokenKind::kSpecial
                        ? *id
                        : kUnknownChar);
    }
    apply_merges(ids);
    for (auto& id : ids) {
      if (id == kUnknownChar) id = unk_id_;
    }
  }
  return out;
}

std::vector<TokenId> Tokenizer::tokenize_word_ids(std::string_view word) const {
  std::vector<TokenId> ids;
  for (auto& piece : tokenize_morphemes(word)) {
    ids.insert(ids.end(), piece.begin(), piece.end());
  }
  return ids;
}

std::vector<std::string> Tokenizer::tokenize_word(std::string_view word) const {
  std::vector<std::string> out;
  for (TokenId id : tokenize_word_ids(word)) out.push_back(vocab_.token(id));
  return out;
}

TokenSequence Tokenizer::encode(std::string_view text) const {
  TokenSequence seq;
  for (auto word : utf8::pretokenize(text)) {
    const std::size_t start = seq.ids.size();
    for (auto& piece : tokenize_morphemes(word)) {
      seq.ids.insert(seq.ids.end(), piece.begin(), piece.end());
    }
    seq.word_spans.emplace_back(start, seq.ids.size());
  }
  return seq;
}

std::string Tokenizer::decode(const TokenSequence& seq) const {
  return lgse::decode(seq, vocab_);
}

std::vector<std::string> tokenize_word(std::string_view word,
                                       const HybridVocab& vocab,
                                       const MorphemeLexicon& lex) {
  return Tokenizer(vocab, lex).tokenize_word(word);
}

TokenSequence encode(std::string_view text, const HybridVocab& vocab,
                     const MorphemeLexicon& lex) {
  return Tokenizer(vocab, lex).encode(text);
}

std::string decode(const TokenSequence& seq, const HybridVocab& vocab) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";  // U+FFFD
  std::vector<std::pair<std::size_t, std::size_t>> spans = seq.word_spans;
  if (spans.empty() && !seq.ids.empty()) spans.emplace_back(0, seq.ids.size());
  std::size_t expect = 0;
  for (const auto& [start, end] : spans) {
    if (start != expect || end < start || end > seq.ids.size()) {
      throw ValidationError("word spans do not partition the token sequence");
    }
    expect = end;
  }
  if (expect != seq.ids.size()) {
    throw ValidationError("word spans do not cover the token sequence");
  }
  const TokenId unk = vocab.unk_id();
  std::string out;
  for (std::size_t w = 0; w < spans.size(); ++w) {
    if (w > 0) out.push_back(' ');
    for (std::size_t i = spans[w].first; i < spans[w].second; ++i) {
      const std::string& text = vocab.token(seq.ids[i]);
      if (seq.ids[i] == unk) {
        out.append(kReplacement);
      } else {
        out.append(text);
      }
    }
  }
  return out;
}

std::string normalize_text(std::string_view text) {
  std::string out;
  for (auto word : utf8::pretokenize(text)) {
    if (!out.empty()) out.push_back(' ');
    out.append(word);
  }
  return out;
}

}  // namespace lgse
