#include "lgse/vocab.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "lgse/io.h"
#include "lgse/status.h"
#include "lgse/utf8.h"

namespace lgse {

namespace {

std::string merge_key(std::string_view left, std::string_view right) {
  std::string key = std::to_string(left.size());
  key.push_back(':');
  key.append(left);
  key.append(right);
  return key;
}

}  // namespace

std::string_view kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kSpecial: return "special";
    case TokenKind::kMorph: return "morph";
    case TokenKind::kBpe: return "bpe";
    case TokenKind::kChar: return "char";
  }
  return "?";
}

TokenKind parse_kind(std::string_view name) {
  if (name == "special") return TokenKind::kSpecial;
  if (name == "morph") return TokenKind::kMorph;
  if (name == "bpe") return TokenKind::kBpe;
  if (name == "char") return TokenKind::kChar;
  throw ValidationError("unknown token kind '" + std::string(name) + "'");
}

void VocabConfig::validate() const {
  if (!(morph_ratio >= 0.0 && morph_ratio <= 1.0)) {
    throw ArgumentError("morph ratio must lie in [0, 1]");
  }
  if (size < special_tokens.size() + 1) {
    throw ArgumentError("vocab size must exceed the number of special tokens");
  }
  std::set<std::string_view> seen;
  for (const auto& s : special_tokens) {
    if (s.empty()) throw ArgumentError("empty special token");
    if (!seen.insert(s).second) {
      throw ArgumentError("duplicate special token " + s);
    }
  }
  if (!seen.contains(kUnkToken)) {
    throw ArgumentError("special tokens must include <unk>");
  }
}

HybridVocab::HybridVocab(std::vector<std::string> tokens,
                         std::vector<TokenKind> kinds,
                         std::vector<MergePair> merges,
                         std::vector<std::string> special_tokens)
    : tokens_(std::move(tokens)),
      kinds_(std::move(kinds)),
      merges_(std::move(merges)),
      specials_(std::move(special_tokens)) {
  if (tokens_.size() != kinds_.size()) {
    throw ValidationError("token and kind tables differ in length");
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw ValidationError("empty token text");
    if (!index_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
      throw ValidationError("duplicate token '" + tokens_[i] + "'");
    }
  }
  if (specials_.size() > tokens_.size()) {
    throw ValidationError("more special tokens than vocabulary entries");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const bool should_be_special = i < specials_.size();
    if (should_be_special &&
        (tokens_[i] != specials_[i] || kinds_[i] != TokenKind::kSpecial)) {
      throw ValidationError("special token '" + specials_[i] +
                            "' must occupy id " + std::to_string(i));
    }
    if (!should_be_special && kinds_[i] == TokenKind::kSpecial) {
      throw ValidationError("special token '" + tokens_[i] +
                            "' outside the special id range");
    }
  }
  if (!index_.contains(std::string(kUnkToken))) {
    throw ValidationError("vocabulary has no <unk> token");
  }
  merge_rank_.reserve(merges_.size());
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    const auto& [l, r] = merges_[i];
    if (!index_.contains(l) || !index_.contains(r)) {
      throw ValidationError("merge part of ('" + l + "', '" + r +
                            "') not in vocabulary");
    }
    if (!index_.contains(l + r)) {
      throw ValidationError("merge output '" + l + r + "' not in vocabulary");
    }
    merge_rank_.emplace(merge_key(l, r), i);
  }
}

const std::string& HybridVocab::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw RangeError("token id " + std::to_string(id) +
                            " outside vocabulary of size " +
                            std::to_string(tokens_.size()));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

TokenKind HybridVocab::kind(TokenId id) const {
  token(id);
  return kinds_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> HybridVocab::find(std::string_view text) const {
  auto it = index_.find(std::string(text));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> HybridVocab::merge_rank(
    std::string_view left, std::string_view right) const {
  auto it = merge_rank_.find(merge_key(left, right));
  if (it == merge_rank_.end()) return std::nullopt;
  return it->second;
}

TokenId HybridVocab::unk_id() const { return index_.at(std::string(kUnkToken)); }

std::optional<TokenId> HybridVocab::special_id(std::string_view text) const {
  auto id = find(text);
  if (id && kinds_[static_cast<std::size_t>(*id)] == TokenKind::kSpecial) {
    return id;
  }
  return std::nullopt;
}

std::size_t HybridVocab::count(TokenKind kind) const {
  return static_cast<std::size_t>(
      std::count(kinds_.begin(), kinds_.end(), kind));
}

std::string HybridVocab::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["size"] = tokens_.size();
  j["special"] = specials_;
  auto tokens = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    nlohmann::ordered_json t;
    t["id"] = i;
    t["text"] = tokens_[i];
    t["kind"] = kind_name(kinds_[i]);
    tokens.push_back(std::move(t));
  }
  j["tokens"] = std::move(tokens);
  auto merges = nlohmann::ordered_json::array();
  for (const auto& [l, r] : merges_) merges.push_back({l, r});
  j["merges"] = std::move(merges);
  return j.dump() + "\n";
}

HybridVocab HybridVocab::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("vocab JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1) {
      throw ValidationError("unsupported vocab version");
    }
    const auto size = j.at("size").get<std::size_t>();
    auto specials = j.at("special").get<std::vector<std::string>>();
    const auto& toks = j.at("tokens");
    if (toks.size() != size) {
      throw ValidationError("vocab size field disagrees with token count");
    }
    std::vector<std::string> tokens(size);
    std::vector<TokenKind> kinds(size);
    for (std::size_t i = 0; i < size; ++i) {
      const auto& t = toks[i];
      if (t.at("id").get<std::size_t>() != i) {
        throw ValidationError("tokens must be sorted by contiguous id");
      }
      tokens[i] = t.at("text").get<std::string>();
      kinds[i] = parse_kind(t.at("kind").get<std::string>());
    }
    std::vector<MergePair> merges;
    for (const auto& m : j.at("merges")) {
      if (!m.is_array() || m.size() != 2) {
        throw ValidationError("merge entries must be [left, right] pairs");
      }
      merges.emplace_back(m[0].get<std::string>(), m[1].get<std::string>());
    }
    return HybridVocab(std::move(tokens), std::move(kinds), std::move(merges),
                       std::move(specials));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("vocab JSON: ") + e.what());
  }
}

HybridVocab load_vocab(const std::filesystem::path& path) {
  return HybridVocab::from_json(io::read_file(path));
}

std::map<std::string, std::uint64_t> count_words(
    std::span<const std::string> corpus) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& line : corpus) {
    for (auto w : utf8::pretokenize(line)) ++counts[std::string(w)];
  }
  return counts;
}

namespace {

std::vector<std::pair<std::string, std::uint64_t>> ranked_morphemes(
    const std::map<std::string, std::uint64_t>& words,
    const MorphemeLexicon& lex) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& [word, n] : words) {
    SegmentedWord seg = segment(word, lex);
    if (!seg.segmentable) continue;
    for (auto& m : seg.morphemes) counts[std::move(m)] += n;
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(),
                                                            counts.end());
  // counts is already in lexicographic order, so a stable sort on count
  // leaves ties lexicographic.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

std::map<std::string, std::uint64_t> spans_from_words(
    const std::map<std::string, std::uint64_t>& words,
    const MorphemeLexicon& lex) {
  std::map<std::string, std::uint64_t> spans;
  for (const auto& [word, n] : words) {
    SegmentedWord seg = segment(word, lex);
    for (auto& m : seg.morphemes) spans[std::move(m)] += n;
  }
  return spans;
}

}  // namespace

std::vector<std::string> top_morphemes(std::span<const std::string> corpus,
                                       const MorphemeLexicon& lex,
                                       std::size_t k) {
  if (k == 0) return {};
  auto ranked = ranked_morphemes(count_words(corpus), lex);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
    out.push_back(std::move(ranked[i].first));
  }
  return out;
}

std::map<std::string, std::uint64_t> collect_spans(
    std::span<const std::string> corpus, const MorphemeLexicon& lex) {
  return spans_from_words(count_words(corpus), lex);
}

std::vector<MergeRule> train_bpe_within_morphemes(
    std::span<const std::string> corpus, const MorphemeLexicon& lex,
    std::size_t n_merges) {
  auto words = count_words(corpus);
  if (words.empty()) throw ArgumentError("cannot train BPE on an empty corpus");
  std::vector<MergeRule> merges;
  if (n_merges == 0) return merges;
  BpeTrainer trainer(spans_from_words(words, lex));
  while (merges.size() < n_merges) {
    auto m = trainer.next();
    if (!m) break;
    merges.push_back(std::move(*m));
  }
  return merges;
}

std::size_t morph_slot_count(std::size_t budget, double ratio) {
  // The epsilon absorbs binary representation error in ratios such as 0.3.
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(budget) * ratio + 1e-9));
}

HybridVocab build_hybrid_vocab(std::span<const std::string> corpus,
                               const MorphemeLexicon& lex,
                               const VocabConfig& cfg, BuildStats* stats) {
  cfg.validate();
  const auto words = count_words(corpus);
  if (words.empty()) throw ArgumentError("cannot build a vocab from an empty corpus");

  std::vector<std::string> tokens;
  std::vector<TokenKind> kinds;
  std::set<std::string, std::less<>> present;
  auto add = [&](std::string text, TokenKind kind) {
    present.insert(text);
    tokens.push_back(std::move(text));
    kinds.push_back(kind);
  };
  for (const auto& s : cfg.special_tokens) add(s, TokenKind::kSpecial);

  std::set<std::string> chars;
  for (const auto& [word, n] : words) {
    for (auto c : utf8::split_chars(word)) chars.emplace(c);
  }
  for (const auto& c : chars) {
    if (!present.contains(c)) add(c, TokenKind::kChar);
  }
  BuildStats st;
  st.base_chars = tokens.size() - cfg.special_tokens.size();
  if (tokens.size() > cfg.size) {
    throw CapacityError(
        "vocab size " + std::to_string(cfg.size) + " cannot hold " +
            std::to_string(cfg.special_tokens.size()) + " special and " +
            std::to_string(st.base_chars) + " base character tokens",
        tokens.size());
  }
  st.budget = cfg.size - tokens.size();
  st.morph_slots = morph_slot_count(st.budget, cfg.morph_ratio);

  if (st.morph_slots > 0) {
    for (auto& [m, n] : ranked_morphemes(words, lex)) {
      if (st.morph_tokens == st.morph_slots) break;
      if (present.contains(m)) continue;
      add(std::move(m), TokenKind::kMorph);
      ++st.morph_tokens;
    }
  }

  std::vector<MergePair> merges;
  if (tokens.size() < cfg.size) {
    BpeTrainer trainer(spans_from_words(words, lex));
    while (tokens.size() < cfg.size) {
      auto m = trainer.next();
      if (!m) {
        throw CapacityError(
            "corpus supplies only " + std::to_string(tokens.size()) +
                " distinct units; requested " + std::to_string(cfg.size),
            tokens.size());
      }
      std::string unit = m->left + m->right;
      merges.emplace_back(std::move(m->left), std::move(m->right));
      if (present.contains(unit)) {
        ++st.bpe_skipped;
        continue;
      }
      add(std::move(unit), TokenKind::kBpe);
      ++st.bpe_tokens;
    }
  }
  st.merges_used = merges.size();
  if (stats) *stats = st;
  return HybridVocab(std::move(tokens), std::move(kinds), std::move(merges),
                     cfg.special_tokens);
}

HybridVocab build_plain_bpe_vocab(std::span<const std::string> corpus,
                                  VocabConfig cfg, BuildStats* stats) {
  cfg.morph_ratio = 0.0;
  return build_hybrid_vocab(corpus, MorphemeLexicon{}, cfg, stats);
}

}  // namespace lgse
