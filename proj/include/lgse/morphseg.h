#ifndef LGSE_MORPHSEG_H_
#define LGSE_MORPHSEG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lgse {

// Word -> ordered morpheme list, with morpheme frequencies. Immutable once
// built; every accessor is safe for concurrent use.
class MorphemeLexicon {
 public:
  MorphemeLexicon() = default;

  // Adds an entry after checking that the morphemes concatenate to `word`.
  // Returns false (and leaves the lexicon untouched) if `word` is already
  // present. Throws ValidationError on a concatenation mismatch or an empty
  // or malformed string.
  bool add_entry(std::string word, std::vector<std::string> morphemes);

  // Replaces the frequency table. Morphemes need not appear in entries.
  void set_frequencies(std::map<std::string, std::uint64_t> freq);

  const std::vector<std::string>* find(std::string_view word) const;
  bool contains_morpheme(std::string_view morpheme) const;

  const std::unordered_map<std::string, std::vector<std::string>>& entries()
      const {
    return entries_;
  }
  const std::map<std::string, std::uint64_t>& morph_freq() const {
    return morph_freq_;
  }
  const std::set<std::string, std::less<>>& morph_set() const {
    return morph_set_;
  }
  // Longest morpheme length in codepoints; bounds the greedy matcher.
  std::size_t max_morpheme_chars() const { return max_morpheme_chars_; }
  bool empty() const { return entries_.empty() && morph_set_.empty(); }

  // Adds a morpheme to morph_set without an entry.
  void add_morpheme(std::string morpheme);

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  std::map<std::string, std::uint64_t> morph_freq_;
  std::set<std::string, std::less<>> morph_set_;
  std::size_t max_morpheme_chars_ = 0;
};

struct LexiconLoadStats {
  std::size_t entries = 0;
  std::size_t duplicates = 0;
};

// Reads `word<TAB>m1 m2 ...` lines; `#` starts a comment line. Duplicate
// words keep the first occurrence. When `freq_path` is given it supplies
// `morpheme<TAB>count` lines; otherwise frequencies are counted from entry
// occurrences.
MorphemeLexicon load_lexicon(const std::filesystem::path& path,
                             const std::optional<std::filesystem::path>&
                                 freq_path = std::nullopt,
                             LexiconLoadStats* stats = nullptr);

MorphemeLexicon parse_lexicon(std::string_view text,
                              LexiconLoadStats* stats = nullptr);

struct SegmentedWord {
  std::string word;
  std::vector<std::string> morphemes;
  bool segmentable = false;

  bool operator==(const SegmentedWord&) const = default;
};

// Stored segmentation if `word` is an entry; otherwise greedy longest-prefix
// cover over morph_set without backtracking. Uncoverable words come back as
// a single pseudo-morpheme with segmentable=false.
SegmentedWord segment(std::string_view word, const MorphemeLexicon& lex);

bool is_segmentable(std::string_view word, const MorphemeLexicon& lex);

}  // namespace lgse

#endif  // LGSE_MORPHSEG_H_
