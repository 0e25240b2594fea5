#include "lgse/morphseg.h"

#include <charconv>

#include "lgse/io.h"
#include "lgse/status.h"
#include "lgse/utf8.h"

namespace lgse {

bool MorphemeLexicon::add_entry(std::string word,
                                std::vector<std::string> morphemes) {
  if (word.empty()) throw ValidationError("empty lexicon word");
  utf8::validate(word);
  if (morphemes.empty()) {
    throw ValidationError("no morphemes for word '" + word + "'");
  }
  std::string joined;
  for (const auto& m : morphemes) {
    if (m.empty()) throw ValidationError("empty morpheme in '" + word + "'");
    joined += m;
  }
  if (joined != word) {
    throw ValidationError("morphemes of '" + word + "' concatenate to '" +
                          joined + "'");
  }
  if (entries_.contains(word)) return false;
  for (const auto& m : morphemes) add_morpheme(m);
  entries_.emplace(std::move(word), std::move(morphemes));
  return true;
}

void MorphemeLexicon::add_morpheme(std::string morpheme) {
  if (morpheme.empty()) throw ValidationError("empty morpheme");
  const std::size_t n = utf8::length(morpheme);
  if (n > max_morpheme_chars_) max_morpheme_chars_ = n;
  morph_set_.insert(std::move(morpheme));
}

void MorphemeLexicon::set_frequencies(
    std::map<std::string, std::uint64_t> freq) {
  morph_freq_ = std::move(freq);
}

const std::vector<std::string>* MorphemeLexicon::find(
    std::string_view word) const {
  // unordered_map heterogeneous lookup needs C++20 transparent hashing,
  // which libstdc++ 11 lacks.
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

bool MorphemeLexicon::contains_morpheme(std::string_view morpheme) const {
  return morph_set_.find(morpheme) != morph_set_.end();
}

MorphemeLexicon parse_lexicon(std::string_view text, LexiconLoadStats* stats) {
  MorphemeLexicon lex;
  LexiconLoadStats local;
  std::map<std::string, std::uint64_t> freq;
  const auto lines = io::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    const auto fields = io::split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError("expected 2 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       i + 1);
    }
    std::vector<std::string> morphemes;
    for (auto m : io::split(fields[1], ' ')) {
      if (!m.empty()) morphemes.emplace_back(m);
    }
    try {
      if (lex.add_entry(std::string(fields[0]), morphemes)) {
        ++local.entries;
        for (const auto& m : morphemes) ++freq[m];
      } else {
        ++local.duplicates;
      }
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  lex.set_frequencies(std::move(freq));
  if (stats) *stats = local;
  return lex;
}

MorphemeLexicon load_lexicon(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& freq_path,
    LexiconLoadStats* stats) {
  MorphemeLexicon lex = parse_lexicon(io::read_file(path), stats);
  if (freq_path) {
    std::map<std::string, std::uint64_t> freq;
    const std::string text = io::read_file(*freq_path);
    const auto lines = io::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string_view line = lines[i];
      if (line.empty() || line.front() == '#') continue;
      const auto fields = io::split(line, '\t');
      if (fields.size() != 2) {
        throw ParseError("expected morpheme<TAB>count", i + 1);
      }
      std::uint64_t count = 0;
      auto res = std::from_chars(fields[1].data(),
                                 fields[1].data() + fields[1].size(), count);
      if (res.ec != std::errc() ||
          res.ptr != fields[1].data() + fields[1].size()) {
        throw ParseError("bad count '" + std::string(fields[1]) + "'", i + 1);
      }
      if (fields[0].empty()) throw ParseError("empty morpheme", i + 1);
      freq.emplace(std::string(fields[0]), count);
    }
    lex.set_frequencies(std::move(freq));
  }
  return lex;
}

SegmentedWord segment(std::string_view word, const MorphemeLexicon& lex) {
  if (word.empty()) throw ArgumentError("cannot segment an empty word");
  SegmentedWord out;
  out.word = std::string(word);
  if (const auto* stored = lex.find(word)) {
    out.morphemes = *stored;
    out.segmentable = true;
    return out;
  }
  const auto chars = utf8::split_chars(word);
  const std::size_t max_len = lex.max_morpheme_chars();
  std::size_t i = 0;
  while (i < chars.size() && max_len > 0) {
    const std::size_t limit = std::min(max_len, chars.size() - i);
    bool matched = false;
    for (std::size_t len = limit; len >= 1; --len) {
      const char* begin = chars[i].data();
      const char* end = chars[i + len - 1].data() + chars[i + len - 1].size();
      const std::string_view piece(begin, static_cast<std::size_t>(end - begin));
      if (lex.contains_morpheme(piece)) {
        out.morphemes.emplace_back(piece);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) break;
  }
  if (i == chars.size()) {
    out.segmentable = true;
  } else {
    out.morphemes.assign(1, out.word);
    out.segmentable = false;
  }
  return out;
}

bool is_segmentable(std::string_view word, const MorphemeLexicon& lex) {
  return segment(word, lex).segmentable;
}

}  // namespace lgse
