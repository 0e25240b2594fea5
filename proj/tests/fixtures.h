// Seeded synthetic agglutinative language: a small syllabary, morpheme
// inventories, a covering lexicon and a corpus sampled from it.

#ifndef LGSE_TESTS_FIXTURES_H_
#define LGSE_TESTS_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.h"

namespace fixture {

// Encodes one codepoint; test-local so fixtures do not depend on lgse::utf8.
inline std::string encode(char32_t cp) {
  std::string s;
  if (cp < 0x80) {
    s.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    s.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    s.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return s;
}

inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(unit(rng) * static_cast<double>(n));
}

struct LanguageSpec {
  std::size_t alphabet = 30;         // Ge'ez syllables from U+1200
  std::size_t stems = 200;
  std::size_t prefixes = 8;
  std::size_t suffixes = 12;
  std::size_t stem_min = 3, stem_max = 6;
  std::size_t affix_min = 1, affix_max = 3;
  std::size_t words = 2000;          // lexicon entries
  std::size_t max_suffixes = 2;
  double prefix_prob = 0.4;
  std::uint64_t seed = 1;
};

struct Language {
  std::vector<std::string> alphabet;
  std::vector<std::string> stems, prefixes, suffixes;
  std::vector<std::string> words;  // lexicon entries, generation order
  std::map<std::string, std::vector<std::string>> segmentation;

  std::set<std::string> morphs() const {
    std::set<std::string> out;
    for (const auto& [w, ms] : segmentation) out.insert(ms.begin(), ms.end());
    return out;
  }
  oracle::Segmenter segmenter() const { return {segmentation, morphs()}; }

  // `word<TAB>m1 m2 ...` lines.
  std::string lexicon_tsv() const {
    std::string out;
    for (const auto& w : words) {
      out += w;
      out.push_back('\t');
      const auto& ms = segmentation.at(w);
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += ms[i];
      }
      out.push_back('\n');
    }
    return out;
  }
};

inline Language make_language(const LanguageSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  Language lang;
  for (std::size_t i = 0; i < spec.alphabet; ++i) {
    lang.alphabet.push_back(encode(static_cast<char32_t>(0x1200 + i)));
  }
  std::set<std::string> used;
  auto fresh = [&](std::size_t lo, std::size_t hi) {
    for (;;) {
      const std::size_t len = lo + below(rng, hi - lo + 1);
      std::string m;
      for (std::size_t k = 0; k < len; ++k) m += lang.alphabet[below(rng, lang.alphabet.size())];
      if (used.insert(m).second) return m;
    }
  };
  for (std::size_t i = 0; i < spec.prefixes; ++i) lang.prefixes.push_back(fresh(spec.affix_min, spec.affix_max));
  for (std::size_t i = 0; i < spec.suffixes; ++i) lang.suffixes.push_back(fresh(spec.affix_min, spec.affix_max));
  for (std::size_t i = 0; i < spec.stems; ++i) lang.stems.push_back(fresh(spec.stem_min, spec.stem_max));

  // Every stem appears at least once; the rest of the entries are random.
  std::size_t attempts = 0;
  while (lang.words.size() < spec.words && attempts < spec.words * 20) {
    ++attempts;
    std::vector<std::string> ms;
    if (!lang.prefixes.empty() && unit(rng) < spec.prefix_prob) {
      ms.push_back(lang.prefixes[below(rng, lang.prefixes.size())]);
    }
    const std::size_t stem = attempts <= spec.stems ? attempts - 1 : below(rng, lang.stems.size());
    ms.push_back(lang.stems[stem]);
    const std::size_t ns = lang.suffixes.empty() ? 0 : below(rng, spec.max_suffixes + 1);
    for (std::size_t k = 0; k < ns; ++k) ms.push_back(lang.suffixes[below(rng, lang.suffixes.size())]);
    const std::string w = oracle::join(ms);
    if (lang.segmentation.emplace(w, ms).second) lang.words.push_back(w);
  }
  return lang;
}

// Lines of `words_per_line` words drawn with Zipf(exponent) over a seeded
// permutation of the lexicon entries.
inline std::vector<std::string> make_corpus(const Language& lang,
                                            std::size_t total_words,
                                            std::size_t words_per_line,
                                            double exponent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(lang.words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[below(rng, i)]);
  std::vector<double> cdf;
  double acc = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    cdf.push_back(acc);
  }
  std::vector<std::string> lines;
  std::string line;
  std::size_t in_line = 0;
  for (std::size_t i = 0; i < total_words; ++i) {
    const double u = unit(rng) * acc;
    const std::size_t r = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()),
        cdf.size() - 1);
    if (in_line > 0) line.push_back(' ');
    line += lang.words[order[r]];
    if (++in_line == words_per_line) {
      lines.push_back(std::move(line));
      line.clear();
      in_line = 0;
    }
  }
  if (!line.empty()) lines.push_back(std::move(line));
  return lines;
}

// Word counts of a whitespace-separated corpus.
inline std::map<std::string, std::uint64_t> word_counts(const std::vector<std::string>& corpus) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& line : corpus) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && line[i] == ' ') ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ') ++j;
      if (j > i) ++out[line.substr(i, j - i)];
      i = j;
    }
  }
  return out;
}

}  // namespace fixture

#endif  // LGSE_TESTS_FIXTURES_H_
