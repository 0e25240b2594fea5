#ifndef LGSE_BENCH_H_
#define LGSE_BENCH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgse/tokenizer.h"

namespace lgse {

struct LengthBucket {
  std::uint64_t words = 0;
  std::uint64_t tokens = 0;

  bool operator==(const LengthBucket&) const = default;
};

struct FertilityReport {
  std::uint64_t total_words = 0;
  std::uint64_t total_tokens = 0;
  double tf = 0.0;  // total_tokens / total_words
  // Word length in codepoints -> words of that length and their tokens.
  std::map<std::size_t, LengthBucket> by_length;
  std::uint64_t unk_tokens = 0;
  double unk_rate = 0.0;
  std::uint64_t documents = 0;  // non-empty lines

  bool operator==(const FertilityReport&) const = default;
};

// Exact token and word counts over the shared pre-tokenizer's words.
// Throws ArgumentError when the corpus has no words.
FertilityReport token_fertility(std::span<const std::string> corpus,
                                const Tokenizer& tok);

struct LatencyReport {
  std::size_t repetitions = 0;
  std::size_t warmup_runs = 0;
  std::vector<std::int64_t> run_ns;  // one full-corpus encode per entry
  std::uint64_t total_chars = 0;
  std::uint64_t total_tokens = 0;    // per run
  double mean_ns_per_kchar = 0.0;
  double p50_ns_per_kchar = 0.0;
  double p95_ns_per_kchar = 0.0;
};

// Times full-corpus encodes on a monotonic clock after discarding `warmup`
// runs. Normalized per 1,000 input codepoints.
LatencyReport latency_benchmark(std::span<const std::string> corpus,
                                const Tokenizer& tok, std::size_t repetitions,
                                std::size_t warmup);

struct NamedTokenizer {
  std::string name;
  const Tokenizer* tokenizer = nullptr;
};

struct ComparisonRow {
  std::string name;
  FertilityReport fertility;
  double mean_sequence_length = 0.0;  // tokens per non-empty line
  std::optional<LatencyReport> latency;
};

struct Comparison {
  std::vector<ComparisonRow> rows;

  std::string to_json() const;
  std::string to_text() const;
};

// Runs fertility for every tokenizer and, when repetitions > 0, latency.
Comparison compare(std::span<const std::string> corpus,
                   std::span<const NamedTokenizer> tokenizers,
                   std::size_t repetitions = 0, std::size_t warmup = 0);

std::string fertility_json(const FertilityReport& r);
std::string latency_json(const LatencyReport& r);

}  // namespace lgse

#endif  // LGSE_BENCH_H_
