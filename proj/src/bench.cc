#include "lgse/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

#include "lgse/status.h"
#include "lgse/utf8.h"

namespace lgse {

using ordered_json = nlohmann::ordered_json;

FertilityReport token_fertility(std::span<const std::string> corpus,
                                const Tokenizer& tok) {
  FertilityReport r;
  const TokenId unk = tok.vocab().unk_id();
  for (const auto& line : corpus) {
    const auto words = utf8::pretokenize(line);
    if (words.empty()) continue;
    ++r.documents;
    for (auto w : words) {
      const auto ids = tok.tokenize_word_ids(w);
      auto& bucket = r.by_length[utf8::length(w)];
      ++bucket.words;
      bucket.tokens += ids.size();
      ++r.total_words;
      r.total_tokens += ids.size();
      r.unk_tokens += static_cast<std::uint64_t>(std::count(ids.begin(), ids.end(), unk));
    }
  }
  if (r.total_words == 0) {
    throw ArgumentError("token fertility is undefined for a corpus with no words");
  }
  r.tf = static_cast<double>(r.total_tokens) / static_cast<double>(r.total_words);
  r.unk_rate = r.total_tokens == 0 ? 0.0
                                   : static_cast<double>(r.unk_tokens) /
                                         static_cast<double>(r.total_tokens);
  return r;
}

namespace {

double nearest_rank(std::vector<double> sorted, double pct) {
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  auto idx = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
  idx = std::clamp<std::size_t>(idx, 1, sorted.size());
  return sorted[idx - 1];
}

ordered_json fertility_object(const FertilityReport& r) {
  ordered_json j;
  j["total_words"] = r.total_words;
  j["total_tokens"] = r.total_tokens;
  j["tf"] = r.tf;
  j["unk_tokens"] = r.unk_tokens;
  j["unk_rate"] = r.unk_rate;
  j["documents"] = r.documents;
  auto hist = ordered_json::array();
  for (const auto& [len, b] : r.by_length) {
    hist.push_back(ordered_json{{"length", len}, {"words", b.words}, {"tokens", b.tokens}});
  }
  j["by_length"] = std::move(hist);
  return j;
}

ordered_json latency_object(const LatencyReport& r) {
  ordered_json j;
  j["repetitions"] = r.repetitions;
  j["warmup_runs"] = r.warmup_runs;
  j["run_ns"] = r.run_ns;
  j["total_chars"] = r.total_chars;
  j["total_tokens"] = r.total_tokens;
  j["mean_ns_per_kchar"] = r.mean_ns_per_kchar;
  j["p50_ns_per_kchar"] = r.p50_ns_per_kchar;
  j["p95_ns_per_kchar"] = r.p95_ns_per_kchar;
  return j;
}

}  // namespace

LatencyReport latency_benchmark(std::span<const std::string> corpus,
                                const Tokenizer& tok, std::size_t repetitions,
                                std::size_t warmup) {
  if (repetitions < 1) throw ArgumentError("latency benchmark needs >= 1 repetition");
  LatencyReport r;
  r.repetitions = repetitions;
  r.warmup_runs = warmup;
  for (const auto& line : corpus) r.total_chars += utf8::length(line);

  auto run_once = [&] {
    std::uint64_t tokens = 0;
    for (const auto& line : corpus) tokens += tok.encode(line).ids.size();
    return tokens;
  };
  for (std::size_t i = 0; i < warmup; ++i) r.total_tokens = run_once();
  for (std::size_t i = 0; i < repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    r.total_tokens = run_once();
    const auto stop = std::chrono::steady_clock::now();
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    r.run_ns.push_back(std::max<std::int64_t>(ns, 1));
  }
  const double kchars = std::max<double>(static_cast<double>(r.total_chars), 1.0) / 1000.0;
  std::vector<double> per_kchar;
  for (auto ns : r.run_ns) per_kchar.push_back(static_cast<double>(ns) / kchars);
  r.mean_ns_per_kchar = std::accumulate(per_kchar.begin(), per_kchar.end(), 0.0) /
                        static_cast<double>(per_kchar.size());
  r.p50_ns_per_kchar = nearest_rank(per_kchar, 50.0);
  r.p95_ns_per_kchar = nearest_rank(per_kchar, 95.0);
  return r;
}

Comparison compare(std::span<const std::string> corpus,
                   std::span<const NamedTokenizer> tokenizers,
                   std::size_t repetitions, std::size_t warmup) {
  if (tokenizers.size() < 2) throw ArgumentError("compare needs at least two tokenizers");
  Comparison c;
  for (const auto& t : tokenizers) {
    if (t.tokenizer == nullptr) throw ArgumentError("null tokenizer '" + t.name + "'");
    ComparisonRow row;
    row.name = t.name;
    row.fertility = token_fertility(corpus, *t.tokenizer);
    row.mean_sequence_length = static_cast<double>(row.fertility.total_tokens) /
                               static_cast<double>(row.fertility.documents);
    if (repetitions > 0) {
      row.latency = latency_benchmark(corpus, *t.tokenizer, repetitions, warmup);
    }
    c.rows.push_back(std::move(row));
  }
  return c;
}

std::string Comparison::to_json() const {
  ordered_json j;
  auto arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json o;
    o["name"] = r.name;
    o["tf"] = r.fertility.tf;
    o["mean_sequence_length"] = r.mean_sequence_length;
    o["unk_rate"] = r.fertility.unk_rate;
    o["fertility"] = fertility_object(r.fertility);
    o["latency"] = r.latency ? latency_object(*r.latency) : ordered_json(nullptr);
    arr.push_back(std::move(o));
  }
  j["tokenizers"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string Comparison::to_text() const {
  std::size_t name_w = 9;
  for (const auto& r : rows) name_w = std::max(name_w, r.name.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s %10s %10s %8s %10s %8s %14s\n",
                static_cast<int>(name_w), "tokenizer", "words", "tokens", "TF",
                "mean_len", "unk_rate", "p50_ns/kchar");
  out += buf;
  for (const auto& r : rows) {
    const std::string p50 =
        r.latency ? std::to_string(static_cast<long long>(std::llround(r.latency->p50_ns_per_kchar)))
                  : std::string("-");
    std::snprintf(buf, sizeof(buf), "%-*s %10llu %10llu %8.4f %10.3f %8.4f %14s\n",
                  static_cast<int>(name_w), r.name.c_str(),
                  static_cast<unsigned long long>(r.fertility.total_words),
                  static_cast<unsigned long long>(r.fertility.total_tokens),
                  r.fertility.tf, r.mean_sequence_length, r.fertility.unk_rate,
                  p50.c_str());
    out += buf;
  }
  return out;
}

std::string fertility_json(const FertilityReport& r) {
  return fertility_object(r).dump(2) + "\n";
}

std::string latency_json(const LatencyReport& r) {
  return latency_object(r).dump(2) + "\n";
}

}  // namespace lgse
