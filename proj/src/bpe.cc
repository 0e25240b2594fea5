#include <algorithm>
#include <unordered_map>

#include "lgse/utf8.h"
#include "lgse/vocab.h"

namespace lgse {

namespace {

using Symbol = std::uint32_t;

std::uint64_t pair_key(Symbol l, Symbol r) {
  return (static_cast<std::uint64_t>(l) << 32) | r;
}
Symbol key_left(std::uint64_t key) { return static_cast<Symbol>(key >> 32); }
Symbol key_right(std::uint64_t key) { return static_cast<Symbol>(key); }

}  // namespace

struct BpeTrainer::State {
  std::vector<std::string> symbols;
  std::unordered_map<std::string, Symbol> symbol_ids;

  std::vector<std::vector<Symbol>> spans;
  std::vector<std::uint64_t> freq;

  std::unordered_map<std::uint64_t, std::uint64_t> pair_count;
  // Spans that held the pair at some point; may contain stale entries.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> pair_spans;

  struct Candidate {
    std::uint64_t count;
    std::uint64_t key;
  };
  std::vector<Candidate> heap;

  std::vector<std::uint64_t> visit_stamp;
  std::uint64_t stamp = 0;

  Symbol intern(std::string_view s) {
    auto [it, inserted] =
        symbol_ids.emplace(std::string(s), static_cast<Symbol>(symbols.size()));
    if (inserted) symbols.emplace_back(s);
    return it->second;
  }

  // Max-heap order: higher count first, then lexicographically smaller pair.
  bool heap_less(const Candidate& a, const Candidate& b) const {
    if (a.count != b.count) return a.count < b.count;
    const auto& al = symbols[key_left(a.key)];
    const auto& bl = symbols[key_left(b.key)];
    if (al != bl) return al > bl;
    return symbols[key_right(a.key)] > symbols[key_right(b.key)];
  }

  void push(std::uint64_t key, std::uint64_t count) {
    heap.push_back({count, key});
    std::push_heap(heap.begin(), heap.end(),
                   [this](const Candidate& a, const Candidate& b) {
                     return heap_less(a, b);
                   });
  }

  Candidate pop() {
    std::pop_heap(heap.begin(), heap.end(),
                  [this](const Candidate& a, const Candidate& b) {
                    return heap_less(a, b);
                  });
    Candidate c = heap.back();
    heap.pop_back();
    return c;
  }

  template <typename Fn>
  void for_each_pair(const std::vector<Symbol>& seq, Fn&& fn) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      fn(pair_key(seq[i], seq[i + 1]));
    }
  }
};

BpeTrainer::BpeTrainer(const std::map<std::string, std::uint64_t>& spans)
    : state_(std::make_unique<State>()) {
  State& s = *state_;
  for (const auto& [text, n] : spans) {
    if (n == 0 || text.empty()) continue;
    std::vector<Symbol> seq;
    for (auto c : utf8::split_chars(text)) seq.push_back(s.intern(c));
    const auto idx = static_cast<std::uint32_t>(s.spans.size());
    s.spans.push_back(std::move(seq));
    s.freq.push_back(n);
    s.for_each_pair(s.spans.back(), [&](std::uint64_t key) {
      s.pair_count[key] += n;
      auto& where = s.pair_spans[key];
      if (where.empty() || where.back() != idx) where.push_back(idx);
    });
  }
  s.visit_stamp.assign(s.spans.size(), 0);
  for (const auto& [key, count] : s.pair_count) s.push(key, count);
}

BpeTrainer::~BpeTrainer() = default;

std::optional<MergeRule> BpeTrainer::next() {
  State& s = *state_;
  while (!s.heap.empty()) {
    const State::Candidate top = s.heap.front();
    auto it = s.pair_count.find(top.key);
    const std::uint64_t live = it == s.pair_count.end() ? 0 : it->second;
    if (live != top.count) {
      s.pop();
      continue;
    }
    if (top.count < 2) return std::nullopt;
    s.pop();

    const Symbol left = key_left(top.key);
    const Symbol right = key_right(top.key);
    MergeRule rule{s.symbols[left], s.symbols[right], top.count};
    const Symbol merged = s.intern(rule.left + rule.right);

    std::vector<std::uint64_t> touched;
    auto bump = [&](std::uint64_t key, std::uint64_t n, bool add) {
      auto& c = s.pair_count[key];
      c = add ? c + n : c - n;
      touched.push_back(key);
    };

    ++s.stamp;
    const std::vector<std::uint32_t> where = std::move(s.pair_spans[top.key]);
    s.pair_spans.erase(top.key);
    for (const std::uint32_t idx : where) {
      if (s.visit_stamp[idx] == s.stamp) continue;
      s.visit_stamp[idx] = s.stamp;
      auto& seq = s.spans[idx];
      const std::uint64_t n = s.freq[idx];
      bool has_pair = false;
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i] == left && seq[i + 1] == right) {
          has_pair = true;
          break;
        }
      }
      if (!has_pair) continue;
      s.for_each_pair(seq, [&](std::uint64_t key) { bump(key, n, false); });
      std::vector<Symbol> out;
      out.reserve(seq.size());
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i + 1 < seq.size() && seq[i] == left && seq[i + 1] == right) {
          out.push_back(merged);
          ++i;
        } else {
          out.push_back(seq[i]);
        }
      }
      seq = std::move(out);
      s.for_each_pair(seq, [&](std::uint64_t key) {
        bump(key, n, true);
        auto& w = s.pair_spans[key];
        if (w.empty() || w.back() != idx) w.push_back(idx);
      });
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const auto key : touched) {
      const std::uint64_t c = s.pair_count[key];
      if (c == 0) {
        s.pair_count.erase(key);
      } else {
        s.push(key, c);
      }
    }
    return rule;
  }
  return std::nullopt;
}

std::vector<std::vector<std::string>> BpeTrainer::segmentations() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(state_->spans.size());
  for (const auto& seq : state_->spans) {
    auto& v = out.emplace_back();
    for (Symbol sym : seq) v.push_back(state_->symbols[sym]);
  }
  return out;
}

}  // namespace lgse
