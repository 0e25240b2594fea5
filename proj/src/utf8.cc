#include "lgse/utf8.h"

#include "lgse/status.h"

namespace lgse::utf8 {

namespace {

[[noreturn]] void malformed(std::size_t pos) {
  throw ValidationError("malformed UTF-8 at byte " + std::to_string(pos));
}

}  // namespace

char32_t next(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  const auto lead = static_cast<unsigned char>(text[pos]);
  int extra;
  char32_t cp;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    malformed(start);
  }
  if (start + extra >= text.size()) malformed(start);
  for (int i = 1; i <= extra; ++i) {
    const auto c = static_cast<unsigned char>(text[start + i]);
    if ((c & 0xC0) != 0x80) malformed(start);
    cp = (cp << 6) | (c & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    malformed(start);
  }
  pos = start + extra + 1;
  return cp;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::vector<std::string_view> split_chars(std::string_view text) {
  std::vector<std::string_view> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    next(text, pos);
    out.push_back(text.substr(start, pos - start));
  }
  return out;
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    next(text, pos);
    ++n;
  }
  return n;
}

void validate(std::string_view text) { length(text); }

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF:
      return true;
    default:
      break;
  }
  return (cp >= 0x2010 && cp <= 0x2027) ||  // general punctuation
         (cp >= 0x2030 && cp <= 0x205E) ||
         (cp >= 0x1360 && cp <= 0x1368) ||  // Ethiopic
         (cp >= 0x3001 && cp <= 0x3003) || (cp >= 0x3008 && cp <= 0x3011) ||
         (cp >= 0xFF01 && cp <= 0xFF0F);
}

std::vector<std::string_view> pretokenize(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  std::size_t word_start = std::string_view::npos;
  auto flush = [&](std::size_t end) {
    if (word_start != std::string_view::npos) {
      words.push_back(text.substr(word_start, end - word_start));
      word_start = std::string_view::npos;
    }
  };
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = next(text, pos);
    if (is_space(cp)) {
      flush(start);
    } else if (is_punct(cp)) {
      flush(start);
      words.push_back(text.substr(start, pos - start));
    } else if (word_start == std::string_view::npos) {
      word_start = start;
    }
  }
  flush(text.size());
  return words;
}

}  // namespace lgse::utf8
