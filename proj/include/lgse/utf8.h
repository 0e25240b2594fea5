#ifndef LGSE_UTF8_H_
#define LGSE_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace lgse::utf8 {

// Decodes the scalar value starting at text[pos] and advances pos past it.
// Throws ValidationError on malformed or overlong sequences and surrogates.
char32_t next(std::string_view text, std::size_t& pos);

void append(std::string& out, char32_t cp);

// Splits text into one view per Unicode scalar value. Views alias `text`.
std::vector<std::string_view> split_chars(std::string_view text);

std::size_t length(std::string_view text);

// Throws ValidationError if text is not well-formed UTF-8.
void validate(std::string_view text);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);

// Shared pre-tokenizer: splits on Unicode whitespace and emits every
// punctuation character as its own single-character word.
std::vector<std::string_view> pretokenize(std::string_view text);

}  // namespace lgse::utf8

#endif  // LGSE_UTF8_H_
