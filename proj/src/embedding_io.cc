#include <bit>
#include <charconv>
#include <cstring>

#include "lgse/embedding.h"
#include "lgse/io.h"
#include "lgse/status.h"

namespace lgse {

namespace {

constexpr std::string_view kMagic = "LGSE";
constexpr std::uint32_t kBinaryVersion = 1;

std::size_t parse_size(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + std::string(s) + "'", line);
  }
  return v;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  for (auto f : io::split(line, ' ')) {
    if (!f.empty()) out.push_back(f);
  }
  return out;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i]))
         << (8 * i);
  }
  return v;
}

}  // namespace

KeyedRows parse_text_rows(std::string_view text) {
  const auto lines = io::split_lines(text);
  if (lines.empty()) throw ParseError("missing `count dim` header", 1);
  const auto header = fields(lines[0]);
  if (header.size() != 2) throw ParseError("header must be `count dim`", 1);
  const std::size_t count = parse_size(header[0], 1);
  const std::size_t dim = parse_size(header[1], 1);
  if (dim == 0) throw ParseError("dimension must be >= 1", 1);

  KeyedRows out;
  out.rows.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
  out.keys.reserve(count);
  std::size_t row = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = fields(lines[i]);
    if (f.size() != dim + 1) {
      throw ParseError("expected key and " + std::to_string(dim) + " values, got " +
                           std::to_string(f.size()) + " fields",
                       i + 1);
    }
    if (row == count) throw ParseError("more rows than the header declares", i + 1);
    out.keys.emplace_back(f[0]);
    for (std::size_t k = 0; k < dim; ++k) {
      out.rows(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k)) =
          io::parse_double(f[k + 1], i + 1);
    }
    ++row;
  }
  if (row != count) {
    throw ParseError("header declares " + std::to_string(count) + " rows, found " +
                     std::to_string(row));
  }
  return out;
}

std::string format_text_rows(std::span<const std::string> keys,
                             const RowMatrix& rows) {
  if (keys.size() != static_cast<std::size_t>(rows.rows())) {
    throw ValidationError("key count differs from row count");
  }
  std::string out = std::to_string(rows.rows()) + " " + std::to_string(rows.cols()) + "\n";
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out += keys[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < rows.cols(); ++k) {
      out.push_back(' ');
      out += io::format_double(rows(i, k));
    }
    out.push_back('\n');
  }
  return out;
}

NgramVectorTable parse_vector_table(std::string_view text) {
  KeyedRows kr = parse_text_rows(text);
  NgramVectorTable table(static_cast<std::size_t>(kr.rows.cols()));
  for (std::size_t i = 0; i < kr.keys.size(); ++i) {
    table.add(std::move(kr.keys[i]), kr.rows.row(static_cast<Eigen::Index>(i)).transpose());
  }
  return table;
}

NgramVectorTable load_vector_table(const std::filesystem::path& path) {
  return parse_vector_table(io::read_file(path));
}

std::string encode_binary_matrix(const RowMatrix& rows) {
  std::string out;
  out.reserve(16 + static_cast<std::size_t>(rows.size()) * 4);
  out.append(kMagic);
  put_u32(out, kBinaryVersion);
  put_u32(out, static_cast<std::uint32_t>(rows.rows()));
  put_u32(out, static_cast<std::uint32_t>(rows.cols()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index k = 0; k < rows.cols(); ++k) {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(rows(i, k))));
    }
  }
  return out;
}

RowMatrix decode_binary_matrix(std::string_view bytes) {
  if (bytes.size() < 16 || bytes.substr(0, 4) != kMagic) {
    throw ParseError("not an LGSE binary matrix");
  }
  if (get_u32(bytes, 4) != kBinaryVersion) {
    throw ParseError("unsupported binary matrix version " +
                     std::to_string(get_u32(bytes, 4)));
  }
  const std::uint64_t rows = get_u32(bytes, 8);
  const std::uint64_t dim = get_u32(bytes, 12);
  if (bytes.size() != 16 + rows * dim * 4) {
    throw ParseError("binary matrix payload size does not match its header");
  }
  RowMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim));
  std::size_t off = 16;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      m(i, k) = std::bit_cast<float>(get_u32(bytes, off));
      off += 4;
    }
  }
  return m;
}

RowMatrix load_matrix(const std::filesystem::path& path,
                      std::vector<std::string>* keys) {
  const std::string bytes = io::read_file(path);
  if (bytes.size() >= 4 && std::string_view(bytes).substr(0, 4) == kMagic) {
    if (keys) keys->clear();
    return decode_binary_matrix(bytes);
  }
  KeyedRows kr = parse_text_rows(bytes);
  if (keys) *keys = std::move(kr.keys);
  return std::move(kr.rows);
}

}  // namespace lgse
