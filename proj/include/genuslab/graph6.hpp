#pragma once

// graph6 short form (n <= 62): one byte 63+n, then the upper-triangle
// adjacency bits in column order packed six to a byte, most significant bit
// first, each byte offset by 63, last byte zero-padded.

#include <string>
#include <string_view>

#include "genuslab/graph.hpp"

namespace genuslab {

inline std::string write_graph6(const Graph& g) {
  const int n = g.order();
  if (n > 62) throw Error("graph6 short form supports at most 62 vertices");
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0, filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = acc << 1 | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

inline Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw Error("graph6: empty input at byte 0");
  auto value = [&](std::size_t pos) {
    int c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126) throw Error("graph6: invalid character at byte " + std::to_string(pos));
    return c - 63;
  };
  const int n = value(0);
  if (n == 63) throw Error("graph6: long form (n > 62) unsupported at byte 0");
  const int bits = pair_count(n);
  const std::size_t expected = 1 + static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() != expected)
    throw Error("graph6: expected " + std::to_string(expected) + " bytes for n=" + std::to_string(n) + ", got " +
                std::to_string(text.size()) + " (mismatch at byte " + std::to_string(std::min(text.size(), expected)) + ")");
  Graph g(n);
  int p = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++p) {
      int chunk = value(1 + static_cast<std::size_t>(p / 6));
      if (chunk >> (5 - p % 6) & 1) g.add_edge(i, j);
    }
  if (bits % 6 != 0) {
    int last = value(expected - 1);
    if (last & ((1 << (6 - bits % 6)) - 1)) throw Error("graph6: nonzero padding bits at byte " + std::to_string(expected - 1));
  }
  return g;
}

}  // namespace genuslab
