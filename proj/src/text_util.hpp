#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace hmetric::detail {

struct TextLine {
  int number = 0;
  std::vector<std::string> tokens;
};

/// Splits a stream into whitespace-separated tokens per line, dropping
/// `#` comments and blank lines.
inline std::vector<TextLine> read_lines(std::istream& in) {
  std::vector<TextLine> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    TextLine line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

/// Text after the first token on a raw line, used where values contain spaces.
inline std::string rest_after(const TextLine& line, std::size_t skip) {
  std::string s;
  for (std::size_t i = skip; i < line.tokens.size(); ++i) {
    if (!s.empty()) s += ' ';
    s += line.tokens[i];
  }
  return s;
}

}  // namespace hmetric::detail
