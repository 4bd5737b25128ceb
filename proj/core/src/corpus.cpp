// Copyright 2026 The acceptkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "acceptkit/corpus.hpp"

#include <fstream>

#include "acceptkit/error.hpp"

namespace acceptkit {
namespace {

// Decodes the code point starting at text[pos]; `length` receives the number
// of bytes consumed. Invalid sequences decode as the single lead byte.
char32_t decode_at(std::string_view text, std::size_t pos, std::size_t& length) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  std::size_t need = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    length = 1;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    need = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    need = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    need = 3;
    cp = lead & 0x07;
  } else {
    length = 1;
    return lead;
  }
  if (pos + need >= text.size()) {
    length = 1;
    return lead;
  }
  for (std::size_t k = 1; k <= need; ++k) {
    const unsigned char c = byte(pos + k);
    if ((c & 0xC0) != 0x80) {
      length = 1;
      return lead;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  length = need + 1;
  return cp;
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f' ||
         cp == 0x3000;
}

}  // namespace

std::vector<std::string_view> utf8_chars(std::string_view text) {
  std::vector<std::string_view> chars;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t len = 1;
    decode_at(text, pos, len);
    chars.push_back(text.substr(pos, len));
    pos += len;
  }
  return chars;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < text.size(); ++n) {
    std::size_t len = 1;
    decode_at(text, pos, len);
    pos += len;
  }
  return n;
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
         (cp >= 0x3001 && cp <= 0x303F) || (cp >= 0xFF01 && cp <= 0xFF0F) ||
         (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
         (cp >= 0xFF5B && cp <= 0xFF65);
}

bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  for (std::size_t pos = 0; pos < token.size();) {
    std::size_t len = 1;
    if (!is_punctuation(decode_at(token, pos, len))) return false;
    pos += len;
  }
  return true;
}

Tokens tokenize(std::string_view text) {
  Tokens tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t len = 1;
    const char32_t cp = decode_at(text, pos, len);
    if (is_space(cp)) {
      flush();
    } else if (is_punctuation(cp)) {
      flush();
      tokens.emplace_back(text.substr(pos, len));
    } else {
      current.append(text.substr(pos, len));
    }
    pos += len;
  }
  flush();
  return tokens;
}

std::string lowercase_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Tokens lowercase_ascii(const Tokens& tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lowercase_ascii(t));
  return out;
}

std::string join(std::span<const std::string> tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

std::vector<SentencePair> parse_parallel(std::istream& in, const std::string& origin) {
  std::vector<SentencePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos && line.find('\t') == std::string::npos) {
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(origin, line_no, "missing tab separator");
    if (line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(origin, line_no, "more than one tab separator");
    }
    SentencePair pair{tokenize(std::string_view(line).substr(0, tab)),
                      tokenize(lowercase_ascii(std::string_view(line).substr(tab + 1)))};
    if (pair.source.empty()) throw ParseError(origin, line_no, "empty source sentence");
    if (pair.reference.empty()) throw ParseError(origin, line_no, "empty reference sentence");
    pairs.push_back(std::move(pair));
  }
  if (pairs.empty()) throw EmptyCorpusError(origin + ": empty corpus");
  return pairs;
}

std::vector<SentencePair> load_parallel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_parallel(in, path.string());
}

}  // namespace acceptkit
