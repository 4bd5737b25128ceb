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

#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acceptkit {

using Tokens = std::vector<std::string>;

struct SentencePair {
  Tokens source;
  Tokens reference;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

// Splits text into UTF-8 characters (one string per code point). Bytes that
// do not start a valid sequence are returned as single-byte characters.
std::vector<std::string_view> utf8_chars(std::string_view text);
std::size_t utf8_length(std::string_view text);

// Punctuation set shared by the tokenizer and the punctuation-count features:
// ASCII punctuation (!"#$%&'()*+,-./:;<=>?@[\]^_`{|}~), general punctuation
// U+2010-U+2027 and U+2030-U+205E, CJK symbols and punctuation U+3001-U+303F,
// and the full-width forms U+FF01-U+FF0F, U+FF1A-U+FF20, U+FF3B-U+FF40 and
// U+FF5B-U+FF65.
bool is_punctuation(char32_t code_point);
// True when every character of `token` is punctuation (and it is non-empty).
bool is_punctuation_token(std::string_view token);

// Whitespace-delimited tokens; every punctuation character becomes its own
// token. Whitespace is ASCII space/tab/CR/LF/VT/FF and U+3000.
Tokens tokenize(std::string_view text);

std::string lowercase_ascii(std::string_view text);
Tokens lowercase_ascii(const Tokens& tokens);

std::string join(std::span<const std::string> tokens, std::string_view sep = " ");

// TSV "source<TAB>reference", one pair per non-empty line. The reference
// side is lowercased. `origin` names the input in error messages.
std::vector<SentencePair> parse_parallel(std::istream& in, const std::string& origin);
std::vector<SentencePair> load_parallel(const std::filesystem::path& path);

}  // namespace acceptkit
