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

#include "acceptkit/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

std::string sha256_raw(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> out{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1) {
    throw Error("sha256: digest computation failed");
  }
  return std::string(reinterpret_cast<const char*>(out.data()), len);
}

std::string sha256_hex(std::string_view data) {
  std::string hex;
  for (unsigned char c : sha256_raw(data)) fmt::format_to(std::back_inserter(hex), "{:02x}", c);
  return hex;
}

std::string file_sha256_hex(const std::filesystem::path& path) {
  return sha256_hex(read_file(path));
}

}  // namespace acceptkit
