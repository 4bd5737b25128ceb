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
#include <string>
#include <string_view>

#include "acceptkit/birnn.hpp"

namespace acceptkit {

struct BirnnModel {
  BirnnConfig config;
  BirnnParams params;
  std::string meta;  // free-form provenance (seed, config digest)
};

// Binary model file, all integers and doubles little-endian:
//
//   "AKBIRNN\0"                      8 bytes
//   u32 version (1)
//   u32 meta length, meta bytes
//   u64 max_len, src_vocab, tgt_vocab, embed_dim, rnn_hidden, proj_dim,
//       penult_dim, batch_size, patience, max_epochs, seed
//   f64 dropout, lr, beta1, beta2, eps
//   u32 tensor count
//   per tensor, in BirnnParams::visit order:
//     u16 name length, name bytes, u64 rows, u64 cols,
//     rows*cols f64 values in column-major order
//   32-byte SHA-256 of every preceding byte
std::string birnn_to_bytes(const BirnnModel& model);
BirnnModel birnn_from_bytes(std::string_view bytes, const std::string& origin = "<memory>");

void save_birnn(const BirnnModel& model, const std::filesystem::path& path);
BirnnModel load_birnn(const std::filesystem::path& path);

}  // namespace acceptkit
