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

#include "acceptkit/birnn_io.hpp"

#include <bit>
#include <cstring>

#include <fmt/format.h>

#include "acceptkit/digest.hpp"
#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {

namespace {

constexpr std::string_view kMagic{"AKBIRNN\0", 8};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kChecksumSize = 32;

class Writer {
 public:
  template <typename U>
  void uint(U value) {
    for (std::size_t i = 0; i < sizeof(U); ++i) out_.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
  void f64(double value) { uint(std::bit_cast<std::uint64_t>(value)); }
  void bytes(std::string_view b) { out_.append(b); }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(std::string_view data, const std::string& origin) : data_(data), origin_(origin) {}

  template <typename U>
  U uint() {
    const auto b = take(sizeof(U));
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(static_cast<unsigned char>(b[i])) << (8 * i);
    return value;
  }
  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }
  std::string_view take(std::size_t n) {
    if (data_.size() - pos_ < n) throw ParseError(origin_, 0, "truncated model file");
    const auto b = data_.substr(pos_, n);
    pos_ += n;
    return b;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  const std::string& origin_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string birnn_to_bytes(const BirnnModel& model) {
  const BirnnConfig& c = model.config;
  Writer w;
  w.bytes(kMagic);
  w.uint(kVersion);
  w.uint(static_cast<std::uint32_t>(model.meta.size()));
  w.bytes(model.meta);
  for (std::size_t v : {c.max_len, c.src_vocab, c.tgt_vocab, c.embed_dim, c.rnn_hidden, c.proj_dim, c.penult_dim,
                        c.batch_size, c.patience, c.max_epochs}) {
    w.uint(static_cast<std::uint64_t>(v));
  }
  w.uint(c.seed);
  for (double v : {c.dropout, c.lr, c.beta1, c.beta2, c.eps}) w.f64(v);
  std::uint32_t count = 0;
  BirnnParams::visit([&](const std::string&, const auto&) { ++count; }, model.params);
  w.uint(count);
  BirnnParams::visit(
      [&](const std::string& name, const auto& t) {
        w.uint(static_cast<std::uint16_t>(name.size()));
        w.bytes(name);
        w.uint(static_cast<std::uint64_t>(t.rows()));
        w.uint(static_cast<std::uint64_t>(t.cols()));
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
          for (Eigen::Index i = 0; i < t.rows(); ++i) w.f64(t(i, j));
        }
      },
      model.params);
  w.bytes(sha256_raw(w.str()));
  return std::move(w.str());
}

BirnnModel birnn_from_bytes(std::string_view bytes, const std::string& origin) {
  if (bytes.size() < kMagic.size() + kChecksumSize || bytes.substr(0, kMagic.size()) != kMagic) {
    throw ParseError(origin, 0, "not a BiRNN model file");
  }
  const auto body = bytes.substr(0, bytes.size() - kChecksumSize);
  if (sha256_raw(body) != bytes.substr(body.size())) throw ParseError(origin, 0, "model checksum mismatch");

  Reader r(body, origin);
  r.take(kMagic.size());
  if (const auto v = r.uint<std::uint32_t>(); v != kVersion) {
    throw ParseError(origin, 0, fmt::format("unsupported model version {}", v));
  }
  BirnnModel model;
  model.meta = std::string(r.take(r.uint<std::uint32_t>()));
  BirnnConfig& c = model.config;
  for (std::size_t* v : {&c.max_len, &c.src_vocab, &c.tgt_vocab, &c.embed_dim, &c.rnn_hidden, &c.proj_dim,
                         &c.penult_dim, &c.batch_size, &c.patience, &c.max_epochs}) {
    *v = static_cast<std::size_t>(r.uint<std::uint64_t>());
  }
  c.seed = r.uint<std::uint64_t>();
  for (double* v : {&c.dropout, &c.lr, &c.beta1, &c.beta2, &c.eps}) *v = r.f64();
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(origin, 0, e.what());
  }
  model.params = BirnnParams::zeros(c);
  std::uint32_t expected = 0;
  BirnnParams::visit([&](const std::string&, const auto&) { ++expected; }, model.params);
  if (r.uint<std::uint32_t>() != expected) throw ParseError(origin, 0, "wrong tensor count");
  BirnnParams::visit(
      [&](const std::string& name, auto& t) {
        const auto got = r.take(r.uint<std::uint16_t>());
        if (got != name) throw ParseError(origin, 0, fmt::format("expected tensor {}, found {}", name, got));
        const auto rows = r.uint<std::uint64_t>();
        const auto cols = r.uint<std::uint64_t>();
        if (rows != static_cast<std::uint64_t>(t.rows()) || cols != static_cast<std::uint64_t>(t.cols())) {
          throw ParseError(origin, 0, fmt::format("tensor {} has shape {}x{}, config implies {}x{}", name, rows, cols,
                                                  t.rows(), t.cols()));
        }
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
          for (Eigen::Index i = 0; i < t.rows(); ++i) t(i, j) = r.f64();
        }
        if (!t.allFinite()) throw ParseError(origin, 0, fmt::format("tensor {} has non-finite entries", name));
      },
      model.params);
  if (!r.done()) throw ParseError(origin, 0, "trailing bytes before checksum");
  return model;
}

void save_birnn(const BirnnModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, birnn_to_bytes(model));
}

BirnnModel load_birnn(const std::filesystem::path& path) { return birnn_from_bytes(read_file(path), path.string()); }

}  // namespace acceptkit
