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

#include "acceptkit/subprocess.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>

#include <fmt/format.h>

#include "acceptkit/error.hpp"
#include "acceptkit/textio.hpp"

namespace acceptkit {
namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "acceptkit-XXXXXX").string();
    if (::mkdtemp(pattern.data()) == nullptr) throw Error("cannot create temporary directory");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

std::vector<std::string> run_line_filter(const std::string& command,
                                         std::span<const std::string> input) {
  TempDir dir;
  const auto in_path = dir.path() / "in.txt";
  const auto out_path = dir.path() / "out.txt";
  const auto err_path = dir.path() / "err.txt";
  std::string text;
  for (const auto& line : input) {
    text += line;
    text += '\n';
  }
  write_file_atomic(in_path, text);

  const std::string full = fmt::format("( {} ) < {} > {} 2> {}", command, shell_quote(in_path.string()),
                                       shell_quote(out_path.string()), shell_quote(err_path.string()));
  const int raw = std::system(full.c_str());
  const int status = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  if (status != 0) {
    std::string err;
    if (std::filesystem::exists(err_path)) err = read_file(err_path);
    throw ExternalCommandError(fmt::format("command '{}' exited with status {}: {}", command, status, err),
                               status, err);
  }
  return read_lines(out_path);
}

}  // namespace acceptkit
