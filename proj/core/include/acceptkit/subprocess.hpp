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

#include <span>
#include <string>
#include <vector>

namespace acceptkit {

// Runs `command` through /bin/sh with `input` joined by '\n' on stdin and
// returns stdout split into lines. Throws ExternalCommandError (carrying the
// captured stderr) on a nonzero exit status.
std::vector<std::string> run_line_filter(const std::string& command,
                                         std::span<const std::string> input);

}  // namespace acceptkit
