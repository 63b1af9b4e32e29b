// Copyright 2026 The coarsekit Authors.
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

// Small helpers shared by the literal parsers.

#pragma once

#include <string_view>
#include <vector>

#include "coarsekit/group.hpp"

namespace coarsekit::text {

std::string_view trim(std::string_view s);

/// Signed decimal integer; throws GroupError.
Integer parse_integer(std::string_view text);

/// Splits on `sep` at bracket depth zero.
std::vector<std::string_view> split_top(std::string_view s, std::string_view sep);

/// True when `s` is one bracketed group, e.g. "(1,(2,3))" but not "(1),(2)".
bool wrapped_in(std::string_view s, char open, char close);

}  // namespace coarsekit::text
