// Copyright 2026 The abc-fuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABCFUZZ_TEXT_HPP
#define ABCFUZZ_TEXT_HPP

#include <string>
#include <string_view>

namespace abcfuzz {

/// Shortest decimal representation that reads back to the identical double.
[[nodiscard]] std::string format_double(double value);

/// Parse the whole of `text` as a double (surrounding blanks allowed). Throws UsageError.
[[nodiscard]] double parse_double(std::string_view text);

}  // namespace abcfuzz

#endif
