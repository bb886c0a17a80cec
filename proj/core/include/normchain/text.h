// Copyright 2026 The normchain Authors.
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

#ifndef NORMCHAIN_TEXT_H_
#define NORMCHAIN_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace normchain::text {

std::string_view Trim(std::string_view s);

// Splits on runs of ASCII whitespace; never yields empty tokens.
std::vector<std::string> Tokenize(std::string_view s);

std::string AsciiLower(std::string_view s);

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD so that
// distances stay defined on arbitrary input.
std::u32string DecodeUtf8(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace normchain::text

#endif  // NORMCHAIN_TEXT_H_
