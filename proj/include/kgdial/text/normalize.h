// Copyright 2026 The kgdial Authors.
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

#ifndef KGDIAL_TEXT_NORMALIZE_H_
#define KGDIAL_TEXT_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace kgdial {

inline constexpr std::string_view kUrlToken = "⟨url⟩";
inline constexpr std::string_view kEmoticonToken = "⟨emoticon⟩";
inline constexpr std::string_view kHashtagToken = "⟨hashtag⟩";
inline constexpr std::string_view kUserToken = "@user";

// The fixed emoticon list recognized by Normalize().
const std::vector<std::string> &Emoticons();

// Lowercases and rewrites tweet artifacts: URLs, @handles, #hashtags and
// emoticons become placeholder tokens; ASCII punctuation is spaced out into
// standalone tokens; whitespace is collapsed. Idempotent.
std::string Normalize(std::string_view raw);

// Splits on whitespace after separating ASCII punctuation (except '_') into
// standalone tokens. Placeholder tokens are kept whole.
std::vector<std::string> Tokenize(std::string_view normalized);

// Tokenize(Normalize(raw)).
std::vector<std::string> NormalizeAndTokenize(std::string_view raw);

// Joins tokens with single spaces.
std::string JoinTokens(const std::vector<std::string> &tokens);

}  // namespace kgdial

#endif  // KGDIAL_TEXT_NORMALIZE_H_
