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

#include "kgdial/text/normalize.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace kgdial {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u) && c != '_';
}

std::vector<std::string_view> SplitSpace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsPlaceholder(std::string_view token) {
  return token == kUrlToken || token == kEmoticonToken ||
         token == kHashtagToken || token == kUserToken;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool IsUrl(std::string_view lowered) {
  return StartsWith(lowered, "http://") || StartsWith(lowered, "https://") ||
         StartsWith(lowered, "www.");
}

bool IsEmoticon(std::string_view token) {
  static const std::unordered_set<std::string_view> set = [] {
    std::unordered_set<std::string_view> s;
    for (const std::string &e : Emoticons()) s.insert(e);
    return s;
  }();
  return set.count(token) > 0;
}

// Appends a plain word with punctuation split into standalone tokens.
void SplitPunctuation(std::string_view word, std::vector<std::string> &out) {
  std::string current;
  for (char c : word) {
    if (IsPunct(c)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      out.emplace_back(1, c);
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
}

}  // namespace

const std::vector<std::string> &Emoticons() {
  static const std::vector<std::string> list = {
      ":)",   ":-)",  ":(",   ":-(",  ";)",   ";-)",  ":D",   ":-D",
      ":d",   ":P",   ":-P",  ":p",   ":-p",  ":o",   ":O",   ":-o",
      ":-O",  ":/",   ":-/",  ":\\",  ":|",   ":-|",  ":*",   ":-*",
      ":'(",  ":')",  ";(",   ";D",   ";P",   ";p",   "=)",   "=(",
      "=D",   "=P",   "=p",   "=/",   "=]",   "=[",   ":]",   ":[",
      ":-]",  ":-[",  ":>",   ":<",   ":3",   ":-3",  "<3",   "</3",
      "8)",   "8-)",  "B)",   ":-c",  ":c",   ":-x",  ":x",   "0:)",
      "B-)",  "^_^",  "^^",   "-_-",  "o_O",  "O_o",  "o.O",  "O.o",
      ">_<",  "T_T",  ";_;",  ":$",   ":@",   "D:",
  };
  return list;
}

std::string Normalize(std::string_view raw) {
  std::vector<std::string> tokens;
  for (std::string_view piece : SplitSpace(raw)) {
    if (IsPlaceholder(piece)) {
      tokens.emplace_back(piece);
      continue;
    }
    if (IsEmoticon(piece)) {
      tokens.emplace_back(kEmoticonToken);
      continue;
    }
    std::string lowered = Lower(piece);
    if (IsUrl(lowered)) {
      tokens.emplace_back(kUrlToken);
    } else if (lowered.size() > 1 && lowered.front() == '@') {
      tokens.emplace_back(kUserToken);
    } else if (lowered.size() > 1 && lowered.front() == '#' &&
               !IsPunct(lowered[1])) {
      tokens.emplace_back(kHashtagToken);
      SplitPunctuation(std::string_view(lowered).substr(1), tokens);
    } else {
      SplitPunctuation(lowered, tokens);
    }
  }
  return JoinTokens(tokens);
}

std::vector<std::string> Tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  for (std::string_view piece : SplitSpace(normalized)) {
    if (IsPlaceholder(piece)) {
      tokens.emplace_back(piece);
    } else {
      SplitPunctuation(piece, tokens);
    }
  }
  return tokens;
}

std::vector<std::string> NormalizeAndTokenize(std::string_view raw) {
  return Tokenize(Normalize(raw));
}

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (const std::string &t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace kgdial
