/*
   Copyright 2026 The mcfe-si Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Deterministic encodings of application data into G_T.
//
// Items and labels are mapped through separate hash domains into exponents
// of e(g, ĝ); two clients holding the same bytes therefore produce the same
// group element, which is what index matching relies on.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "mcfe/pairing.hpp"

namespace mcfe::harness {

using pairing::ByteView;
using pairing::GT;

inline constexpr std::string_view kItemDomain = "MCFE-SI-V1-ITEM";
inline constexpr std::string_view kTagDomain = "MCFE-SI-V1-TAG";

// e(g, ĝ)^H_item(bytes). Throws std::invalid_argument on empty input.
GT encode_item(ByteView bytes);
GT encode_item(std::string_view item);

// e(g, ĝ)^H_tag(label). Throws std::invalid_argument on an empty label.
GT make_tag(std::string_view label);

struct LabelDescriptor {
    std::string label;
    GT tag;

    static LabelDescriptor from(std::string label);
};

// Encodes items and remembers them, so recovered group elements can be
// reported as the original bytes.
class ItemCodec {
  public:
    GT encode(std::string_view item);
    // nullopt for elements this codec never produced.
    std::optional<std::string> decode(const GT& element) const;
    std::size_t size() const { return dictionary_.size(); }

  private:
    std::unordered_map<std::string, std::string> dictionary_;  // GT encoding -> item
};

}  // namespace mcfe::harness
