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

#include "mcfe/codec.hpp"

#include <stdexcept>

namespace mcfe::harness {

namespace {

std::string key_of(const GT& element) {
    const auto bytes = element.to_bytes();
    return {bytes.begin(), bytes.end()};
}

}  // namespace

GT encode_item(ByteView bytes) {
    if (bytes.empty()) throw std::invalid_argument("encode_item: empty item");
    return GT::generator_pow(pairing::hash_to_scalar(bytes, kItemDomain));
}

GT encode_item(std::string_view item) { return encode_item(pairing::as_bytes(item)); }

GT make_tag(std::string_view label) {
    if (label.empty()) throw std::invalid_argument("make_tag: empty label");
    return GT::generator_pow(pairing::hash_to_scalar(pairing::as_bytes(label), kTagDomain));
}

LabelDescriptor LabelDescriptor::from(std::string label) {
    GT tag = make_tag(label);
    return {std::move(label), tag};
}

GT ItemCodec::encode(std::string_view item) {
    GT element = encode_item(item);
    dictionary_.emplace(key_of(element), std::string(item));
    return element;
}

std::optional<std::string> ItemCodec::decode(const GT& element) const {
    const auto it = dictionary_.find(key_of(element));
    if (it == dictionary_.end()) return std::nullopt;
    return it->second;
}

}  // namespace mcfe::harness
