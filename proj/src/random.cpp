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

#include "mcfe/random.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace mcfe {

namespace {

constexpr std::string_view kDomain = "MCFE-SI-V1-DRBG";

}  // namespace

Drbg::Drbg(std::span<const std::uint8_t> seed) {
    std::vector<std::uint8_t> material(kDomain.begin(), kDomain.end());
    material.insert(material.end(), seed.begin(), seed.end());
    key_ = pairing::sha256(material);
}

Drbg Drbg::from_seed(std::uint64_t seed, std::string_view stream) {
    std::vector<std::uint8_t> material;
    for (int shift = 56; shift >= 0; shift -= 8) material.push_back(static_cast<std::uint8_t>(seed >> shift));
    material.insert(material.end(), stream.begin(), stream.end());
    return Drbg(material);
}

Drbg Drbg::from_system() {
    std::random_device rd;
    std::array<std::uint8_t, 32> seed{};
    for (std::size_t i = 0; i < seed.size(); i += 4) {
        const auto word = rd();
        for (std::size_t k = 0; k < 4; ++k) seed[i + k] = static_cast<std::uint8_t>(word >> (8 * k));
    }
    return Drbg(seed);
}

void Drbg::refill() {
    std::array<std::uint8_t, 40> input{};
    std::copy(key_.begin(), key_.end(), input.begin());
    for (int k = 0; k < 8; ++k) input[32 + k] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * k));
    ++counter_;
    block_ = pairing::sha256(input);
    used_ = 0;
}

void Drbg::fill(std::span<std::uint8_t> out) {
    for (auto& b : out) {
        if (used_ == block_.size()) refill();
        b = block_[used_++];
    }
}

std::uint64_t Drbg::next_u64() {
    std::array<std::uint8_t, 8> buf{};
    fill(buf);
    std::uint64_t v = 0;
    for (auto b : buf) v = (v << 8) | b;
    return v;
}

std::uint64_t Drbg::uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Drbg::uniform: zero bound");
    const std::uint64_t limit = max() - (max() % bound);
    for (;;) {
        const std::uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

pairing::Scalar Drbg::scalar() {
    std::array<std::uint8_t, 64> wide{};
    fill(wide);
    return pairing::Scalar::reduce(wide);
}

pairing::Scalar Drbg::nonzero_scalar() {
    for (;;) {
        auto s = scalar();
        if (!s.is_zero()) return s;
    }
}

Drbg Drbg::fork(std::string_view label) {
    std::array<std::uint8_t, 32> child{};
    fill(child);
    std::vector<std::uint8_t> material(child.begin(), child.end());
    material.insert(material.end(), label.begin(), label.end());
    return Drbg(material);
}

}  // namespace mcfe
