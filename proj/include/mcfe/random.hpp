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

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "mcfe/pairing.hpp"

namespace mcfe {

// SHA-256 in counter mode. Seeded instances are reproducible across runs and
// platforms; from_system() seeds from the OS entropy source.
//
// Satisfies UniformRandomBitGenerator so it can drive <random> utilities, but
// uniform() should be preferred where cross-platform reproducibility matters.
class Drbg {
  public:
    using result_type = std::uint64_t;

    explicit Drbg(std::span<const std::uint8_t> seed);

    // Independent streams for the same numeric seed are selected by label.
    static Drbg from_seed(std::uint64_t seed, std::string_view stream = {});
    static Drbg from_system();

    void fill(std::span<std::uint8_t> out);
    std::uint64_t next_u64();

    // Uniform in [0, bound) by rejection sampling; bound must be nonzero.
    std::uint64_t uniform(std::uint64_t bound);

    pairing::Scalar scalar();
    pairing::Scalar nonzero_scalar();

    // Child generator whose output is independent of later draws here.
    Drbg fork(std::string_view label);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

  private:
    void refill();

    std::array<std::uint8_t, 32> key_{};
    std::uint64_t counter_ = 0;
    std::array<std::uint8_t, 32> block_{};
    std::size_t used_ = block_.size();
};

}  // namespace mcfe
