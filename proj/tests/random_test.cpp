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

#include <doctest.h>

#include <array>
#include <vector>

#include "mcfe/random.hpp"

using mcfe::Drbg;

TEST_CASE("seeded streams are reproducible and independent") {
    auto a = Drbg::from_seed(42, "s");
    auto b = Drbg::from_seed(42, "s");
    auto c = Drbg::from_seed(42, "t");
    auto d = Drbg::from_seed(43, "s");
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs_c |= x != c.next_u64();
        differs_d |= x != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);

    auto e = Drbg::from_seed(42, "s");
    auto f = Drbg::from_seed(42, "s");
    for (int i = 0; i < 20; ++i) CHECK(e.scalar() == f.scalar());
}

TEST_CASE("fork derives a stream that depends on the label") {
    auto a = Drbg::from_seed(1);
    auto b = Drbg::from_seed(1);
    auto fa = a.fork("x");
    auto fb = b.fork("x");
    auto fc = Drbg::from_seed(1).fork("y");
    const auto v = fa.next_u64();
    CHECK(v == fb.next_u64());
    CHECK(v != fc.next_u64());
}

TEST_CASE("low byte of random scalars passes a chi-square uniformity test") {
    auto rng = Drbg::from_seed(2024, "chi");
    constexpr int kSamples = 100000;
    std::array<int, 256> bins{};
    for (int i = 0; i < kSamples; ++i) ++bins[rng.scalar().to_bytes().back()];
    const double expected = kSamples / 256.0;
    double chi2 = 0;
    for (int n : bins) chi2 += (n - expected) * (n - expected) / expected;
    // 255 degrees of freedom; 330.5 is the 0.999 quantile.
    CHECK(chi2 < 330.5);
}

TEST_CASE("nonzero scalars are never zero") {
    auto rng = Drbg::from_seed(5, "nz");
    for (int i = 0; i < 100000; ++i) REQUIRE_FALSE(rng.nonzero_scalar().is_zero());
}

TEST_CASE("uniform stays below its bound and hits every value") {
    auto rng = Drbg::from_seed(6, "u");
    std::vector<int> seen(7);
    for (int i = 0; i < 7000; ++i) {
        const auto x = rng.uniform(7);
        REQUIRE(x < 7);
        ++seen[x];
    }
    for (int n : seen) CHECK(n > 800);
    CHECK_THROWS(rng.uniform(0));
}
