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
#include <string>
#include <unordered_set>

#include "mcfe/pairing.hpp"
#include "mcfe/random.hpp"

using namespace mcfe;
using namespace mcfe::pairing;

namespace {

template <typename A>
std::string key(const A& bytes) {
    return {bytes.begin(), bytes.end()};
}

}  // namespace

TEST_CASE("scalar field arithmetic") {
    const Scalar two = Scalar::from_u64(2);
    const Scalar three = Scalar::from_u64(3);
    CHECK(two * three == Scalar::from_u64(6));
    CHECK(two - three == Scalar::from_i64(-1));
    CHECK(-Scalar::one() + Scalar::one() == Scalar::zero());
    CHECK(three * three.inverse() == Scalar::one());
    CHECK(two.pow(10) == Scalar::from_u64(1024));
    CHECK_THROWS_AS(Scalar::zero().inverse(), std::domain_error);

    auto rng = Drbg::from_seed(1, "scalar");
    for (int i = 0; i < 50; ++i) {
        const Scalar x = rng.scalar();
        CHECK(Scalar::from_bytes(x.to_bytes()) == x);
    }
}

TEST_CASE("scalar decoding rejects values at or above the group order") {
    std::array<std::uint8_t, kScalarBytes> all_ones;
    all_ones.fill(0xff);
    CHECK_THROWS_AS(Scalar::from_bytes(all_ones), DecodeError);
    // p - 1 is the largest canonical value; p itself wraps to zero.
    const auto p_minus_1 = (-Scalar::one()).to_bytes();
    CHECK(Scalar::from_bytes(p_minus_1) == -Scalar::one());
    auto p = p_minus_1;
    p.back() += 1;
    CHECK_THROWS_AS(Scalar::from_bytes(p), DecodeError);
    CHECK(Scalar::reduce(p).is_zero());
    CHECK_THROWS_AS(Scalar::from_bytes(ByteView(p).first(31)), DecodeError);
}

TEST_CASE("pairing of the zero exponent is the identity") {
    auto rng = Drbg::from_seed(2, "pair");
    const G2 b = G2::generator().pow(rng.scalar());
    CHECK(pair(G1::generator().pow(Scalar::zero()), b).is_identity());
    CHECK(pair(G1::identity(), b).is_identity());
    CHECK(pair(G1::generator(), G2::identity()).is_identity());
}

TEST_CASE("pairing is bilinear and non-degenerate") {
    const GT e = GT::generator();
    CHECK_FALSE(e.is_identity());
    CHECK(pair(G1::generator(), G2::generator()) == e);
    CHECK(pair(G1::generator().pow(Scalar::from_u64(2)), G2::generator().pow(Scalar::from_u64(3))) ==
          e.pow(Scalar::from_u64(6)));

    auto rng = Drbg::from_seed(3, "bilinear");
    for (int i = 0; i < 100; ++i) {
        const Scalar x = rng.scalar();
        const Scalar y = rng.scalar();
        const GT lhs = pair(G1::generator().pow(x), G2::generator().pow(y));
        CHECK(lhs == GT::generator_pow(x * y));
        if (i < 10) {
            CHECK(lhs == pair(G1::generator().pow(y), G2::generator().pow(x)));
            CHECK(lhs == e.pow(x * y));
        }
    }
}

TEST_CASE("group laws agree with exponent arithmetic") {
    auto rng = Drbg::from_seed(4, "groups");
    for (int i = 0; i < 20; ++i) {
        const Scalar x = rng.scalar();
        const Scalar y = rng.scalar();
        CHECK(G1::generator().pow(x) * G1::generator().pow(y) == G1::generator().pow(x + y));
        CHECK(G2::generator().pow(x) * G2::generator().pow(y) == G2::generator().pow(x + y));
        CHECK(GT::generator_pow(x) * GT::generator_pow(y) == GT::generator_pow(x + y));
        CHECK(GT::generator_pow(x) / GT::generator_pow(y) == GT::generator_pow(x - y));
        CHECK((G1::generator().pow(x) * G1::generator().pow(x).inverse()).is_identity());
        CHECK(G2::generator().pow(x).inverse() == G2::generator().pow(-x));
    }
}

TEST_CASE("multi_pair equals the product of single pairings and counts every term") {
    auto rng = Drbg::from_seed(5, "multi");
    std::vector<std::pair<G1, G2>> terms;
    GT expected;
    for (int i = 0; i < 4; ++i) {
        terms.emplace_back(G1::generator().pow(rng.scalar()), G2::generator().pow(rng.scalar()));
        expected *= pair(terms.back().first, terms.back().second);
    }
    terms.emplace_back(G1::identity(), G2::generator());
    reset_pairing_count();
    CHECK(multi_pair(terms) == expected);
    CHECK(pairing_count() == terms.size());
    CHECK(multi_pair({}).is_identity());
}

TEST_CASE("encodings are fixed length and round trip") {
    auto rng = Drbg::from_seed(6, "encode");
    for (int i = 0; i < 20; ++i) {
        const G1 a = G1::generator().pow(rng.scalar());
        const G2 b = G2::generator().pow(rng.scalar());
        const GT c = GT::generator_pow(rng.scalar());
        CHECK(a.to_bytes().size() == kG1Bytes);
        CHECK(G1::from_bytes(a.to_bytes()) == a);
        CHECK(G2::from_bytes(b.to_bytes()) == b);
        CHECK(GT::from_bytes(c.to_bytes()) == c);
    }
    CHECK(G1::from_bytes(G1::identity().to_bytes()).is_identity());
    CHECK(G2::from_bytes(G2::identity().to_bytes()).is_identity());
    CHECK(GT::from_bytes(GT::identity().to_bytes()).is_identity());
}

TEST_CASE("decoders reject malformed input") {
    const auto g1 = G1::generator().to_bytes();
    CHECK_THROWS_AS(G1::from_bytes(ByteView(g1).first(47)), DecodeError);
    auto bad = g1;
    bad[0] &= 0x7f;  // clear the compression flag
    CHECK_THROWS_AS(G1::from_bytes(bad), DecodeError);
    auto off_curve = g1;
    off_curve[47] ^= 1;
    CHECK_THROWS_AS(G1::from_bytes(off_curve), DecodeError);

    auto g2 = G2::generator().to_bytes();
    g2[95] ^= 1;
    CHECK_THROWS_AS(G2::from_bytes(g2), DecodeError);

    // A field-element tuple that is not in the order-p subgroup.
    std::array<std::uint8_t, kGTBytes> junk{};
    junk[kGTBytes - 1] = 2;
    CHECK_THROWS_AS(GT::from_bytes(junk), DecodeError);
    auto gt = GT::generator().to_bytes();
    gt[100] ^= 0x10;
    CHECK_THROWS_AS(GT::from_bytes(gt), DecodeError);
}

TEST_CASE("hash_gt_to_g1 is deterministic and collision free at scale") {
    auto rng = Drbg::from_seed(7, "h");
    const GT t = GT::generator_pow(rng.scalar());
    CHECK(hash_gt_to_g1(t) == hash_gt_to_g1(t));
    CHECK(G1::from_bytes(hash_gt_to_g1(t).to_bytes()) == hash_gt_to_g1(t));
    CHECK(hash_gt_to_g1(GT::from_bytes(t.to_bytes())) == hash_gt_to_g1(t));

    std::unordered_set<std::string> seen;
    GT x = GT::generator_pow(rng.scalar());
    const GT step = GT::generator_pow(rng.scalar());
    for (int i = 0; i < 10000; ++i) {
        seen.insert(key(hash_gt_to_g1(x).to_bytes()));
        x *= step;
    }
    CHECK(seen.size() == 10000);
}

TEST_CASE("hash_to_scalar is deterministic, domain separated and collision free") {
    const Scalar empty = hash_to_scalar({});
    CHECK(empty == hash_to_scalar({}));
    CHECK_FALSE(empty.is_zero());
    CHECK(hash_to_scalar(as_bytes("abc")) == hash_to_scalar(as_bytes("abc")));
    CHECK_FALSE(hash_to_scalar(as_bytes("abc"), "A") == hash_to_scalar(as_bytes("abc"), "B"));

    std::unordered_set<std::string> seen;
    auto rng = Drbg::from_seed(8, "collide");
    std::array<std::uint8_t, 16> buf;
    for (int i = 0; i < 10000; ++i) {
        rng.fill(buf);
        seen.insert(key(hash_to_scalar(buf).to_bytes()));
    }
    CHECK(seen.size() == 10000);
}

TEST_CASE("GT exponentiation paths agree") {
    auto rng = Drbg::from_seed(9, "gtpow");
    const GT base = GT::generator_pow(rng.scalar());
    for (int i = 0; i < 10; ++i) {
        const Scalar e = rng.scalar();
        CHECK(GT::generator().pow(e) == GT::generator_pow(e));
        CHECK(base.pow(e) * base.pow(-e) == GT::identity());
    }
    CHECK(base.pow(Scalar::zero()).is_identity());
    CHECK(base.pow(Scalar::one()) == base);
    CHECK(base.pow(Scalar::from_u64(3)) == base * base * base);
}
