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

#include <string>
#include <vector>

#include "mcfe/codec.hpp"
#include "mcfe/policy.hpp"
#include "mcfe/random.hpp"
#include "mcfe/scheme.hpp"
#include "mcfe/wire.hpp"

using namespace mcfe;
using namespace mcfe::wire;
using pairing::GT;

namespace {

struct Records {
    scheme::SetupOutput sys;
    scheme::DecryptionKey sk;
    scheme::ClientCiphertext ct;

    Records() {
        auto rng = Drbg::from_seed(200, "wire");
        sys = scheme::setup(4, 3, rng);
        sk = scheme::keygen(sys.msk, sys.pp, {1, 3}, policy::parse_policy("THRESHOLD(2; A, NOT B, 'c d') OR E"), rng);
        std::vector<GT> items = {harness::encode_item("x"), harness::encode_item("y")};
        ct = scheme::encrypt(sys.pp, std::vector<std::string>{"A", "c d"}, harness::make_tag("t"), items,
                             sys.client_keys[2], rng);
    }
};

const Records& records() {
    static const Records r;
    return r;
}

}  // namespace

TEST_CASE("every record type re-encodes bit-exactly") {
    const auto& r = records();
    const auto pp = encode(r.sys.pp);
    const auto msk = encode(r.sys.msk);
    const auto csk = encode(r.sys.client_keys[1], r.sys.pp);
    const auto sk = encode(r.sk, r.sys.pp);
    const auto ct = encode(r.ct, r.sys.pp);

    CHECK(encode(decode_public_params(pp)) == pp);
    CHECK(encode(decode_master_secret(msk)) == msk);
    CHECK(encode(decode_client_key(csk), r.sys.pp) == csk);
    CHECK(encode(decode_decryption_key(sk), r.sys.pp) == sk);
    CHECK(encode(decode_client_ciphertext(ct), r.sys.pp) == ct);

    const auto h = inspect(sk);
    CHECK(h.type == RecordType::kDecryptionKey);
    CHECK(h.d == 4);
    CHECK(h.n == 3);
    CHECK(pp.size() == kHeaderBytes + kChecksumBytes + 576 + 4 * 48 + 5 * 48 + 96 + 2 * 48);
}

TEST_CASE("decoded keys and ciphertexts still decrypt") {
    const auto& r = records();
    auto rng = Drbg::from_seed(201, "wire2");
    std::vector<GT> items = {harness::encode_item("y"), harness::encode_item("z")};
    const auto cw = scheme::encrypt(r.sys.pp, std::vector<std::string>{"A", "c d"}, harness::make_tag("t"), items,
                                    r.sys.client_keys[0], rng);
    const auto pp = decode_public_params(encode(r.sys.pp));
    const auto sk = decode_decryption_key(encode(r.sk, r.sys.pp));
    const auto res = scheme::decrypt(pp, decode_client_ciphertext(encode(cw, pp)),
                                     decode_client_ciphertext(encode(r.ct, pp)), sk);
    REQUIRE_FALSE(res.rejected());
    REQUIRE(res.matches.size() == 1);
    CHECK(res.matches[0].item == items[0]);
}

TEST_CASE("framing errors are detected") {
    const auto& r = records();
    const auto good = encode(r.ct, r.sys.pp);

    CHECK_THROWS_AS(decode_public_params(good), FormatError);
    CHECK_THROWS_AS(decode_client_ciphertext(Bytes(good.begin(), good.end() - 1)), FormatError);
    CHECK_THROWS_AS(decode_client_ciphertext({}), FormatError);

    for (std::size_t pos : {std::size_t{0}, std::size_t{5}, std::size_t{7}, std::size_t{30}, good.size() - 1}) {
        auto bad = good;
        bad[pos] ^= 0x01;
        CAPTURE(pos);
        CHECK_THROWS_AS(decode_client_ciphertext(bad), FormatError);
    }
}

TEST_CASE("structurally invalid bodies are rejected even with a valid checksum") {
    const auto& r = records();
    // Re-frame a body with a flipped group element byte and a fresh checksum.
    auto reframe = [](Bytes record, std::size_t body_offset, std::uint8_t x) {
        record[kHeaderBytes + body_offset] ^= x;
        const auto digest = pairing::sha256(pairing::ByteView(record).first(record.size() - kChecksumBytes));
        std::copy(digest.begin(), digest.end(), record.end() - kChecksumBytes);
        return record;
    };
    const auto csk = encode(r.sys.client_keys[0], r.sys.pp);
    // Client index 0 is out of range.
    CHECK_THROWS_AS(decode_client_key(reframe(csk, 3, 0x01)), FormatError);
    // Scalar at or above the group order.
    CHECK_THROWS_AS(decode_client_key(reframe(csk, 4, 0xff)), FormatError);

    const auto pp = encode(r.sys.pp);
    CHECK_THROWS_AS(decode_public_params(reframe(pp, 600, 0x04)), FormatError);
}
