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
#include <variant>
#include <vector>

#include "mcfe/codec.hpp"
#include "mcfe/policy.hpp"
#include "mcfe/random.hpp"
#include "mcfe/scheme.hpp"

using namespace mcfe;
using namespace mcfe::scheme;
using pairing::pair;

namespace {

struct Fixture {
    Drbg rng = Drbg::from_seed(100, "scheme");
    SetupOutput sys;
    GT tag = harness::make_tag("round-1");

    explicit Fixture(std::size_t d = 5, std::size_t n = 3) : sys(setup(d, n, rng)) {}

    std::vector<GT> items(std::initializer_list<const char*> names) {
        std::vector<GT> out;
        for (const char* s : names) out.push_back(harness::encode_item(s));
        return out;
    }

    ClientCiphertext enc(std::size_t k, std::vector<std::string> attrs, const std::vector<GT>& m) {
        return encrypt(sys.pp, attrs, tag, m, sys.client_keys[k - 1], rng);
    }

    DecryptionKey key(std::size_t w, std::size_t v, const char* policy) {
        return keygen(sys.msk, sys.pp, {w, v}, policy::parse_policy(policy), rng);
    }
};

}  // namespace

TEST_CASE("setup: shapes and consistency pairings") {
    Fixture f(3, 2);
    const auto& pp = f.sys.pp;
    CHECK(pp.h.size() == 3);
    CHECK(pp.u.size() == 4);
    CHECK(f.sys.client_keys.size() == 2);
    CHECK(pp.egg_alpha == GT::generator().pow(f.sys.msk.alpha_tilde));
    CHECK(pair(pp.u0_r, G2::generator()) == pair(pp.u[0], pp.g2_r));
    CHECK(pair(pp.h1_r, G2::generator()) == pair(pp.h[0], pp.g2_r));
    CHECK_THROWS_AS(setup(1, 2, f.rng), std::invalid_argument);
    CHECK_THROWS_AS(setup(3, 1, f.rng), std::invalid_argument);
}

TEST_CASE("keygen: single-leaf row key and index-function identity") {
    Fixture f;
    KeygenTrace trace;
    const auto sk = keygen(f.sys.msk, f.sys.pp, {1, 2}, policy::parse_policy("A"), f.rng, &trace);
    REQUIRE(sk.rows.size() == 1);
    const auto& row = sk.rows[0];
    CHECK(row.k.size() == f.sys.pp.d - 1);
    CHECK(trace.shares[0] == f.sys.msk.alpha_tilde);
    CHECK(pair(row.sk1, G2::generator()) == GT::generator_pow(trace.shares[0]) * pair(f.sys.pp.u0_r, row.sk2));

    const auto& cw = f.sys.client_keys[0];
    const auto& cv = f.sys.client_keys[1];
    CHECK(pair(G1::generator(), sk.sk_f3.pow(cw.a + cv.a)) == pair(G1::generator(), f.sys.pp.g2_r).pow(cw.b));
    CHECK(sk.sk_f1 == G2::generator().pow(cw.a * trace.r_dot));
    CHECK(sk.sk_f2 == G2::generator().pow(cv.a * trace.r_dot));
}

TEST_CASE("keygen: argument validation") {
    Fixture f;
    const auto p = policy::parse_policy("A");
    CHECK_THROWS_AS(keygen(f.sys.msk, f.sys.pp, {2, 1}, p, f.rng), std::invalid_argument);
    CHECK_THROWS_AS(keygen(f.sys.msk, f.sys.pp, {1, 1}, p, f.rng), std::invalid_argument);
    CHECK_THROWS_AS(keygen(f.sys.msk, f.sys.pp, {0, 1}, p, f.rng), std::invalid_argument);
    CHECK_THROWS_AS(keygen(f.sys.msk, f.sys.pp, {1, 4}, p, f.rng), std::invalid_argument);
}

TEST_CASE("keygen: fresh r_dot per call, both keys decrypt") {
    Fixture f;
    const auto k1 = f.key(1, 2, "A AND NOT B");
    const auto k2 = f.key(1, 2, "A AND NOT B");
    CHECK_FALSE(k1.sk_f1 == k2.sk_f1);
    const auto m = f.items({"x", "y"});
    const auto cw = f.enc(1, {"A"}, m);
    const auto cv = f.enc(2, {"A"}, f.items({"y", "z"}));
    for (const auto* k : {&k1, &k2}) {
        const auto r = decrypt(f.sys.pp, cw, cv, *k);
        REQUIRE_FALSE(r.rejected());
        REQUIRE(r.matches.size() == 1);
        CHECK(r.matches[0].item == m[1]);
    }
}

TEST_CASE("encrypt: header consistency without secrets") {
    Fixture f;
    const std::vector<std::string> s = {"A", "B"};
    const auto ct = f.enc(1, s, f.items({"x"}));
    const auto y = policy::char_poly_vector(policy::make_attribute_set(s), f.sys.pp.d);
    G1 base = f.sys.pp.u0_r;
    for (std::size_t i = 1; i <= f.sys.pp.d; ++i) base *= f.sys.pp.u[i].pow(y[i - 1]);
    CHECK(pair(ct.ct2, G2::generator()) == pair(base, ct.ct1));
}

TEST_CASE("encrypt: argument validation") {
    Fixture f(3, 2);
    const auto m = f.items({"x"});
    CHECK_THROWS_AS(f.enc(1, {"A", "B", "C"}, m), std::length_error);
    CHECK_THROWS_AS(f.enc(1, {"A", "A"}, m), std::invalid_argument);
    CHECK_THROWS_AS(f.enc(1, {"A"}, {}), std::invalid_argument);
    CHECK_NOTHROW(f.enc(1, {"A", "B"}, m));
}

TEST_CASE("index_match: same item and tag only") {
    Fixture f;
    const auto sk = f.key(1, 2, "A");
    const auto m = f.items({"x", "y"});
    const auto cw = f.enc(1, {"A"}, m);
    const auto cv = f.enc(2, {"A"}, m);
    CHECK(index_match(cw.items[0].c1, cv.items[0].c1, sk));
    CHECK(index_match(cw.items[1].c1, cv.items[1].c1, sk));
    CHECK_FALSE(index_match(cw.items[0].c1, cv.items[1].c1, sk));

    const auto other = encrypt(f.sys.pp, std::vector<std::string>{"A"}, harness::make_tag("round-2"), m,
                               f.sys.client_keys[1], f.rng);
    CHECK_FALSE(index_match(cw.items[0].c1, other.items[0].c1, sk));
}

TEST_CASE("decrypt: worked examples") {
    Fixture f;
    const auto sk = f.key(1, 2, "A AND NOT B");
    const auto mw = f.items({"m1", "m2"});
    const auto mv = f.items({"m2", "m3"});

    SUBCASE("overlap is recovered at the matching indices") {
        const auto r = decrypt(f.sys.pp, f.enc(1, {"A"}, mw), f.enc(2, {"A"}, mv), sk);
        REQUIRE_FALSE(r.rejected());
        REQUIRE(r.matches.size() == 1);
        CHECK(r.matches[0].index_w == 1);
        CHECK(r.matches[0].index_v == 0);
        CHECK(r.matches[0].item == mw[1]);
    }
    SUBCASE("unsatisfied policy is rejected regardless of overlap") {
        const auto r = decrypt(f.sys.pp, f.enc(1, {"A", "B"}, mw), f.enc(2, {"A", "B"}, mw), sk);
        REQUIRE(r.rejected());
        CHECK(*r.rejection == Rejection::kPolicyUnsatisfied);
        CHECK(r.matches.empty());
    }
    SUBCASE("disjoint sets give an empty result") {
        const auto r = decrypt(f.sys.pp, f.enc(1, {"A"}, f.items({"p"})), f.enc(2, {"A"}, f.items({"q"})), sk);
        CHECK_FALSE(r.rejected());
        CHECK(r.matches.empty());
    }
    SUBCASE("ciphertexts under different attribute sets are rejected") {
        const auto r = decrypt(f.sys.pp, f.enc(1, {"A"}, mw), f.enc(2, {"A", "C"}, mv), sk);
        REQUIRE(r.rejected());
        CHECK(*r.rejection == Rejection::kAttributeSetMismatch);
    }
    SUBCASE("attribute order does not matter") {
        const auto r = decrypt(f.sys.pp, f.enc(1, {"A", "C"}, mw), f.enc(2, {"C", "A"}, mv), sk);
        CHECK_FALSE(r.rejected());
        CHECK(r.matches.size() == 1);
    }
    SUBCASE("ciphertexts of other clients are refused") {
        CHECK_THROWS_AS(decrypt(f.sys.pp, f.enc(1, {"A"}, mw), f.enc(3, {"A"}, mv), sk), std::invalid_argument);
        CHECK_THROWS_AS(decrypt(f.sys.pp, f.enc(2, {"A"}, mw), f.enc(1, {"A"}, mv), sk), std::invalid_argument);
    }
}

TEST_CASE("negated rows whose attribute is present are never selected") {
    Fixture f;
    const auto sk = f.key(1, 2, "NOT B OR A");
    const auto s = policy::make_attribute_set(std::vector<std::string>{"A", "B"});
    const auto rows = policy::derive_nm_set(s, sk.policy);
    for (auto i : rows) CHECK_FALSE(sk.policy.rho[i].negated);
    const auto ct = f.enc(1, {"A", "B"}, f.items({"x"}));
    const auto y = policy::char_poly_vector(s, f.sys.pp.d);
    CHECK_THROWS_AS(row_factor(f.sys.pp, sk, 0, ct, y), std::logic_error);
}

TEST_CASE("decrypt pairing count follows the row and item structure") {
    Fixture f(6, 2);
    const auto sk = f.key(1, 2, "(A AND NOT B) OR (C AND NOT D AND E)");
    const auto cw = f.enc(1, {"A", "C", "E"}, f.items({"a", "b", "c", "d"}));
    const auto cv = f.enc(2, {"A", "C", "E"}, f.items({"c", "d", "e"}));

    const auto s = policy::make_attribute_set(cw.attributes);
    const auto plan = std::get<policy::ReconPlan>(
        policy::recon_coefficients(sk.policy, policy::derive_nm_set(s, sk.policy)));
    std::uint64_t row_pairings = 0;
    for (std::size_t k = 0; k < plan.rows.size(); ++k) {
        if (plan.coefficients[k].is_zero()) continue;
        row_pairings += sk.rows[plan.rows[k]].negated ? 3 : 2;
    }
    CHECK(row_pairings > 0);

    pairing::reset_pairing_count();
    const auto r = decrypt(f.sys.pp, cw, cv, sk);
    REQUIRE(r.matches.size() == 2);
    CHECK(pairing::pairing_count() == row_pairings + (4 + 3) + r.matches.size());

    const auto bad_w = f.enc(1, {"A", "B"}, f.items({"a"}));
    const auto bad_v = f.enc(2, {"A", "B"}, f.items({"a"}));
    pairing::reset_pairing_count();
    CHECK(decrypt(f.sys.pp, bad_w, bad_v, sk).rejected());
    CHECK(pairing::pairing_count() == 0);
}

TEST_CASE("duplicate items report every matching index pair") {
    Fixture f;
    const auto sk = f.key(1, 2, "A");
    const auto r = decrypt(f.sys.pp, f.enc(1, {"A"}, f.items({"x", "x"})), f.enc(2, {"A"}, f.items({"x"})), sk);
    CHECK(r.matches.size() == 2);
}
