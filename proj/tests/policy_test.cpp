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

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mcfe/oracle.hpp"
#include "mcfe/policy.hpp"
#include "mcfe/random.hpp"

using namespace mcfe;
using namespace mcfe::policy;
using pairing::Scalar;

namespace {

PolicyNode L(const char* a) { return PolicyNode::leaf(a); }
PolicyNode N(const char* a) { return PolicyNode::leaf(a, true); }

std::vector<Attribute> attrs(std::vector<std::string> labels) { return make_attribute_set(labels); }

// pi^T L_I == e_1, checked column by column.
bool reconstructs(const AccessMatrix& m, const ReconPlan& plan) {
    for (std::size_t c = 0; c < m.cols; ++c) {
        Scalar acc;
        for (std::size_t k = 0; k < plan.rows.size(); ++k) acc += plan.coefficients[k] * m.rows[plan.rows[k]][c];
        if (!(acc == (c == 0 ? Scalar::one() : Scalar::zero()))) return false;
    }
    return true;
}

// L_I v == 0 and v_1 == 1.
bool is_witness(const AccessMatrix& m, std::span<const std::size_t> rows, const Unsatisfied& u) {
    if (u.witness.size() != m.cols || !(u.witness[0] == Scalar::one())) return false;
    for (auto i : rows) {
        if (!inner_product(m.rows[i], u.witness).is_zero()) return false;
    }
    return true;
}

// Sum of pi_i lambda_i over the plan.
Scalar recombine(const ReconPlan& plan, const ShareVector& shares) {
    Scalar acc;
    for (std::size_t k = 0; k < plan.rows.size(); ++k) acc += plan.coefficients[k] * shares.shares[plan.rows[k]];
    return acc;
}

}  // namespace

TEST_CASE("parser: worked examples") {
    CHECK(parse_policy("A") == L("A"));
    CHECK(parse_policy("NOT A") == N("A"));
    CHECK(parse_policy("THRESHOLD(2; A, B, C)") == PolicyNode::threshold_of(2, {L("A"), L("B"), L("C")}));
    CHECK(parse_policy("Year:2024 AND Dept:history AND NOT Dept:biology") ==
          PolicyNode::all_of({L("Year:2024"), L("Dept:history"), N("Dept:biology")}));
    // "A NOT B" reads as "A AND NOT B".
    CHECK(parse_policy("'Year:2024' AND 'Department:history' NOT 'Department:biology'") ==
          PolicyNode::all_of({L("Year:2024"), L("Department:history"), N("Department:biology")}));
}

TEST_CASE("parser: precedence, associativity and case") {
    CHECK(parse_policy("A OR B AND C") == PolicyNode::any_of({L("A"), PolicyNode::all_of({L("B"), L("C")})}));
    CHECK(parse_policy("(A OR B) AND C") == PolicyNode::all_of({PolicyNode::any_of({L("A"), L("B")}), L("C")}));
    CHECK(parse_policy("a and b or not c") == PolicyNode::any_of({PolicyNode::all_of({L("a"), L("b")}), N("c")}));
    CHECK(parse_policy("NOT (A AND B)") == PolicyNode::any_of({N("A"), N("B")}));
    CHECK(parse_policy("NOT NOT A") == L("A"));
    CHECK(parse_policy("NOT THRESHOLD(2; A, B, C)") == PolicyNode::threshold_of(2, {N("A"), N("B"), N("C")}));
    CHECK(parse_policy("\"has space\" OR 'and'") == PolicyNode::any_of({L("has space"), L("and")}));
}

TEST_CASE("parser: errors carry positions") {
    for (const char* bad : {"", "A AND", "(A", "A)", "THRESHOLD(0; A)", "THRESHOLD(3; A, B)", "A B", "AND", "'open",
                            "THRESHOLD(x; A)", "A ,"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_policy(bad), PolicyError);
    }
    try {
        parse_policy("A AND (B OR )");
        FAIL("expected a parse error");
    } catch (const PolicyError& e) {
        CHECK(e.position() == 12);
    }
}

TEST_CASE("to_string re-parses to the same tree") {
    auto corpus = oracle::property_corpus(11, 60);
    corpus.push_back({});
    corpus.back().policy = parse_policy("THRESHOLD(2; \"x y\", NOT 'a\"b', (c OR d)) AND NOT OR_x");
    for (const auto& t : corpus) {
        CAPTURE(t.policy.to_string());
        CHECK(parse_policy(t.policy.to_string()) == t.policy);
    }
}

TEST_CASE("negate is De Morgan on the plaintext semantics") {
    const std::vector<std::string> universe = {"attr:0", "attr:1", "attr:2", "attr:3"};
    for (const auto& t : oracle::property_corpus(12, 40)) {
        const auto neg = negate(t.policy);
        for (unsigned mask = 0; mask < 16; ++mask) {
            std::set<std::string> s;
            for (unsigned i = 0; i < 4; ++i) {
                if (mask & (1u << i)) s.insert(universe[i]);
            }
            CHECK(oracle::evaluate_policy(neg, s) != oracle::evaluate_policy(t.policy, s));
        }
    }
}

TEST_CASE("compile_lsss: AND of two leaves") {
    const auto m = compile_lsss(parse_policy("A AND B"));
    REQUIRE(m.cols == 2);
    REQUIRE(m.row_count() == 2);
    CHECK(m.rows[0] == std::vector<Scalar>{Scalar::one(), Scalar::one()});
    CHECK(m.rows[1] == std::vector<Scalar>{Scalar::zero(), -Scalar::one()});
    CHECK(m.rho[0].attribute.label == "A");
    CHECK(m.rho[1].attribute.label == "B");

    const std::vector<std::size_t> both = {0, 1};
    const auto plan = std::get<ReconPlan>(recon_coefficients(m, both));
    CHECK(reconstructs(m, plan));
    const std::vector<std::size_t> one = {0};
    CHECK(std::holds_alternative<Unsatisfied>(recon_coefficients(m, one)));
    CHECK(std::holds_alternative<Unsatisfied>(recon_coefficients(m, {})));
}

TEST_CASE("compile_lsss: OR and THRESHOLD subsets") {
    const auto m_or = compile_lsss(parse_policy("A OR B"));
    for (std::size_t i : {0u, 1u}) {
        const std::vector<std::size_t> rows = {i};
        CHECK(reconstructs(m_or, std::get<ReconPlan>(recon_coefficients(m_or, rows))));
    }

    const auto m = compile_lsss(parse_policy("THRESHOLD(2; A, B, C)"));
    REQUIRE(m.row_count() == 3);
    for (unsigned mask = 0; mask < 8; ++mask) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < 3; ++i) {
            if (mask & (1u << i)) rows.push_back(i);
        }
        const auto r = recon_coefficients(m, rows);
        CAPTURE(mask);
        if (rows.size() >= 2) {
            CHECK(reconstructs(m, std::get<ReconPlan>(r)));
        } else {
            CHECK(is_witness(m, rows, std::get<Unsatisfied>(r)));
        }
    }
}

TEST_CASE("negation only flips the row label") {
    const auto plain = compile_lsss(parse_policy("(A AND B) OR THRESHOLD(2; C, D, E)"));
    const auto mixed = compile_lsss(parse_policy("(A AND NOT B) OR THRESHOLD(2; NOT C, D, NOT E)"));
    CHECK(plain.rows == mixed.rows);
    CHECK(plain.cols == mixed.cols);
    const std::vector<bool> expected = {false, true, true, false, true};
    for (std::size_t i = 0; i < mixed.row_count(); ++i) CHECK(mixed.rho[i].negated == expected[i]);
}

TEST_CASE("share_secret: identity share and linearity") {
    auto rng = Drbg::from_seed(13, "share");
    const auto single = compile_lsss(L("A"));
    const Scalar secret = rng.scalar();
    CHECK(share_secret(single, secret, rng).shares == std::vector<Scalar>{secret});

    const auto m = compile_lsss(parse_policy("(A AND B) OR (C AND THRESHOLD(2; D, E, F))"));
    const std::vector<std::size_t> rows = {2, 3, 5};
    const auto plan = std::get<ReconPlan>(recon_coefficients(m, rows));
    for (int i = 0; i < 20; ++i) {
        const Scalar s = rng.scalar();
        CHECK(recombine(plan, share_secret(m, s, rng)) == s);
        CHECK(recombine(plan, share_secret(m, Scalar::zero(), rng)).is_zero());
    }
}

TEST_CASE("share/recon round trip over a generated corpus") {
    auto rng = Drbg::from_seed(14, "roundtrip");
    std::size_t checked = 0;
    for (const auto& t : oracle::property_corpus(15, 200)) {
        if (!t.satisfied) continue;
        const auto m = compile_lsss(t.policy);
        const auto s_attrs = make_attribute_set(t.attributes);
        const auto rows = derive_nm_set(s_attrs, m);
        const auto plan = std::get<ReconPlan>(recon_coefficients(m, rows));
        CHECK(reconstructs(m, plan));
        const Scalar secret = rng.scalar();
        CHECK(recombine(plan, share_secret(m, secret, rng)) == secret);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("derive_nm_set follows the literal semantics") {
    const auto m = compile_lsss(parse_policy("A AND NOT B"));
    CHECK(derive_nm_set(attrs({"A"}), m) == std::vector<std::size_t>{0, 1});
    CHECK(derive_nm_set(attrs({"A", "B"}), m) == std::vector<std::size_t>{0});
    const auto all_neg = compile_lsss(parse_policy("NOT A AND NOT B AND NOT C"));
    CHECK(derive_nm_set({}, all_neg) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("make_attribute_set rejects duplicates and empty labels") {
    CHECK_THROWS_AS(attrs({"A", "A"}), std::invalid_argument);
    CHECK_THROWS_AS(attrs({""}), std::invalid_argument);
    CHECK(attrs({"A", "B"}).size() == 2);
}

TEST_CASE("theta and characteristic polynomial vectors") {
    CHECK(theta_vector(Scalar::zero(), 4) ==
          std::vector<Scalar>{Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()});
    CHECK(theta_vector(Scalar::from_u64(2), 4) ==
          std::vector<Scalar>{Scalar::one(), Scalar::from_u64(2), Scalar::from_u64(4), Scalar::from_u64(8)});

    const std::vector<Scalar> roots = {Scalar::from_u64(2), Scalar::from_u64(3)};
    CHECK(char_poly_vector(roots, 5) == std::vector<Scalar>{Scalar::from_u64(6), Scalar::from_i64(-5), Scalar::one(),
                                                            Scalar::zero(), Scalar::zero()});
    CHECK(char_poly_vector(std::span<const Scalar>{}, 3) ==
          std::vector<Scalar>{Scalar::one(), Scalar::zero(), Scalar::zero()});
    CHECK_THROWS_AS(char_poly_vector(roots, 2), std::length_error);
}

TEST_CASE("<theta(x), Y_S> evaluates P_S(x)") {
    auto rng = Drbg::from_seed(16, "poly");
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 + rng.uniform(9);
        std::vector<Scalar> roots(rng.uniform(d));
        for (auto& r : roots) r = rng.scalar();
        const auto y = char_poly_vector(roots, d);
        for (const auto& r : roots) CHECK(inner_product(theta_vector(r, d), y).is_zero());
        const Scalar x = rng.scalar();
        Scalar p = Scalar::one();
        for (const auto& r : roots) p *= x - r;
        CHECK(inner_product(theta_vector(x, d), y) == p);
        CHECK_FALSE(p.is_zero());
    }
}

TEST_CASE("solve_linear finds solutions and detects inconsistency") {
    using V = std::vector<Scalar>;
    const auto s = [](std::int64_t v) { return Scalar::from_i64(v); };
    auto x = solve_linear({V{s(1), s(2)}, V{s(3), s(4)}}, V{s(5), s(6)});
    REQUIRE(x);
    CHECK((*x)[0] == s(-4));
    CHECK((*x)[1] * s(2) == s(9));
    CHECK_FALSE(solve_linear({V{s(1), s(1)}, V{s(2), s(2)}}, V{s(1), s(3)}));
    // Free variables are set to zero.
    auto y = solve_linear({V{s(1), s(1)}}, V{s(7)});
    REQUIRE(y);
    CHECK(*y == V{s(7), s(0)});
}
