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
#include <vector>

#include "mcfe/bench.hpp"
#include "mcfe/oracle.hpp"

using namespace mcfe;
using namespace mcfe::oracle;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

// The function J written out step by step: start empty, walk nu over [N]
// minus nu*, and add nu unless the ordered pair linking it to nu* was queried.
std::set<std::size_t> j_reference(std::size_t n, std::size_t nu_star, const Pairs& q) {
    auto in_q = [&](std::size_t a, std::size_t b) {
        for (const auto& p : q) {
            if (p.first == a && p.second == b) return true;
        }
        return false;
    };
    std::set<std::size_t> j;
    for (std::size_t nu = 1; nu <= n; ++nu) {
        if (nu == nu_star) continue;
        if (nu < nu_star && !in_q(nu, nu_star)) j.insert(nu);
        if (nu > nu_star && !in_q(nu_star, nu)) j.insert(nu);
    }
    return j;
}

// SIF written out step by step: E_k empty, then for each (w, v) add every
// element of M_w ∩ M_v to E_w and E_v.
std::vector<std::set<std::string>> sif_reference(const std::vector<std::vector<std::string>>& m, const Pairs& q) {
    std::vector<std::set<std::string>> e(m.size());
    for (const auto& [w, v] : q) {
        for (const auto& x : m[w - 1]) {
            for (const auto& y : m[v - 1]) {
                if (x == y) {
                    e[w - 1].insert(x);
                    e[v - 1].insert(x);
                }
            }
        }
    }
    return e;
}

Pairs all_pairs(std::size_t n) {
    Pairs out;
    for (std::size_t w = 1; w <= n; ++w) {
        for (std::size_t v = w + 1; v <= n; ++v) out.emplace_back(w, v);
    }
    return out;
}

Pairs subset(const Pairs& all, unsigned mask) {
    Pairs out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (mask & (1u << i)) out.push_back(all[i]);
    }
    return out;
}

std::vector<std::size_t> to_vec(const std::set<std::size_t>& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("QuerySet normalizes and validates") {
    const QuerySet q({{2, 5}, {1, 5}, {2, 4}});
    CHECK(q.pairs() == Pairs{{1, 5}, {2, 4}, {2, 5}});
    CHECK(q.contains(2, 4));
    CHECK_FALSE(q.contains(4, 2));
    CHECK_THROWS_AS(QuerySet({{2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(QuerySet({{3, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(QuerySet({{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(QuerySet({{1, 2}, {1, 2}}), std::invalid_argument);
}

TEST_CASE("j_set: worked example and edge cases") {
    CHECK(j_set(5, 2, QuerySet({{1, 5}, {2, 4}, {3, 4}, {2, 5}})) == std::vector<std::size_t>{1, 3});
    CHECK(j_set(4, 3, QuerySet()) == std::vector<std::size_t>{1, 2, 4});
    CHECK(j_set(4, 3, QuerySet({{1, 3}, {2, 3}, {3, 4}})).empty());
    CHECK_THROWS_AS(j_set(4, 0, QuerySet()), std::out_of_range);
    CHECK_THROWS_AS(j_set(4, 5, QuerySet()), std::out_of_range);
}

TEST_CASE("j_set matches the step-by-step definition for N <= 5 and every Q") {
    std::size_t cases = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto all = all_pairs(n);
        for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
            const auto q = subset(all, mask);
            const QuerySet qs(q);
            for (std::size_t nu = 1; nu <= n; ++nu) {
                REQUIRE(j_set(n, nu, qs) == to_vec(j_reference(n, nu, q)));
                ++cases;
            }
        }
    }
    CHECK(cases == 1 + 2 * 2 + 3 * 8 + 4 * 64 + 5 * 1024);
}

TEST_CASE("sif: worked examples") {
    const auto e = sif({{"1", "2"}, {"2", "3"}}, QuerySet({{1, 2}}));
    CHECK(e[0] == std::set<std::string>{"2"});
    CHECK(e[1] == std::set<std::string>{"2"});
    for (const auto& ek : sif({{"1"}, {"1"}}, QuerySet())) CHECK(ek.empty());
    const auto chain = sif({{"a"}, {"a"}, {"a"}}, QuerySet({{1, 2}, {2, 3}}));
    for (const auto& ek : chain) CHECK(ek == std::set<std::string>{"a"});
    CHECK_THROWS_AS(sif({{"a"}, {"a"}}, QuerySet({{1, 3}})), std::out_of_range);
}

TEST_CASE("sif matches the step-by-step definition for N <= 5 and every Q") {
    const std::vector<std::vector<std::string>> pool = {
        {"a", "b", "c"}, {"b", "c", "d"}, {"a", "d"}, {"e"}, {"a", "b", "e"}};
    for (std::size_t n = 1; n <= 5; ++n) {
        const std::vector<std::vector<std::string>> sets(pool.begin(), pool.begin() + n);
        const auto all = all_pairs(n);
        for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
            const auto q = subset(all, mask);
            REQUIRE(sif(sets, QuerySet(q)) == sif_reference(sets, q));
        }
    }
}

TEST_CASE("evaluate_policy: non-monotone semantics") {
    const auto p = policy::parse_policy("Year:2024 AND Department:history NOT Department:biology");
    CHECK(evaluate_policy(p, {"Year:2024", "Department:history"}));
    CHECK_FALSE(evaluate_policy(p, {"Year:2024", "Department:history", "Department:biology"}));
    CHECK(evaluate_policy(policy::parse_policy("NOT A"), {}));
    const auto t = policy::parse_policy("THRESHOLD(2; A, NOT B, C)");
    CHECK(evaluate_policy(t, {"A"}));
    CHECK_FALSE(evaluate_policy(t, {"B"}));
    CHECK(evaluate_policy(t, {"A", "B", "C"}));
}

TEST_CASE("property_corpus: reproducible and honours its contract") {
    const auto a = property_corpus(77, 200);
    const auto b = property_corpus(77, 200);
    REQUIRE(a.size() == 200);
    std::size_t satisfied = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& t = a[i];
        CHECK(t.seed == b[i].seed);
        CHECK(t.policy == b[i].policy);
        CHECK(t.attributes == b[i].attributes);
        CHECK(t.items == b[i].items);
        CHECK(t.queries.pairs() == b[i].queries.pairs());

        CHECK(t.d >= 3);
        CHECK(t.d <= 10);
        CHECK(t.n >= 2);
        CHECK(t.n <= 6);
        CHECK(t.policy.leaf_count() <= 6);
        CHECK(t.attributes.size() < t.d);
        CHECK(t.items.size() == t.n);
        for (const auto& m : t.items) {
            CHECK(!m.empty());
            CHECK(m.size() <= 8);
            CHECK(std::set<std::string>(m.begin(), m.end()).size() == m.size());
        }
        CHECK(t.satisfied == evaluate_policy(t.policy, {t.attributes.begin(), t.attributes.end()}));
        satisfied += t.satisfied;
    }
    for (std::size_t block = 0; block < 200; block += 100) {
        const auto& pure = a[block].policy;
        CHECK(negate(pure).to_string().find("NOT") == std::string::npos);
        CHECK(a[block + 1].policy.to_string().find("THRESHOLD") != std::string::npos);
    }
    CHECK(satisfied > 120);
    CHECK(satisfied < 180);
}

TEST_CASE("run_trial agrees with the oracle on a small corpus") {
    for (const auto& t : property_corpus(78, 10)) {
        const auto outcome = run_trial(t);
        CAPTURE(outcome.detail);
        CHECK(outcome.ok);
    }
}

TEST_CASE("bench: a case runs and reports four timings") {
    auto c = bench::BenchCase::case_i();
    CHECK(c.n == 5);
    CHECK(c.l == 5);
    CHECK(c.d == 10);
    CHECK(c.repetitions == 5);
    CHECK(bench::BenchCase::named("III").n == 10);
    CHECK(bench::BenchCase::named("III").l == 10);
    CHECK_THROWS_AS(bench::BenchCase::named("IV"), std::invalid_argument);

    c.repetitions = 2;
    const auto r = bench::run_bench(c);
    REQUIRE(r.timings.size() == 4);
    for (const char* alg : {"setup", "keygen", "encrypt", "decrypt"}) {
        CHECK(r.at(alg).samples_ms.size() == 2);
        CHECK(r.at(alg).mean_ms > 0);
    }
    CHECK(r.to_table().find("encrypt") != std::string::npos);
    CHECK(r.to_json().find("\"mean_ms\"") != std::string::npos);
}
