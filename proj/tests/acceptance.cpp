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

// Acceptance suite: runs each end-to-end criterion at its stated size and
// tolerance and prints one PASS/FAIL line per criterion. Exits non-zero if
// any criterion fails.
//
//   acceptance --cli <path to mcfe> --golden <tests/golden> [--only N]

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "mcfe/bench.hpp"
#include "mcfe/codec.hpp"
#include "mcfe/oracle.hpp"
#include "mcfe/policy.hpp"
#include "mcfe/random.hpp"
#include "mcfe/scheme.hpp"

using namespace mcfe;
using pairing::G1;
using pairing::G2;
using pairing::GT;
using pairing::Scalar;
using policy::PolicyNode;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
};

// Records the first failure and keeps counting checks.
class Checker {
  public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && first_failure_.empty()) first_failure_ = what;
        failures_ += !ok;
    }
    std::size_t checks() const { return checks_; }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) return {true, summary};
        return {false, summary + "; " + std::to_string(failures_) + " failure(s), first: " + first_failure_};
    }

  private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string first_failure_;
};

std::vector<GT> encode_all(const std::vector<std::string>& items) {
    std::vector<GT> out;
    for (const auto& s : items) out.push_back(harness::encode_item(s));
    return out;
}

std::vector<std::string> subset_of(const std::vector<std::string>& universe, unsigned mask) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        if (mask & (1u << i)) out.push_back(universe[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1. Correctness against the SIF oracle on a seeded random corpus.

Outcome correctness() {
    constexpr std::size_t kTrials = 120;
    Checker c;
    const auto corpus = oracle::property_corpus(20261016, kTrials);
    std::size_t satisfied = 0;
    std::size_t with_not = 0;
    std::size_t with_threshold = 0;
    for (const auto& t : corpus) {
        const std::string text = t.policy.to_string();
        with_not += text.find("NOT") != std::string::npos;
        with_threshold += text.find("THRESHOLD") != std::string::npos;
        satisfied += t.satisfied;
        const auto r = oracle::run_trial(t);
        c.expect(r.ok, "trial seed " + std::to_string(t.seed) + ": " + r.detail);
    }
    c.expect(with_not > 0 && with_threshold > 0, "corpus lacks NOT or THRESHOLD policies");
    c.expect(satisfied >= 50, "too few satisfying trials");
    return c.outcome(std::to_string(kTrials) + " trials (" + std::to_string(satisfied) + " satisfying, " +
                     std::to_string(with_not) + " with NOT, " + std::to_string(with_threshold) +
                     " with THRESHOLD), decrypt equals SIF");
}

// ---------------------------------------------------------------------------
// 2. Policy soundness, exhaustive over a 4-attribute universe and every
//    policy of at most 3 leaves on distinct attributes.

std::vector<PolicyNode> small_policies(const std::vector<std::string>& universe) {
    const std::size_t u = universe.size();
    std::vector<PolicyNode> out;
    auto lit = [&](std::size_t a, unsigned signs, unsigned bit) {
        return PolicyNode::leaf(universe[a], (signs >> bit) & 1u);
    };
    auto gate = [](PolicyNode::Kind kind, std::size_t t, std::vector<PolicyNode> children) {
        PolicyNode n;
        n.kind = kind;
        n.threshold = t;
        n.children = std::move(children);
        return n;
    };
    using K = PolicyNode::Kind;
    for (std::size_t a = 0; a < u; ++a) {
        for (unsigned s = 0; s < 2; ++s) out.push_back(lit(a, s, 0));
    }
    for (std::size_t a = 0; a < u; ++a) {
        for (std::size_t b = a + 1; b < u; ++b) {
            for (unsigned s = 0; s < 4; ++s) {
                std::vector<PolicyNode> ch = {lit(a, s, 0), lit(b, s, 1)};
                out.push_back(gate(K::kAnd, 0, ch));
                out.push_back(gate(K::kOr, 0, ch));
                out.push_back(gate(K::kThreshold, 1, ch));
                out.push_back(gate(K::kThreshold, 2, ch));
            }
        }
    }
    for (std::size_t a = 0; a < u; ++a) {
        for (std::size_t b = a + 1; b < u; ++b) {
            for (std::size_t c = b + 1; c < u; ++c) {
                for (unsigned s = 0; s < 8; ++s) {
                    std::vector<PolicyNode> ch = {lit(a, s, 0), lit(b, s, 1), lit(c, s, 2)};
                    out.push_back(gate(K::kAnd, 0, ch));
                    out.push_back(gate(K::kOr, 0, ch));
                    for (std::size_t t = 1; t <= 3; ++t) out.push_back(gate(K::kThreshold, t, ch));
                }
            }
        }
    }
    // x op1 (y op2 z) with op1 != op2.
    for (std::size_t x = 0; x < u; ++x) {
        for (std::size_t y = 0; y < u; ++y) {
            for (std::size_t z = y + 1; z < u; ++z) {
                if (x == y || x == z) continue;
                for (unsigned s = 0; s < 8; ++s) {
                    out.push_back(gate(K::kAnd, 0, {lit(x, s, 0), gate(K::kOr, 0, {lit(y, s, 1), lit(z, s, 2)})}));
                    out.push_back(gate(K::kOr, 0, {lit(x, s, 0), gate(K::kAnd, 0, {lit(y, s, 1), lit(z, s, 2)})}));
                }
            }
        }
    }
    return out;
}

Outcome policy_soundness() {
    const std::vector<std::string> universe = {"u:a", "u:b", "u:c", "u:d"};
    const auto policies = small_policies(universe);
    auto rng = Drbg::from_seed(2, "soundness");
    const auto sys = scheme::setup(universe.size() + 1, 2, rng);
    const auto tag = harness::make_tag("soundness");
    const std::vector<std::string> items_w = {"x", "y"};
    const std::vector<std::string> items_v = {"y", "z"};
    const auto mw = encode_all(items_w);
    const auto mv = encode_all(items_v);

    // One ciphertext pair per attribute set, reused across policies.
    std::vector<std::pair<scheme::ClientCiphertext, scheme::ClientCiphertext>> cts;
    for (unsigned mask = 0; mask < 16; ++mask) {
        const auto s = subset_of(universe, mask);
        cts.emplace_back(scheme::encrypt(sys.pp, s, tag, mw, sys.client_keys[0], rng),
                         scheme::encrypt(sys.pp, s, tag, mv, sys.client_keys[1], rng));
    }

    Checker c;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    for (const auto& p : policies) {
        const auto sk = scheme::keygen(sys.msk, sys.pp, {1, 2}, p, rng);
        for (unsigned mask = 0; mask < 16; ++mask) {
            const auto s = subset_of(universe, mask);
            const bool sat = oracle::evaluate_policy(p, {s.begin(), s.end()});
            const auto r = scheme::decrypt(sys.pp, cts[mask].first, cts[mask].second, sk);
            const std::string where = p.to_string() + " with S mask " + std::to_string(mask);
            if (!sat) {
                ++rejected;
                c.expect(r.rejected() && *r.rejection == scheme::Rejection::kPolicyUnsatisfied,
                         where + ": not rejected");
                continue;
            }
            ++accepted;
            c.expect(!r.rejected() && r.matches.size() == 1 && r.matches[0].index_w == 1 &&
                         r.matches[0].index_v == 0 && r.matches[0].item == mw[1],
                     where + ": wrong output");
        }
    }
    return c.outcome(std::to_string(policies.size()) + " policies x 16 attribute sets: " +
                     std::to_string(rejected) + " rejected, " + std::to_string(accepted) + " decrypted correctly");
}

// ---------------------------------------------------------------------------
// 3. The non-monotonic example policy.

Outcome non_monotonic() {
    auto rng = Drbg::from_seed(3, "nm");
    const auto sys = scheme::setup(5, 2, rng);
    const auto sk = scheme::keygen(sys.msk, sys.pp, {1, 2},
                                   policy::parse_policy("'Year:2024' AND 'Department:history' NOT 'Department:biology'"),
                                   rng);
    const auto tag = harness::make_tag("nm");
    const std::vector<std::string> items_w = {"s-1", "s-2", "s-3"};
    const std::vector<std::string> items_v = {"s-3", "s-4", "s-1"};
    const auto mw = encode_all(items_w);
    const auto mv = encode_all(items_v);
    auto run = [&](std::vector<std::string> s) {
        return scheme::decrypt(sys.pp, scheme::encrypt(sys.pp, s, tag, mw, sys.client_keys[0], rng),
                               scheme::encrypt(sys.pp, s, tag, mv, sys.client_keys[1], rng), sk);
    };
    Checker c;
    const auto ok = run({"Year:2024", "Department:history"});
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto& m : ok.matches) {
        got.insert({m.index_w, m.index_v});
        c.expect(m.item == mw[m.index_w], "recovered item differs");
    }
    c.expect(!ok.rejected(), "satisfying set rejected");
    c.expect(got == std::set<std::pair<std::size_t, std::size_t>>{{0, 2}, {2, 0}}, "wrong intersection");
    const auto bad = run({"Year:2024", "Department:history", "Department:biology"});
    c.expect(bad.rejected() && *bad.rejection == scheme::Rejection::kPolicyUnsatisfied,
             "set containing the negated attribute was not rejected");
    return c.outcome("{Year:2024, Department:history} decrypts to the overlap; adding Department:biology gives reject");
}

// ---------------------------------------------------------------------------
// 4. Label binding.

Outcome label_binding() {
    constexpr int kTrials = 100;
    auto rng = Drbg::from_seed(4, "labels");
    const auto sys = scheme::setup(4, 2, rng);
    const auto sk = scheme::keygen(sys.msk, sys.pp, {1, 2}, policy::parse_policy("A OR NOT B"), rng);
    const std::vector<std::string> s = {"A"};
    Checker c;
    std::size_t cross = 0;
    for (int t = 0; t < kTrials; ++t) {
        std::vector<std::string> items;
        const std::size_t count = 1 + rng.uniform(3);
        for (std::size_t i = 0; i < count; ++i) items.push_back("item-" + std::to_string(rng.next_u64()));
        const auto m = encode_all(items);
        const auto label_a = "round-" + std::to_string(rng.next_u64());
        const auto label_b = label_a + "'";
        const auto ta = harness::make_tag(label_a);
        const auto tb = harness::make_tag(label_b);
        const auto cw = scheme::encrypt(sys.pp, s, ta, m, sys.client_keys[0], rng);
        const auto same = scheme::decrypt(sys.pp, cw, scheme::encrypt(sys.pp, s, ta, m, sys.client_keys[1], rng), sk);
        const auto diff = scheme::decrypt(sys.pp, cw, scheme::encrypt(sys.pp, s, tb, m, sys.client_keys[1], rng), sk);
        c.expect(!same.rejected() && same.matches.size() == count, "same label: trial " + std::to_string(t));
        c.expect(!diff.rejected() && diff.matches.empty(), "different labels matched: trial " + std::to_string(t));
        cross += diff.matches.size();
    }
    return c.outcome(std::to_string(kTrials) + " trials: same label matched every item, different labels produced " +
                     std::to_string(cross) + " matches");
}

// ---------------------------------------------------------------------------
// 5. Algebraic identities with master-secret witnesses.

Outcome identities() {
    constexpr std::size_t kTarget = 20;
    Checker c;
    std::size_t plain_rows = 0;
    std::size_t negated_rows = 0;
    std::size_t item_instances = 0;
    std::size_t instances = 0;
    auto rng = Drbg::from_seed(5, "identities");
    const auto corpus = oracle::property_corpus(55, 400);
    for (const auto& t : corpus) {
        if (plain_rows >= kTarget && negated_rows >= kTarget && item_instances >= kTarget && instances >= kTarget)
            break;
        if (!t.satisfied) continue;
        ++instances;
        const auto sys = scheme::setup(t.d, 2, rng);
        scheme::KeygenTrace kt;
        const auto sk = scheme::keygen(sys.msk, sys.pp, {1, 2}, t.policy, rng, &kt);
        const auto tag = harness::make_tag(t.label);
        // Client v holds client w's first item so at least one index matches.
        const auto mw = encode_all(t.items[0]);
        auto items_v = t.items[1];
        if (std::find(items_v.begin(), items_v.end(), t.items[0][0]) == items_v.end())
            items_v.push_back(t.items[0][0]);
        const auto mv = encode_all(items_v);
        scheme::EncryptTrace tw;
        scheme::EncryptTrace tv;
        const auto& kw = sys.client_keys[0];
        const auto& kv = sys.client_keys[1];
        const auto cw = scheme::encrypt(sys.pp, t.attributes, tag, mw, kw, rng, &tw);
        const auto cv = scheme::encrypt(sys.pp, t.attributes, tag, mv, kv, rng, &tv);

        const auto s_attrs = policy::make_attribute_set(t.attributes);
        const auto y = policy::char_poly_vector(s_attrs, t.d);
        const auto plan =
            std::get<policy::ReconPlan>(policy::recon_coefficients(sk.policy, policy::derive_nm_set(s_attrs, sk.policy)));

        // Row factors equal e(g, ĝ)^(lambda_i s_w).
        GT product;
        for (std::size_t k = 0; k < plan.rows.size(); ++k) {
            const std::size_t i = plan.rows[k];
            const GT f = scheme::row_factor(sys.pp, sk, i, cw, y);
            const bool ok = f == GT::generator_pow(kt.shares[i] * tw.s);
            c.expect(ok, std::string(sk.rows[i].negated ? "negated" : "plain") + " row factor");
            (sk.rows[i].negated ? negated_rows : plain_rows) += 1;
            product *= f.pow(plan.coefficients[k]);
        }
        const GT mask = scheme::policy_mask(sys.pp, sk, plan, cw, y);
        c.expect(mask == product, "batched mask differs from the row-factor product");
        c.expect(mask == GT::generator_pow(sys.msk.alpha_tilde * tw.s), "mask differs from e(g,ĝ)^(alpha s)");

        const auto& g2 = G2::generator();
        for (std::size_t eta = 0; eta < mw.size(); ++eta) {
            const G1 h = pairing::hash_gt_to_g1(mw[eta] * tag);
            const auto& item = cw.items[eta];
            // ct0 = M e(g,ĝ)^(alpha s) e(H, ĝ)^(r b); removing the mask leaves C = M e(H, ĝ)^(r b).
            const GT e_h = pairing::pair(h, g2);
            c.expect(item.c0 == mw[eta] * GT::generator_pow(sys.msk.alpha_tilde * tw.s) * e_h.pow(sys.msk.r * kw.b),
                     "item ciphertext form");
            const GT big_c = item.c0 / mask;
            c.expect(big_c == mw[eta] * e_h.pow(sys.msk.r * kw.b), "C_{w,eta} form");
            c.expect(item.c1 == h.pow(kw.a), "index component form");
        }
        // The shared item sits at index 0 for w and somewhere in v.
        const std::size_t jv =
            std::find(items_v.begin(), items_v.end(), t.items[0][0]) - items_v.begin();
        const G1 h = pairing::hash_gt_to_g1(mw[0] * tag);
        const GT lhs = pairing::pair(cw.items[0].c1, sk.sk_f2);
        const GT rhs = pairing::pair(cv.items[jv].c1, sk.sk_f1);
        c.expect(lhs == rhs, "index equality");
        c.expect(lhs == pairing::pair(h, g2).pow(kw.a * kv.a * kt.r_dot), "index equality exponent");
        const GT big_c = cw.items[0].c0 / mask;
        const GT unmasked = big_c / pairing::pair(cw.items[0].c1 * cv.items[jv].c1, sk.sk_f3);
        c.expect(unmasked == mw[0], "final unmasking");
        ++item_instances;
    }
    c.expect(plain_rows >= kTarget && negated_rows >= kTarget && item_instances >= kTarget,
             "not enough instances of every identity");
    return c.outcome(std::to_string(instances) + " instances: " + std::to_string(plain_rows) + " plain rows, " +
                     std::to_string(negated_rows) + " negated rows, " + std::to_string(item_instances) +
                     " C/index/unmask instances, all exact");
}

// ---------------------------------------------------------------------------
// 6. LSSS round trip and unsatisfied-set witnesses, every tree shape with at
//    most five leaves.

// Every way to split n into k ordered positive parts.
void compositions(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
    if (k == 1) {
        cur.push_back(n);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t first = 1; first + (k - 1) <= n; ++first) {
        cur.push_back(first);
        compositions(n - first, k - 1, cur, out);
        cur.pop_back();
    }
}

// Tree shapes with unlabelled leaves; gates are AND, OR and THRESHOLD(t)
// for every t, nested freely.
std::vector<PolicyNode> shapes(std::size_t leaves) {
    if (leaves == 1) return {PolicyNode::leaf("?")};
    std::vector<PolicyNode> out;
    for (std::size_t k = 2; k <= leaves; ++k) {
        std::vector<std::vector<std::size_t>> comps;
        std::vector<std::size_t> cur;
        compositions(leaves, k, cur, comps);
        for (const auto& comp : comps) {
            // Cartesian product of child shapes.
            std::vector<std::vector<PolicyNode>> combos = {{}};
            for (auto part : comp) {
                std::vector<std::vector<PolicyNode>> next;
                const auto sub = shapes(part);
                for (const auto& prefix : combos) {
                    for (const auto& s : sub) {
                        auto v = prefix;
                        v.push_back(s);
                        next.push_back(std::move(v));
                    }
                }
                combos = std::move(next);
            }
            for (const auto& children : combos) {
                PolicyNode n;
                n.children = children;
                n.kind = PolicyNode::Kind::kAnd;
                out.push_back(n);
                n.kind = PolicyNode::Kind::kOr;
                out.push_back(n);
                n.kind = PolicyNode::Kind::kThreshold;
                for (std::size_t t = 1; t <= k; ++t) {
                    n.threshold = t;
                    out.push_back(n);
                }
            }
        }
    }
    return out;
}

void label_leaves(PolicyNode& n, std::size_t& next) {
    if (n.kind == PolicyNode::Kind::kLeaf) {
        n.attribute = "p" + std::to_string(next++);
        return;
    }
    for (auto& c : n.children) label_leaves(c, next);
}

// Monotone evaluation with leaf i present iff bit i of mask is set.
bool monotone(const PolicyNode& n, unsigned mask, std::size_t& next) {
    if (n.kind == PolicyNode::Kind::kLeaf) return (mask >> next++) & 1u;
    std::size_t hits = 0;
    for (const auto& c : n.children) hits += monotone(c, mask, next);
    switch (n.kind) {
        case PolicyNode::Kind::kAnd: return hits == n.children.size();
        case PolicyNode::Kind::kOr: return hits > 0;
        default: return hits >= n.threshold;
    }
}

Outcome lsss_properties() {
    Checker c;
    auto rng = Drbg::from_seed(6, "lsss");
    std::size_t policies = 0;
    std::size_t plans = 0;
    std::size_t witnesses = 0;
    for (std::size_t leaves = 1; leaves <= 5; ++leaves) {
        for (auto p : shapes(leaves)) {
            std::size_t next = 0;
            label_leaves(p, next);
            ++policies;
            const auto m = policy::compile_lsss(p);
            c.expect(m.row_count() == leaves, "row count");
            for (std::size_t i = 0; i < leaves; ++i)
                c.expect(m.rho[i].attribute.label == "p" + std::to_string(i), "row labelling");
            const Scalar secret = rng.scalar();
            const auto shares = policy::share_secret(m, secret, rng);
            for (unsigned mask = 0; mask < (1u << leaves); ++mask) {
                std::vector<std::size_t> rows;
                for (std::size_t i = 0; i < leaves; ++i) {
                    if (mask & (1u << i)) rows.push_back(i);
                }
                std::size_t cursor = 0;
                const bool authorized = monotone(p, mask, cursor);
                const auto r = policy::recon_coefficients(m, rows);
                const std::string where = p.to_string() + " rows mask " + std::to_string(mask);
                if (const auto* plan = std::get_if<policy::ReconPlan>(&r)) {
                    ++plans;
                    c.expect(authorized, where + ": unauthorized set reconstructs");
                    Scalar acc;
                    std::vector<Scalar> combo(m.cols);
                    for (std::size_t k = 0; k < plan->rows.size(); ++k) {
                        acc += plan->coefficients[k] * shares.shares[plan->rows[k]];
                        for (std::size_t col = 0; col < m.cols; ++col)
                            combo[col] += plan->coefficients[k] * m.rows[plan->rows[k]][col];
                    }
                    c.expect(acc == secret, where + ": round trip");
                    std::vector<Scalar> e1(m.cols);
                    e1[0] = Scalar::one();
                    c.expect(combo == e1, where + ": pi L != e_1");
                } else {
                    ++witnesses;
                    const auto& v = std::get<policy::Unsatisfied>(r).witness;
                    c.expect(!authorized, where + ": authorized set has no plan");
                    c.expect(v.size() == m.cols && v[0] == Scalar::one(), where + ": <e_1, v> != 1");
                    for (auto i : rows) c.expect(policy::inner_product(m.rows[i], v).is_zero(), where + ": L v != 0");
                }
            }
        }
    }
    return c.outcome(std::to_string(policies) + " policies with <= 5 leaves, " + std::to_string(plans) +
                     " authorized subsets reconstruct, " + std::to_string(witnesses) +
                     " unauthorized subsets carry a witness");
}

// ---------------------------------------------------------------------------
// 7. Scaling of encryption and decryption at d = 10.

Outcome scaling() {
    const auto results = bench::run_bench_interleaved(
        {bench::BenchCase::case_i(), bench::BenchCase::case_ii(), bench::BenchCase::case_iii()});
    const auto& r1 = results[0];
    const auto& r2 = results[1];
    const auto& r3 = results[2];
    const double enc21 = r2.at("encrypt").mean_ms / r1.at("encrypt").mean_ms;
    const double enc32 = r3.at("encrypt").mean_ms / r2.at("encrypt").mean_ms;
    const double dec1 = r1.at("decrypt").mean_ms;
    const double dec3 = r3.at("decrypt").mean_ms;
    Checker c;
    c.expect(enc21 >= 1.4 && enc21 <= 2.6, "Enc II/I outside [1.4, 2.6]");
    c.expect(enc32 >= 1.4 && enc32 <= 2.6, "Enc III/II outside [1.4, 2.6]");
    c.expect(dec3 > dec1, "Dec III not above Dec I");
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Enc I/II/III = %.1f/%.1f/%.1f ms, II/I = %.2f, III/II = %.2f; Dec I = %.1f ms < Dec III = %.1f ms",
                  r1.at("encrypt").mean_ms, r2.at("encrypt").mean_ms, r3.at("encrypt").mean_ms, enc21, enc32, dec1,
                  dec3);
    return c.outcome(buf);
}

// ---------------------------------------------------------------------------
// 8. The index-set function J.

Outcome j_set_fidelity() {
    Checker c;
    c.expect(oracle::j_set(5, 2, oracle::QuerySet({{1, 5}, {2, 4}, {3, 4}, {2, 5}})) == std::vector<std::size_t>{1, 3},
             "worked example");
    std::size_t cases = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> all;
        for (std::size_t w = 1; w <= n; ++w) {
            for (std::size_t v = w + 1; v <= n; ++v) all.emplace_back(w, v);
        }
        for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
            std::vector<std::pair<std::size_t, std::size_t>> q;
            for (std::size_t i = 0; i < all.size(); ++i) {
                if (mask & (1u << i)) q.push_back(all[i]);
            }
            const oracle::QuerySet qs(q);
            for (std::size_t star = 1; star <= n; ++star) {
                std::vector<std::size_t> expected;
                for (std::size_t nu = 1; nu <= n; ++nu) {
                    if (nu == star) continue;
                    const auto link = nu < star ? std::make_pair(nu, star) : std::make_pair(star, nu);
                    if (std::find(q.begin(), q.end(), link) == q.end()) expected.push_back(nu);
                }
                c.expect(oracle::j_set(n, star, qs) == expected,
                         "N=" + std::to_string(n) + " nu*=" + std::to_string(star) + " mask " + std::to_string(mask));
                ++cases;
            }
        }
    }
    return c.outcome("N=5, nu*=2 gives J={1,3}; " + std::to_string(cases) + " exhaustive cases for N <= 5 agree");
}

// ---------------------------------------------------------------------------
// 9. Golden files: two independent CLI processes with the same seed.

pairing::Bytes slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null";
    return std::system(cmd.c_str()) == 0;
}

Outcome golden(const std::string& cli, const fs::path& golden_dir) {
    Checker c;
    if (cli.empty()) {
        c.expect(false, "no --cli given");
        return c.outcome("golden files");
    }
    const fs::path base = fs::temp_directory_path() / ("mcfe-golden-" + std::to_string(::getpid()));
    fs::remove_all(base);
    fs::create_directories(base);
    {
        std::ofstream(base / "items.txt") << "sample-1\nsample-2\nsample-3\n";
    }
    const std::vector<std::pair<std::string, std::string>> files = {
        {"pp.bin", "public/pp.bin"},
        {"csk-1.bin", "clients/1/csk.bin"},
        {"sk-1-2.bin", "aggregator/sk-1-2.bin"},
        {"ct-1-round-1.bin", "clients/1/round-1.ct"},
    };
    std::vector<fs::path> runs = {base / "run-a", base / "run-b"};
    for (const auto& dir : runs) {
        const std::string d = " --dir \"" + dir.string() + "\" --seed 7";
        c.expect(run_cli(cli, "setup" + d + " --d 4 --clients 3"), "setup failed");
        c.expect(run_cli(cli, "keygen" + d + " --pair 1,2 --policy \"A AND NOT B\""), "keygen failed");
        c.expect(run_cli(cli, "encrypt" + d + " --client 1 --items \"" + (base / "items.txt").string() +
                                  "\" --attrs A,C --label round-1"),
                 "encrypt failed");
    }
    for (const auto& [golden_name, rel] : files) {
        const auto a = slurp(runs[0] / rel);
        const auto b = slurp(runs[1] / rel);
        c.expect(!a.empty() && a == b, rel + " differs between processes");
        if (!golden_dir.empty()) c.expect(a == slurp(golden_dir / golden_name), rel + " differs from " + golden_name);
    }
    fs::remove_all(base);
    return c.outcome("pp, csk, SK and CT identical across two processes with seed 7" +
                     std::string(golden_dir.empty() ? "" : " and equal to the committed golden files"));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance suite"};
    std::string cli;
    std::string golden_dir;
    std::vector<int> only;
    app.add_option("--cli", cli, "Path to the mcfe command-line tool");
    app.add_option("--golden", golden_dir, "Directory with committed golden records");
    app.add_option("--only", only, "Run only the listed criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"correctness", correctness},
        {"policy-soundness", policy_soundness},
        {"non-monotonic-example", non_monotonic},
        {"label-binding", label_binding},
        {"algebraic-identities", identities},
        {"lsss-properties", lsss_properties},
        {"scaling", scaling},
        {"j-set", j_set_fidelity},
        {"golden-files", [&] { return golden(cli, golden_dir); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), secs,
                    o.summary.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
