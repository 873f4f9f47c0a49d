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

#include "mcfe/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mcfe/codec.hpp"
#include "mcfe/random.hpp"

namespace mcfe::oracle {

using policy::PolicyNode;

QuerySet::QuerySet(std::vector<std::pair<std::size_t, std::size_t>> pairs) : pairs_(std::move(pairs)) {
    for (const auto& [w, v] : pairs_) {
        if (w == 0 || w >= v) throw std::invalid_argument("query pair must satisfy 1 <= w < v");
    }
    std::sort(pairs_.begin(), pairs_.end());
    if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end())
        throw std::invalid_argument("query set repeats a pair");
}

bool QuerySet::contains(std::size_t w, std::size_t v) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(w, v));
}

std::vector<std::set<std::string>> sif(const std::vector<std::vector<std::string>>& sets, const QuerySet& q) {
    std::vector<std::set<std::string>> e(sets.size());
    for (const auto& [w, v] : q.pairs()) {
        if (v > sets.size()) throw std::out_of_range("sif: pair names client " + std::to_string(v));
        const std::set<std::string> mw(sets[w - 1].begin(), sets[w - 1].end());
        for (const auto& m : sets[v - 1]) {
            if (!mw.contains(m)) continue;
            e[w - 1].insert(m);
            e[v - 1].insert(m);
        }
    }
    return e;
}

std::vector<std::size_t> j_set(std::size_t n, std::size_t nu_star, const QuerySet& q) {
    if (nu_star < 1 || nu_star > n) throw std::out_of_range("j_set: target index outside [1, N]");
    std::vector<std::size_t> j;
    for (std::size_t nu = 1; nu <= n; ++nu) {
        if (nu == nu_star) continue;
        const bool queried = nu < nu_star ? q.contains(nu, nu_star) : q.contains(nu_star, nu);
        if (!queried) j.push_back(nu);
    }
    return j;
}

bool evaluate_policy(const PolicyNode& p, const std::set<std::string>& attributes) {
    switch (p.kind) {
        case PolicyNode::Kind::kLeaf: return attributes.contains(p.attribute) != p.negated;
        case PolicyNode::Kind::kAnd:
            return std::all_of(p.children.begin(), p.children.end(),
                               [&](const PolicyNode& c) { return evaluate_policy(c, attributes); });
        case PolicyNode::Kind::kOr:
            return std::any_of(p.children.begin(), p.children.end(),
                               [&](const PolicyNode& c) { return evaluate_policy(c, attributes); });
        case PolicyNode::Kind::kThreshold: {
            const auto hits = std::count_if(p.children.begin(), p.children.end(),
                                            [&](const PolicyNode& c) { return evaluate_policy(c, attributes); });
            return static_cast<std::size_t>(hits) >= p.threshold;
        }
    }
    return false;
}

namespace {

constexpr std::size_t kMaxLeaves = 6;
constexpr std::size_t kMaxItems = 8;
constexpr std::size_t kItemPool = 16;

enum class Shape { kAny, kPureNot, kThreshold };

class PolicyGenerator {
  public:
    PolicyGenerator(Drbg& rng, const std::vector<std::string>& universe) : rng_(rng), universe_(universe) {}

    PolicyNode generate(std::size_t leaves, Shape shape) {
        if (shape == Shape::kPureNot) {
            std::vector<PolicyNode> children;
            for (std::size_t i = 0; i < leaves; ++i) children.push_back(leaf(true));
            if (children.size() == 1) return children.front();
            return rng_.uniform(2) == 0 ? PolicyNode::all_of(std::move(children))
                                        : PolicyNode::any_of(std::move(children));
        }
        if (shape == Shape::kThreshold) return gate(std::max<std::size_t>(leaves, 2), true);
        return node(leaves);
    }

  private:
    PolicyNode leaf(bool negated) {
        return PolicyNode::leaf(universe_[rng_.uniform(universe_.size())], negated);
    }

    PolicyNode node(std::size_t leaves) {
        if (leaves == 1) return leaf(rng_.uniform(100) < 35);
        return gate(leaves, false);
    }

    PolicyNode gate(std::size_t leaves, bool force_threshold) {
        const std::size_t arity = 2 + rng_.uniform(std::min<std::size_t>(leaves, 3) - 1);
        // Split the leaves over the children, each child getting at least one.
        std::vector<std::size_t> split(arity, 1);
        for (std::size_t extra = leaves - arity; extra > 0; --extra) ++split[rng_.uniform(arity)];
        std::vector<PolicyNode> children;
        for (auto s : split) children.push_back(node(s));
        const auto kind = force_threshold ? 2 : rng_.uniform(3);
        if (kind == 0) return PolicyNode::all_of(std::move(children));
        if (kind == 1) return PolicyNode::any_of(std::move(children));
        const std::size_t t = 1 + rng_.uniform(arity);
        return PolicyNode::threshold_of(t, std::move(children));
    }

    Drbg& rng_;
    const std::vector<std::string>& universe_;
};

std::vector<std::string> random_subset(Drbg& rng, const std::vector<std::string>& universe, std::size_t max_size) {
    std::vector<std::string> out;
    for (const auto& a : universe) {
        if (out.size() < max_size && rng.uniform(2) == 1) out.push_back(a);
    }
    return out;
}

}  // namespace

std::vector<Trial> property_corpus(std::uint64_t seed, std::size_t count) {
    auto rng = Drbg::from_seed(seed, "corpus");
    std::vector<Trial> corpus;
    corpus.reserve(count);
    for (std::size_t index = 0; index < count; ++index) {
        Trial t;
        t.seed = rng.next_u64();
        t.d = 3 + rng.uniform(8);
        t.n = 2 + rng.uniform(5);

        std::vector<std::string> universe;
        const std::size_t universe_size = 2 + rng.uniform(5);
        for (std::size_t i = 0; i < universe_size; ++i) universe.push_back("attr:" + std::to_string(i));

        const Shape shape = index % 100 == 0 ? Shape::kPureNot : index % 100 == 1 ? Shape::kThreshold : Shape::kAny;
        PolicyGenerator gen(rng, universe);
        t.policy = gen.generate(1 + rng.uniform(kMaxLeaves), shape);

        // Sample S until its satisfaction agrees with the wanted outcome,
        // giving up after a few tries for policies that cannot comply.
        const bool want = rng.uniform(4) != 0;
        for (int attempt = 0; attempt < 32; ++attempt) {
            t.attributes = random_subset(rng, universe, t.d - 1);
            t.satisfied = evaluate_policy(t.policy, {t.attributes.begin(), t.attributes.end()});
            if (t.satisfied == want) break;
        }

        const bool identical = rng.uniform(10) == 0;
        for (std::size_t k = 0; k < t.n; ++k) {
            if (identical && k > 0) {
                t.items.push_back(t.items.front());
                continue;
            }
            std::vector<std::string> pool;
            for (std::size_t i = 0; i < kItemPool; ++i) pool.push_back("sample-" + std::to_string(i));
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(1 + rng.uniform(kMaxItems));
            t.items.push_back(std::move(pool));
        }

        t.label = "round-" + std::to_string(rng.uniform(1000));

        std::vector<std::pair<std::size_t, std::size_t>> all;
        for (std::size_t w = 1; w <= t.n; ++w) {
            for (std::size_t v = w + 1; v <= t.n; ++v) all.emplace_back(w, v);
        }
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(1 + rng.uniform(std::min<std::size_t>(all.size(), 3)));
        t.queries = QuerySet(std::move(all));
        corpus.push_back(std::move(t));
    }
    return corpus;
}

TrialOutcome run_trial(const Trial& trial) {
    auto fail = [](std::string why) { return TrialOutcome{false, std::move(why)}; };
    auto rng = Drbg::from_seed(trial.seed, "trial");
    const auto setup = scheme::setup(trial.d, trial.n, rng);
    const auto tag = harness::make_tag(trial.label);

    std::vector<scheme::ClientCiphertext> cts;
    std::vector<std::vector<pairing::GT>> encoded(trial.n);
    for (std::size_t k = 0; k < trial.n; ++k) {
        for (const auto& item : trial.items[k]) encoded[k].push_back(harness::encode_item(item));
        cts.push_back(scheme::encrypt(setup.pp, trial.attributes, tag, encoded[k], setup.client_keys[k], rng));
    }

    std::vector<std::set<std::string>> collected(trial.n);
    for (const auto& [w, v] : trial.queries.pairs()) {
        const auto sk = scheme::keygen(setup.msk, setup.pp, {w, v}, trial.policy, rng);
        const auto result = scheme::decrypt(setup.pp, cts[w - 1], cts[v - 1], sk);
        const std::string where = "pair (" + std::to_string(w) + "," + std::to_string(v) + "): ";
        if (!trial.satisfied) {
            if (!result.rejected() || *result.rejection != scheme::Rejection::kPolicyUnsatisfied)
                return fail(where + "unsatisfied policy was not rejected");
            continue;
        }
        if (result.rejected()) return fail(where + "satisfied policy rejected");

        const auto& items_w = trial.items[w - 1];
        const auto& items_v = trial.items[v - 1];
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& m : result.matches) {
            if (m.index_w >= items_w.size() || m.index_v >= items_v.size()) return fail(where + "index out of range");
            if (!seen.insert({m.index_w, m.index_v}).second) return fail(where + "duplicate match");
            if (items_w[m.index_w] != items_v[m.index_v]) return fail(where + "matched indices hold different items");
            if (!(m.item == encoded[w - 1][m.index_w])) return fail(where + "recovered element differs from item");
            collected[w - 1].insert(items_w[m.index_w]);
            collected[v - 1].insert(items_w[m.index_w]);
        }
        const auto expected = sif(trial.items, QuerySet({{w, v}}));
        if (result.matches.size() != expected[w - 1].size()) return fail(where + "match count differs from oracle");
    }
    if (trial.satisfied && collected != sif(trial.items, trial.queries))
        return fail("collected intersections differ from oracle");
    return {};
}

}  // namespace mcfe::oracle
