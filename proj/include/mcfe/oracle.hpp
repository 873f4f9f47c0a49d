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

// Plaintext oracles and randomized trial corpora for checking the scheme
// against its ideal functionality.

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcfe/policy.hpp"
#include "mcfe/scheme.hpp"

namespace mcfe::oracle {

// Set of key queries {(w, v)} with 1 <= w < v, kept sorted and unique.
class QuerySet {
  public:
    QuerySet() = default;
    // Throws std::invalid_argument for w >= v, w == 0 or a repeated pair.
    explicit QuerySet(std::vector<std::pair<std::size_t, std::size_t>> pairs);

    bool contains(std::size_t w, std::size_t v) const;
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

  private:
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

// E_k collects every element of M_w ∩ M_v over the queried pairs touching k.
// Throws std::out_of_range when a pair names a client beyond sets.size().
std::vector<std::set<std::string>> sif(const std::vector<std::vector<std::string>>& sets, const QuerySet& q);

// { nu in [N] \ {nu*} : (nu, nu*) not in Q when nu < nu*, (nu*, nu) not in Q
// when nu > nu* }, ascending. Throws std::out_of_range unless 1 <= nu* <= N.
std::vector<std::size_t> j_set(std::size_t n, std::size_t nu_star, const QuerySet& q);

// Non-monotone satisfaction: a negated leaf holds iff its attribute is absent.
bool evaluate_policy(const policy::PolicyNode& policy, const std::set<std::string>& attributes);

struct Trial {
    std::uint64_t seed = 0;             // seeds the scheme randomness of this trial
    std::size_t d = 0;
    std::size_t n = 0;
    policy::PolicyNode policy;
    std::vector<std::string> attributes;
    std::vector<std::vector<std::string>> items;  // items of client k at k - 1
    std::string label;
    QuerySet queries;
    bool satisfied = false;             // evaluate_policy(policy, attributes)
};

// Deterministic in (seed, count). d in [3, 10], N in [2, 6], policies of at
// most 6 leaves, 1 to 8 items per client. Trials at index 100k are pure-NOT
// policies and trials at index 100k + 1 contain a threshold gate; roughly
// three quarters of all trials satisfy their policy.
std::vector<Trial> property_corpus(std::uint64_t seed, std::size_t count);

struct TrialOutcome {
    bool ok = true;
    std::string detail;  // first discrepancy when !ok
};

// Runs setup, one key per queried pair, encryption for every client, then
// checks each decryption against sif() (or the rejection when unsatisfied).
// Matched indices must point at equal raw items on both sides.
TrialOutcome run_trial(const Trial& trial);

}  // namespace mcfe::oracle
