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

// Multi-client functional encryption for pairwise set intersection under
// non-monotonic attribute policies.
//
// A trusted authority runs setup() and hands each of the N clients a
// ClientKey. Clients encrypt labelled item sets under a shared attribute set.
// An aggregator holding a DecryptionKey for the pair (w, v) and a policy
// learns exactly the items the two clients have in common, provided the
// attribute set satisfies the policy; otherwise decryption is rejected.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcfe/pairing.hpp"
#include "mcfe/policy.hpp"
#include "mcfe/random.hpp"

namespace mcfe::scheme {

using pairing::G1;
using pairing::G2;
using pairing::GT;
using pairing::Scalar;

struct PublicParams {
    std::size_t d = 0;           // attribute dimension
    std::size_t n = 0;           // client count
    GT egg_alpha;                // e(g, ĝ)^alpha_tilde
    std::vector<G1> h;           // h_1 .. h_d, h[i - 1] = g^alpha_i
    std::vector<G1> u;           // u_0 .. u_d, u[j] = g^beta_j
    // The single exponent r is fixed at setup and shared by every key and
    // ciphertext; only these three powers of it are public.
    G2 g2_r;                     // ĝ^r
    G1 u0_r;                     // u_0^r
    G1 h1_r;                     // h_1^r
};

struct ClientKey {
    std::size_t k = 0;           // 1-based client index
    Scalar a;
    Scalar b;
};

struct MasterSecret {
    Scalar alpha_tilde;
    Scalar r;
    std::vector<Scalar> alpha;   // alpha_1 .. alpha_d
    std::vector<Scalar> beta;    // beta_0 .. beta_d
    std::vector<ClientKey> clients;
};

struct SetupOutput {
    PublicParams pp;
    MasterSecret msk;
    std::vector<ClientKey> client_keys;
};

// Requires d >= 2 and n >= 2. Client keys are nonzero and every pairwise sum
// a_w + a_v is invertible.
SetupOutput setup(std::size_t d, std::size_t n, Drbg& rng);

struct IndexFunction {
    std::size_t w = 0;
    std::size_t v = 0;

    bool operator==(const IndexFunction&) const = default;
};

struct PolicyRowKey {
    bool negated = false;
    G1 sk1;
    G2 sk2;
    std::vector<G1> k;           // k_{i,2} .. k_{i,d}
};

struct DecryptionKey {
    IndexFunction f;
    G2 sk_f1;                    // ĝ^(a_w * r_dot)
    G2 sk_f2;                    // ĝ^(a_v * r_dot)
    G2 sk_f3;                    // ĝ^(r * b_w / (a_w + a_v))
    policy::AccessMatrix policy;
    std::vector<PolicyRowKey> rows;
};

// Per-call randomness of keygen, surfaced for white-box verification.
struct KeygenTrace {
    Scalar r_dot;
    std::vector<Scalar> shares;  // lambda_i
    std::vector<Scalar> t;       // t_i
};

// Throws std::invalid_argument unless 1 <= w < v <= n and a_w + a_v != 0.
DecryptionKey keygen(const MasterSecret& msk, const PublicParams& pp, IndexFunction f,
                     const policy::PolicyNode& policy, Drbg& rng, KeygenTrace* trace = nullptr);

struct ItemCiphertext {
    GT c0;                       // M * e(g,ĝ)^(alpha_tilde s) * e(H(M * Tag), ĝ^r)^b
    G1 c1;                       // H(M * Tag)^a
};

struct ClientCiphertext {
    std::size_t k = 0;
    std::vector<std::string> attributes;
    G2 ct1;
    G1 ct2;
    G1 ct3;
    std::vector<ItemCiphertext> items;
};

struct EncryptTrace {
    Scalar s;
};

// One s_k for the whole batch. Throws std::length_error if the attribute set
// does not fit the dimension and std::invalid_argument for an empty batch or
// duplicate attributes.
ClientCiphertext encrypt(const PublicParams& pp, std::span<const std::string> attributes, const GT& tag,
                         std::span<const GT> items, const ClientKey& csk, Drbg& rng,
                         EncryptTrace* trace = nullptr);

struct Match {
    std::size_t index_w = 0;     // 0-based positions in the two batches
    std::size_t index_v = 0;
    GT item;
};

enum class Rejection {
    kPolicyUnsatisfied,
    kAttributeSetMismatch,
};

const char* to_string(Rejection r);

// Either the intersection or a rejection (the protocol's "bottom" result).
struct IntersectionResult {
    std::optional<Rejection> rejection;
    std::vector<Match> matches;

    bool rejected() const { return rejection.has_value(); }
};

// Throws std::invalid_argument when the ciphertexts do not belong to the
// key's client pair; policy failure is reported through the result.
IntersectionResult decrypt(const PublicParams& pp, const ClientCiphertext& ct_w, const ClientCiphertext& ct_v,
                           const DecryptionKey& sk);

// e(item_w, sk_f2) == e(item_v, sk_f1).
bool index_match(const G1& item_w, const G1& item_v, const DecryptionKey& sk);

// e(g, ĝ)^(lambda_i s) for one satisfied row, evaluated literally: two
// pairings for a plain row, three plus an exponentiation for a negated row.
// y is the characteristic-polynomial vector of the ciphertext attribute set.
GT row_factor(const PublicParams& pp, const DecryptionKey& sk, std::size_t row, const ClientCiphertext& ct,
              std::span<const Scalar> y);

// prod_i row_factor(i)^coefficient_i = e(g, ĝ)^(alpha_tilde s), computed as one
// multi-pairing with the coefficients moved into the source groups.
GT policy_mask(const PublicParams& pp, const DecryptionKey& sk, const policy::ReconPlan& plan,
               const ClientCiphertext& ct, std::span<const Scalar> y);

}  // namespace mcfe::scheme
