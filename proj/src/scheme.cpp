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

#include "mcfe/scheme.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mcfe::scheme {

namespace {

using Terms = std::vector<std::pair<G1, G2>>;

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

const ClientKey& client_key(const MasterSecret& msk, std::size_t k) {
    if (k < 1 || k > msk.clients.size()) throw std::invalid_argument("client index out of range");
    return msk.clients[k - 1];
}

// sum_{j=2..d} k_j^(y_j * scale); k holds k_2 .. k_d.
G1 fold_row_keys(const std::vector<G1>& k, std::span<const Scalar> y, const Scalar& scale) {
    G1 acc;
    for (std::size_t j = 1; j < y.size(); ++j) {
        if (y[j].is_zero()) continue;
        acc *= k[j - 1].pow(y[j] * scale);
    }
    return acc;
}

// <theta_i, Y> for the row's attribute; nonzero for every satisfied negated row.
Scalar theta_dot_y(const DecryptionKey& sk, std::size_t row, std::span<const Scalar> y) {
    const auto theta = policy::theta_vector(sk.policy.rho[row].attribute.value, y.size());
    return policy::inner_product(theta, y);
}

void check_row_key_shape(const PublicParams& pp, const DecryptionKey& sk) {
    if (sk.rows.size() != sk.policy.row_count()) throw std::invalid_argument("decryption key: row count mismatch");
    for (const auto& r : sk.rows) {
        if (r.k.size() + 1 != pp.d) throw std::invalid_argument("decryption key: dimension mismatch");
    }
}

}  // namespace

const char* to_string(Rejection r) {
    switch (r) {
        case Rejection::kPolicyUnsatisfied: return "policy-unsatisfied";
        case Rejection::kAttributeSetMismatch: return "attribute-set-mismatch";
    }
    return "unknown";
}

SetupOutput setup(std::size_t d, std::size_t n, Drbg& rng) {
    if (d < 2) throw std::invalid_argument("setup: dimension d must be at least 2");
    if (n < 2) throw std::invalid_argument("setup: client count N must be at least 2");

    const G1& g = G1::generator();
    SetupOutput out;
    MasterSecret& msk = out.msk;
    PublicParams& pp = out.pp;
    pp.d = d;
    pp.n = n;

    for (std::size_t i = 0; i < d; ++i) msk.alpha.push_back(rng.scalar());
    for (std::size_t j = 0; j <= d; ++j) msk.beta.push_back(rng.scalar());
    for (const auto& a : msk.alpha) pp.h.push_back(g.pow(a));
    for (const auto& b : msk.beta) pp.u.push_back(g.pow(b));

    msk.alpha_tilde = rng.nonzero_scalar();
    pp.egg_alpha = GT::generator_pow(msk.alpha_tilde);

    msk.r = rng.nonzero_scalar();
    pp.g2_r = G2::generator().pow(msk.r);
    pp.u0_r = pp.u[0].pow(msk.r);
    pp.h1_r = pp.h[0].pow(msk.r);

    for (std::size_t k = 1; k <= n; ++k) {
        ClientKey key{k, rng.nonzero_scalar(), rng.nonzero_scalar()};
        // Resample until a_k + a_j is invertible for every earlier client.
        auto clashes = [&](const ClientKey& c) {
            return std::any_of(msk.clients.begin(), msk.clients.end(),
                               [&](const ClientKey& prev) { return (prev.a + c.a).is_zero(); });
        };
        while (clashes(key)) key.a = rng.nonzero_scalar();
        msk.clients.push_back(key);
    }
    out.client_keys = msk.clients;
    return out;
}

DecryptionKey keygen(const MasterSecret& msk, const PublicParams& pp, IndexFunction f,
                     const policy::PolicyNode& policy_tree, Drbg& rng, KeygenTrace* trace) {
    if (!(1 <= f.w && f.w < f.v && f.v <= pp.n))
        throw std::invalid_argument("keygen: index function requires 1 <= w < v <= N");
    const ClientKey& cw = client_key(msk, f.w);
    const ClientKey& cv = client_key(msk, f.v);
    const Scalar a_sum = cw.a + cv.a;
    if (a_sum.is_zero()) throw std::invalid_argument("keygen: a_w + a_v is zero");

    const G1& g = G1::generator();
    const G2& g2 = G2::generator();
    const std::size_t d = pp.d;

    DecryptionKey sk;
    sk.f = f;
    const Scalar r_dot = rng.nonzero_scalar();
    sk.sk_f1 = g2.pow(cw.a * r_dot);
    sk.sk_f2 = g2.pow(cv.a * r_dot);
    sk.sk_f3 = g2.pow(msk.r * cw.b * a_sum.inverse());

    sk.policy = policy::compile_lsss(policy_tree);
    const auto shares = policy::share_secret(sk.policy, msk.alpha_tilde, rng);

    KeygenTrace local;
    local.r_dot = r_dot;
    local.shares = shares.shares;

    // The TA knows alpha and beta, so each key element is a single
    // exponentiation of g; e.g. (u_1^(-theta_j / theta_1) u_j)^t equals
    // g^(t (beta_j - beta_1 theta_j / theta_1)).
    for (std::size_t i = 0; i < sk.policy.row_count(); ++i) {
        const auto& lit = sk.policy.rho[i];
        const auto theta = policy::theta_vector(lit.attribute.value, d);
        const Scalar theta1_inv = theta[0].inverse();
        const Scalar t = rng.nonzero_scalar();
        local.t.push_back(t);

        PolicyRowKey row;
        row.negated = lit.negated;
        row.sk2 = g2.pow(t);
        row.k.reserve(d - 1);
        if (!lit.negated) {
            // sk1 = g^lambda * u_0^(r t)
            row.sk1 = g.pow(shares.shares[i] + msk.beta[0] * msk.r * t);
            for (std::size_t j = 1; j < d; ++j) {
                // k_{i,j+1} = (u_1^(-theta_{j+1} / theta_1) * u_{j+1})^t
                row.k.push_back(g.pow(t * (msk.beta[j + 1] - msk.beta[1] * theta[j] * theta1_inv)));
            }
        } else {
            // sk1 = g^lambda * h_1^(r t)
            row.sk1 = g.pow(shares.shares[i] + msk.alpha[0] * msk.r * t);
            for (std::size_t j = 1; j < d; ++j) {
                // k_{i,j+1} = (h_1^(-r theta_{j+1} / theta_1) * h_{j+1})^t
                row.k.push_back(g.pow(t * (msk.alpha[j] - msk.alpha[0] * msk.r * theta[j] * theta1_inv)));
            }
        }
        sk.rows.push_back(std::move(row));
    }
    if (trace) *trace = std::move(local);
    return sk;
}

ClientCiphertext encrypt(const PublicParams& pp, std::span<const std::string> attributes, const GT& tag,
                         std::span<const GT> items, const ClientKey& csk, Drbg& rng, EncryptTrace* trace) {
    if (items.empty()) throw std::invalid_argument("encrypt: empty item batch");
    if (csk.k < 1 || csk.k > pp.n) throw std::invalid_argument("encrypt: client index out of range");
    const auto s_attrs = policy::make_attribute_set(attributes);
    if (s_attrs.size() >= pp.d) {
        throw std::length_error("encrypt: attribute set of size " + std::to_string(s_attrs.size()) +
                                " needs dimension above " + std::to_string(s_attrs.size()));
    }
    const auto y = policy::char_poly_vector(s_attrs, pp.d);

    ClientCiphertext ct;
    ct.k = csk.k;
    ct.attributes.assign(attributes.begin(), attributes.end());

    const Scalar s = rng.nonzero_scalar();
    ct.ct1 = G2::generator().pow(s);

    // ct2 = (u_0^r * prod_{i=1..d} u_i^(y_i))^s
    G1 ct2 = pp.u0_r.pow(s);
    for (std::size_t i = 1; i <= pp.d; ++i) {
        if (!y[i - 1].is_zero()) ct2 *= pp.u[i].pow(y[i - 1] * s);
    }
    ct.ct2 = ct2;

    // ct3 = (h_1^(r y_1) * prod_{i=2..d} h_i^(y_i))^s
    G1 ct3 = pp.h1_r.pow(y[0] * s);
    for (std::size_t i = 2; i <= pp.d; ++i) {
        if (!y[i - 1].is_zero()) ct3 *= pp.h[i - 1].pow(y[i - 1] * s);
    }
    ct.ct3 = ct3;

    const GT mask = pp.egg_alpha.pow(s);
    ct.items.reserve(items.size());
    for (const auto& m : items) {
        const G1 hashed = pairing::hash_gt_to_g1(m * tag);
        ItemCiphertext item;
        item.c0 = m * mask * pairing::pair(hashed.pow(csk.b), pp.g2_r);
        item.c1 = hashed.pow(csk.a);
        ct.items.push_back(item);
    }
    if (trace) trace->s = s;
    return ct;
}

GT row_factor(const PublicParams& pp, const DecryptionKey& sk, std::size_t row, const ClientCiphertext& ct,
              std::span<const Scalar> y) {
    check_row_key_shape(pp, sk);
    const auto& key = sk.rows.at(row);
    const Scalar one = Scalar::one();
    if (!key.negated) {
        // e(sk1 * prod k_j^(y_j), ct1) / e(ct2, sk2)
        const G1 folded = key.sk1 * fold_row_keys(key.k, y, one);
        return pairing::pair(folded, ct.ct1) / pairing::pair(ct.ct2, key.sk2);
    }
    // e(sk1, ct1) * (e(prod k_j^(y_j), ct1) / e(ct3, sk2))^(theta_1 / <theta, Y>)
    const Scalar denom = theta_dot_y(sk, row, y);
    if (denom.is_zero()) throw std::logic_error("row_factor: negated row whose attribute is in the set");
    const G1 folded = fold_row_keys(key.k, y, one);
    const GT ratio = pairing::pair(folded, ct.ct1) / pairing::pair(ct.ct3, key.sk2);
    return pairing::pair(key.sk1, ct.ct1) * ratio.pow(denom.inverse());
}

GT policy_mask(const PublicParams& pp, const DecryptionKey& sk, const policy::ReconPlan& plan,
               const ClientCiphertext& ct, std::span<const Scalar> y) {
    check_row_key_shape(pp, sk);
    Terms terms;
    for (std::size_t idx = 0; idx < plan.rows.size(); ++idx) {
        const Scalar& pi = plan.coefficients[idx];
        if (pi.is_zero()) continue;
        const std::size_t row = plan.rows[idx];
        const auto& key = sk.rows.at(row);
        if (!key.negated) {
            // e((sk1 prod k_j^(y_j))^pi, ct1) * e(ct2^(-pi), sk2)
            const G1 folded = key.sk1.pow(pi) * fold_row_keys(key.k, y, pi);
            terms.emplace_back(folded, ct.ct1);
            terms.emplace_back(ct.ct2.pow(-pi), key.sk2);
        } else {
            const Scalar denom = theta_dot_y(sk, row, y);
            if (denom.is_zero()) throw std::logic_error("policy_mask: negated row whose attribute is in the set");
            const Scalar c = pi * denom.inverse();
            // e(sk1^pi, ct1) * e((prod k_j^(y_j))^c, ct1) * e(ct3^(-c), sk2)
            terms.emplace_back(key.sk1.pow(pi), ct.ct1);
            terms.emplace_back(fold_row_keys(key.k, y, c), ct.ct1);
            terms.emplace_back(ct.ct3.pow(-c), key.sk2);
        }
    }
    return pairing::multi_pair(terms);
}

IntersectionResult decrypt(const PublicParams& pp, const ClientCiphertext& ct_w, const ClientCiphertext& ct_v,
                           const DecryptionKey& sk) {
    if (ct_w.k != sk.f.w || ct_v.k != sk.f.v) {
        throw std::invalid_argument("decrypt: ciphertexts of clients (" + std::to_string(ct_w.k) + ", " +
                                    std::to_string(ct_v.k) + ") do not match key pair (" + std::to_string(sk.f.w) +
                                    ", " + std::to_string(sk.f.v) + ")");
    }
    IntersectionResult result;
    if (sorted(ct_w.attributes) != sorted(ct_v.attributes)) {
        result.rejection = Rejection::kAttributeSetMismatch;
        return result;
    }

    const auto s_attrs = policy::make_attribute_set(ct_w.attributes);
    const auto satisfied = policy::derive_nm_set(s_attrs, sk.policy);
    auto recon = policy::recon_coefficients(sk.policy, satisfied);
    const auto* plan = std::get_if<policy::ReconPlan>(&recon);
    if (plan == nullptr) {
        result.rejection = Rejection::kPolicyUnsatisfied;
        return result;
    }

    const auto y = policy::char_poly_vector(s_attrs, pp.d);
    const GT mask_inv = policy_mask(pp, sk, *plan, ct_w, y).inverse();

    // Each side's index pairing is evaluated once, then compared pairwise.
    std::vector<GT> side_w;
    std::vector<GT> side_v;
    side_w.reserve(ct_w.items.size());
    side_v.reserve(ct_v.items.size());
    for (const auto& it : ct_w.items) side_w.push_back(pairing::pair(it.c1, sk.sk_f2));
    for (const auto& it : ct_v.items) side_v.push_back(pairing::pair(it.c1, sk.sk_f1));

    for (std::size_t i = 0; i < side_w.size(); ++i) {
        for (std::size_t j = 0; j < side_v.size(); ++j) {
            if (!(side_w[i] == side_v[j])) continue;
            const GT c = ct_w.items[i].c0 * mask_inv;
            const GT unmask = pairing::pair(ct_w.items[i].c1 * ct_v.items[j].c1, sk.sk_f3);
            result.matches.push_back({i, j, c / unmask});
        }
    }
    return result;
}

bool index_match(const G1& item_w, const G1& item_v, const DecryptionKey& sk) {
    return pairing::pair(item_w, sk.sk_f2) == pairing::pair(item_v, sk.sk_f1);
}

}  // namespace mcfe::scheme
