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

#include <algorithm>
#include <stdexcept>

#include "mcfe/policy.hpp"

namespace mcfe::policy {

Attribute Attribute::from_label(std::string label) {
    Scalar value = pairing::hash_to_scalar(pairing::as_bytes(label), kAttributeDomain);
    return {std::move(label), value};
}

std::vector<Attribute> make_attribute_set(std::span<const std::string> labels) {
    std::vector<Attribute> out;
    out.reserve(labels.size());
    for (const auto& label : labels) {
        if (label.empty()) throw std::invalid_argument("attribute label must not be empty");
        auto attr = Attribute::from_label(label);
        for (const auto& prev : out) {
            if (prev.label == attr.label) throw std::invalid_argument("duplicate attribute '" + label + "'");
            if (prev.value == attr.value)
                throw std::invalid_argument("attribute value collision: '" + prev.label + "' / '" + label + "'");
        }
        out.push_back(std::move(attr));
    }
    return out;
}

namespace {

class LsssBuilder {
  public:
    AccessMatrix build(const PolicyNode& root) {
        cols_ = 1;
        insert(root, {Scalar::one()});
        for (auto& row : m_.rows) row.resize(cols_);
        m_.cols = cols_;
        return std::move(m_);
    }

  private:
    std::vector<Scalar> widened(const std::vector<Scalar>& v, std::size_t width) const {
        std::vector<Scalar> out = v;
        out.resize(width);
        return out;
    }

    void insert(const PolicyNode& node, const std::vector<Scalar>& vec) {
        using Kind = PolicyNode::Kind;
        switch (node.kind) {
            case Kind::kLeaf:
                m_.rows.push_back(vec);
                m_.rho.push_back({Attribute::from_label(node.attribute), node.negated});
                return;
            case Kind::kOr:
                for (const auto& c : node.children) insert(c, vec);
                return;
            case Kind::kAnd:
                insert_and(node.children, 0, vec);
                return;
            case Kind::kThreshold:
                insert_threshold(node, vec);
                return;
        }
    }

    // AND(c_first, ..., c_last) as a right-leaning chain of binary gates: the
    // left child gets (v, 1), the right child (0, ..., 0, -1) in a new column.
    void insert_and(const std::vector<PolicyNode>& children, std::size_t first, const std::vector<Scalar>& vec) {
        if (first + 1 == children.size()) {
            insert(children[first], vec);
            return;
        }
        const std::size_t col = cols_++;
        std::vector<Scalar> left = widened(vec, col + 1);
        left[col] = Scalar::one();
        std::vector<Scalar> right(col + 1);
        right[col] = -Scalar::one();
        insert(children[first], left);
        insert_and(children, first + 1, right);
    }

    // Child j (1-based) gets (v, j, j^2, ..., j^(t-1)) over t - 1 new columns:
    // shares are evaluations of a degree t - 1 polynomial whose constant term
    // is the parent share.
    void insert_threshold(const PolicyNode& node, const std::vector<Scalar>& vec) {
        const std::size_t t = node.threshold;
        const std::size_t base = cols_;
        cols_ += t - 1;
        std::vector<std::vector<Scalar>> child_vecs;
        for (std::size_t j = 1; j <= node.children.size(); ++j) {
            std::vector<Scalar> cv = widened(vec, base + t - 1);
            const Scalar x = Scalar::from_u64(j);
            Scalar power = x;
            for (std::size_t k = 0; k + 1 < t; ++k) {
                cv[base + k] = power;
                power *= x;
            }
            child_vecs.push_back(std::move(cv));
        }
        for (std::size_t j = 0; j < node.children.size(); ++j) insert(node.children[j], child_vecs[j]);
    }

    AccessMatrix m_;
    std::size_t cols_ = 0;
};

}  // namespace

AccessMatrix compile_lsss(const PolicyNode& policy) { return LsssBuilder{}.build(policy); }

ShareVector share_secret(const AccessMatrix& m, const Scalar& secret, Drbg& rng) {
    std::vector<Scalar> zeta(m.cols);
    zeta[0] = secret;
    for (std::size_t k = 1; k < m.cols; ++k) zeta[k] = rng.scalar();
    ShareVector out;
    out.shares.reserve(m.row_count());
    for (const auto& row : m.rows) out.shares.push_back(inner_product(row, zeta));
    return out;
}

std::vector<std::size_t> derive_nm_set(std::span<const Attribute> s, const AccessMatrix& m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        const auto& lit = m.rho[i];
        const bool present = std::any_of(s.begin(), s.end(),
                                         [&](const Attribute& a) { return a.value == lit.attribute.value; });
        if (present != lit.negated) out.push_back(i);
    }
    return out;
}

std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Scalar inv = a[r][c].inverse();
        for (auto& x : a[r]) x *= inv;
        b[r] *= inv;
        for (std::size_t k = 0; k < rows; ++k) {
            if (k == r || a[k][c].is_zero()) continue;
            const Scalar f = a[k][c];
            for (std::size_t j = c; j < cols; ++j) a[k][j] -= f * a[r][j];
            b[k] -= f * b[r];
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (std::size_t k = r; k < rows; ++k) {
        if (!b[k].is_zero()) return std::nullopt;
    }
    std::vector<Scalar> x(cols);
    for (std::size_t k = 0; k < r; ++k) x[pivot_col_of_row[k]] = b[k];
    return x;
}

ReconResult recon_coefficients(const AccessMatrix& m, std::span<const std::size_t> satisfied) {
    const std::size_t n = satisfied.size();
    if (n > 0) {
        // L_I^T * pi = e_1.
        std::vector<std::vector<Scalar>> a(m.cols, std::vector<Scalar>(n));
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t c = 0; c < m.cols; ++c) a[c][j] = m.rows.at(satisfied[j])[c];
        }
        std::vector<Scalar> e1(m.cols);
        e1[0] = Scalar::one();
        if (auto pi = solve_linear(std::move(a), std::move(e1))) {
            return ReconPlan{{satisfied.begin(), satisfied.end()}, std::move(*pi)};
        }
    }
    // [L_I; e_1^T] * v = (0, ..., 0, 1) is solvable exactly when e_1 is not
    // in the row span of L_I.
    std::vector<std::vector<Scalar>> a;
    for (auto i : satisfied) a.push_back(m.rows.at(i));
    std::vector<Scalar> e1(m.cols);
    e1[0] = Scalar::one();
    a.push_back(e1);
    std::vector<Scalar> rhs(n + 1);
    rhs[n] = Scalar::one();
    auto v = solve_linear(std::move(a), std::move(rhs));
    if (!v) throw std::logic_error("recon_coefficients: neither coefficients nor witness exist");
    return Unsatisfied{std::move(*v)};
}

std::vector<Scalar> theta_vector(const Scalar& x, std::size_t d) {
    if (d == 0) throw std::invalid_argument("theta_vector: dimension must be positive");
    std::vector<Scalar> out(d);
    out[0] = Scalar::one();
    for (std::size_t j = 1; j < d; ++j) out[j] = out[j - 1] * x;
    return out;
}

std::vector<Scalar> char_poly_vector(std::span<const Scalar> roots, std::size_t d) {
    if (roots.size() + 1 > d) {
        throw std::length_error("attribute set of size " + std::to_string(roots.size()) +
                                " does not fit dimension " + std::to_string(d));
    }
    std::vector<Scalar> coeffs{Scalar::one()};
    for (const auto& r : roots) {
        // Multiply by (X - r).
        std::vector<Scalar> next(coeffs.size() + 1);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] += coeffs[k];
            next[k] -= coeffs[k] * r;
        }
        coeffs = std::move(next);
    }
    coeffs.resize(d);
    return coeffs;
}

std::vector<Scalar> char_poly_vector(std::span<const Attribute> s, std::size_t d) {
    std::vector<Scalar> roots;
    roots.reserve(s.size());
    for (const auto& a : s) roots.push_back(a.value);
    return char_poly_vector(roots, d);
}

Scalar inner_product(std::span<const Scalar> a, std::span<const Scalar> b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner_product: length mismatch");
    Scalar acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace mcfe::policy
