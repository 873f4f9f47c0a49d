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

// Access policies: parsing, compilation to a linear secret-sharing matrix over
// Z_p, share generation and reconstruction, plus the polynomial encodings of
// attribute sets used by the encryption scheme.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcfe/pairing.hpp"
#include "mcfe/random.hpp"

namespace mcfe::policy {

using pairing::Scalar;

inline constexpr std::string_view kAttributeDomain = "MCFE-SI-V1-ATTRIBUTE";

struct Attribute {
    std::string label;
    Scalar value;  // hash_to_scalar(label, kAttributeDomain)

    static Attribute from_label(std::string label);

    bool operator==(const Attribute& o) const { return label == o.label; }
};

// Maps labels to attributes, rejecting duplicate labels and (astronomically
// unlikely) value collisions.
std::vector<Attribute> make_attribute_set(std::span<const std::string> labels);

class PolicyError : public std::runtime_error {
  public:
    PolicyError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// Normalized policy tree. Negation only appears on leaves, nested gates of
// the same kind are flattened and And/Or nodes have at least two children.
struct PolicyNode {
    enum class Kind { kLeaf, kAnd, kOr, kThreshold };

    Kind kind = Kind::kLeaf;
    std::string attribute;        // leaves only
    bool negated = false;         // leaves only
    std::size_t threshold = 0;    // threshold gates only
    std::vector<PolicyNode> children;

    static PolicyNode leaf(std::string attribute, bool negated = false);
    static PolicyNode all_of(std::vector<PolicyNode> children);
    static PolicyNode any_of(std::vector<PolicyNode> children);
    // Throws PolicyError unless 1 <= t <= children.size().
    static PolicyNode threshold_of(std::size_t t, std::vector<PolicyNode> children);

    std::size_t leaf_count() const;
    // Canonical text that parse_policy() maps back to an equal tree.
    std::string to_string() const;

    bool operator==(const PolicyNode&) const = default;
};

// De Morgan negation, pushed to the leaves.
PolicyNode negate(const PolicyNode& node);

// Grammar (see docs/policy-grammar.md): OR < AND < NOT precedence, AND/OR
// left-associative, THRESHOLD(t; p1, ..., pn), parentheses, quoted or bare
// attribute names. "A NOT B" is read as "A AND NOT B".
PolicyNode parse_policy(std::string_view text);

struct Literal {
    Attribute attribute;
    bool negated = false;
};

// Share-generating matrix L (rows x cols) with row labelling rho.
struct AccessMatrix {
    std::size_t cols = 0;
    std::vector<std::vector<Scalar>> rows;
    std::vector<Literal> rho;

    std::size_t row_count() const { return rows.size(); }
};

// Gate-by-gate construction: AND/OR by two-row insertion, THRESHOLD(t, n) by
// Vandermonde rows over t - 1 fresh columns. Every leaf, negated or not, is
// its own row; negation only sets the row's flag.
AccessMatrix compile_lsss(const PolicyNode& policy);

struct ShareVector {
    std::vector<Scalar> shares;  // shares[i] = <L_i, zeta>, zeta[0] = secret
};

ShareVector share_secret(const AccessMatrix& m, const Scalar& secret, Drbg& rng);

// Rows whose literal holds for the attribute set: a plain literal x holds iff
// x is in s, a negated literal iff x is not in s. Sorted ascending.
std::vector<std::size_t> derive_nm_set(std::span<const Attribute> s, const AccessMatrix& m);

struct ReconPlan {
    std::vector<std::size_t> rows;        // the satisfied rows handed in
    std::vector<Scalar> coefficients;     // sum_i coefficients[i] * L_{rows[i]} = e_1
};

// Certificate that e_1 is outside the span: L_I * witness = 0, witness[0] = 1.
struct Unsatisfied {
    std::vector<Scalar> witness;
};

using ReconResult = std::variant<ReconPlan, Unsatisfied>;

ReconResult recon_coefficients(const AccessMatrix& m, std::span<const std::size_t> satisfied);

// Solves A x = b over Z_p. Pivots are taken left to right from the lowest
// available row; free variables are zero. Returns nullopt if inconsistent.
std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a,
                                                std::vector<Scalar> b);

// (1, x, x^2, ..., x^(d-1)).
std::vector<Scalar> theta_vector(const Scalar& x, std::size_t d);

// Ascending coefficients of prod_{r in roots} (X - r), zero-padded to d
// entries. Throws std::length_error if roots.size() + 1 > d.
std::vector<Scalar> char_poly_vector(std::span<const Scalar> roots, std::size_t d);
std::vector<Scalar> char_poly_vector(std::span<const Attribute> s, std::size_t d);

Scalar inner_product(std::span<const Scalar> a, std::span<const Scalar> b);

}  // namespace mcfe::policy
