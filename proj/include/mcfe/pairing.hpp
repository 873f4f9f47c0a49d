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

// Type-III pairing environment over BLS12-381, backed by blst.
//
// Notation: G1 is the source group G (48-byte compressed points), G2 is the
// source group Ĝ (96-byte compressed points) and GT is the target group
// (576-byte tuple of twelve base-field elements). All three groups use
// multiplicative notation: operator* is the group law and pow() is
// exponentiation by a Scalar.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <blst.h>

namespace mcfe::pairing {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::string_view kGroupName = "BLS12-381";
inline constexpr std::size_t kScalarBytes = 32;
inline constexpr std::size_t kG1Bytes = 48;
inline constexpr std::size_t kG2Bytes = 96;
inline constexpr std::size_t kGTBytes = 576;

// Raised when a byte string is not the canonical encoding of a valid element.
class DecodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Residue modulo the prime group order p.
class Scalar {
  public:
    Scalar();

    static Scalar zero() { return Scalar{}; }
    static Scalar one();
    static Scalar from_u64(std::uint64_t v);
    static Scalar from_i64(std::int64_t v);
    // Canonical 32-byte big-endian form; values >= p are rejected.
    static Scalar from_bytes(ByteView bytes);
    // Reduces an arbitrary-length big-endian integer modulo p.
    static Scalar reduce(ByteView big_endian);

    std::array<std::uint8_t, kScalarBytes> to_bytes() const;
    std::string to_hex() const;

    bool is_zero() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Throws std::domain_error for zero.
    Scalar inverse() const;
    Scalar pow(std::uint64_t e) const;

    bool operator==(const Scalar& o) const;

    // Little-endian bytes as consumed by blst scalar multiplication.
    blst_scalar to_blst() const;

  private:
    blst_fr fr_;
};

class G1 {
  public:
    G1();  // identity

    static G1 identity() { return G1{}; }
    static const G1& generator();

    static G1 from_bytes(ByteView bytes);
    std::array<std::uint8_t, kG1Bytes> to_bytes() const;

    bool is_identity() const;

    G1 operator*(const G1& o) const;
    G1& operator*=(const G1& o) { return *this = *this * o; }
    G1 inverse() const;
    G1 pow(const Scalar& e) const;

    bool operator==(const G1& o) const;

    blst_p1_affine to_affine() const;
    const blst_p1& raw() const { return p_; }
    static G1 from_raw(const blst_p1& p);

  private:
    blst_p1 p_;
};

class G2 {
  public:
    G2();  // identity

    static G2 identity() { return G2{}; }
    static const G2& generator();

    static G2 from_bytes(ByteView bytes);
    std::array<std::uint8_t, kG2Bytes> to_bytes() const;

    bool is_identity() const;

    G2 operator*(const G2& o) const;
    G2& operator*=(const G2& o) { return *this = *this * o; }
    G2 inverse() const;
    G2 pow(const Scalar& e) const;

    bool operator==(const G2& o) const;

    blst_p2_affine to_affine() const;

  private:
    blst_p2 p_;
};

class GT {
  public:
    GT();  // identity

    static GT identity() { return GT{}; }
    // e(g, ĝ), computed once.
    static const GT& generator();
    // e(g, ĝ)^e using a precomputed table; same value as generator().pow(e).
    static GT generator_pow(const Scalar& e);

    // Rejects encodings that are not in the order-p subgroup.
    static GT from_bytes(ByteView bytes);
    std::array<std::uint8_t, kGTBytes> to_bytes() const;

    bool is_identity() const;

    GT operator*(const GT& o) const;
    GT& operator*=(const GT& o) { return *this = *this * o; }
    GT operator/(const GT& o) const { return *this * o.inverse(); }
    GT inverse() const;
    GT pow(const Scalar& e) const;

    bool operator==(const GT& o) const;

    static GT from_raw(const blst_fp12& f);
    const blst_fp12& raw() const { return f_; }

  private:
    blst_fp12 f_;
};

// e: G1 x G2 -> GT.
GT pair(const G1& a, const G2& b);

// Product of pairings sharing one final exponentiation. Counts as
// terms.size() pairings.
GT multi_pair(std::span<const std::pair<G1, G2>> terms);

// Deterministic hash H: GT -> G1 (hash-to-curve over the canonical encoding).
G1 hash_gt_to_g1(const GT& x);

inline constexpr std::string_view kDefaultScalarDomain = "MCFE-SI-V1-SCALAR";

// Deterministic hash onto Z_p. Distinct domains give independent maps.
Scalar hash_to_scalar(ByteView bytes, std::string_view domain = kDefaultScalarDomain);

std::array<std::uint8_t, 32> sha256(ByteView bytes);

// Number of pairings evaluated process-wide since the last reset. Exists so
// tests can account for the cost structure of decryption.
std::uint64_t pairing_count();
void reset_pairing_count();

}  // namespace mcfe::pairing
