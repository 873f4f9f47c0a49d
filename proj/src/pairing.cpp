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

#include "mcfe/pairing.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>

#include <blst_aux.h>

namespace mcfe::pairing {

namespace {

std::atomic<std::uint64_t> g_pairings{0};

constexpr std::string_view kHashToG1Dst = "MCFE-SI-V1-GT-TO-G1_XMD:SHA-256_SSWU_RO_";

// Scalars are below p < 2^255.
constexpr std::size_t kScalarBits = 255;

}  // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() { std::memset(&fr_, 0, sizeof(fr_)); }

Scalar Scalar::one() { return from_u64(1); }

Scalar Scalar::from_u64(std::uint64_t v) {
    const std::uint64_t limbs[4] = {v, 0, 0, 0};
    Scalar s;
    blst_fr_from_uint64(&s.fr_, limbs);
    return s;
}

Scalar Scalar::from_i64(std::int64_t v) {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    // Two's complement negation stays well-defined for INT64_MIN.
    return -from_u64(~static_cast<std::uint64_t>(v) + 1);
}

Scalar Scalar::from_bytes(ByteView bytes) {
    if (bytes.size() != kScalarBytes) throw DecodeError("scalar: expected 32 bytes");
    blst_scalar raw;
    blst_scalar_from_bendian(&raw, bytes.data());
    if (!blst_scalar_fr_check(&raw)) throw DecodeError("scalar: value not below group order");
    Scalar s;
    blst_fr_from_scalar(&s.fr_, &raw);
    return s;
}

Scalar Scalar::reduce(ByteView big_endian) {
    blst_scalar raw;
    blst_scalar_from_be_bytes(&raw, big_endian.data(), big_endian.size());
    Scalar s;
    blst_fr_from_scalar(&s.fr_, &raw);
    return s;
}

std::array<std::uint8_t, kScalarBytes> Scalar::to_bytes() const {
    blst_scalar raw;
    blst_scalar_from_fr(&raw, &fr_);
    std::array<std::uint8_t, kScalarBytes> out{};
    blst_bendian_from_scalar(out.data(), &raw);
    return out;
}

std::string Scalar::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (auto b : to_bytes()) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xf]);
    }
    return out;
}

bool Scalar::is_zero() const {
    static const blst_fr kZero{};
    return std::memcmp(&fr_, &kZero, sizeof(fr_)) == 0;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r;
    blst_fr_add(&r.fr_, &fr_, &o.fr_);
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r;
    blst_fr_sub(&r.fr_, &fr_, &o.fr_);
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    blst_fr_mul(&r.fr_, &fr_, &o.fr_);
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r;
    blst_fr_cneg(&r.fr_, &fr_, true);
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("scalar: inverse of zero");
    Scalar r;
    blst_fr_inverse(&r.fr_, &fr_);
    return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
    Scalar result = one();
    Scalar base = *this;
    while (e != 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

bool Scalar::operator==(const Scalar& o) const {
    // Montgomery form is canonical for fully reduced values.
    return std::memcmp(&fr_, &o.fr_, sizeof(fr_)) == 0;
}

blst_scalar Scalar::to_blst() const {
    blst_scalar raw;
    blst_scalar_from_fr(&raw, &fr_);
    return raw;
}

// ---------------------------------------------------------------------------
// G1

G1::G1() { std::memset(&p_, 0, sizeof(p_)); }

const G1& G1::generator() {
    static const G1 g = from_raw(*blst_p1_generator());
    return g;
}

G1 G1::from_raw(const blst_p1& p) {
    G1 r;
    r.p_ = p;
    return r;
}

G1 G1::from_bytes(ByteView bytes) {
    if (bytes.size() != kG1Bytes) throw DecodeError("G1: expected 48 bytes");
    blst_p1_affine a;
    if (blst_p1_uncompress(&a, bytes.data()) != BLST_SUCCESS)
        throw DecodeError("G1: invalid point encoding");
    if (!blst_p1_affine_in_g1(&a)) throw DecodeError("G1: point not in prime-order subgroup");
    G1 r;
    blst_p1_from_affine(&r.p_, &a);
    return r;
}

std::array<std::uint8_t, kG1Bytes> G1::to_bytes() const {
    std::array<std::uint8_t, kG1Bytes> out{};
    blst_p1_compress(out.data(), &p_);
    return out;
}

bool G1::is_identity() const { return blst_p1_is_inf(&p_); }

G1 G1::operator*(const G1& o) const {
    G1 r;
    blst_p1_add_or_double(&r.p_, &p_, &o.p_);
    return r;
}

G1 G1::inverse() const {
    G1 r = *this;
    blst_p1_cneg(&r.p_, true);
    return r;
}

G1 G1::pow(const Scalar& e) const {
    const blst_scalar s = e.to_blst();
    G1 r;
    blst_p1_mult(&r.p_, &p_, s.b, kScalarBits);
    return r;
}

bool G1::operator==(const G1& o) const { return blst_p1_is_equal(&p_, &o.p_); }

blst_p1_affine G1::to_affine() const {
    blst_p1_affine a;
    blst_p1_to_affine(&a, &p_);
    return a;
}

// ---------------------------------------------------------------------------
// G2

G2::G2() { std::memset(&p_, 0, sizeof(p_)); }

const G2& G2::generator() {
    static const G2 g = [] {
        G2 r;
        r.p_ = *blst_p2_generator();
        return r;
    }();
    return g;
}

G2 G2::from_bytes(ByteView bytes) {
    if (bytes.size() != kG2Bytes) throw DecodeError("G2: expected 96 bytes");
    blst_p2_affine a;
    if (blst_p2_uncompress(&a, bytes.data()) != BLST_SUCCESS)
        throw DecodeError("G2: invalid point encoding");
    if (!blst_p2_affine_in_g2(&a)) throw DecodeError("G2: point not in prime-order subgroup");
    G2 r;
    blst_p2_from_affine(&r.p_, &a);
    return r;
}

std::array<std::uint8_t, kG2Bytes> G2::to_bytes() const {
    std::array<std::uint8_t, kG2Bytes> out{};
    blst_p2_compress(out.data(), &p_);
    return out;
}

bool G2::is_identity() const { return blst_p2_is_inf(&p_); }

G2 G2::operator*(const G2& o) const {
    G2 r;
    blst_p2_add_or_double(&r.p_, &p_, &o.p_);
    return r;
}

G2 G2::inverse() const {
    G2 r = *this;
    blst_p2_cneg(&r.p_, true);
    return r;
}

G2 G2::pow(const Scalar& e) const {
    const blst_scalar s = e.to_blst();
    G2 r;
    blst_p2_mult(&r.p_, &p_, s.b, kScalarBits);
    return r;
}

bool G2::operator==(const G2& o) const { return blst_p2_is_equal(&p_, &o.p_); }

blst_p2_affine G2::to_affine() const {
    blst_p2_affine a;
    blst_p2_to_affine(&a, &p_);
    return a;
}

// ---------------------------------------------------------------------------
// GT

namespace {

// Fixed-base table for e(g, ĝ): entry [w][j] = e(g, ĝ)^(j * 16^w).
struct GeneratorTable {
    static constexpr std::size_t kWindows = (kScalarBits + 3) / 4;
    std::vector<std::array<GT, 16>> rows;

    GeneratorTable() : rows(kWindows) {
        GT base = GT::generator();
        for (auto& row : rows) {
            row[0] = GT::identity();
            for (std::size_t j = 1; j < 16; ++j) row[j] = row[j - 1] * base;
            base = row[15] * base;
        }
    }
};

unsigned nibble(const blst_scalar& s, std::size_t window) {
    const std::uint8_t byte = s.b[window / 2];
    return (window % 2 == 0) ? (byte & 0x0f) : (byte >> 4);
}

}  // namespace

GT::GT() { f_ = *blst_fp12_one(); }

GT GT::from_raw(const blst_fp12& f) {
    GT r;
    r.f_ = f;
    return r;
}

const GT& GT::generator() {
    static const GT g = pair(G1::generator(), G2::generator());
    return g;
}

GT GT::generator_pow(const Scalar& e) {
    static const GeneratorTable table;
    const blst_scalar s = e.to_blst();
    GT acc;
    for (std::size_t w = 0; w < GeneratorTable::kWindows; ++w) {
        const unsigned n = nibble(s, w);
        if (n != 0) acc *= table.rows[w][n];
    }
    return acc;
}

GT GT::from_bytes(ByteView bytes) {
    if (bytes.size() != kGTBytes) throw DecodeError("GT: expected 576 bytes");
    // Inverse of blst_bendian_from_fp12's traversal order.
    blst_fp12 f;
    const std::uint8_t* in = bytes.data();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[0], in);
            in += 48;
            blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[1], in);
            in += 48;
        }
    }
    GT r = from_raw(f);
    // Non-reduced field elements would round-trip to different bytes.
    const auto canonical = r.to_bytes();
    if (!std::equal(canonical.begin(), canonical.end(), bytes.begin()))
        throw DecodeError("GT: non-canonical encoding");
    if (!blst_fp12_in_group(&r.f_)) throw DecodeError("GT: element not in target group");
    return r;
}

std::array<std::uint8_t, kGTBytes> GT::to_bytes() const {
    std::array<std::uint8_t, kGTBytes> out{};
    blst_bendian_from_fp12(out.data(), &f_);
    return out;
}

bool GT::is_identity() const { return blst_fp12_is_one(&f_); }

GT GT::operator*(const GT& o) const {
    GT r;
    blst_fp12_mul(&r.f_, &f_, &o.f_);
    return r;
}

GT GT::inverse() const {
    // Unitary elements: the inverse is the conjugate.
    GT r = *this;
    blst_fp12_conjugate(&r.f_);
    return r;
}

GT GT::pow(const Scalar& e) const {
    std::array<blst_fp12, 16> table;
    table[0] = *blst_fp12_one();
    for (std::size_t j = 1; j < 16; ++j) blst_fp12_mul(&table[j], &table[j - 1], &f_);

    const blst_scalar s = e.to_blst();
    blst_fp12 acc = *blst_fp12_one();
    for (std::size_t w = (kScalarBits + 3) / 4; w-- > 0;) {
        for (int k = 0; k < 4; ++k) blst_fp12_cyclotomic_sqr(&acc, &acc);
        const unsigned n = nibble(s, w);
        if (n != 0) blst_fp12_mul(&acc, &acc, &table[n]);
    }
    return from_raw(acc);
}

bool GT::operator==(const GT& o) const { return blst_fp12_is_equal(&f_, &o.f_); }

// ---------------------------------------------------------------------------
// Pairing and hashing

GT pair(const G1& a, const G2& b) {
    g_pairings.fetch_add(1, std::memory_order_relaxed);
    if (a.is_identity() || b.is_identity()) return GT::identity();
    const blst_p1_affine pa = a.to_affine();
    const blst_p2_affine pb = b.to_affine();
    blst_fp12 f;
    blst_miller_loop(&f, &pb, &pa);
    blst_final_exp(&f, &f);
    return GT::from_raw(f);
}

GT multi_pair(std::span<const std::pair<G1, G2>> terms) {
    g_pairings.fetch_add(terms.size(), std::memory_order_relaxed);
    blst_fp12 acc = *blst_fp12_one();
    bool any = false;
    for (const auto& [a, b] : terms) {
        if (a.is_identity() || b.is_identity()) continue;
        const blst_p1_affine pa = a.to_affine();
        const blst_p2_affine pb = b.to_affine();
        blst_fp12 f;
        blst_miller_loop(&f, &pb, &pa);
        blst_fp12_mul(&acc, &acc, &f);
        any = true;
    }
    if (!any) return GT::identity();
    blst_final_exp(&acc, &acc);
    return GT::from_raw(acc);
}

G1 hash_gt_to_g1(const GT& x) {
    const auto encoded = x.to_bytes();
    blst_p1 out;
    blst_hash_to_g1(&out, encoded.data(), encoded.size(),
                    reinterpret_cast<const byte*>(kHashToG1Dst.data()), kHashToG1Dst.size(),
                    nullptr, 0);
    return G1::from_raw(out);
}

std::array<std::uint8_t, 32> sha256(ByteView bytes) {
    std::array<std::uint8_t, 32> out{};
    blst_sha256(out.data(), bytes.data(), bytes.size());
    return out;
}

Scalar hash_to_scalar(ByteView bytes, std::string_view domain) {
    // Two domain-separated SHA-256 blocks give 512 bits, reduced mod p with
    // negligible bias.
    std::array<std::uint8_t, 64> wide{};
    for (std::uint8_t block = 0; block < 2; ++block) {
        Bytes msg;
        msg.reserve(domain.size() + bytes.size() + 10);
        const auto dlen = static_cast<std::uint32_t>(domain.size());
        for (int shift = 24; shift >= 0; shift -= 8) msg.push_back(static_cast<std::uint8_t>(dlen >> shift));
        msg.insert(msg.end(), domain.begin(), domain.end());
        msg.push_back(block);
        msg.insert(msg.end(), bytes.begin(), bytes.end());
        const auto digest = sha256(msg);
        std::copy(digest.begin(), digest.end(), wide.begin() + 32 * block);
    }
    return Scalar::reduce(wide);
}

std::uint64_t pairing_count() { return g_pairings.load(std::memory_order_relaxed); }

void reset_pairing_count() { g_pairings.store(0, std::memory_order_relaxed); }

}  // namespace mcfe::pairing
