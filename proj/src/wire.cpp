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

#include "mcfe/wire.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mcfe::wire {

namespace {

using pairing::G1;
using pairing::G2;
using pairing::GT;
using pairing::Scalar;

// Sanity bound on any length field; keeps corrupt input from driving huge
// allocations.
constexpr std::uint32_t kMaxCount = 1u << 20;

class Writer {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) {
        u8(static_cast<std::uint8_t>(v >> 8));
        u8(static_cast<std::uint8_t>(v));
    }
    void u32(std::uint64_t v) {
        if (v > std::numeric_limits<std::uint32_t>::max()) throw FormatError("value does not fit in u32");
        for (int shift = 24; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
    }
    template <std::size_t N>
    void raw(const std::array<std::uint8_t, N>& bytes) {
        out_.insert(out_.end(), bytes.begin(), bytes.end());
    }
    void raw(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
    void str(const std::string& s) {
        u32(s.size());
        raw(pairing::as_bytes(s));
    }
    void scalar(const Scalar& s) { raw(s.to_bytes()); }
    void g1(const G1& p) { raw(p.to_bytes()); }
    void g2(const G2& p) { raw(p.to_bytes()); }
    void gt(const GT& x) { raw(x.to_bytes()); }

    Bytes& bytes() { return out_; }

  private:
    Bytes out_;
};

class Reader {
  public:
    explicit Reader(ByteView in) : in_(in) {}

    ByteView take(std::size_t n) {
        if (in_.size() - pos_ < n) throw FormatError("record truncated");
        ByteView v = in_.subspan(pos_, n);
        pos_ += n;
        return v;
    }
    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        const auto b = take(2);
        return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
    }
    std::uint32_t u32() {
        const auto b = take(4);
        return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
    }
    std::uint32_t count() {
        const auto n = u32();
        if (n > kMaxCount) throw FormatError("length field out of range");
        return n;
    }
    bool flag() {
        const auto v = u8();
        if (v > 1) throw FormatError("boolean flag out of range");
        return v == 1;
    }
    std::string str() {
        const auto b = take(count());
        return {b.begin(), b.end()};
    }
    Scalar scalar() { return Scalar::from_bytes(take(pairing::kScalarBytes)); }
    G1 g1() { return G1::from_bytes(take(pairing::kG1Bytes)); }
    G2 g2() { return G2::from_bytes(take(pairing::kG2Bytes)); }
    GT gt() { return GT::from_bytes(take(pairing::kGTBytes)); }

    void expect_end() const {
        if (pos_ != in_.size()) throw FormatError("trailing bytes in record body");
    }

  private:
    ByteView in_;
    std::size_t pos_ = 0;
};

Bytes frame(RecordType type, std::size_t d, std::size_t n, Bytes body) {
    Writer w;
    w.raw(kMagic);
    w.u16(kVersion);
    w.u8(static_cast<std::uint8_t>(type));
    w.u8(kGroupBls12381);
    w.u32(d);
    w.u32(n);
    w.u32(body.size());
    w.raw(body);
    const auto digest = pairing::sha256(w.bytes());
    w.raw(digest);
    return std::move(w.bytes());
}

// Returns the header and the verified body.
std::pair<RecordHeader, ByteView> unframe(ByteView record, RecordType expected) {
    const RecordHeader h = inspect(record);
    if (h.type != expected) {
        throw FormatError(std::string("expected ") + to_string(expected) + " record, found " + to_string(h.type));
    }
    const std::size_t body_len = record.size() - kHeaderBytes - kChecksumBytes;
    return {h, record.subspan(kHeaderBytes, body_len)};
}

template <typename Fn>
auto decode_body(ByteView body, Fn&& fn) {
    try {
        Reader r(body);
        auto value = fn(r);
        r.expect_end();
        return value;
    } catch (const pairing::DecodeError& e) {
        throw FormatError(std::string("invalid element: ") + e.what());
    }
}

std::size_t checked_index(std::uint32_t k, std::uint32_t n, const char* what) {
    if (k < 1 || k > n) throw FormatError(std::string(what) + " out of range");
    return k;
}

}  // namespace

const char* to_string(RecordType t) {
    switch (t) {
        case RecordType::kPublicParams: return "public-params";
        case RecordType::kMasterSecret: return "master-secret";
        case RecordType::kClientKey: return "client-key";
        case RecordType::kDecryptionKey: return "decryption-key";
        case RecordType::kClientCiphertext: return "client-ciphertext";
    }
    return "unknown";
}

RecordHeader inspect(ByteView record) {
    if (record.size() < kHeaderBytes + kChecksumBytes) throw FormatError("record too short");
    Reader r(record);
    const auto magic = r.take(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw FormatError("bad magic");
    RecordHeader h;
    h.version = r.u16();
    if (h.version != kVersion) throw FormatError("unsupported format version " + std::to_string(h.version));
    const auto type = r.u8();
    if (type < 1 || type > 5) throw FormatError("unknown record type " + std::to_string(type));
    h.type = static_cast<RecordType>(type);
    h.group = r.u8();
    if (h.group != kGroupBls12381) throw FormatError("unknown group identifier " + std::to_string(h.group));
    h.d = r.u32();
    h.n = r.u32();
    const auto body_len = r.u32();
    if (record.size() != kHeaderBytes + std::size_t{body_len} + kChecksumBytes)
        throw FormatError("record length does not match header");
    const auto digest = pairing::sha256(record.first(kHeaderBytes + body_len));
    const auto stored = record.last(kChecksumBytes);
    if (!std::equal(digest.begin(), digest.end(), stored.begin())) throw FormatError("checksum mismatch");
    return h;
}

// ---------------------------------------------------------------------------
// Encoders

Bytes encode(const scheme::PublicParams& pp) {
    Writer w;
    w.gt(pp.egg_alpha);
    for (const auto& h : pp.h) w.g1(h);
    for (const auto& u : pp.u) w.g1(u);
    w.g2(pp.g2_r);
    w.g1(pp.u0_r);
    w.g1(pp.h1_r);
    return frame(RecordType::kPublicParams, pp.d, pp.n, std::move(w.bytes()));
}

Bytes encode(const scheme::MasterSecret& msk) {
    Writer w;
    w.scalar(msk.alpha_tilde);
    w.scalar(msk.r);
    for (const auto& a : msk.alpha) w.scalar(a);
    for (const auto& b : msk.beta) w.scalar(b);
    for (const auto& c : msk.clients) {
        w.u32(c.k);
        w.scalar(c.a);
        w.scalar(c.b);
    }
    return frame(RecordType::kMasterSecret, msk.alpha.size(), msk.clients.size(), std::move(w.bytes()));
}

Bytes encode(const scheme::ClientKey& csk, const scheme::PublicParams& pp) {
    Writer w;
    w.u32(csk.k);
    w.scalar(csk.a);
    w.scalar(csk.b);
    return frame(RecordType::kClientKey, pp.d, pp.n, std::move(w.bytes()));
}

Bytes encode(const scheme::DecryptionKey& sk, const scheme::PublicParams& pp) {
    Writer w;
    w.u32(sk.f.w);
    w.u32(sk.f.v);
    w.g2(sk.sk_f1);
    w.g2(sk.sk_f2);
    w.g2(sk.sk_f3);
    const auto& m = sk.policy;
    w.u32(m.row_count());
    w.u32(m.cols);
    for (const auto& row : m.rows) {
        for (const auto& x : row) w.scalar(x);
    }
    for (const auto& lit : m.rho) {
        w.u8(lit.negated ? 1 : 0);
        w.str(lit.attribute.label);
    }
    for (const auto& rk : sk.rows) {
        w.u8(rk.negated ? 1 : 0);
        w.g1(rk.sk1);
        w.g2(rk.sk2);
        for (const auto& k : rk.k) w.g1(k);
    }
    return frame(RecordType::kDecryptionKey, pp.d, pp.n, std::move(w.bytes()));
}

Bytes encode(const scheme::ClientCiphertext& ct, const scheme::PublicParams& pp) {
    Writer w;
    w.u32(ct.k);
    w.u32(ct.attributes.size());
    for (const auto& a : ct.attributes) w.str(a);
    w.g2(ct.ct1);
    w.g1(ct.ct2);
    w.g1(ct.ct3);
    w.u32(ct.items.size());
    for (const auto& it : ct.items) {
        w.gt(it.c0);
        w.g1(it.c1);
    }
    return frame(RecordType::kClientCiphertext, pp.d, pp.n, std::move(w.bytes()));
}

// ---------------------------------------------------------------------------
// Decoders

scheme::PublicParams decode_public_params(ByteView record) {
    const auto [h, body] = unframe(record, RecordType::kPublicParams);
    if (h.d < 2 || h.n < 2) throw FormatError("public parameters: invalid dimensions");
    return decode_body(body, [&](Reader& r) {
        scheme::PublicParams pp;
        pp.d = h.d;
        pp.n = h.n;
        pp.egg_alpha = r.gt();
        for (std::size_t i = 0; i < pp.d; ++i) pp.h.push_back(r.g1());
        for (std::size_t j = 0; j <= pp.d; ++j) pp.u.push_back(r.g1());
        pp.g2_r = r.g2();
        pp.u0_r = r.g1();
        pp.h1_r = r.g1();
        return pp;
    });
}

scheme::MasterSecret decode_master_secret(ByteView record) {
    const auto [h, body] = unframe(record, RecordType::kMasterSecret);
    return decode_body(body, [&](Reader& r) {
        scheme::MasterSecret msk;
        msk.alpha_tilde = r.scalar();
        msk.r = r.scalar();
        for (std::size_t i = 0; i < h.d; ++i) msk.alpha.push_back(r.scalar());
        for (std::size_t j = 0; j <= h.d; ++j) msk.beta.push_back(r.scalar());
        for (std::size_t k = 1; k <= h.n; ++k) {
            scheme::ClientKey c;
            c.k = r.u32();
            if (c.k != k) throw FormatError("master secret: client keys out of order");
            c.a = r.scalar();
            c.b = r.scalar();
            msk.clients.push_back(c);
        }
        return msk;
    });
}

scheme::ClientKey decode_client_key(ByteView record) {
    const auto [h, body] = unframe(record, RecordType::kClientKey);
    return decode_body(body, [&](Reader& r) {
        scheme::ClientKey c;
        c.k = checked_index(r.u32(), h.n, "client index");
        c.a = r.scalar();
        c.b = r.scalar();
        return c;
    });
}

scheme::DecryptionKey decode_decryption_key(ByteView record) {
    const auto [h, body] = unframe(record, RecordType::kDecryptionKey);
    if (h.d < 2) throw FormatError("decryption key: invalid dimension");
    return decode_body(body, [&](Reader& r) {
        scheme::DecryptionKey sk;
        sk.f.w = checked_index(r.u32(), h.n, "client w");
        sk.f.v = checked_index(r.u32(), h.n, "client v");
        if (sk.f.w >= sk.f.v) throw FormatError("decryption key: requires w < v");
        sk.sk_f1 = r.g2();
        sk.sk_f2 = r.g2();
        sk.sk_f3 = r.g2();
        const auto rows = r.count();
        const auto cols = r.count();
        if (rows == 0 || cols == 0) throw FormatError("decryption key: invalid matrix shape");
        auto& m = sk.policy;
        m.cols = cols;
        m.rows.assign(rows, {});
        for (auto& row : m.rows) {
            for (std::size_t c = 0; c < cols; ++c) row.push_back(r.scalar());
        }
        for (std::size_t i = 0; i < rows; ++i) {
            const bool negated = r.flag();
            auto label = r.str();
            if (label.empty()) throw FormatError("decryption key: empty attribute label");
            m.rho.push_back({policy::Attribute::from_label(std::move(label)), negated});
        }
        for (std::size_t i = 0; i < rows; ++i) {
            scheme::PolicyRowKey rk;
            rk.negated = r.flag();
            if (rk.negated != m.rho[i].negated) throw FormatError("decryption key: row kind disagrees with policy");
            rk.sk1 = r.g1();
            rk.sk2 = r.g2();
            for (std::size_t j = 1; j < h.d; ++j) rk.k.push_back(r.g1());
            sk.rows.push_back(std::move(rk));
        }
        return sk;
    });
}

scheme::ClientCiphertext decode_client_ciphertext(ByteView record) {
    const auto [h, body] = unframe(record, RecordType::kClientCiphertext);
    return decode_body(body, [&](Reader& r) {
        scheme::ClientCiphertext ct;
        ct.k = checked_index(r.u32(), h.n, "client index");
        const auto attrs = r.count();
        if (h.d != 0 && attrs >= h.d) throw FormatError("ciphertext: attribute set exceeds dimension");
        for (std::size_t i = 0; i < attrs; ++i) ct.attributes.push_back(r.str());
        ct.ct1 = r.g2();
        ct.ct2 = r.g1();
        ct.ct3 = r.g1();
        const auto items = r.count();
        if (items == 0) throw FormatError("ciphertext: no items");
        for (std::size_t i = 0; i < items; ++i) {
            scheme::ItemCiphertext it;
            it.c0 = r.gt();
            it.c1 = r.g1();
            ct.items.push_back(it);
        }
        return ct;
    });
}

}  // namespace mcfe::wire
