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

#include "mcfe/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mcfe/codec.hpp"
#include "mcfe/policy.hpp"
#include "mcfe/random.hpp"
#include "mcfe/store.hpp"
#include "mcfe/wire.hpp"

namespace mcfe::harness {

namespace fs = std::filesystem;

namespace {

pairing::Bytes read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, pairing::ByteView bytes) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("short write to " + path.string());
    }
    fs::rename(tmp, path);
}

// Labels become file names; keep them to a conservative alphabet.
void check_label(const std::string& label) {
    if (label.empty()) throw std::invalid_argument("label must not be empty");
    for (char c : label) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        if (!ok) throw std::invalid_argument("label '" + label + "' may only use [A-Za-z0-9._-]");
    }
    if (label == "." || label == "..") throw std::invalid_argument("label must not be '.' or '..'");
}

std::string stream_name(const std::string& verb, std::size_t a, std::size_t b) {
    return verb + "/" + std::to_string(a) + "/" + std::to_string(b);
}

}  // namespace

fs::path Deployment::client_key(std::size_t k) const {
    return root_ / "clients" / std::to_string(k) / "csk.bin";
}

fs::path Deployment::ciphertext(std::size_t k, const std::string& label) const {
    check_label(label);
    return root_ / "clients" / std::to_string(k) / (label + ".ct");
}

fs::path Deployment::decryption_key(scheme::IndexFunction f) const {
    return root_ / "aggregator" / ("sk-" + std::to_string(f.w) + "-" + std::to_string(f.v) + ".bin");
}

scheme::PublicParams Deployment::load_public_params() const {
    return wire::decode_public_params(read_bytes(public_params()));
}

void Deployment::setup(std::size_t d, std::size_t n, std::uint64_t seed) const {
    auto rng = Drbg::from_seed(seed, "setup");
    const auto out = scheme::setup(d, n, rng);
    write_bytes(public_params(), wire::encode(out.pp));
    write_bytes(master_secret(), wire::encode(out.msk));
    for (const auto& csk : out.client_keys) write_bytes(client_key(csk.k), wire::encode(csk, out.pp));
}

void Deployment::keygen(scheme::IndexFunction f, const std::string& policy, std::uint64_t seed) const {
    const auto pp = load_public_params();
    const auto msk = wire::decode_master_secret(read_bytes(master_secret()));
    const auto tree = policy::parse_policy(policy);
    auto rng = Drbg::from_seed(seed, stream_name("keygen", f.w, f.v));
    const auto sk = scheme::keygen(msk, pp, f, tree, rng);
    write_bytes(decryption_key(f), wire::encode(sk, pp));
}

void Deployment::encrypt(std::size_t k, const std::vector<std::string>& items,
                         const std::vector<std::string>& attributes, const std::string& label,
                         std::uint64_t seed) const {
    const fs::path out = ciphertext(k, label);
    const auto pp = load_public_params();
    const auto csk = wire::decode_client_key(read_bytes(client_key(k)));
    std::vector<pairing::GT> encoded;
    encoded.reserve(items.size());
    for (const auto& item : items) encoded.push_back(encode_item(item));
    auto rng = Drbg::from_seed(seed, "encrypt/" + std::to_string(k) + "/" + label);
    const auto ct = scheme::encrypt(pp, attributes, make_tag(label), encoded, csk, rng);
    write_bytes(out, wire::encode(ct, pp));
}

void Deployment::upload(std::size_t k, const std::string& label) const {
    StoreRecord record;
    record.k = k;
    record.label = label;
    record.payload = read_bytes(ciphertext(k, label));
    record.attributes = wire::decode_client_ciphertext(record.payload).attributes;
    CiphertextStore(store()).upload(std::move(record));
}

std::vector<std::string> read_item_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read item file " + path.string());
    std::vector<std::string> items;
    std::set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!seen.insert(line).second)
            throw std::invalid_argument("item file " + path.string() + " repeats item '" + line + "'");
        items.push_back(line);
    }
    return items;
}

const char* to_string(AlignmentReport::Status s) {
    switch (s) {
        case AlignmentReport::Status::kOk: return "ok";
        case AlignmentReport::Status::kPolicyUnsatisfied: return "policy-unsatisfied";
        case AlignmentReport::Status::kAttributeSetMismatch: return "attribute-set-mismatch";
    }
    return "unknown";
}

std::string AlignmentReport::to_text() const {
    std::ostringstream out;
    out << "status " << to_string(status) << "\n";
    out << "pair " << pair.w << "," << pair.v << "\n";
    out << "label " << label << "\n";
    out << "matches " << rows.size() << "\n";
    for (const auto& r : rows) out << "match " << r.eta_w << " " << r.eta_v << " " << r.item << "\n";
    return out.str();
}

AlignmentReport align(const Deployment& dep, scheme::IndexFunction f, const std::string& label,
                      const std::vector<std::string>& dictionary) {
    const auto pp = dep.load_public_params();
    const auto sk = wire::decode_decryption_key(read_bytes(dep.decryption_key(f)));
    const CiphertextStore store(dep.store());
    const auto ct_w = wire::decode_client_ciphertext(store.fetch(f.w, label).payload);
    const auto ct_v = wire::decode_client_ciphertext(store.fetch(f.v, label).payload);

    AlignmentReport report;
    report.pair = f;
    report.label = label;
    const auto result = scheme::decrypt(pp, ct_w, ct_v, sk);
    if (result.rejected()) {
        report.status = *result.rejection == scheme::Rejection::kPolicyUnsatisfied
                            ? AlignmentReport::Status::kPolicyUnsatisfied
                            : AlignmentReport::Status::kAttributeSetMismatch;
        return report;
    }
    ItemCodec codec;
    for (const auto& item : dictionary) codec.encode(item);
    for (const auto& m : result.matches) {
        auto name = codec.decode(m.item);
        if (!name) {
            static constexpr char kDigits[] = "0123456789abcdef";
            const auto digest = pairing::sha256(m.item.to_bytes());
            name = "unknown:";
            for (std::size_t i = 0; i < 8; ++i) {
                name->push_back(kDigits[digest[i] >> 4]);
                name->push_back(kDigits[digest[i] & 0xf]);
            }
        }
        report.rows.push_back({m.index_w + 1, m.index_v + 1, std::move(*name)});
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const AlignmentRow& a, const AlignmentRow& b) {
        return std::tie(a.eta_w, a.eta_v) < std::tie(b.eta_w, b.eta_v);
    });
    return report;
}

AlignmentConfig AlignmentConfig::from_json(const std::string& text, const fs::path& base) {
    using nlohmann::json;
    AlignmentConfig c;
    try {
        const json j = json::parse(text);
        c.dir = j.at("dir").get<std::string>();
        if (c.dir.is_relative() && !base.empty()) c.dir = base / c.dir;
        c.d = j.at("d").get<std::size_t>();
        for (const auto& p : j.at("clients")) {
            fs::path path = p.get<std::string>();
            if (path.is_relative() && !base.empty()) path = base / path;
            c.clients.push_back(std::move(path));
        }
        c.attributes = j.at("attributes").get<std::vector<std::string>>();
        c.label = j.at("label").get<std::string>();
        c.policy = j.at("policy").get<std::string>();
        const auto pair = j.at("pair").get<std::vector<std::size_t>>();
        if (pair.size() != 2) throw std::invalid_argument("config: pair must have two entries");
        c.pair = {pair[0], pair[1]};
        c.seed = j.value("seed", std::uint64_t{0});
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return c;
}

AlignmentReport run_alignment(const AlignmentConfig& config) {
    const Deployment dep(config.dir);
    const std::size_t n = config.clients.size();
    if (config.pair.w < 1 || config.pair.w >= config.pair.v || config.pair.v > n)
        throw std::invalid_argument("config: pair must satisfy 1 <= w < v <= number of clients");
    std::vector<std::vector<std::string>> items;
    for (const auto& path : config.clients) items.push_back(read_item_file(path));

    dep.setup(config.d, n, config.seed);
    dep.keygen(config.pair, config.policy, config.seed);
    for (std::size_t k = 1; k <= n; ++k) {
        dep.encrypt(k, items[k - 1], config.attributes, config.label, config.seed);
        dep.upload(k, config.label);
    }
    return align(dep, config.pair, config.label, items[config.pair.w - 1]);
}

}  // namespace mcfe::harness
