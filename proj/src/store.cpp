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

#include "mcfe/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "mcfe/wire.hpp"

namespace mcfe::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string hex(pairing::ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xf]);
    }
    return out;
}

std::string record_key(std::size_t k, const std::string& label) { return std::to_string(k) + "/" + label; }

std::string record_file(std::size_t k, const std::string& label) {
    return std::to_string(k) + "-" + hex(pairing::as_bytes(label)) + ".bin";
}

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError(StoreError::Kind::kMissing, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Write to a unique sibling, fsync, then rename over the target.
void write_atomic(const fs::path& path, pairing::ByteView bytes) {
    static std::atomic<std::uint64_t> counter{0};
    const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) throw std::runtime_error("cannot create " + tmp.string());
    std::size_t done = 0;
    while (done < bytes.size()) {
        const auto n = ::write(fd, bytes.data() + done, bytes.size() - done);
        if (n < 0) {
            ::close(fd);
            fs::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
        done += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
    fs::rename(tmp, path);
}

// Exclusive advisory lock on <root>/.lock for the lifetime of the object.
class DirLock {
  public:
    explicit DirLock(const fs::path& root) {
        fd_ = ::open((root / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0) throw std::runtime_error("cannot open store lock in " + root.string());
        ::flock(fd_, LOCK_EX);
    }
    ~DirLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

  private:
    int fd_ = -1;
};

json load_manifest(const fs::path& root) {
    const fs::path path = root / "manifest.json";
    if (!fs::exists(path)) return json{{"version", 1}, {"records", json::object()}};
    const Bytes raw = read_file(path);
    try {
        return json::parse(raw.begin(), raw.end());
    } catch (const json::exception& e) {
        throw StoreError(StoreError::Kind::kCorrupt, std::string("manifest unreadable: ") + e.what());
    }
}

void save_manifest(const fs::path& root, const json& manifest) {
    const std::string text = manifest.dump(2) + "\n";
    write_atomic(root / "manifest.json", pairing::as_bytes(text));
}

}  // namespace

CiphertextStore::CiphertextStore(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_ / "records");
}

StoreRecord CiphertextStore::upload(StoreRecord record) {
    if (record.label.empty()) throw std::invalid_argument("store upload: empty label");
    scheme::ClientCiphertext ct;
    try {
        ct = wire::decode_client_ciphertext(record.payload);
    } catch (const wire::FormatError& e) {
        throw std::invalid_argument(std::string("store upload: invalid ciphertext: ") + e.what());
    }
    if (ct.k != record.k) throw std::invalid_argument("store upload: payload belongs to another client");
    if (ct.attributes != record.attributes)
        throw std::invalid_argument("store upload: attribute labels disagree with payload");

    record.uploaded_at_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::system_clock::now().time_since_epoch())
                                .count();
    const std::string file = record_file(record.k, record.label);

    std::lock_guard guard(mutex_);
    DirLock lock(root_);
    write_atomic(root_ / "records" / file, record.payload);
    json manifest = load_manifest(root_);
    manifest["records"][record_key(record.k, record.label)] = {
        {"k", record.k},
        {"label", record.label},
        {"attributes", record.attributes},
        {"file", file},
        {"sha256", hex(pairing::sha256(record.payload))},
        {"size", record.payload.size()},
        {"uploaded_at_ms", record.uploaded_at_ms},
    };
    save_manifest(root_, manifest);
    return record;
}

StoreRecord CiphertextStore::fetch(std::size_t k, const std::string& label) const {
    json entry;
    {
        std::lock_guard guard(mutex_);
        DirLock lock(root_);
        const json manifest = load_manifest(root_);
        const auto& records = manifest.at("records");
        const auto it = records.find(record_key(k, label));
        if (it == records.end())
            throw StoreError(StoreError::Kind::kMissing,
                             "no record for client " + std::to_string(k) + " label '" + label + "'");
        entry = *it;
    }
    StoreRecord out;
    try {
        out.k = entry.at("k").get<std::size_t>();
        out.label = entry.at("label").get<std::string>();
        out.attributes = entry.at("attributes").get<std::vector<std::string>>();
        out.uploaded_at_ms = entry.at("uploaded_at_ms").get<std::int64_t>();
        const fs::path path = root_ / "records" / entry.at("file").get<std::string>();
        if (!fs::exists(path))
            throw StoreError(StoreError::Kind::kMissing, "record file missing: " + path.string());
        out.payload = read_file(path);
        if (hex(pairing::sha256(out.payload)) != entry.at("sha256").get<std::string>())
            throw StoreError(StoreError::Kind::kCorrupt, "checksum mismatch for " + path.string());
    } catch (const json::exception& e) {
        throw StoreError(StoreError::Kind::kCorrupt, std::string("manifest entry malformed: ") + e.what());
    }
    return out;
}

bool CiphertextStore::contains(std::size_t k, const std::string& label) const {
    std::lock_guard guard(mutex_);
    DirLock lock(root_);
    return load_manifest(root_).at("records").contains(record_key(k, label));
}

std::size_t CiphertextStore::size() const {
    std::lock_guard guard(mutex_);
    DirLock lock(root_);
    return load_manifest(root_).at("records").size();
}

}  // namespace mcfe::harness
