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

// File-backed ciphertext store standing in for the cloud storage provider.
//
//   <root>/manifest.json          index of records, with SHA-256 of each payload
//   <root>/records/<k>-<hex>.bin  serialized ClientCiphertext for (k, label)
//   <root>/.lock                  advisory lock serializing manifest updates
//
// At most one record exists per (k, label); uploading again replaces it.
// Record files and the manifest are replaced by atomic rename, so readers
// never observe a partial write.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcfe/pairing.hpp"

namespace mcfe::harness {

using pairing::Bytes;

struct StoreRecord {
    std::size_t k = 0;
    std::string label;
    std::vector<std::string> attributes;
    Bytes payload;
    std::int64_t uploaded_at_ms = 0;  // Unix epoch; set by upload()
};

class StoreError : public std::runtime_error {
  public:
    enum class Kind { kMissing, kCorrupt };

    StoreError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

class CiphertextStore {
  public:
    // Creates the directory layout if absent.
    explicit CiphertextStore(std::filesystem::path root);

    // Validates the payload as a client ciphertext whose index and attribute
    // labels agree with the record; throws std::invalid_argument otherwise.
    // Returns the stored record with its timestamp filled in.
    StoreRecord upload(StoreRecord record);

    // Throws StoreError(kMissing) for unknown keys and StoreError(kCorrupt)
    // when the payload no longer matches its recorded digest.
    StoreRecord fetch(std::size_t k, const std::string& label) const;

    bool contains(std::size_t k, const std::string& label) const;
    std::size_t size() const;

    const std::filesystem::path& root() const { return root_; }

  private:
    std::filesystem::path root_;
    mutable std::mutex mutex_;
};

}  // namespace mcfe::harness
