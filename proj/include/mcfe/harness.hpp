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

// End-to-end simulation of one deployment: trusted authority, N clients,
// ciphertext store and aggregator, all sharing a directory.
//
//   public/pp.bin                 public parameters
//   ta/msk.bin                    master secret
//   clients/<k>/csk.bin           client k's encryption key
//   clients/<k>/<label>.ct        client k's ciphertext for a label
//   aggregator/sk-<w>-<v>.bin     decryption key for the pair (w, v)
//   store/                        CiphertextStore
//
// Every randomized step draws from its own stream of the deployment seed,
// so rerunning a step with the same seed reproduces its output bytes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mcfe/scheme.hpp"

namespace mcfe::harness {

class Deployment {
  public:
    explicit Deployment(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path public_params() const { return root_ / "public" / "pp.bin"; }
    std::filesystem::path master_secret() const { return root_ / "ta" / "msk.bin"; }
    std::filesystem::path client_key(std::size_t k) const;
    std::filesystem::path ciphertext(std::size_t k, const std::string& label) const;
    std::filesystem::path decryption_key(scheme::IndexFunction f) const;
    std::filesystem::path store() const { return root_ / "store"; }

    scheme::PublicParams load_public_params() const;

    // Trusted authority: fresh parameters and keys for n clients.
    void setup(std::size_t d, std::size_t n, std::uint64_t seed) const;
    // Trusted authority: key for pair f under the policy text.
    void keygen(scheme::IndexFunction f, const std::string& policy, std::uint64_t seed) const;
    // Client k: encrypts its items under the attribute set and label.
    void encrypt(std::size_t k, const std::vector<std::string>& items, const std::vector<std::string>& attributes,
                 const std::string& label, std::uint64_t seed) const;
    // Client k: pushes its ciphertext for the label to the store.
    void upload(std::size_t k, const std::string& label) const;

  private:
    std::filesystem::path root_;
};

// Reads one item per line. Carriage returns are stripped and blank lines
// skipped; a repeated item is an error since client inputs are sets.
std::vector<std::string> read_item_file(const std::filesystem::path& path);

struct AlignmentRow {
    std::size_t eta_w = 0;  // 1-based line position among client w's items
    std::size_t eta_v = 0;
    std::string item;
};

struct AlignmentReport {
    enum class Status { kOk, kPolicyUnsatisfied, kAttributeSetMismatch };

    Status status = Status::kOk;
    scheme::IndexFunction pair;
    std::string label;
    std::vector<AlignmentRow> rows;  // sorted by (eta_w, eta_v)

    // Structured text: a header line per field, then one "match" line per row.
    std::string to_text() const;
};

const char* to_string(AlignmentReport::Status s);

// Aggregator: fetches both ciphertexts for the label from the store and
// decrypts them with the pair's key. Matched elements are named through
// the items the caller supplies; an element outside that dictionary is
// reported by its hex digest.
AlignmentReport align(const Deployment& dep, scheme::IndexFunction f, const std::string& label,
                      const std::vector<std::string>& dictionary);

struct AlignmentConfig {
    std::filesystem::path dir;
    std::size_t d = 0;
    std::vector<std::filesystem::path> clients;  // item file of client k at k - 1
    std::vector<std::string> attributes;
    std::string label;
    std::string policy;
    scheme::IndexFunction pair;
    std::uint64_t seed = 0;

    // Relative client paths are resolved against base.
    static AlignmentConfig from_json(const std::string& text, const std::filesystem::path& base = {});
};

// setup -> keygen -> encrypt every client -> upload -> align.
AlignmentReport run_alignment(const AlignmentConfig& config);

}  // namespace mcfe::harness
