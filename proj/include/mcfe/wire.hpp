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

// Binary record format shared by every key and ciphertext type.
//
//   offset  size  field
//   0       4     magic "MCFE"
//   4       2     format version (big endian), currently 1
//   6       1     record type
//   7       1     group identifier (1 = BLS12-381)
//   8       4     d, attribute dimension
//   12      4     N, client count
//   16      4     body length L
//   20      L     body
//   20+L    32    SHA-256 over bytes [0, 20+L)
//
// Integers are big endian. Group elements use their canonical fixed-length
// encodings (G1 48, G2 96, GT 576 bytes), scalars 32 bytes, strings a u32
// length followed by the raw bytes. docs/wire-format.md lists each body.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "mcfe/pairing.hpp"
#include "mcfe/scheme.hpp"

namespace mcfe::wire {

using pairing::ByteView;
using pairing::Bytes;

inline constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'C', 'F', 'E'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::uint8_t kGroupBls12381 = 1;
inline constexpr std::size_t kHeaderBytes = 20;
inline constexpr std::size_t kChecksumBytes = 32;

enum class RecordType : std::uint8_t {
    kPublicParams = 1,
    kMasterSecret = 2,
    kClientKey = 3,
    kDecryptionKey = 4,
    kClientCiphertext = 5,
};

const char* to_string(RecordType t);

class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RecordHeader {
    RecordType type;
    std::uint16_t version = kVersion;
    std::uint8_t group = kGroupBls12381;
    std::uint32_t d = 0;
    std::uint32_t n = 0;
};

// Checks framing and checksum without decoding the body.
RecordHeader inspect(ByteView record);

Bytes encode(const scheme::PublicParams& pp);
Bytes encode(const scheme::MasterSecret& msk);
Bytes encode(const scheme::ClientKey& csk, const scheme::PublicParams& pp);
Bytes encode(const scheme::DecryptionKey& sk, const scheme::PublicParams& pp);
Bytes encode(const scheme::ClientCiphertext& ct, const scheme::PublicParams& pp);

scheme::PublicParams decode_public_params(ByteView record);
scheme::MasterSecret decode_master_secret(ByteView record);
scheme::ClientKey decode_client_key(ByteView record);
scheme::DecryptionKey decode_decryption_key(ByteView record);
scheme::ClientCiphertext decode_client_ciphertext(ByteView record);

}  // namespace mcfe::wire
