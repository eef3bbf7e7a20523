// Copyright 2026 The Poplar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POPLAR_INTERNAL_AES_H_
#define POPLAR_INTERNAL_AES_H_

#include <array>
#include <cstddef>
#include <cstdint>

namespace poplar::internal {

// AES-128 block encryption with an expanded key. Uses AES-NI when the CPU
// supports it and falls back to OpenSSL otherwise; both paths are checked
// against the FIPS-197 vector in the tests.
class Aes128 {
 public:
  explicit Aes128(const std::array<uint8_t, 16>& key);

  // Encrypts num_blocks consecutive 16-byte blocks; in and out may alias.
  void EncryptBlocks(const uint8_t* in, uint8_t* out, size_t num_blocks) const;

  // The public fixed-key instance (all-zero key) behind the tree PRG.
  static const Aes128& FixedKey();

  // True when EncryptBlocks runs on AES-NI.
  static bool HardwareAccelerated();

  // Forces the OpenSSL path (tests only).
  static void ForceSoftwareForTesting(bool force);

 private:
  std::array<uint8_t, 16> key_;
  alignas(16) std::array<uint8_t, 176> round_keys_;
};

}  // namespace poplar::internal

#endif  // POPLAR_INTERNAL_AES_H_
