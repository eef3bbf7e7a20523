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

#include "poplar/internal/aes.h"

#include <openssl/evp.h>

#include <atomic>
#include <cstring>
#include <memory>
#include <stdexcept>

#if defined(POPLAR_AESNI)
#include <wmmintrin.h>
#endif

namespace poplar::internal {
namespace {

std::atomic<bool> force_software{false};

#if defined(POPLAR_AESNI)
bool CpuHasAesNi() {
  static const bool has = __builtin_cpu_supports("aes");
  return has;
}

__m128i ExpandStep(__m128i key, __m128i assist) {
  assist = _mm_shuffle_epi32(assist, _MM_SHUFFLE(3, 3, 3, 3));
  key = _mm_xor_si128(key, _mm_slli_si128(key, 4));
  key = _mm_xor_si128(key, _mm_slli_si128(key, 4));
  key = _mm_xor_si128(key, _mm_slli_si128(key, 4));
  return _mm_xor_si128(key, assist);
}

#define POPLAR_AES_EXPAND(k, rcon) ExpandStep(k, _mm_aeskeygenassist_si128(k, rcon))

void ExpandKeyNi(const uint8_t* key, uint8_t* round_keys) {
  __m128i rk[11];
  rk[0] = _mm_loadu_si128(reinterpret_cast<const __m128i*>(key));
  rk[1] = POPLAR_AES_EXPAND(rk[0], 0x01);
  rk[2] = POPLAR_AES_EXPAND(rk[1], 0x02);
  rk[3] = POPLAR_AES_EXPAND(rk[2], 0x04);
  rk[4] = POPLAR_AES_EXPAND(rk[3], 0x08);
  rk[5] = POPLAR_AES_EXPAND(rk[4], 0x10);
  rk[6] = POPLAR_AES_EXPAND(rk[5], 0x20);
  rk[7] = POPLAR_AES_EXPAND(rk[6], 0x40);
  rk[8] = POPLAR_AES_EXPAND(rk[7], 0x80);
  rk[9] = POPLAR_AES_EXPAND(rk[8], 0x1b);
  rk[10] = POPLAR_AES_EXPAND(rk[9], 0x36);
  for (int i = 0; i < 11; ++i) {
    _mm_storeu_si128(reinterpret_cast<__m128i*>(round_keys + 16 * i), rk[i]);
  }
}

#undef POPLAR_AES_EXPAND

void EncryptNi(const uint8_t* round_keys, const uint8_t* in, uint8_t* out,
               size_t num_blocks) {
  __m128i rk[11];
  for (int i = 0; i < 11; ++i) {
    rk[i] = _mm_load_si128(reinterpret_cast<const __m128i*>(round_keys + 16 * i));
  }
  size_t i = 0;
  for (; i + 4 <= num_blocks; i += 4) {
    __m128i b[4];
    for (int j = 0; j < 4; ++j) {
      b[j] = _mm_xor_si128(
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(in + 16 * (i + j))), rk[0]);
    }
    for (int r = 1; r < 10; ++r) {
      for (int j = 0; j < 4; ++j) b[j] = _mm_aesenc_si128(b[j], rk[r]);
    }
    for (int j = 0; j < 4; ++j) {
      b[j] = _mm_aesenclast_si128(b[j], rk[10]);
      _mm_storeu_si128(reinterpret_cast<__m128i*>(out + 16 * (i + j)), b[j]);
    }
  }
  for (; i < num_blocks; ++i) {
    __m128i b = _mm_xor_si128(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(in + 16 * i)), rk[0]);
    for (int r = 1; r < 10; ++r) b = _mm_aesenc_si128(b, rk[r]);
    b = _mm_aesenclast_si128(b, rk[10]);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out + 16 * i), b);
  }
}
#endif  // POPLAR_AESNI

bool UseHardware() {
#if defined(POPLAR_AESNI)
  return CpuHasAesNi() && !force_software.load(std::memory_order_relaxed);
#else
  return false;
#endif
}

void EncryptOpenSsl(const uint8_t* key, const uint8_t* in, uint8_t* out,
                    size_t num_blocks) {
  struct CtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
  };
  std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter> ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  if (!ctx ||
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr, key, nullptr) != 1 ||
      EVP_CIPHER_CTX_set_padding(ctx.get(), 0) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out, &len, in, static_cast<int>(16 * num_blocks)) != 1) {
    throw std::runtime_error("OpenSSL AES-128 encryption failed");
  }
}

}  // namespace

Aes128::Aes128(const std::array<uint8_t, 16>& key) : key_(key), round_keys_{} {
#if defined(POPLAR_AESNI)
  if (CpuHasAesNi()) ExpandKeyNi(key_.data(), round_keys_.data());
#endif
}

void Aes128::EncryptBlocks(const uint8_t* in, uint8_t* out, size_t num_blocks) const {
  if (num_blocks == 0) return;
#if defined(POPLAR_AESNI)
  if (UseHardware()) {
    EncryptNi(round_keys_.data(), in, out, num_blocks);
    return;
  }
#endif
  EncryptOpenSsl(key_.data(), in, out, num_blocks);
}

const Aes128& Aes128::FixedKey() {
  static const Aes128 instance(std::array<uint8_t, 16>{});
  return instance;
}

bool Aes128::HardwareAccelerated() { return UseHardware(); }

void Aes128::ForceSoftwareForTesting(bool force) {
  force_software.store(force, std::memory_order_relaxed);
}

}  // namespace poplar::internal
