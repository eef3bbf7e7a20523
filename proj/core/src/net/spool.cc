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

#include "poplar/net/spool.h"

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "absl/strings/str_cat.h"

namespace poplar::net {

absl::StatusOr<Spool::Contents> Spool::Read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open spool ", path));
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  Contents out;
  size_t pos = 0;
  while (data.size() - pos >= 4) {
    uint32_t len = data[pos] | (data[pos + 1] << 8) | (data[pos + 2] << 16) |
                   (uint32_t{data[pos + 3]} << 24);
    if (data.size() - pos - 4 < len) break;
    out.records.emplace_back(data.begin() + pos + 4, data.begin() + pos + 4 + len);
    pos += 4 + len;
  }
  out.truncated_bytes = data.size() - pos;
  return out;
}

absl::StatusOr<std::unique_ptr<Spool>> Spool::Open(const std::string& path, bool truncate) {
  if (!truncate && std::filesystem::exists(path)) {
    auto contents = Read(path);
    if (!contents.ok()) return contents.status();
    if (contents->truncated_bytes > 0) {
      std::error_code ec;
      const auto size = std::filesystem::file_size(path, ec);
      if (!ec) std::filesystem::resize_file(path, size - contents->truncated_bytes, ec);
      if (ec) return absl::InternalError(absl::StrCat("cannot trim spool: ", ec.message()));
    }
  }
  std::FILE* f = std::fopen(path.c_str(), truncate ? "wb" : "ab");
  if (f == nullptr) {
    return absl::InternalError(absl::StrCat("cannot open spool ", path, ": ", std::strerror(errno)));
  }
  return std::unique_ptr<Spool>(new Spool(f));
}

Spool::~Spool() { std::fclose(file_); }

absl::Status Spool::Append(absl::Span<const uint8_t> record) {
  uint8_t len[4];
  for (int i = 0; i < 4; ++i) len[i] = static_cast<uint8_t>(record.size() >> (8 * i));
  if (std::fwrite(len, 1, 4, file_) != 4 ||
      std::fwrite(record.data(), 1, record.size(), file_) != record.size() ||
      std::fflush(file_) != 0) {
    return absl::InternalError("spool write failed");
  }
  return absl::OkStatus();
}

}  // namespace poplar::net
