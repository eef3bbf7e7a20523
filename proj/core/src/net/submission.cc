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

#include "poplar/net/submission.h"

#include <cstring>

#include "absl/strings/str_cat.h"
#include "poplar/internal/bytes.h"
#include "poplar/status_macros.h"

namespace poplar::net {

std::vector<uint8_t> EncodeUpload(const ClientSubmission& submission) {
  std::vector<uint8_t> key = submission.key.Serialize();
  std::vector<uint8_t> pp = submission.pp.Serialize();
  std::vector<uint8_t> corr;
  submission.correlated.AppendBytes(corr);
  internal::Digest digest = internal::Sha256(pp);

  std::vector<uint8_t> out;
  internal::ByteWriter w(&out);
  w.U8(kUploadVersion);
  w.Bytes(submission.nonce);
  w.U16(static_cast<uint16_t>(key.size()));
  w.Bytes(key);
  w.U32(static_cast<uint32_t>(pp.size()));
  w.Bytes(pp);
  w.U32(static_cast<uint32_t>(corr.size()));
  w.Bytes(corr);
  w.Bytes(digest);
  return out;
}

absl::StatusOr<ClientRecord> DecodeUpload(absl::Span<const uint8_t> bytes) {
  internal::ByteReader r(bytes);
  POPLAR_ASSIGN_OR_RETURN(uint8_t version, r.U8());
  if (version != kUploadVersion) {
    return absl::InvalidArgumentError(absl::StrCat("unsupported upload version ", int{version}));
  }
  ClientRecord rec;
  POPLAR_ASSIGN_OR_RETURN(auto nonce, r.Bytes(16));
  std::memcpy(rec.submission.nonce.data(), nonce.data(), 16);
  POPLAR_ASSIGN_OR_RETURN(uint16_t key_len, r.U16());
  POPLAR_ASSIGN_OR_RETURN(auto key, r.Bytes(key_len));
  POPLAR_ASSIGN_OR_RETURN(rec.submission.key, IdpfKey::Deserialize(key));
  POPLAR_ASSIGN_OR_RETURN(uint32_t pp_len, r.U32());
  POPLAR_ASSIGN_OR_RETURN(auto pp, r.Bytes(pp_len));
  POPLAR_ASSIGN_OR_RETURN(rec.submission.pp, PublicParams::Deserialize(pp));
  POPLAR_ASSIGN_OR_RETURN(uint32_t corr_len, r.U32());
  POPLAR_ASSIGN_OR_RETURN(auto corr, r.Bytes(corr_len));
  std::vector<const FieldSpec*> fields = SketchFields(rec.submission.pp.groups);
  size_t consumed = 0;
  POPLAR_ASSIGN_OR_RETURN(rec.submission.correlated,
                          ClientCorrelated::Decode(corr, fields, &consumed));
  if (consumed != corr.size()) return absl::InvalidArgumentError("trailing correlated octets");
  POPLAR_ASSIGN_OR_RETURN(auto digest, r.Bytes(32));
  std::memcpy(rec.pp_digest.data(), digest.data(), 32);
  if (!r.done()) return absl::InvalidArgumentError("trailing upload octets");
  if (internal::Sha256(pp) != rec.pp_digest) {
    return absl::InvalidArgumentError("pp digest does not match the pp octets");
  }
  return rec;
}

SubmissionStore::SubmissionStore(std::unique_ptr<Spool> spool) : spool_(std::move(spool)) {}

absl::StatusOr<std::unique_ptr<SubmissionStore>> SubmissionStore::Replay(const std::string& path,
                                                                         bool keep_appending) {
  POPLAR_ASSIGN_OR_RETURN(Spool::Contents contents, Spool::Read(path));
  auto store = std::make_unique<SubmissionStore>();
  for (const auto& record : contents.records) store->Ingest(record).IgnoreError();
  if (keep_appending) {
    POPLAR_ASSIGN_OR_RETURN(store->spool_, Spool::Open(path, /*truncate=*/false));
  }
  return store;
}

absl::Status SubmissionStore::Ingest(absl::Span<const uint8_t> upload) {
  POPLAR_ASSIGN_OR_RETURN(ClientRecord rec, DecodeUpload(upload));
  std::string nonce(rec.submission.nonce.begin(), rec.submission.nonce.end());
  std::lock_guard<std::mutex> lock(mu_);
  if (nonces_.contains(nonce)) return absl::AlreadyExistsError("duplicate client nonce");
  if (spool_ != nullptr) POPLAR_RETURN_IF_ERROR(spool_->Append(upload));
  nonces_.insert(std::move(nonce));
  records_.push_back(std::move(rec));
  return absl::OkStatus();
}

size_t SubmissionStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

std::vector<ClientRecord> SubmissionStore::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

}  // namespace poplar::net
