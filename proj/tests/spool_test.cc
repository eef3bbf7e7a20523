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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "poplar/histogram.h"
#include "poplar/net/submission.h"
#include "poplar/random.h"
#include "testing/status_matchers.h"

namespace poplar::net {
namespace {

std::string TempPath(const std::string& name) {
  std::string path = ::testing::TempDir() + "/poplar_" + name;
  std::remove(path.c_str());
  return path;
}

void AppendRawBytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

TEST(SpoolTest, RecordsRoundTrip) {
  const std::string path = TempPath("roundtrip");
  {
    ASSERT_OK_AND_ASSIGN(auto spool, Spool::Open(path, true));
    ASSERT_OK(spool->Append(std::vector<uint8_t>{1, 2, 3}));
    ASSERT_OK(spool->Append(std::vector<uint8_t>{}));
    ASSERT_OK(spool->Append(std::vector<uint8_t>(1000, 9)));
  }
  ASSERT_OK_AND_ASSIGN(Spool::Contents c, Spool::Read(path));
  ASSERT_EQ(c.records.size(), 3u);
  EXPECT_EQ(c.records[0], (std::vector<uint8_t>{1, 2, 3}));
  EXPECT_TRUE(c.records[1].empty());
  EXPECT_EQ(c.records[2].size(), 1000u);
  EXPECT_EQ(c.truncated_bytes, 0u);
}

TEST(SpoolTest, TornTailIsIgnoredThenCutOnReopen) {
  const std::string path = TempPath("torn");
  {
    ASSERT_OK_AND_ASSIGN(auto spool, Spool::Open(path, true));
    ASSERT_OK(spool->Append(std::vector<uint8_t>{7, 7}));
  }
  AppendRawBytes(path, {10, 0, 0, 0, 1, 2});  // claims 10 octets, holds 2
  ASSERT_OK_AND_ASSIGN(Spool::Contents c, Spool::Read(path));
  EXPECT_EQ(c.records.size(), 1u);
  EXPECT_EQ(c.truncated_bytes, 6u);
  {
    ASSERT_OK_AND_ASSIGN(auto spool, Spool::Open(path, false));
    ASSERT_OK(spool->Append(std::vector<uint8_t>{8}));
  }
  ASSERT_OK_AND_ASSIGN(c, Spool::Read(path));
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.records[1], (std::vector<uint8_t>{8}));
  EXPECT_EQ(c.truncated_bytes, 0u);
}

TEST(SpoolTest, MissingFileIsAnError) {
  EXPECT_FALSE(Spool::Read(TempPath("does_not_exist")).ok());
}

ClientSubmission Sample(RandomSource& rng, int party = 0) {
  return (*HistogramClientSubmit(BitString::FromUint64(5, 4), rng))[party];
}

TEST(UploadTest, RoundTrip) {
  DeterministicRandom rng(1);
  const ClientSubmission s = Sample(rng, 1);
  ASSERT_OK_AND_ASSIGN(ClientRecord r, DecodeUpload(EncodeUpload(s)));
  EXPECT_EQ(r.submission.nonce, s.nonce);
  EXPECT_EQ(EncodeUpload(r.submission), EncodeUpload(s));
}

TEST(UploadTest, RejectsDamage) {
  DeterministicRandom rng(2);
  const std::vector<uint8_t> good = EncodeUpload(Sample(rng));
  std::vector<uint8_t> bad_digest = good;
  bad_digest.back() ^= 1;
  EXPECT_FALSE(DecodeUpload(bad_digest).ok());
  std::vector<uint8_t> trailing = good;
  trailing.push_back(0);
  EXPECT_FALSE(DecodeUpload(trailing).ok());
  std::vector<uint8_t> version = good;
  version[0] = 2;
  EXPECT_FALSE(DecodeUpload(version).ok());
  for (size_t cut = 0; cut < good.size(); cut += 7) {
    EXPECT_FALSE(DecodeUpload(absl::MakeConstSpan(good.data(), cut)).ok()) << cut;
  }
}

TEST(SubmissionStoreTest, DeduplicatesAndReplays) {
  DeterministicRandom rng(3);
  const std::string path = TempPath("store");
  std::vector<std::vector<uint8_t>> uploads;
  for (int i = 0; i < 5; ++i) uploads.push_back(EncodeUpload(Sample(rng)));
  {
    ASSERT_OK_AND_ASSIGN(auto spool, Spool::Open(path, true));
    SubmissionStore store(std::move(spool));
    for (const auto& u : uploads) ASSERT_OK(store.Ingest(u));
    EXPECT_EQ(store.Ingest(uploads[2]).code(), absl::StatusCode::kAlreadyExists);
    EXPECT_EQ(store.Ingest(std::vector<uint8_t>{1, 2}).code(), absl::StatusCode::kInvalidArgument);
    EXPECT_EQ(store.size(), 5u);
  }
  // A torn final write and a garbage record do not stop the replay.
  AppendRawBytes(path, {3, 0, 0, 0, 0xde, 0xad, 0xbe});
  AppendRawBytes(path, {4, 0, 0, 0, 1});
  ASSERT_OK_AND_ASSIGN(auto replayed, SubmissionStore::Replay(path, true));
  EXPECT_EQ(replayed->size(), 5u);
  std::vector<ClientRecord> snap = replayed->Snapshot();
  for (size_t i = 0; i < snap.size(); ++i) {
    EXPECT_EQ(EncodeUpload(snap[i].submission), uploads[i]);
  }
  ASSERT_OK(replayed->Ingest(EncodeUpload(Sample(rng))));
  EXPECT_EQ(replayed->Ingest(uploads[0]).code(), absl::StatusCode::kAlreadyExists);
  replayed.reset();
  ASSERT_OK_AND_ASSIGN(auto again, SubmissionStore::Replay(path, false));
  EXPECT_EQ(again->size(), 6u);
}

}  // namespace
}  // namespace poplar::net
