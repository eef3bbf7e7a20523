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

#include "poplar/net/protocol.h"

#include <algorithm>
#include <cstring>
#include <set>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "poplar/status_macros.h"

namespace poplar::net {
namespace {

using Nonce = std::array<uint8_t, 16>;

std::string Key(const Nonce& n) { return std::string(n.begin(), n.end()); }

bool GroupsMatch(absl::Span<const GroupDesc> a, absl::Span<const GroupDesc> b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<std::map<std::string, std::string>> ParseKeyValues(absl::string_view text) {
  std::map<std::string, std::string> out;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat("line ", line_no, ": expected key = value"));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (key.empty()) return absl::InvalidArgumentError(absl::StrCat("line ", line_no, ": empty key"));
    if (!out.emplace(key, value).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate key ", key));
    }
  }
  return out;
}

absl::StatusOr<std::vector<BitString>> ParseCandidates(absl::string_view text, int bits) {
  std::vector<BitString> out;
  std::set<BitString> seen;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line[0] == '#') continue;
    POPLAR_ASSIGN_OR_RETURN(BitString s, BitString::FromHex(line, bits));
    if (!seen.insert(s).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate candidate ", line));
    }
    out.push_back(std::move(s));
  }
  return out;
}

absl::StatusOr<RunConfig> RunConfig::FromKeyValues(const std::map<std::string, std::string>& kv) {
  RunConfig c;
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto bad = [](const std::string& k, const std::string& v) {
    return absl::InvalidArgumentError(absl::StrCat("bad value for ", k, ": '", v, "'"));
  };
  if (const auto* v = get("mode")) {
    if (*v == "heavy") {
      c.mode = Mode::kHeavy;
    } else if (*v == "histogram") {
      c.mode = Mode::kHistogram;
    } else {
      return bad("mode", *v);
    }
  }
  const auto* bits = get("bits");
  if (bits == nullptr) return absl::InvalidArgumentError("missing key: bits");
  if (!absl::SimpleAtoi(*bits, &c.bits) || c.bits < 1 || c.bits > 65535) return bad("bits", *bits);
  if (const auto* v = get("threshold")) {
    uint64_t t;
    if (!absl::SimpleAtoi(*v, &t) || t == 0) return bad("threshold", *v);
    c.threshold = t;
  }
  if (const auto* v = get("tau")) {
    if (!absl::SimpleAtod(*v, &c.tau) || c.tau < 0 || c.tau >= 1) return bad("tau", *v);
  }
  if (const auto* v = get("dp_epsilon")) {
    if (!absl::SimpleAtod(*v, &c.dp.epsilon) || c.dp.epsilon <= 0) return bad("dp_epsilon", *v);
    c.dp.enabled = true;
  }
  if (const auto* v = get("abort_fraction")) {
    if (!absl::SimpleAtod(*v, &c.abort_fraction) || c.abort_fraction < 0 ||
        c.abort_fraction > 1) {
      return bad("abort_fraction", *v);
    }
  }
  if (c.mode == Mode::kHeavy && !c.threshold && c.tau <= 0) {
    return absl::InvalidArgumentError("heavy mode needs threshold or tau");
  }
  return c;
}

HeavyConfig RunConfig::heavy() const {
  HeavyConfig h;
  h.bits = bits;
  h.threshold = threshold;
  h.tau = tau;
  h.dp = dp;
  h.abort_fraction = abort_fraction;
  return h;
}

std::vector<GroupDesc> RunConfig::groups() const {
  return mode == Mode::kHeavy ? HeavyGroups(bits) : HistogramGroups(bits);
}

std::string RunConfig::Canonical() const {
  std::string out = absl::StrCat("mode=", mode == Mode::kHeavy ? "heavy" : "histogram",
                                 "\nbits=", bits, "\n");
  if (mode == Mode::kHeavy) {
    absl::StrAppend(&out, "threshold=", threshold ? absl::StrCat(*threshold) : "none", "\n");
    absl::StrAppend(&out, "tau=", absl::StrFormat("%.17g", tau), "\n");
    absl::StrAppend(&out, "dp_epsilon=",
                    dp.enabled ? absl::StrFormat("%.17g", dp.epsilon) : "none", "\n");
  }
  absl::StrAppend(&out, "abort_fraction=", absl::StrFormat("%.17g", abort_fraction), "\n");
  for (const BitString& c : candidates) absl::StrAppend(&out, "candidate=", c.ToBinary(), "\n");
  return out;
}

internal::Digest RunConfig::Digest() const {
  const std::string text = Canonical();
  return internal::Sha256(
      absl::MakeConstSpan(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

Seed EstablishSharedSeed(const Nonce& a, const Nonce& b) {
  const Nonce& lo = std::min(a, b);
  const Nonce& hi = std::max(a, b);
  internal::Digest d = internal::Sha256Concat({lo, hi});
  return Seed::FromBytes(absl::MakeConstSpan(d.data(), 16));
}

absl::StatusOr<Session> EstablishSession(const RunConfig& config,
                                         std::vector<ClientRecord> records, RandomSource& rng,
                                         Transport& transport) {
  const internal::Digest digest = config.Digest();
  POPLAR_ASSIGN_OR_RETURN(std::vector<uint8_t> peer_digest,
                          transport.Exchange(MessageType::kConfig, 0, digest));
  if (peer_digest.size() != digest.size() ||
      !std::equal(digest.begin(), digest.end(), peer_digest.begin())) {
    transport.Abort("run configuration mismatch");
    return absl::FailedPreconditionError("run configuration differs from the peer's");
  }

  Nonce mine;
  rng.Fill(absl::MakeSpan(mine));
  POPLAR_ASSIGN_OR_RETURN(std::vector<uint8_t> theirs_bytes,
                          transport.Exchange(MessageType::kNonce, 0, mine));
  if (theirs_bytes.size() != 16) {
    transport.Abort("bad nonce");
    return absl::InvalidArgumentError("peer nonce has the wrong length");
  }
  Nonce theirs;
  std::memcpy(theirs.data(), theirs_bytes.data(), 16);

  Session session;
  session.shared_seed = EstablishSharedSeed(mine, theirs);

  std::sort(records.begin(), records.end(), [](const ClientRecord& a, const ClientRecord& b) {
    return a.submission.nonce < b.submission.nonce;
  });
  std::vector<uint8_t> roster;
  roster.reserve(records.size() * 48);
  for (const ClientRecord& r : records) {
    roster.insert(roster.end(), r.submission.nonce.begin(), r.submission.nonce.end());
    roster.insert(roster.end(), r.pp_digest.begin(), r.pp_digest.end());
  }
  POPLAR_ASSIGN_OR_RETURN(std::vector<uint8_t> peer_roster,
                          transport.Exchange(MessageType::kRoster, 0, roster));
  if (peer_roster.size() % 48 != 0) {
    transport.Abort("bad roster");
    return absl::InvalidArgumentError("peer roster is malformed");
  }
  absl::flat_hash_map<std::string, internal::Digest> peer;
  for (size_t i = 0; i < peer_roster.size(); i += 48) {
    Nonce n;
    internal::Digest d;
    std::memcpy(n.data(), peer_roster.data() + i, 16);
    std::memcpy(d.data(), peer_roster.data() + i + 16, 32);
    peer.emplace(Key(n), d);
  }

  const std::vector<GroupDesc> want = config.groups();
  size_t matched = 0;
  for (ClientRecord& r : records) {
    auto it = peer.find(Key(r.submission.nonce));
    if (it == peer.end()) {
      ++session.unmatched;
      continue;
    }
    ++matched;
    // Equal digests mean equal pp on both sides, so both servers reach the
    // same verdict here.
    if (it->second != r.pp_digest || !GroupsMatch(r.submission.pp.groups, want)) {
      ++session.rejected_at_upload;
      continue;
    }
    session.active.push_back(std::move(r.submission));
  }
  session.unmatched += peer.size() - matched;
  return session;
}

absl::StatusOr<AggregationReport> RunAggregation(int party, const RunConfig& config,
                                                 std::vector<ClientRecord> records,
                                                 RandomSource& rng, Transport& transport) {
  AggregationReport report;
  report.mode = config.mode;
  report.received = records.size();
  POPLAR_ASSIGN_OR_RETURN(Session session,
                          EstablishSession(config, std::move(records), rng, transport));
  report.active = session.active.size();
  report.rejected_at_upload = session.rejected_at_upload;
  report.unmatched = session.unmatched;
  if (config.mode == RunConfig::Mode::kHeavy) {
    POPLAR_ASSIGN_OR_RETURN(report.heavy,
                            RunHeavyHitters(party, config.heavy(), session.active,
                                            session.shared_seed, transport, rng));
  } else {
    report.candidates = config.candidates;
    POPLAR_ASSIGN_OR_RETURN(report.histogram,
                            RunHistogram(party, config.bits, session.active, config.candidates,
                                         session.shared_seed, transport));
  }
  report.traffic = transport.stats();
  return report;
}

std::string AggregationReport::ToJson() const {
  nlohmann::ordered_json j;
  j["mode"] = mode == RunConfig::Mode::kHeavy ? "heavy" : "histogram";
  j["clients_received"] = received;
  j["clients_active"] = active;
  j["rejected_at_upload"] = rejected_at_upload;
  j["unmatched"] = unmatched;
  if (mode == RunConfig::Mode::kHeavy) {
    j["threshold"] = heavy.threshold;
    auto& out = j["heavy_hitters"] = nlohmann::ordered_json::array();
    for (const auto& [s, w] : heavy.heavy_hitters) {
      out.push_back({{"hex", s.ToHex()}, {"weight", w}});
    }
    j["disqualified"] = heavy.disqualified.size();
    j["disqualified_by_level"] = heavy.disqualified_by_level;
    j["prefix_queries"] = heavy.prefix_queries;
    j["prg_calls"] = heavy.prg_calls;
  } else {
    auto& out = j["histogram"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < candidates.size() && i < histogram.counts.size(); ++i) {
      auto count = histogram.counts[i].ToCenteredInt64();
      out.push_back({{"hex", candidates[i].ToHex()},
                     {"count", count ? nlohmann::ordered_json(*count)
                                     : nlohmann::ordered_json(histogram.counts[i].ToHex())}});
    }
    j["disqualified"] = histogram.disqualified.size();
  }
  nlohmann::ordered_json t;
  t["bytes_sent"] = traffic.bytes_sent;
  t["bytes_received"] = traffic.bytes_received;
  t["frames_sent"] = traffic.frames_sent;
  for (const auto& [type, bytes] : traffic.sent_by_type) {
    t["sent_by_type"][std::string(MessageTypeName(type))] = bytes;
  }
  j["traffic"] = t;
  return j.dump(2);
}

}  // namespace poplar::net
