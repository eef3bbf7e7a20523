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

#include "poplar/net/simulator.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "poplar/dp.h"
#include "poplar/net/protocol.h"
#include "poplar/net/submission.h"
#include "poplar/net/transport.h"
#include "poplar/prg.h"
#include "poplar/status_macros.h"
#include "poplar/submission.h"

namespace poplar::net {
namespace {

double MillisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

ZipfSource::ZipfSource(double s, uint64_t support, int bits, uint64_t seed)
    : bits_(bits), id_seed_(seed, 0x5a69706649447321ULL) {
  cdf_.reserve(support);
  double total = 0;
  for (uint64_t k = 1; k <= support; ++k) {
    total += std::pow(static_cast<double>(k), -s);
    cdf_.push_back(total);
  }
  for (double& c : cdf_) c /= total;
}

uint64_t ZipfSource::SampleRank(RandomSource& rng) const {
  const double u = rng.UniformDouble();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<uint64_t>(it - cdf_.begin(), cdf_.size() - 1);
}

BitString ZipfSource::Identifier(uint64_t rank) const {
  std::vector<uint8_t> bytes = PrfStream(id_seed_, "zipf-id").Block(rank, (bits_ + 7) / 8);
  if (bits_ % 8 != 0) bytes.back() &= static_cast<uint8_t>(0xFF << (8 - bits_ % 8));
  return *BitString::FromBytes(bytes, bits_);
}

absl::StatusOr<SimulationReport> Simulate(const SimulationConfig& config) {
  if (config.bits < 1 || config.bits > 0xFFFF) {
    return absl::InvalidArgumentError("bits must be in [1, 65535]");
  }
  if (config.support == 0) return absl::InvalidArgumentError("support must be positive");
  if (config.malformed > config.clients) {
    return absl::InvalidArgumentError("more malformed clients than clients");
  }
  SimulationReport report;
  report.config = config;
  HeavyConfig heavy;
  heavy.bits = config.bits;
  heavy.threshold = config.threshold;
  heavy.tau = config.tau;
  heavy.dp = config.dp;
  heavy.abort_fraction = config.abort_fraction;
  report.threshold = ThresholdFor(heavy, config.clients);
  if (config.clients == 0) {
    report.exact_match = true;
    return report;
  }

  RunConfig run;
  run.mode = RunConfig::Mode::kHeavy;
  run.bits = config.bits;
  run.threshold = config.threshold;
  run.tau = config.tau;
  run.dp = config.dp;
  run.abort_fraction = config.abort_fraction;

  DeterministicRandom rng(config.seed);
  ZipfSource zipf(config.zipf_s, config.support, config.bits, config.seed);
  const std::vector<GroupDesc> groups = HeavyGroups(config.bits);

  auto encode_start = std::chrono::steady_clock::now();
  SubmissionStore stores[2];
  std::vector<BitString> honest_inputs;
  for (uint64_t i = 0; i < config.clients; ++i) {
    BitString alpha = zipf.Identifier(zipf.SampleRank(rng));
    POPLAR_ASSIGN_OR_RETURN(auto subs, EncodeClient(alpha, groups, rng));
    if (i < config.malformed) {
      // Level 1 is always evaluated, so the sketch sees the corruption and
      // honest_inputs stays the right reference.
      GroupElem delta = GroupElem::Random(groups[0], rng);
      if (delta.IsZero()) delta = GroupElem::OfUint64(groups[0], 1);
      for (auto& s : subs) s.pp.cws[0].w = s.pp.cws[0].w + delta;
    } else {
      honest_inputs.push_back(alpha);
    }
    for (int b = 0; b < 2; ++b) {
      std::vector<uint8_t> upload = EncodeUpload(subs[b]);
      if (b == 0) report.upload_bytes_per_client = upload.size();
      POPLAR_RETURN_IF_ERROR(stores[b].Ingest(upload));
    }
  }
  report.encode_ms = MillisSince(encode_start);

  auto aggregate_start = std::chrono::steady_clock::now();
  auto [t0, t1] = LoopbackTransport::CreatePair();
  Transport* transports[2] = {t0.get(), t1.get()};
  absl::StatusOr<AggregationReport> results[2];
  auto serve = [&](int party) {
    DeterministicRandom server_rng(config.seed * 2 + 1000003 + party);
    results[party] =
        RunAggregation(party, run, stores[party].Snapshot(), server_rng, *transports[party]);
    if (!results[party].ok()) transports[party]->Abort(results[party].status().ToString());
  };
  std::thread peer(serve, 1);
  serve(0);
  peer.join();
  for (const auto& r : results) {
    if (!r.ok()) return r.status();
  }
  report.aggregate_ms = MillisSince(aggregate_start);

  const HeavyResult& h = results[0]->heavy;
  report.heavy_hitters = h.heavy_hitters;
  report.expected = PlaintextHeavyHitters(honest_inputs, static_cast<int64_t>(h.threshold));
  report.threshold = h.threshold;
  report.exact_match = report.heavy_hitters == report.expected;
  report.disqualified = h.disqualified.size();
  report.server_bytes = t0->stats().bytes_sent + t1->stats().bytes_sent;
  report.server_bytes_per_client =
      static_cast<double>(report.server_bytes) / static_cast<double>(config.clients);
  report.prefix_queries = h.prefix_queries;
  report.prg_calls = h.prg_calls;
  if (config.dp.enabled) {
    report.composed_epsilon = dp::Compose(config.dp.epsilon, h.prefix_queries, config.dp_delta);
  }

  const auto& by_round = t0->stats().sent_by_round;
  for (int l = 1; l <= config.bits; ++l) {
    LevelTraffic lt;
    lt.level = l;
    lt.active = h.active_by_level[l - 1];
    lt.queries = h.queries_by_level[l - 1];
    lt.elem_bytes = groups[l - 1].field().byte_width();
    for (MessageType type : {MessageType::kRound1, MessageType::kRound2, MessageType::kWeights}) {
      auto it = by_round.find({type, static_cast<uint16_t>(l)});
      if (it != by_round.end()) lt.bytes_sent += it->second;
    }
    report.levels.push_back(lt);
  }
  return report;
}

std::string SimulationReport::ToJson() const {
  nlohmann::ordered_json j;
  j["clients"] = config.clients;
  j["bits"] = config.bits;
  j["zipf_s"] = config.zipf_s;
  j["support"] = config.support;
  j["threshold"] = threshold;
  j["dp_epsilon"] = config.dp.enabled ? nlohmann::ordered_json(config.dp.epsilon)
                                      : nlohmann::ordered_json(nullptr);
  if (config.dp.enabled) {
    j["dp_delta"] = config.dp_delta;
    j["composed_epsilon"] = composed_epsilon;
  }
  j["malformed"] = config.malformed;
  j["seed"] = config.seed;
  auto list = [](const std::vector<WeightedPrefix>& v) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& [s, w] : v) out.push_back({{"hex", s.ToHex()}, {"weight", w}});
    return out;
  };
  j["heavy_hitters"] = list(heavy_hitters);
  j["expected"] = list(expected);
  j["exact_match"] = exact_match;
  j["disqualified"] = disqualified;
  j["upload_bytes_per_client"] = upload_bytes_per_client;
  j["server_bytes"] = server_bytes;
  j["server_bytes_per_client"] = server_bytes_per_client;
  j["prefix_queries"] = prefix_queries;
  j["prg_calls"] = prg_calls;
  auto& levels_json = j["levels"] = nlohmann::ordered_json::array();
  for (const LevelTraffic& lt : levels) {
    levels_json.push_back({{"level", lt.level},
                           {"active", lt.active},
                           {"queries", lt.queries},
                           {"elem_bytes", lt.elem_bytes},
                           {"bytes_sent", lt.bytes_sent}});
  }
  if (config.timing) {
    j["timing_ms"] = {{"encode", encode_ms}, {"aggregate", aggregate_ms}};
  }
  return j.dump(2);
}

std::string SimulationReport::CsvHeader() {
  return "clients,bits,zipf_s,threshold,heavy_hitters,exact_match,disqualified,"
         "upload_bytes_per_client,server_bytes_per_client,prefix_queries,prg_calls,"
         "encode_ms,aggregate_ms";
}

std::string SimulationReport::ToCsvRow() const {
  return absl::StrCat(config.clients, ",", config.bits, ",", config.zipf_s, ",", threshold, ",",
                      heavy_hitters.size(), ",", exact_match ? 1 : 0, ",", disqualified, ",",
                      upload_bytes_per_client, ",",
                      absl::StrFormat("%.2f", server_bytes_per_client), ",", prefix_queries, ",",
                      prg_calls, ",", config.timing ? absl::StrFormat("%.3f", encode_ms) : "",
                      ",", config.timing ? absl::StrFormat("%.3f", aggregate_ms) : "");
}

}  // namespace poplar::net
