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

#include "poplar/heavy.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "poplar/dp.h"
#include "poplar/idpf.h"
#include "poplar/internal/parallel.h"
#include "poplar/net/wire.h"
#include "poplar/status_macros.h"
#include "poplar/verify.h"

namespace poplar {

HhSearchResult HhSearch(const PrefixOracle& oracle, int64_t t, int bits, int64_t clients) {
  HhSearchResult out;
  std::vector<WeightedPrefix> heavy = {{BitString(), clients}};
  for (int l = 0; l < bits && !heavy.empty(); ++l) {
    std::vector<BitString> queries;
    queries.reserve(heavy.size());
    for (const auto& [p, w] : heavy) queries.push_back(p.Append(false));
    std::vector<int64_t> answers = oracle(queries);
    out.queries += queries.size();
    std::vector<WeightedPrefix> next;
    for (size_t j = 0; j < heavy.size(); ++j) {
      const int64_t w0 = answers[j];
      const int64_t w1 = heavy[j].second - w0;
      if (w0 >= t) next.emplace_back(queries[j], w0);
      if (w1 >= t) next.emplace_back(heavy[j].first.Append(true), w1);
    }
    heavy = std::move(next);
    out.levels.push_back(heavy);
  }
  out.levels.resize(bits);
  out.heavy = std::move(heavy);
  std::sort(out.heavy.begin(), out.heavy.end());
  return out;
}

PrefixOracle PlaintextOracle(std::vector<BitString> strings) {
  return [strings = std::move(strings)](const std::vector<BitString>& queries) {
    std::vector<int64_t> out;
    out.reserve(queries.size());
    for (const BitString& q : queries) {
      int64_t count = 0;
      for (const BitString& s : strings) count += s.size() >= q.size() && s.Prefix(q.size()) == q;
      out.push_back(count);
    }
    return out;
  };
}

std::vector<WeightedPrefix> PlaintextHeavyHitters(const std::vector<BitString>& strings,
                                                  int64_t t) {
  absl::flat_hash_map<BitString, int64_t> counts;
  for (const BitString& s : strings) ++counts[s];
  std::vector<WeightedPrefix> out;
  for (const auto& [s, c] : counts) {
    if (c >= t) out.emplace_back(s, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t ThresholdFor(const HeavyConfig& config, uint64_t clients) {
  if (config.threshold) return std::max<uint64_t>(1, *config.threshold);
  return static_cast<uint64_t>(std::floor(config.tau * static_cast<double>(clients))) + 1;
}

namespace {

int64_t Centered(const FieldElem& e) {
  // Weights are bounded by C plus noise, far inside the centered range.
  return e.ToCenteredInt64().value_or(0);
}

absl::Status CheckGroups(const HeavyConfig& config,
                         absl::Span<const ClientSubmission> submissions) {
  const std::vector<GroupDesc> expected = HeavyGroups(config.bits);
  for (size_t i = 0; i < submissions.size(); ++i) {
    if (submissions[i].pp.groups != expected || submissions[i].pp.subtractive ||
        submissions[i].correlated.levels() != config.bits) {
      return absl::InvalidArgumentError(
          absl::StrCat("submission ", i, " does not match the heavy-hitters configuration"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<HeavyResult> RunHeavyHitters(int party, const HeavyConfig& config,
                                            absl::Span<const ClientSubmission> submissions,
                                            const Seed& shared_seed,
                                            net::Transport& transport,
                                            RandomSource& noise_rng) {
  if (config.bits < 1 || config.bits > 0xFFFF) {
    return absl::InvalidArgumentError("bits must be in [1, 65535]");
  }
  if (config.dp.enabled && !(config.dp.epsilon > 0)) {
    return absl::InvalidArgumentError("DP needs a positive epsilon");
  }
  POPLAR_RETURN_IF_ERROR(CheckGroups(config, submissions));

  const size_t total = submissions.size();
  const std::vector<GroupDesc> groups = HeavyGroups(config.bits);
  HeavyResult result;
  result.threshold = ThresholdFor(config, total);
  const auto t = static_cast<int64_t>(result.threshold);

  std::vector<size_t> active(total);
  for (size_t i = 0; i < total; ++i) active[i] = i;
  // states[i][j]: client active[i]'s evaluation state at heavy prefix j.
  std::vector<std::vector<EvalState>> states(total);
  for (size_t i = 0; i < total; ++i) states[i] = {EvalState::Root(submissions[i].key)};
  std::vector<WeightedPrefix> heavy = {{BitString(), static_cast<int64_t>(total)}};

  for (int l = 0; l < config.bits; ++l) {
    const uint16_t wire_level = static_cast<uint16_t>(l + 1);
    const GroupDesc& group = groups[l];
    const FieldSpec& spec = group.field();
    if (heavy.empty() || active.empty()) {
      heavy.clear();
      result.leakage.emplace_back();
      result.disqualified_by_level.push_back(result.disqualified.size());
      result.active_by_level.push_back(0);
      result.queries_by_level.push_back(0);
      continue;
    }
    const size_t m = 2 * heavy.size();
    result.active_by_level.push_back(active.size());

    // Evaluate both children of every heavy prefix for every active client.
    std::vector<SketchVectors> vectors(active.size());
    std::vector<std::vector<EvalState>> child_states(active.size());
    std::atomic<bool> eval_failed{false};
    internal::ParallelFor(active.size(), [&](size_t i) {
      const ClientSubmission& sub = submissions[active[i]];
      SketchVectors& vec = vectors[i];
      vec.v.reserve(m);
      vec.v_star.reserve(m);
      child_states[i].reserve(m);
      for (size_t j = 0; j < heavy.size(); ++j) {
        auto children = EvalChildren(party, states[i][j], sub.pp);
        if (!children.ok()) {
          eval_failed = true;
          return;
        }
        for (const EvalStep& step : *children) {
          vec.v.push_back(step.y.coord(0));
          vec.v_star.push_back(step.y.coord(1));
          child_states[i].push_back(step.state);
        }
      }
    });
    if (eval_failed) return absl::InternalError("IDPF evaluation failed");
    result.eval_children_calls += active.size() * heavy.size();
    result.prg_calls += active.size() * heavy.size() * (1 + 2 * ConvertCalls(group));

    std::vector<const ClientSubmission*> clients;
    clients.reserve(active.size());
    for (size_t idx : active) clients.push_back(&submissions[idx]);
    POPLAR_ASSIGN_OR_RETURN(std::vector<bool> accepted,
                            VerifySketches(party, l, wire_level, spec, clients, vectors,
                                           shared_seed, transport));

    std::vector<size_t> kept;
    bool newly_disqualified = false;
    for (size_t i = 0; i < active.size(); ++i) {
      if (accepted[i]) {
        kept.push_back(i);
      } else {
        result.disqualified.push_back(active[i]);
        newly_disqualified = true;
      }
    }
    result.disqualified_by_level.push_back(result.disqualified.size());
    if (total > 0 && static_cast<double>(result.disqualified.size()) >
                         config.abort_fraction * static_cast<double>(total)) {
      std::string reason = absl::StrCat("disqualified ", result.disqualified.size(), " of ",
                                        total, " clients at level ", l + 1);
      transport.Abort(reason);
      return absl::AbortedError(reason);
    }

    // Query p||0 for each heavy p; when clients dropped out at this level the
    // parents' weights are stale, so p||1 is queried as well.
    std::vector<size_t> queries;
    for (size_t j = 0; j < heavy.size(); ++j) {
      queries.push_back(2 * j);
      if (newly_disqualified) queries.push_back(2 * j + 1);
    }
    std::vector<FieldElem> shares(queries.size(), FieldElem(spec));
    for (size_t i : kept) {
      for (size_t q = 0; q < queries.size(); ++q) shares[q] += vectors[i].v[queries[q]];
    }
    if (config.dp.enabled) {
      for (FieldElem& s : shares) {
        s += FieldElem::FromInt64(dp::SampleNoise(config.dp.epsilon, noise_rng), spec);
      }
    }
    std::vector<uint8_t> payload;
    net::AppendElems(shares, payload);
    POPLAR_ASSIGN_OR_RETURN(std::vector<uint8_t> peer_bytes,
                            transport.Exchange(net::MessageType::kWeights, wire_level, payload));
    POPLAR_ASSIGN_OR_RETURN(std::vector<FieldElem> peer,
                            net::DecodeElems(peer_bytes, queries.size(), spec));
    result.prefix_queries += queries.size();
    result.queries_by_level.push_back(queries.size());

    std::vector<int64_t> child_weight(m);
    for (size_t q = 0; q < queries.size(); ++q) {
      child_weight[queries[q]] = Centered(shares[q] + peer[q]);
    }
    if (!newly_disqualified) {
      for (size_t j = 0; j < heavy.size(); ++j) {
        child_weight[2 * j + 1] = heavy[j].second - child_weight[2 * j];
      }
    }

    std::vector<WeightedPrefix> next;
    std::vector<size_t> next_index;
    for (size_t j = 0; j < heavy.size(); ++j) {
      for (int c = 0; c < 2; ++c) {
        if (child_weight[2 * j + c] >= t) {
          next.emplace_back(heavy[j].first.Append(c == 1), child_weight[2 * j + c]);
          next_index.push_back(2 * j + c);
        }
      }
    }

    std::vector<size_t> next_active;
    std::vector<std::vector<EvalState>> next_states;
    next_active.reserve(kept.size());
    next_states.reserve(kept.size());
    for (size_t i : kept) {
      next_active.push_back(active[i]);
      std::vector<EvalState> s;
      s.reserve(next_index.size());
      for (size_t k : next_index) s.push_back(child_states[i][k]);
      next_states.push_back(std::move(s));
    }
    active = std::move(next_active);
    states = std::move(next_states);
    heavy = std::move(next);
    result.leakage.push_back(heavy);
  }

  for (const auto& [p, w] : heavy) result.heavy_hitters.emplace_back(p, std::max<int64_t>(w, 0));
  std::sort(result.heavy_hitters.begin(), result.heavy_hitters.end());
  return result;
}

absl::StatusOr<LocalHeavyRun> RunHeavyHittersLocal(
    const HeavyConfig& config, absl::Span<const std::array<ClientSubmission, 2>> clients,
    const Seed& shared_seed, uint64_t noise_seed) {
  std::vector<ClientSubmission> subs[2];
  for (const auto& c : clients) {
    subs[0].push_back(c[0]);
    subs[1].push_back(c[1]);
  }
  auto [t0, t1] = net::LoopbackTransport::CreatePair();
  net::Transport* transports[2] = {t0.get(), t1.get()};
  absl::StatusOr<HeavyResult> results[2];
  auto run = [&](int party) {
    DeterministicRandom noise(noise_seed * 2 + party);
    results[party] =
        RunHeavyHitters(party, config, subs[party], shared_seed, *transports[party], noise);
    if (!results[party].ok()) transports[party]->Abort(results[party].status().ToString());
  };
  std::thread peer(run, 1);
  run(0);
  peer.join();
  for (auto& r : results) {
    if (!r.ok()) return r.status();
  }
  LocalHeavyRun out;
  out.results = {*std::move(results[0]), *std::move(results[1])};
  out.traffic = {t0->stats(), t1->stats()};
  return out;
}

}  // namespace poplar
