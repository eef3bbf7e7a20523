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

#include "poplar/histogram.h"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "poplar/idpf.h"
#include "poplar/internal/parallel.h"
#include "poplar/net/wire.h"
#include "poplar/status_macros.h"
#include "poplar/verify.h"

namespace poplar {

absl::StatusOr<std::array<ClientSubmission, 2>> HistogramClientSubmit(const BitString& alpha,
                                                                      RandomSource& rng) {
  return EncodeClient(alpha, HistogramGroups(alpha.size()), rng);
}

absl::StatusOr<SketchVectors> EvaluateCandidates(const ClientSubmission& submission,
                                                 absl::Span<const BitString> candidates) {
  SketchVectors out;
  out.v.reserve(candidates.size());
  out.v_star.reserve(candidates.size());
  for (const BitString& sigma : candidates) {
    if (sigma.size() != submission.pp.n()) {
      return absl::InvalidArgumentError(absl::StrCat("candidate ", sigma.ToBinary(), " is not ",
                                                     submission.pp.n(), " bits"));
    }
    POPLAR_ASSIGN_OR_RETURN(GroupElem y, EvalPrefix(submission.key, submission.pp, sigma));
    out.v.push_back(y.coord(0));
    out.v_star.push_back(y.coord(1));
  }
  return out;
}

std::vector<FieldElem> Aggregate(absl::Span<const SketchVectors> evaluations,
                                 const std::vector<bool>& accepted) {
  std::vector<FieldElem> sum;
  for (size_t i = 0; i < evaluations.size(); ++i) {
    if (!accepted[i]) continue;
    if (sum.empty()) {
      sum = evaluations[i].v;
      continue;
    }
    for (size_t j = 0; j < sum.size(); ++j) sum[j] += evaluations[i].v[j];
  }
  return sum;
}

std::vector<FieldElem> Combine(absl::Span<const FieldElem> share0,
                               absl::Span<const FieldElem> share1) {
  if (share0.size() != share1.size()) throw std::invalid_argument("share vectors differ in size");
  std::vector<FieldElem> out;
  out.reserve(share0.size());
  for (size_t j = 0; j < share0.size(); ++j) out.push_back(share0[j] + share1[j]);
  return out;
}

absl::StatusOr<HistogramResult> RunHistogram(int party, int bits,
                                             absl::Span<const ClientSubmission> submissions,
                                             absl::Span<const BitString> candidates,
                                             const Seed& shared_seed,
                                             net::Transport& transport) {
  if (bits < 1 || bits > 0xFFFF) return absl::InvalidArgumentError("bits must be in [1, 65535]");
  const std::vector<GroupDesc> groups = HistogramGroups(bits);
  absl::flat_hash_set<BitString> distinct;
  for (const BitString& sigma : candidates) {
    if (sigma.size() != bits) return absl::InvalidArgumentError("candidate has the wrong length");
    if (!distinct.insert(sigma).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate candidate ", sigma.ToBinary()));
    }
  }
  for (size_t i = 0; i < submissions.size(); ++i) {
    if (submissions[i].pp.groups != groups || submissions[i].pp.subtractive ||
        submissions[i].correlated.levels() != 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("submission ", i, " does not match the histogram configuration"));
    }
  }
  const FieldSpec& spec = FieldSpec::Leaf();
  HistogramResult result;
  if (candidates.empty() || submissions.empty()) {
    result.counts.assign(candidates.size(), FieldElem(spec));
    return result;
  }

  std::vector<SketchVectors> evals(submissions.size());
  std::atomic<bool> failed{false};
  internal::ParallelFor(submissions.size(), [&](size_t i) {
    auto e = EvaluateCandidates(submissions[i], candidates);
    if (!e.ok()) {
      failed = true;
      return;
    }
    evals[i] = *std::move(e);
  });
  if (failed) return absl::InternalError("candidate evaluation failed");

  std::vector<const ClientSubmission*> clients;
  for (const auto& s : submissions) clients.push_back(&s);
  const auto wire_level = static_cast<uint16_t>(bits);
  POPLAR_ASSIGN_OR_RETURN(std::vector<bool> accepted,
                          VerifySketches(party, 0, wire_level, spec, clients, evals, shared_seed,
                                         transport));
  for (size_t i = 0; i < accepted.size(); ++i) {
    if (!accepted[i]) result.disqualified.push_back(i);
  }

  std::vector<FieldElem> share = Aggregate(evals, accepted);
  if (share.empty()) share.assign(candidates.size(), FieldElem(spec));
  std::vector<uint8_t> payload;
  net::AppendElems(share, payload);
  POPLAR_ASSIGN_OR_RETURN(std::vector<uint8_t> peer_bytes,
                          transport.Exchange(net::MessageType::kWeights, wire_level, payload));
  POPLAR_ASSIGN_OR_RETURN(std::vector<FieldElem> peer,
                          net::DecodeElems(peer_bytes, candidates.size(), spec));
  result.counts = Combine(share, peer);
  return result;
}

absl::StatusOr<HistogramResult> RunHistogramLocal(
    int bits, absl::Span<const std::array<ClientSubmission, 2>> clients,
    absl::Span<const BitString> candidates, const Seed& shared_seed) {
  std::vector<ClientSubmission> subs[2];
  for (const auto& c : clients) {
    subs[0].push_back(c[0]);
    subs[1].push_back(c[1]);
  }
  auto [t0, t1] = net::LoopbackTransport::CreatePair();
  net::Transport* transports[2] = {t0.get(), t1.get()};
  absl::StatusOr<HistogramResult> results[2];
  auto run = [&](int party) {
    results[party] =
        RunHistogram(party, bits, subs[party], candidates, shared_seed, *transports[party]);
    if (!results[party].ok()) transports[party]->Abort(results[party].status().ToString());
  };
  std::thread peer(run, 1);
  run(0);
  peer.join();
  if (!results[1].ok()) return results[1].status();
  return results[0];
}

}  // namespace poplar
