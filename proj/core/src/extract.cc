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

#include "poplar/extract.h"

#include <deque>
#include <utility>

#include "absl/container/flat_hash_set.h"

namespace poplar::extract {
namespace {

struct Node {
  BitString x;
  EvalState state[2];
};

// The oracle queries one party makes to step from `state` into child z.
struct Step {
  EvalStep result;
  std::vector<OracleTranscript::Query> queries;
};

Step StepChild(int party, const EvalState& state, const PublicParams& pp, bool z) {
  OracleTranscript local;
  Step step;
  {
    ScopedOracleTranscript scope(&local);
    step.result = EvalNext(party, state, pp, z).value();
  }
  step.queries = local.queries();
  return step;
}

bool AllIn(const std::vector<OracleTranscript::Query>& queries, const OracleTranscript& t) {
  for (const auto& q : queries) {
    if (!t.Contains(q.kind, q.seed)) return false;
  }
  return true;
}

}  // namespace

Permissible OnlyOne() {
  return [](int, const GroupElem& v) {
    return !v.desc().is_trivial() && v == GroupElem::OfUint64(v.desc(), 1);
  };
}

ExtractionResult Extract(const IdpfKey& k0, const IdpfKey& k1, const PublicParams& pp,
                         const Permissible& permissible, const OracleTranscript& transcript) {
  const int n = pp.n();
  ExtractionResult result;
  std::vector<std::vector<std::pair<BitString, GroupElem>>> examined(n);
  // ST: (s, s~) pairs keyed by length.
  std::vector<absl::flat_hash_set<Seed>> stored_seeds(n + 1);

  std::deque<Node> worklist;
  worklist.push_back({BitString(), {EvalState::Root(k0), EvalState::Root(k1)}});
  while (!worklist.empty()) {
    Node node = std::move(worklist.front());
    worklist.pop_front();
    const int depth = node.x.size();
    if (depth >= n) continue;
    for (int z = 0; z < 2; ++z) {
      Step step[2] = {StepChild(0, node.state[0], pp, z), StepChild(1, node.state[1], pp, z)};
      ++result.evaluated;
      const int length = depth + 1;
      bool stop = false;
      for (const Step& s : step) stop |= stored_seeds[length].contains(s.result.state.seed);
      if (stop || !AllIn(step[0].queries, transcript) || !AllIn(step[1].queries, transcript)) {
        continue;
      }
      BitString child = node.x.Append(z == 1);
      GroupElem value = step[0].result.y + step[1].result.y;
      examined[length - 1].emplace_back(child, value);
      ++result.examined;
      for (const Step& s : step) {
        stored_seeds[length].insert(s.result.state.seed);
        stored_seeds[length].insert(s.result.seed_tilde);
      }
      worklist.push_back({child, {step[0].result.state, step[1].result.state}});
    }
  }

  for (int l = 1; l <= n; ++l) {
    BitString best = BitString::Ones(l);
    for (const auto& [x, v] : examined[l - 1]) {
      if (permissible(l, v) && x < best) best = x;
    }
    result.x.push_back(best);
  }
  return result;
}

GameOutcome PlayGame(Strategy strategy, absl::Span<const GroupDesc> groups, RandomSource& rng) {
  const int n = static_cast<int>(groups.size());
  OracleTranscript transcript;
  GameOutcome outcome;
  IdpfKeys keys;
  {
    ScopedOracleTranscript scope(&transcript);
    BitString alpha;
    for (int l = 0; l < n; ++l) alpha.PushBack(rng.NextUint64() & 1);
    std::vector<GroupElem> beta;
    for (const GroupDesc& g : groups) {
      beta.push_back(GroupElem::OfUint64(g, strategy == Strategy::kPayloadScale ? 2 : 1));
    }
    keys = Gen(alpha, beta, groups, rng).value();
    if (strategy == Strategy::kPpTamper) {
      const int level = static_cast<int>(rng.Uniform(n));
      CorrectionWord& cw = keys.pp.cws[level];
      switch (rng.Uniform(3)) {
        case 0:
          cw.t_left = !cw.t_left;
          break;
        case 1:
          cw.t_right = !cw.t_right;
          break;
        default: {
          const int bit = static_cast<int>(rng.Uniform(kLambda));
          cw.seed = cw.seed ^ (bit < 64 ? Seed(uint64_t{1} << bit, 0)
                                        : Seed(0, uint64_t{1} << (bit - 64)));
        }
      }
    }
    // The adversary evaluates every prefix of its target.
    outcome.target = alpha.Prefix(1 + static_cast<int>(rng.Uniform(n)));
    GroupElem y0 = EvalPrefix(keys.key0, keys.pp, outcome.target).value();
    GroupElem y1 = EvalPrefix(keys.key1, keys.pp, outcome.target).value();
    outcome.target_in_p = OnlyOne()(outcome.target.size(), y0 + y1);
  }
  outcome.extraction = Extract(keys.key0, keys.key1, keys.pp, OnlyOne(), transcript);
  outcome.won = outcome.target_in_p &&
                outcome.extraction.x[outcome.target.size() - 1] != outcome.target;
  return outcome;
}

}  // namespace poplar::extract
