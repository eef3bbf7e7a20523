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

// Acceptance checks AC1-AC11. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "poplar/dp.h"
#include "poplar/extract.h"
#include "poplar/heavy.h"
#include "poplar/histogram.h"
#include "poplar/idpf.h"
#include "poplar/internal/parallel.h"
#include "poplar/net/simulator.h"
#include "poplar/prg.h"
#include "poplar/random.h"
#include "poplar/sketch.h"
#include "poplar/submission.h"
#include "testing/oracles.h"

namespace poplar {
namespace {

constexpr int kLambda = 127;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BitString RandomBits(int n, RandomSource& rng) {
  BitString s;
  for (int i = 0; i < n; ++i) s.PushBack(rng.NextUint64() & 1);
  return s;
}

// ceil(log2 |G|) from the group's order, computed with big integers.
int LogOrder(const GroupDesc& g) {
  if (g.is_trivial()) return 0;
  if (g.is_ring()) return g.ring_bits();
  testing::BigInt order = 1;
  for (int i = 0; i < g.arity(); ++i) order *= testing::ModulusOf(g.field());
  order -= 1;
  return static_cast<int>(boost::multiprecision::msb(order)) + 1;
}

// Octets of one element on the wire, from the encoding rules: rings use
// ceil(m / 8), fields ceil(ceil(log2 p) / 8) per coordinate.
int WireBytes(const GroupDesc& g) {
  if (g.is_trivial()) return 0;
  if (g.is_ring()) return (g.ring_bits() + 7) / 8;
  const int field_bits = static_cast<int>(boost::multiprecision::msb(
                             testing::ModulusOf(g.field()) - 1)) + 1;
  return g.arity() * ((field_bits + 7) / 8);
}

std::vector<GroupDesc> RandomGroups(int n, RandomSource& rng) {
  std::vector<GroupDesc> g;
  for (int i = 0; i < n; ++i) {
    switch (rng.Uniform(9)) {
      case 0: g.push_back(GroupDesc::Trivial()); break;
      case 1: g.push_back(GroupDesc::Inner()); break;
      case 2: g.push_back(GroupDesc::InnerPair()); break;
      case 3: g.push_back(GroupDesc::Leaf()); break;
      case 4: g.push_back(GroupDesc::LeafPair()); break;
      case 5: g.push_back(GroupDesc::Test()); break;
      case 6: g.push_back(GroupDesc::TestPair()); break;
      default: g.push_back(GroupDesc::Ring(1 + static_cast<int>(rng.Uniform(256)))); break;
    }
  }
  return g;
}

std::vector<GroupElem> RandomPayloads(absl::Span<const GroupDesc> groups, RandomSource& rng) {
  std::vector<GroupElem> beta;
  for (const GroupDesc& g : groups) beta.push_back(GroupElem::Random(g, rng));
  return beta;
}

// AC1: every prefix of every length for every alpha, n <= 12.
Outcome Ac1() {
  const auto start = Clock::now();
  const GroupDesc g = GroupDesc::TestPair();
  std::atomic<uint64_t> failures{0}, checked{0};
  for (int n = 1; n <= 12; ++n) {
    const std::vector<GroupDesc> groups(n, g);
    internal::ParallelFor(size_t{1} << n, [&](size_t a) {
      DeterministicRandom rng((static_cast<uint64_t>(n) << 32) | a);
      const BitString alpha = BitString::FromUint64(a, n);
      const std::vector<GroupElem> beta = RandomPayloads(groups, rng);
      IdpfKeys keys = Gen(alpha, beta, groups, rng).value();
      // Breadth-first over the whole tree, both parties in lockstep.
      struct Node {
        BitString x;
        EvalState s[2];
      };
      std::vector<Node> frontier = {{BitString(), {EvalState::Root(keys.key0),
                                                   EvalState::Root(keys.key1)}}};
      uint64_t local_fail = 0, local_checked = 0;
      for (int l = 1; l <= n; ++l) {
        std::vector<Node> next;
        next.reserve(frontier.size() * 2);
        for (const Node& node : frontier) {
          auto c0 = EvalChildren(0, node.s[0], keys.pp).value();
          auto c1 = EvalChildren(1, node.s[1], keys.pp).value();
          for (int z = 0; z < 2; ++z) {
            BitString x = node.x.Append(z == 1);
            const GroupElem sum = c0[z].y + c1[z].y;
            const bool on_path = alpha.Prefix(l) == x;
            const GroupElem want = on_path ? beta[l - 1] : GroupElem::Zero(g);
            local_fail += sum != want;
            ++local_checked;
            next.push_back({std::move(x), {c0[z].state, c1[z].state}});
          }
        }
        frontier = std::move(next);
      }
      failures += local_fail;
      checked += local_checked;
    });
  }
  const double secs = Seconds(start);
  return {failures == 0 && secs < 120,
          absl::StrFormat("%d failures over %d prefix evaluations, %.1f s", failures.load(),
                          checked.load(), secs)};
}

// Serialized bits that carry no formula content, from the wire layout.
uint64_t KeyPaddingBits() { return 8 * kIdpfKeyBytes - kLambda; }

uint64_t PpPaddingBits(absl::Span<const GroupDesc> groups) {
  uint64_t bits = 8 * 5;  // version, lambda, flags, u16 n
  for (const GroupDesc& g : groups) {
    bits += g.is_ring() ? 16 : 8;          // group code
    bits += 128 - kLambda;                 // seed octets
    bits += 8 - 2;                         // flags octet holding tL, tR
    bits += 8 * WireBytes(g) - LogOrder(g);  // W encoding
  }
  return bits;
}

uint64_t FormulaBits(absl::Span<const GroupDesc> groups) {
  uint64_t bits = kLambda + (kLambda + 2) * groups.size();
  for (const GroupDesc& g : groups) bits += LogOrder(g);
  return bits;
}

// AC2: key-size formula on random configs and the ring configuration.
Outcome Ac2() {
  DeterministicRandom rng(2);
  int mismatches = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.Uniform(300));
    const std::vector<GroupDesc> groups = RandomGroups(n, rng);
    IdpfKeys keys = Gen(RandomBits(n, rng), RandomPayloads(groups, rng), groups, rng).value();
    const uint64_t serialized = 8 * (keys.key0.Serialize().size() + keys.pp.Serialize().size());
    const uint64_t counted = serialized - KeyPaddingBits() - PpPaddingBits(groups);
    mismatches += counted != FormulaBits(groups) || counted != KeyBitsFormula(groups);
  }
  // n = 256, inner Z/2^62, leaf Z/2^254 (2 lambda); both keys and pp.
  const int n = 256, m = 62;
  std::vector<GroupDesc> groups(n - 1, GroupDesc::Ring(m));
  groups.push_back(GroupDesc::Ring(2 * kLambda));
  IdpfKeys keys = Gen(RandomBits(n, rng), RandomPayloads(groups, rng), groups, rng).value();
  const uint64_t serialized = 8 * (keys.key0.Serialize().size() + keys.key1.Serialize().size() +
                                   keys.pp.Serialize().size());
  const uint64_t counted = serialized - 2 * KeyPaddingBits() - PpPaddingBits(groups);
  const uint64_t closed_form = uint64_t{n} * (kLambda + m + 2) + 4 * kLambda - m;
  return {mismatches == 0 && counted == 49'342 && closed_form == 49'342,
          absl::StrFormat("20 random configs: %d mismatches; ring config: %d bits "
                          "(%d serialized), closed form %d",
                          mismatches, counted, serialized, closed_form)};
}

// AC3: PRG expansions made by EvalPrefix at every depth.
Outcome Ac3() {
  DeterministicRandom rng(3);
  int mismatches = 0, checks = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.Uniform(40));
    const std::vector<GroupDesc> groups = RandomGroups(n, rng);
    IdpfKeys keys = Gen(RandomBits(n, rng), RandomPayloads(groups, rng), groups, rng).value();
    uint64_t expected = 0;
    for (int depth = 1; depth <= n; ++depth) {
      expected += 1 + (LogOrder(groups[depth - 1]) + kLambda - 1) / kLambda;
      OracleTranscript t;
      {
        ScopedOracleTranscript scope(&t);
        EvalPrefix(trial % 2 ? keys.key1 : keys.key0, keys.pp, RandomBits(depth, rng)).value();
      }
      mismatches += t.calls() != expected;
      ++checks;
    }
  }
  return {mismatches == 0,
          absl::StrFormat("%d mismatches over %d (config, depth) pairs", mismatches, checks)};
}

const FieldSpec& TestField() { return FieldSpec::Test(); }

// Reconstructed check value for one client holding (v, v_star).
FieldElem CheckValue(absl::Span<const FieldElem> v, absl::Span<const FieldElem> v_star,
                     const SketchClientEncoding& enc, const Seed& shared, RandomSource& rng) {
  const FieldSpec& f = TestField();
  const uint8_t id[1] = {0};
  const SketchRandomness rand = DeriveSketchRandomness(shared, id, 0, v.size(), f);
  std::vector<FieldElem> sh[2], sh_star[2];
  for (size_t i = 0; i < v.size(); ++i) {
    const FieldElem r = FieldElem::Random(f, rng), s = FieldElem::Random(f, rng);
    sh[0].push_back(r);
    sh[1].push_back(v[i] - r);
    sh_star[0].push_back(s);
    sh_star[1].push_back(v_star[i] - s);
  }
  SketchTriple sent[2];
  for (int b = 0; b < 2; ++b) {
    sent[b] = Round1(ComputeLocals(sh[b], sh_star[b], rand).value(),
                     DeriveMasks(enc.shares[b].mask_seed, 0, f));
  }
  const SketchTriple sum = sent[0] + sent[1];
  return Round2Share(0, sum, enc.shares[0].a_share[0], enc.shares[0].b_share[0]) +
         Round2Share(1, sum, enc.shares[1].a_share[0], enc.shares[1].b_share[0]);
}

// AC4: honest completeness and per-vector soundness in the test field.
Outcome Ac4() {
  const auto start = Clock::now();
  const FieldSpec& f = TestField();
  const FieldSpec* fields[] = {&f};
  constexpr size_t kM = 8;

  // Completeness: every unit vector, 10^4 trials each.
  std::atomic<uint64_t> rejections{0};
  internal::ParallelFor(kM, [&](size_t i) {
    DeterministicRandom rng(400 + i);
    for (int t = 0; t < 10'000; ++t) {
      SketchClientEncoding enc = SketchClientEncode(fields, rng);
      std::vector<FieldElem> v(kM, FieldElem(f)), vs(kM, FieldElem(f));
      v[i] = FieldElem::FromUint64(1, f);
      vs[i] = enc.kappa[0];
      rejections += !CheckValue(v, vs, enc, Seed::Random(rng), rng).IsZero();
    }
  });

  // Soundness: 50 fixed invalid vectors. Half carry v* = kappa v (the
  // client's consistent choice), half a fixed unrelated v*.
  DeterministicRandom setup(41);
  struct Invalid {
    std::vector<FieldElem> v;
    std::vector<FieldElem> fixed_star;  // empty: use kappa * v
  };
  std::vector<Invalid> cases;
  while (cases.size() < 50) {
    Invalid c;
    c.v.assign(kM, FieldElem(f));
    const int kind = static_cast<int>(cases.size() % 5);
    if (kind == 0) {  // two ones
      c.v[setup.Uniform(4)] = FieldElem::FromUint64(1, f);
      c.v[4 + setup.Uniform(4)] = FieldElem::FromUint64(1, f);
    } else if (kind == 1) {  // one entry other than 0 or 1
      c.v[setup.Uniform(kM)] = FieldElem::FromUint64(2 + setup.Uniform(65000), f);
    } else {  // dense random
      for (auto& e : c.v) e = FieldElem::Random(f, setup);
    }
    if (cases.size() % 2 == 1) {
      for (size_t i = 0; i < kM; ++i) c.fixed_star.push_back(FieldElem::Random(f, setup));
    }
    cases.push_back(std::move(c));
  }
  const int trials = 100'000;
  const double p = 65537.0;
  const double q = 2.0 / p;
  const double limit = q + 3 * std::sqrt(q * (1 - q) / trials);
  std::vector<int> accepts(cases.size(), 0);
  internal::ParallelFor(cases.size(), [&](size_t k) {
    DeterministicRandom rng(4000 + k);
    std::vector<FieldElem> vs(kM, FieldElem(f));
    for (int t = 0; t < trials; ++t) {
      SketchClientEncoding enc = SketchClientEncode(fields, rng);
      if (cases[k].fixed_star.empty()) {
        for (size_t i = 0; i < kM; ++i) vs[i] = enc.kappa[0] * cases[k].v[i];
      } else {
        vs = cases[k].fixed_star;
      }
      accepts[k] += CheckValue(cases[k].v, vs, enc, Seed::Random(rng), rng).IsZero();
    }
  });
  int worst = 0, over = 0;
  for (int a : accepts) {
    worst = std::max(worst, a);
    over += static_cast<double>(a) / trials > limit;
  }
  const double secs = Seconds(start);
  return {rejections == 0 && over == 0 && secs < 300,
          absl::StrFormat("honest rejections %d/%d; invalid: worst %d/%d accepts "
                          "(limit rate %.2e), %d over; %.1f s",
                          rejections.load(), kM * 10'000, worst, trials, limit, over, secs)};
}

// AC5: additive offsets on the round-1 sum.
Outcome Ac5() {
  DeterministicRandom rng(5);
  const FieldSpec& f = TestField();
  int closed_form_failures = 0;
  for (int t = 0; t < 2000; ++t) {
    const FieldElem ds = FieldElem::Random(f, rng), dss = FieldElem::Random(f, rng);
    const size_t m = 1 + rng.Uniform(8);
    closed_form_failures +=
        SketchOffsetProbe(FieldElem(f), ds, dss, m, rng.Uniform(m), rng) != -ds - dss;
  }
  // Chi-square over 32 equal-width buckets; 31 degrees of freedom, 0.999
  // quantile 61.1.
  const int trials = 64'000, buckets = 32;
  int worst_case = -1;
  double worst_chi2 = 0;
  for (int c = 0; c < 3; ++c) {
    FieldElem d = FieldElem::Random(f, rng);
    if (d.IsZero()) d = FieldElem::FromUint64(1, f);
    const FieldElem ds = FieldElem::Random(f, rng), dss = FieldElem::Random(f, rng);
    std::vector<int> hist(buckets, 0);
    for (int t = 0; t < trials; ++t) {
      ++hist[SketchOffsetProbe(d, ds, dss, 4, 2, rng).low_word() * buckets / 65537];
    }
    double chi2 = 0;
    const double expect = static_cast<double>(trials) / buckets;
    for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
    if (chi2 > worst_chi2) {
      worst_chi2 = chi2;
      worst_case = c;
    }
  }
  return {closed_form_failures == 0 && worst_chi2 < 61.1,
          absl::StrFormat("delta=0 closed-form failures %d/2000; worst chi2 %.1f (case %d, "
                          "threshold 61.1)",
                          closed_form_failures, worst_chi2, worst_case)};
}

// AC6: subset histogram against plaintext counts.
Outcome Ac6() {
  const auto start = Clock::now();
  DeterministicRandom rng(6);
  int mismatches = 0;
  for (int pop = 0; pop < 100; ++pop) {
    const int n = 1 + static_cast<int>(rng.Uniform(16));
    const size_t c = rng.Uniform(201);
    const uint64_t space = uint64_t{1} << n;
    std::vector<BitString> xs;
    const uint64_t support = 1 + rng.Uniform(std::min<uint64_t>(space, 32));
    for (size_t i = 0; i < c; ++i) xs.push_back(BitString::FromUint64(rng.Uniform(support), n));
    std::map<std::string, int64_t> plain;
    for (const BitString& x : xs) ++plain[x.ToBinary()];
    std::vector<BitString> candidates;
    std::map<std::string, bool> used;
    const size_t want = std::min<uint64_t>(rng.Uniform(65), space);
    // Draw around the populated values so most candidates have nonzero counts.
    const uint64_t range = std::min<uint64_t>(space, std::max<uint64_t>(2 * support, 2 * want));
    while (candidates.size() < want) {
      BitString s = BitString::FromUint64(rng.Uniform(range), n);
      if (used.emplace(s.ToBinary(), true).second) candidates.push_back(s);
    }
    std::vector<std::array<ClientSubmission, 2>> clients;
    for (const BitString& x : xs) clients.push_back(HistogramClientSubmit(x, rng).value());
    HistogramResult r =
        RunHistogramLocal(n, clients, candidates, Seed::Random(rng)).value();
    for (size_t j = 0; j < candidates.size(); ++j) {
      mismatches += r.counts[j].ToCenteredInt64().value_or(-1) != plain[candidates[j].ToBinary()];
    }
    mismatches += candidates.size() != r.counts.size();
  }
  return {mismatches == 0,
          absl::StrFormat("%d count mismatches over 100 populations, %.1f s", mismatches,
                          Seconds(start))};
}

std::vector<WeightedPrefix> BruteForceHeavy(const std::vector<BitString>& xs, int64_t t) {
  std::map<BitString, int64_t> counts;
  for (const BitString& x : xs) ++counts[x];
  std::vector<WeightedPrefix> out;
  for (const auto& [s, c] : counts) {
    if (c >= t) out.emplace_back(s, c);
  }
  return out;  // std::map iterates in sorted order
}

// AC7: heavy hitters against plaintext, random and Zipf populations.
Outcome Ac7() {
  const auto start = Clock::now();
  DeterministicRandom rng(7);
  int mismatches = 0, over_budget = 0;
  for (int pop = 0; pop < 100; ++pop) {
    HeavyConfig config;
    config.bits = 1 + static_cast<int>(rng.Uniform(12));
    const size_t c = rng.Uniform(101);
    config.tau = rng.UniformDouble() * 0.3;
    const uint64_t support = 1 + rng.Uniform(12);
    std::vector<BitString> values, xs;
    for (uint64_t i = 0; i < support; ++i) values.push_back(RandomBits(config.bits, rng));
    for (size_t i = 0; i < c; ++i) {
      size_t k = 0;
      while (k + 1 < values.size() && rng.Uniform(2)) ++k;
      xs.push_back(values[k]);
    }
    std::vector<std::array<ClientSubmission, 2>> clients;
    for (const BitString& x : xs) {
      clients.push_back(EncodeClient(x, HeavyGroups(config.bits), rng).value());
    }
    LocalHeavyRun run = RunHeavyHittersLocal(config, clients, Seed::Random(rng)).value();
    const HeavyResult& r = run.results[0];
    const int64_t t = static_cast<int64_t>(std::floor(config.tau * c)) + 1;
    mismatches += r.heavy_hitters != BruteForceHeavy(xs, t);
    over_budget += static_cast<double>(r.prefix_queries) >
                   static_cast<double>(config.bits) * c / t;
  }

  // Zipf(1.03) over 10,000 values, C = 1000, n = 64, tau = 0.1%.
  net::ZipfSource zipf(1.03, 10'000, 64, 77);
  std::vector<BitString> xs;
  std::vector<std::array<ClientSubmission, 2>> clients;
  HeavyConfig config;
  config.bits = 64;
  config.tau = 0.001;
  for (int i = 0; i < 1000; ++i) {
    xs.push_back(zipf.Identifier(zipf.SampleRank(rng)));
    clients.push_back(EncodeClient(xs.back(), HeavyGroups(64), rng).value());
  }
  LocalHeavyRun run = RunHeavyHittersLocal(config, clients, Seed::Random(rng)).value();
  const int64_t t = 2;
  const std::vector<WeightedPrefix> want = BruteForceHeavy(xs, t);
  const bool zipf_ok = run.results[0].heavy_hitters == want;
  const bool zipf_budget = run.results[0].prefix_queries <= 64u * 1000 / t;
  return {mismatches == 0 && over_budget == 0 && zipf_ok && zipf_budget,
          absl::StrFormat("random: %d mismatches, %d over query bound; zipf: %s (%d heavy "
                          "hitters, %d queries <= %d); %.1f s",
                          mismatches, over_budget, zipf_ok ? "exact" : "MISMATCH", want.size(),
                          run.results[0].prefix_queries, 64 * 1000 / t, Seconds(start))};
}

// AC8: composition, noise bound and the empirical Laplace tail.
Outcome Ac8() {
  const double composed = dp::Compose(0.001, 25'600, std::ldexp(1.0, -40));
  const int64_t bound = dp::NoiseBound(0.001, 30);
  DeterministicRandom rng(8);
  const double eps = 0.1, kappa = 5;
  const int64_t tail_bound = dp::NoiseBound(eps, kappa);
  const int trials = 1'000'000;
  int outside = 0;
  for (int i = 0; i < trials; ++i) outside += std::llabs(dp::SampleNoise(eps, rng)) > tail_bound;
  const double p = std::exp(-kappa);
  const double rate = static_cast<double>(outside) / trials;
  const double limit = p + 3 * std::sqrt(p * (1 - p) / trials);
  return {std::abs(composed - 1.22) <= 0.01 && bound == 60'000 && rate <= limit,
          absl::StrFormat("compose = %.4f, noise_bound = %d, tail rate %.2e <= %.2e", composed,
                          bound, rate, limit)};
}

// AC9: the extractor on honest instances.
Outcome Ac9() {
  DeterministicRandom rng(9);
  int wrong = 0, over = 0;
  uint64_t worst_examined = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.Uniform(10));
    std::vector<GroupDesc> groups = RandomGroups(n, rng);
    for (GroupDesc& g : groups) {
      if (g.is_trivial()) g = GroupDesc::TestPair();
    }
    std::vector<GroupElem> ones;
    for (const GroupDesc& g : groups) ones.push_back(GroupElem::OfUint64(g, 1));
    const BitString alpha = RandomBits(n, rng);
    OracleTranscript transcript;
    IdpfKeys keys;
    {
      ScopedOracleTranscript scope(&transcript);
      keys = Gen(alpha, ones, groups, rng).value();
      EvalPrefix(keys.key0, keys.pp, alpha).value();
      EvalPrefix(keys.key1, keys.pp, alpha).value();
    }
    extract::ExtractionResult r =
        extract::Extract(keys.key0, keys.key1, keys.pp, extract::OnlyOne(), transcript);
    for (int l = 1; l <= n; ++l) wrong += r.x[l - 1] != alpha.Prefix(l);
    const uint64_t t = transcript.queries().size();
    over += r.examined > 2 * static_cast<uint64_t>(n) * t;
    worst_examined = std::max(worst_examined, r.examined);
  }
  return {wrong == 0 && over == 0,
          absl::StrFormat("%d wrong levels, %d runs over 2nt (max examined %d)", wrong, over,
                          worst_examined)};
}

// AC10: per-level byte counters against the schema budget.
Outcome Ac10() {
  net::SimulationConfig c;
  c.clients = 300;
  c.bits = 24;
  c.support = 200;
  c.tau = 0.02;
  c.malformed = 15;
  c.seed = 10;
  net::SimulationReport r = net::Simulate(c).value();
  int mismatches = 0, levels = 0;
  for (const net::LevelTraffic& l : r.levels) {
    if (l.active == 0) {
      mismatches += l.bytes_sent != 0;
      continue;
    }
    const uint64_t w = l.level == c.bits ? 32 : 8;
    // Four sketch elements per client (three in ROUND1, one in ROUND2),
    // one weight share per query, three 7-octet frame headers.
    const uint64_t want = 4 * l.active * w + l.queries * w + 3 * 7;
    mismatches += l.bytes_sent != want;
    ++levels;
  }
  return {mismatches == 0 && r.exact_match,
          absl::StrFormat("%d mismatches over %d active levels; output %s", mismatches, levels,
                          r.exact_match ? "exact" : "MISMATCH")};
}

// AC11: throughput smoke test, C = 5000, n = 64.
Outcome Ac11() {
  net::SimulationConfig c;
  c.clients = 5000;
  c.bits = 64;
  c.zipf_s = 1.03;
  c.support = 10'000;
  c.tau = 0.001;
  c.timing = true;
  const auto start = Clock::now();
  net::SimulationReport r = net::Simulate(c).value();
  const double secs = Seconds(start);
  const double throughput = c.clients / (r.aggregate_ms / 1000.0);
  return {secs < 600 && r.exact_match,
          absl::StrFormat("%.1f s end to end, aggregation %.0f ms, %.1f clients/s "
                          "(reported only), output %s",
                          secs, r.aggregate_ms, throughput, r.exact_match ? "exact" : "MISMATCH")};
}

}  // namespace
}  // namespace poplar

// With arguments, runs only the named criteria ("AC4 AC7").
int main(int argc, char** argv) {
  using poplar::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 idpf exhaustive correctness", poplar::Ac1},
      {"AC2 key-size formula", poplar::Ac2},
      {"AC3 prg-call count", poplar::Ac3},
      {"AC4 sketch completeness/soundness", poplar::Ac4},
      {"AC5 offset-attack masking", poplar::Ac5},
      {"AC6 subset-histogram equivalence", poplar::Ac6},
      {"AC7 heavy-hitters equivalence", poplar::Ac7},
      {"AC8 dp calculator", poplar::Ac8},
      {"AC9 extractor honest-soundness", poplar::Ac9},
      {"AC10 communication accounting", poplar::Ac10},
      {"AC11 throughput smoke test", poplar::Ac11},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (argc > 1) {
      const std::string id(name, std::string(name).find(' '));
      bool selected = false;
      for (int i = 1; i < argc; ++i) selected |= id == argv[i];
      if (!selected) continue;
    }
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
