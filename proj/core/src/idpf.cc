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

#include "poplar/idpf.h"

#include "absl/strings/str_cat.h"
#include "poplar/internal/bytes.h"
#include "poplar/status_macros.h"

namespace poplar {
namespace {

GroupElem Negate(const GroupElem& g, bool negate) { return negate ? -g : g; }

absl::Status CheckLevel(const EvalState& state, const PublicParams& pp) {
  if (pp.cws.size() != pp.groups.size()) {
    return absl::InvalidArgumentError("public parameters are inconsistent");
  }
  if (state.depth < 0 || state.depth >= pp.n()) {
    return absl::OutOfRangeError(
        absl::StrCat("cannot evaluate below depth ", state.depth, " of ", pp.n()));
  }
  return absl::OkStatus();
}

EvalStep Finish(int party, const Seed& seed_tilde, bool t_next, int depth,
                const PublicParams& pp) {
  const GroupDesc& group = pp.groups[depth];
  SeededElem conv = ConvertWithSeed(seed_tilde, group);
  EvalStep step;
  step.seed_tilde = seed_tilde;
  step.state = {conv.seed, t_next, depth + 1};
  if (group.is_trivial()) return step;
  GroupElem y = t_next ? conv.value + pp.cws[depth].w : conv.value;
  step.y = Negate(y, party == 1 && !pp.subtractive);
  return step;
}

}  // namespace

absl::StatusOr<IdpfKeys> Gen(const BitString& alpha, absl::Span<const GroupElem> beta,
                             absl::Span<const GroupDesc> groups, RandomSource& rng,
                             GenOptions options) {
  const int n = alpha.size();
  if (n == 0) return absl::InvalidArgumentError("alpha must be nonempty");
  if (n > 0xFFFF) return absl::InvalidArgumentError("alpha is too long");
  if (beta.size() != static_cast<size_t>(n) || groups.size() != static_cast<size_t>(n)) {
    return absl::InvalidArgumentError(absl::StrCat("need ", n, " payloads and groups, got ",
                                                   beta.size(), " and ", groups.size()));
  }
  for (int l = 0; l < n; ++l) {
    if (beta[l].desc() != groups[l]) {
      return absl::InvalidArgumentError(absl::StrCat("payload at level ", l + 1, " is in ",
                                                     beta[l].desc().ToString(), ", expected ",
                                                     groups[l].ToString()));
    }
  }

  IdpfKeys out;
  out.key0 = {0, Seed::Random(rng)};
  out.key1 = {1, Seed::Random(rng)};
  out.pp.groups.assign(groups.begin(), groups.end());
  out.pp.subtractive = options.subtractive;
  out.pp.cws.reserve(n);

  Seed s[2] = {out.key0.seed, out.key1.seed};
  bool t[2] = {false, true};
  for (int l = 0; l < n; ++l) {
    const bool a = alpha.bit(l);
    PrgOutput g[2] = {Expand(s[0]), Expand(s[1])};

    CorrectionWord cw;
    cw.seed = a ? g[0].left ^ g[1].left : g[0].right ^ g[1].right;
    cw.t_left = g[0].t_left ^ g[1].t_left ^ a ^ 1;
    cw.t_right = g[0].t_right ^ g[1].t_right ^ a;
    const bool t_keep_cw = a ? cw.t_right : cw.t_left;

    GroupElem w[2];
    for (int b = 0; b < 2; ++b) {
      Seed keep = a ? g[b].right : g[b].left;
      bool t_keep = a ? g[b].t_right : g[b].t_left;
      Seed tilde = t[b] ? keep ^ cw.seed : keep;
      SeededElem conv = ConvertWithSeed(tilde, groups[l]);
      s[b] = conv.seed;
      w[b] = conv.value;
      t[b] = t_keep ^ (t[b] && t_keep_cw);
    }
    if (!groups[l].is_trivial()) {
      // The same correction serves subtractive shares: y_0 - y_1 expands to
      // the identical expression.
      cw.w = Negate(beta[l] - w[0] + w[1], t[1]);
    }
    out.pp.cws.push_back(std::move(cw));
  }
  return out;
}

absl::StatusOr<EvalStep> EvalNext(int party, const EvalState& state, const PublicParams& pp,
                                  bool bit) {
  POPLAR_RETURN_IF_ERROR(CheckLevel(state, pp));
  const CorrectionWord& cw = pp.cws[state.depth];
  PrgOutput g = Expand(state.seed);
  Seed child = bit ? g.right : g.left;
  bool t_child = bit ? g.t_right : g.t_left;
  if (state.t) {
    child ^= cw.seed;
    t_child ^= bit ? cw.t_right : cw.t_left;
  }
  return Finish(party, child, t_child, state.depth, pp);
}

absl::StatusOr<std::array<EvalStep, 2>> EvalChildren(int party, const EvalState& state,
                                                     const PublicParams& pp) {
  POPLAR_RETURN_IF_ERROR(CheckLevel(state, pp));
  const CorrectionWord& cw = pp.cws[state.depth];
  PrgOutput g = Expand(state.seed);
  if (state.t) {
    g.left ^= cw.seed;
    g.right ^= cw.seed;
    g.t_left ^= cw.t_left;
    g.t_right ^= cw.t_right;
  }
  return std::array<EvalStep, 2>{Finish(party, g.left, g.t_left, state.depth, pp),
                                 Finish(party, g.right, g.t_right, state.depth, pp)};
}

absl::StatusOr<GroupElem> EvalPrefix(const IdpfKey& key, const PublicParams& pp,
                                     const BitString& x) {
  if (x.empty() || x.size() > pp.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("prefix length ", x.size(), " outside [1, ", pp.n(), "]"));
  }
  EvalState state = EvalState::Root(key);
  GroupElem y;
  for (int l = 0; l < x.size(); ++l) {
    POPLAR_ASSIGN_OR_RETURN(EvalStep step, EvalNext(key.party, state, pp, x.bit(l)));
    state = step.state;
    y = std::move(step.y);
  }
  return y;
}

uint64_t EvalCost(absl::Span<const GroupDesc> groups, int depth) {
  uint64_t total = 0;
  for (int l = 0; l < depth; ++l) total += LevelCost(groups[l]);
  return total;
}

uint64_t KeyBitsFormula(absl::Span<const GroupDesc> groups) {
  uint64_t bits = kLambda + static_cast<uint64_t>(kLambda + 2) * groups.size();
  for (const GroupDesc& g : groups) bits += g.LogSize();
  return bits;
}

std::vector<uint8_t> PublicParams::Serialize() const {
  std::vector<uint8_t> out;
  internal::ByteWriter w(&out);
  w.U8(kIdpfWireVersion);
  w.U8(kLambda);
  w.U8(subtractive ? 1 : 0);
  w.U16(static_cast<uint16_t>(groups.size()));
  std::vector<uint8_t> codes;
  for (const GroupDesc& g : groups) g.AppendCode(codes);
  w.Bytes(codes);
  std::vector<uint8_t> level;
  for (size_t l = 0; l < cws.size(); ++l) {
    level.clear();
    cws[l].seed.AppendBytes(level);
    level.push_back(static_cast<uint8_t>(cws[l].t_left | (cws[l].t_right << 1)));
    if (!groups[l].is_trivial()) cws[l].w.AppendBytes(level);
    w.Bytes(level);
  }
  return out;
}

absl::StatusOr<PublicParams> PublicParams::Deserialize(absl::Span<const uint8_t> bytes) {
  internal::ByteReader r(bytes);
  POPLAR_ASSIGN_OR_RETURN(uint8_t version, r.U8());
  if (version != kIdpfWireVersion) {
    return absl::InvalidArgumentError(absl::StrCat("unsupported pp version ", int{version}));
  }
  POPLAR_ASSIGN_OR_RETURN(uint8_t lambda, r.U8());
  if (lambda != kLambda) return absl::InvalidArgumentError("unsupported seed length");
  POPLAR_ASSIGN_OR_RETURN(uint8_t flags, r.U8());
  if (flags > 1) return absl::InvalidArgumentError("unknown pp flags");
  POPLAR_ASSIGN_OR_RETURN(uint16_t n, r.U16());
  if (n == 0) return absl::InvalidArgumentError("pp has no levels");
  PublicParams pp;
  pp.subtractive = flags & 1;
  for (int l = 0; l < n; ++l) {
    size_t consumed = 0;
    POPLAR_ASSIGN_OR_RETURN(GroupDesc g, GroupDesc::Decode(r.Rest(), &consumed));
    POPLAR_RETURN_IF_ERROR(r.Skip(consumed));
    pp.groups.push_back(g);
  }
  for (int l = 0; l < n; ++l) {
    CorrectionWord cw;
    POPLAR_ASSIGN_OR_RETURN(auto seed_bytes, r.Bytes(16));
    if (seed_bytes[15] & 0x80) return absl::InvalidArgumentError("seed top bit set");
    cw.seed = Seed::FromBytes(seed_bytes);
    POPLAR_ASSIGN_OR_RETURN(uint8_t t_bits, r.U8());
    if (t_bits > 3) return absl::InvalidArgumentError("unknown correction flags");
    cw.t_left = t_bits & 1;
    cw.t_right = t_bits & 2;
    if (!pp.groups[l].is_trivial()) {
      POPLAR_ASSIGN_OR_RETURN(auto w_bytes, r.Bytes(pp.groups[l].EncodedBytes()));
      POPLAR_ASSIGN_OR_RETURN(cw.w, GroupElem::Decode(pp.groups[l], w_bytes));
    }
    pp.cws.push_back(std::move(cw));
  }
  if (!r.done()) return absl::InvalidArgumentError("trailing octets after pp");
  return pp;
}

internal::Digest PublicParams::Digest() const { return internal::Sha256(Serialize()); }

std::vector<uint8_t> IdpfKey::Serialize() const {
  std::vector<uint8_t> out;
  out.reserve(kIdpfKeyBytes);
  out.push_back(kIdpfWireVersion);
  out.push_back(static_cast<uint8_t>(party));
  seed.AppendBytes(out);
  return out;
}

absl::StatusOr<IdpfKey> IdpfKey::Deserialize(absl::Span<const uint8_t> bytes) {
  if (bytes.size() != kIdpfKeyBytes) {
    return absl::InvalidArgumentError(
        absl::StrCat("key needs ", kIdpfKeyBytes, " octets, got ", bytes.size()));
  }
  if (bytes[0] != kIdpfWireVersion) return absl::InvalidArgumentError("unsupported key version");
  if (bytes[1] > 1) return absl::InvalidArgumentError("party must be 0 or 1");
  if (bytes[17] & 0x80) return absl::InvalidArgumentError("seed top bit set");
  return IdpfKey{bytes[1], Seed::FromBytes(bytes.subspan(2, 16))};
}

}  // namespace poplar
