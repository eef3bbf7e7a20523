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

#include "poplar/sketch.h"

#include "absl/strings/str_cat.h"
#include "poplar/internal/bytes.h"
#include "poplar/status_macros.h"

namespace poplar {

void ClientCorrelated::AppendBytes(std::vector<uint8_t>& out) const {
  mask_seed.AppendBytes(out);
  for (int k = 0; k < levels(); ++k) {
    a_share[k].AppendBytes(out);
    b_share[k].AppendBytes(out);
  }
}

absl::StatusOr<ClientCorrelated> ClientCorrelated::Decode(
    absl::Span<const uint8_t> bytes, absl::Span<const FieldSpec* const> fields,
    size_t* consumed) {
  internal::ByteReader r(bytes);
  ClientCorrelated c;
  POPLAR_ASSIGN_OR_RETURN(auto seed, r.Bytes(16));
  c.mask_seed = Seed::FromBytes(seed);
  for (const FieldSpec* spec : fields) {
    POPLAR_ASSIGN_OR_RETURN(auto a, r.Bytes(spec->byte_width()));
    POPLAR_ASSIGN_OR_RETURN(FieldElem ae, FieldElem::FromBytes(a, *spec));
    POPLAR_ASSIGN_OR_RETURN(auto b, r.Bytes(spec->byte_width()));
    POPLAR_ASSIGN_OR_RETURN(FieldElem be, FieldElem::FromBytes(b, *spec));
    c.a_share.push_back(ae);
    c.b_share.push_back(be);
  }
  *consumed = r.position();
  return c;
}

MaskShares DeriveMasks(const Seed& mask_seed, int level, const FieldSpec& spec) {
  PrfStream prf(mask_seed, "sketch-abc");
  const uint64_t base = 3 * static_cast<uint64_t>(level);
  return {prf.Elem(base, spec), prf.Elem(base + 1, spec), prf.Elem(base + 2, spec)};
}

SketchClientEncoding SketchClientEncode(absl::Span<const FieldSpec* const> fields,
                                        RandomSource& rng) {
  SketchClientEncoding enc;
  for (auto& share : enc.shares) share.mask_seed = Seed::Random(rng);
  for (size_t k = 0; k < fields.size(); ++k) {
    const FieldSpec& spec = *fields[k];
    const int level = static_cast<int>(k);
    MaskShares m0 = DeriveMasks(enc.shares[0].mask_seed, level, spec);
    MaskShares m1 = DeriveMasks(enc.shares[1].mask_seed, level, spec);
    const FieldElem a = m0.a + m1.a;
    const FieldElem b = m0.b + m1.b;
    const FieldElem c = m0.c + m1.c;
    const FieldElem kappa = FieldElem::Random(spec, rng);
    const FieldElem big_a = kappa - a - a;
    const FieldElem big_b = a.Square() + b - a * kappa + c;
    const FieldElem a0 = FieldElem::Random(spec, rng);
    const FieldElem b0 = FieldElem::Random(spec, rng);
    enc.kappa.push_back(kappa);
    enc.shares[0].a_share.push_back(a0);
    enc.shares[0].b_share.push_back(b0);
    enc.shares[1].a_share.push_back(big_a - a0);
    enc.shares[1].b_share.push_back(big_b - b0);
  }
  return enc;
}

SketchRandomness DeriveSketchRandomness(const Seed& shared_seed,
                                        absl::Span<const uint8_t> client_id, int level,
                                        size_t m, const FieldSpec& spec) {
  std::vector<uint8_t> tag = {'s', 'k', 'e', 't', 'c', 'h', '-', 'r'};
  tag.insert(tag.end(), client_id.begin(), client_id.end());
  internal::ByteWriter(&tag).U32(static_cast<uint32_t>(level));
  PrfStream prf(shared_seed, tag);
  SketchRandomness out;
  out.r.reserve(m);
  out.r_squared.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    out.r.push_back(prf.Elem(i, spec));
    out.r_squared.push_back(out.r.back().Square());
  }
  return out;
}

absl::StatusOr<SketchTriple> ComputeLocals(absl::Span<const FieldElem> v,
                                           absl::Span<const FieldElem> v_star,
                                           const SketchRandomness& rand) {
  if (v.size() != v_star.size() || v.size() != rand.r.size() ||
      rand.r.size() != rand.r_squared.size()) {
    return absl::InvalidArgumentError(absl::StrCat("sketch dimension mismatch: ", v.size(),
                                                   ", ", v_star.size(), ", ",
                                                   rand.r.size()));
  }
  if (v.empty()) return absl::InvalidArgumentError("sketch over an empty vector");
  const FieldSpec& spec = rand.r[0].spec();
  return SketchTriple{InnerProduct(rand.r, v, spec), InnerProduct(rand.r_squared, v, spec),
                      InnerProduct(rand.r, v_star, spec)};
}

SketchTriple Round1(const SketchTriple& locals, const MaskShares& masks) {
  return {locals.z + masks.a, locals.z_star + masks.b, locals.z_star2 + masks.c};
}

FieldElem Round2Share(int party, const SketchTriple& public_sum, const FieldElem& a_share,
                      const FieldElem& b_share) {
  FieldElem out = a_share * public_sum.z + b_share;
  if (party == 0) out += public_sum.z.Square() - public_sum.z_star - public_sum.z_star2;
  return out;
}

FieldElem SketchOffsetProbe(const FieldElem& delta, const FieldElem& delta_star,
                            const FieldElem& delta_star2, size_t m, size_t index,
                            RandomSource& rng) {
  const FieldSpec& spec = delta.spec();
  const FieldSpec* fields[] = {&spec};
  SketchClientEncoding enc = SketchClientEncode(fields, rng);
  const FieldElem& kappa = enc.kappa[0];

  // Split v = e_index and v* = kappa e_index into random shares.
  std::vector<FieldElem> v[2], vs[2];
  for (size_t i = 0; i < m; ++i) {
    FieldElem target = FieldElem::FromUint64(i == index ? 1 : 0, spec);
    FieldElem target_star = i == index ? kappa : FieldElem(spec);
    FieldElem r0 = FieldElem::Random(spec, rng);
    FieldElem r1 = FieldElem::Random(spec, rng);
    v[0].push_back(r0);
    v[1].push_back(target - r0);
    vs[0].push_back(r1);
    vs[1].push_back(target_star - r1);
  }
  Seed shared = Seed::Random(rng);
  const uint8_t id[1] = {0};
  SketchRandomness rand = DeriveSketchRandomness(shared, id, 0, m, spec);

  SketchTriple sent[2];
  for (int b = 0; b < 2; ++b) {
    SketchTriple locals = ComputeLocals(v[b], vs[b], rand).value();
    sent[b] = Round1(locals, DeriveMasks(enc.shares[b].mask_seed, 0, spec));
  }
  SketchTriple sum = sent[0] + sent[1];
  sum = sum + SketchTriple{delta, delta_star, delta_star2};
  return Round2Share(0, sum, enc.shares[0].a_share[0], enc.shares[0].b_share[0]) +
         Round2Share(1, sum, enc.shares[1].a_share[0], enc.shares[1].b_share[0]);
}

}  // namespace poplar
