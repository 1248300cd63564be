#include "k0bench/killing.hpp"

#include <numeric>

namespace k0bench {

const char* to_string(Flavor f) { return f == Flavor::EClass ? "EClass" : "AFClass"; }

namespace {

std::vector<std::size_t> offsets(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> off(dims.size(), 0);
  for (std::size_t i = 1; i < dims.size(); ++i) off[i] = off[i - 1] + dims[i - 1];
  return off;
}

std::size_t total(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{0});
}

RatVec embed(const RatVec& v, std::size_t offset, std::size_t dim) {
  RatVec e = zeros(dim);
  for (std::size_t j = 0; j < v.size(); ++j) e[offset + j] = v[j];
  return e;
}

RatVec block_apply(const std::vector<Quotient>& qs, const std::vector<std::size_t>& dims,
                   const RatVec& x) {
  RatVec out;
  std::size_t off = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    RatVec y = mat_vec(qs[i].projection, slice(x, off, dims[i]));
    out.insert(out.end(), y.begin(), y.end());
    off += dims[i];
  }
  return out;
}

std::vector<RatVec> image_of(const std::vector<Quotient>& qs, const std::vector<std::size_t>& dims,
                             const Subgroup& g) {
  std::size_t m = 0;
  for (const auto& q : qs) m += q.group.dim;
  std::vector<RatVec> imgs;
  for (const auto& b : g.basis()) imgs.push_back(block_apply(qs, dims, b));
  return span_basis(imgs, m);
}

// Some nonzero x = sum lambda_k a_k (lambda >= 0) lying in cone(b); b empty means x = 0.
std::optional<RatVec> cones_meet_nonzero(const std::vector<RatVec>& a, const std::vector<RatVec>& b,
                                         std::size_t dim) {
  if (a.empty()) return std::nullopt;
  const std::size_t vars = a.size() + b.size();
  std::vector<LinConstraint> sys;
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec row = zeros(vars);
    for (std::size_t k = 0; k < a.size(); ++k) row[k] = a[k][j];
    for (std::size_t k = 0; k < b.size(); ++k) row[a.size() + k] = -b[k][j];
    sys.push_back({row, Rel::Eq, Rat(0)});
  }
  for (std::size_t k = 0; k < vars; ++k) sys.push_back({unit_vector(vars, k), Rel::Ge, Rat(0)});
  RatVec sum = zeros(vars);
  for (std::size_t k = 0; k < a.size(); ++k) sum[k] = 1;
  sys.push_back({sum, Rel::Ge, Rat(1)});
  LpOutcome o = lp(std::nullopt, sys, vars, Strictness::Weaken, false);
  if (!o.feasible()) return std::nullopt;
  RatVec x = zeros(dim);
  for (std::size_t k = 0; k < a.size(); ++k) x = add(x, scale(o.point[k], a[k]));
  return x;
}

[[noreturn]] void abort_claim(const std::string& what) {
  throw PreconditionError("kill_pipeline: " + what);
}

}  // namespace

SummandSpec make_summand(ScaledOrderedGroup group, Flavor flavor) {
  if (group.cone.kind != ConeKind::FinGen) {
    throw PreconditionError("make_summand: summand cones must be finitely generated");
  }
  std::vector<RatVec> gens;
  for (const auto& v : group.cone.generators) {
    if (!is_zero(v)) gens.push_back(v);
  }
  if (flavor == Flavor::AFClass && rank(gens, group.dim) != gens.size()) {
    throw PreconditionError("make_summand: AFClass cone generators are not linearly independent");
  }
  if (flavor == Flavor::EClass) {
    std::vector<LinConstraint> sys = state_set(group).system();
    for (const auto& v : gens) sys.push_back({v, Rel::Gt, Rat(0)});
    if (!lp(std::nullopt, sys, group.dim, Strictness::TwoPhase, false).feasible()) {
      throw PreconditionError("make_summand: EClass group has no faithful state");
    }
  }
  return SummandSpec{std::move(group), flavor};
}

Subgroup coordinate_zero_subgroup(const Subgroup& g, const std::vector<std::size_t>& dims,
                                  std::size_t i) {
  const std::size_t n = total(dims);
  if (g.dim != n) throw DimensionMismatch("coordinate_zero_subgroup: subgroup dimension");
  if (i >= dims.size()) throw DimensionMismatch("coordinate_zero_subgroup: block index");
  const std::size_t off = offsets(dims)[i];
  RatMat restricted;
  for (const auto& a : annihilator(g.basis(), n)) restricted.push_back(slice(a, off, dims[i]));
  return Subgroup::qspan(kernel_basis(restricted, dims[i]), dims[i]);
}

Claim1Report verify_claim1(const std::vector<SummandSpec>& summands, const Subgroup& g,
                           const std::vector<Quotient>& quotients) {
  if (summands.size() != quotients.size()) {
    throw DimensionMismatch("verify_claim1: one quotient per summand");
  }
  std::vector<std::size_t> dims, qdims;
  std::vector<ScaledOrderedGroup> groups, qgroups;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    dims.push_back(summands[i].group.dim);
    qdims.push_back(quotients[i].group.dim);
    groups.push_back(summands[i].group);
    qgroups.push_back(quotients[i].group);
  }
  const std::size_t m = total(qdims);
  Subgroup image = Subgroup::qspan(image_of(quotients, dims, g), m);
  Claim1Report r;
  auto s = is_singular(direct_sum(qgroups), image);
  r.singular = s.singular;
  r.singular_witness = s.witness;
  r.no_pure = true;
  for (std::size_t i = 0; i < qdims.size() && r.no_pure; ++i) {
    auto z = coordinate_zero_subgroup(image, qdims, i);
    if (!z.generators.empty()) {
      r.no_pure = false;
      r.pure_block = i;
      r.pure_witness = z.generators.front();
    }
  }
  ScaledOrderedGroup ambient = direct_sum(groups);
  if (is_singular(ambient, g).singular) {
    auto mx = is_maximally_singular(ambient, g);
    r.maximal = mx.maximal;
    r.maximal_extension = mx.extension;
  }
  return r;
}

std::vector<NegPos> neg_pos_cones(const std::vector<Quotient>& quotients,
                                  const std::vector<RatVec>& image_basis) {
  std::vector<std::size_t> qdims;
  for (const auto& q : quotients) qdims.push_back(q.group.dim);
  const std::size_t m = total(qdims);
  const auto off = offsets(qdims);
  std::vector<NegPos> out;
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    ConeDesc region;
    region.dim = m;
    region.equalities = annihilator(image_basis, m);
    for (std::size_t j = 0; j < quotients.size(); ++j) {
      if (j == i) continue;
      const auto& gens = quotients[j].group.cone.generators;
      for (const auto& f : relative_facets(gens, qdims[j])) {
        region.inequalities.push_back(embed(f, off[j], m));
      }
      for (const auto& a : annihilator(gens, qdims[j])) {
        region.equalities.push_back(embed(a, off[j], m));
      }
    }
    std::vector<std::size_t> keep(qdims[i]);
    std::iota(keep.begin(), keep.end(), off[i]);
    NegPos np;
    if (region.equalities.empty() && region.inequalities.empty()) {
      // the image is everything and there are no other blocks
      for (std::size_t k = 0; k < qdims[i]; ++k) {
        np.neg.push_back(unit_vector(qdims[i], k));
        np.neg.push_back(neg(unit_vector(qdims[i], k)));
      }
    } else {
      np.neg = project_cone(region, keep).generators;
    }
    np.neg = reduce_generators(np.neg, qdims[i]);
    for (const auto& v : np.neg) np.pos.push_back(neg(v));
    if (auto w = cones_meet_nonzero(np.neg, {}, qdims[i])) {
      abort_claim("H^neg of block " + std::to_string(i) + " is not pointed; " + to_string(*w) +
                  " lies in H^neg and H^pos");
    }
    if (auto w = cones_meet_nonzero(np.neg, quotients[i].group.cone.generators, qdims[i])) {
      abort_claim("H^neg of block " + std::to_string(i) + " meets the positive cone at " +
                  to_string(*w));
    }
    out.push_back(std::move(np));
  }
  return out;
}

Claim2Result claim2_state(const SummandSpec& summand, const Subgroup& zero,
                          const RatMat& projection, const std::vector<RatVec>& pos_preimage) {
  const auto& g = summand.group;
  FindStateResult fs = find_state(g, zero, pos_preimage);
  if (!fs.state) {
    throw PreconditionError("claim2_state: no state kills the zero block and is nonnegative on "
                            "the pos cone; Farkas multipliers " + to_string(fs.farkas));
  }
  Claim2Result r;
  r.state = *fs.state;
  r.faithful = is_faithful(g, r.state.functional);
  if (summand.flavor == Flavor::EClass && !r.faithful) {
    std::vector<LinConstraint> strict = fs.system;
    for (const auto& v : g.cone.generators) {
      if (!is_zero(v)) strict.push_back({v, Rel::Gt, Rat(0)});
    }
    LpOutcome o = lp(std::nullopt, strict, g.dim, Strictness::TwoPhase, false);
    if (!o.feasible()) {
      throw PreconditionError("claim2_state: no faithful state satisfies the constraints");
    }
    r.state = State{o.point};
    r.faithful = true;
  }
  auto tb = solve_linear(transpose(projection, g.dim), r.state.functional, projection.size());
  if (!tb) throw std::logic_error("claim2_state: state does not factor through the quotient");
  r.tau_bar = *tb;
  return r;
}

SignOracle make_sign_oracle(const ScaledOrderedGroup& quotient, const std::vector<RatVec>& neg_gens,
                            const RatVec& tau_bar) {
  SignOracle o{quotient, neg_gens, std::nullopt};
  if (quotient.dim == 1) o.lex = Cone::lex({tau_bar}, LexTail::ZeroOnly, 1);
  return o;
}

bool phi_nonneg_witness(const SignOracle& oracle, const RatVec& x) {
  if (x.size() != oracle.quotient.dim) throw DimensionMismatch("phi_sign: element length");
  std::vector<RatVec> gens = oracle.quotient.cone.generators;
  for (const auto& a : oracle.neg) gens.push_back(neg(a));
  return nonneg_combination(gens, x, oracle.quotient.dim).has_value();
}

int phi_sign(const SignOracle& oracle, const RatVec& x) {
  if (x.size() != oracle.quotient.dim) throw DimensionMismatch("phi_sign: element length");
  if (is_zero(x)) return 0;
  return phi_nonneg_witness(oracle, x) ? 1 : -1;
}

KillResult kill_pipeline(const std::vector<SummandSpec>& summands, const Subgroup& g,
                         const KillOptions& options) {
  if (summands.empty()) throw PreconditionError("kill_pipeline: no summands");
  std::vector<std::size_t> dims;
  std::vector<ScaledOrderedGroup> groups;
  for (const auto& s : summands) {
    if (s.group.cone.kind != ConeKind::FinGen) {
      throw PreconditionError("kill_pipeline: summand cones must be finitely generated");
    }
    dims.push_back(s.group.dim);
    groups.push_back(s.group);
  }
  const std::size_t n = total(dims);
  if (g.dim != n) throw DimensionMismatch("kill_pipeline: subgroup dimension");
  ScaledOrderedGroup ambient = direct_sum(groups);

  KillResult res;
  KillCertificate& cert = res.certificate;
  cert.seed = options.seed;
  cert.sample_count = options.samples;
  cert.input_generators = g.generators;
  cert.input_integral = g.kind == SpanKind::ZSpan;
  for (const auto& s : summands) {
    SummandRecord rec;
    rec.flavor = s.flavor;
    rec.dim = s.group.dim;
    rec.generators = s.group.cone.generators;
    rec.unit = s.group.unit;
    cert.summands.push_back(std::move(rec));
  }
  cert.input_digest = input_digest(cert);

  Subgroup gq = Subgroup::qspan(g.basis(), n);
  if (auto s = is_singular(ambient, gq); !s.singular) {
    abort_claim("input subgroup is not singular; positive element " + to_string(s.witness));
  }
  if (options.maximalize) {
    const std::size_t before = gq.generators.size();
    gq = maximalize(ambient, gq).subgroup;
    for (;;) {
      auto mx = is_maximally_singular(ambient, gq);
      if (mx.maximal) break;
      auto b = gq.generators;
      b.push_back(mx.extension);
      gq = Subgroup::qspan(b, n);
    }
    res.extended = gq.generators.size() != before;
  }
  cert.maximal_basis = gq.generators;

  const std::size_t k = summands.size();
  std::vector<Subgroup> zeros_;
  std::vector<Quotient> quotients;
  for (std::size_t i = 0; i < k; ++i) {
    zeros_.push_back(coordinate_zero_subgroup(gq, dims, i));
    quotients.push_back(quotient_order(summands[i].group, zeros_.back()));
  }
  std::vector<std::size_t> qdims;
  for (const auto& q : quotients) qdims.push_back(q.group.dim);
  const auto qoff = offsets(qdims);
  cert.image_basis = image_of(quotients, dims, gq);

  Claim1Report c1 = verify_claim1(summands, gq, quotients);
  if (!c1.singular) abort_claim("image not singular; positive element " + to_string(c1.singular_witness));
  if (!c1.no_pure) {
    abort_claim("image contains the pure element " + to_string(c1.pure_witness) + " in block " +
                std::to_string(c1.pure_block));
  }
  if (!c1.maximal) {
    abort_claim("subgroup is not maximally singular; extension " + to_string(c1.maximal_extension));
  }
  cert.claims.claim1 = true;

  std::vector<NegPos> np = neg_pos_cones(quotients, cert.image_basis);
  cert.claims.neg_pos = true;

  std::vector<ScaledOrderedGroup> sign_groups;
  for (std::size_t i = 0; i < k; ++i) {
    SummandRecord& rec = cert.summands[i];
    const Quotient& q = quotients[i];
    rec.zero_basis = zeros_[i].generators;
    rec.projection = q.projection;
    rec.quotient_generators = q.group.cone.generators;
    rec.quotient_unit = q.group.unit;
    rec.neg_generators = np[i].neg;

    std::vector<RatVec> lifts;
    for (const auto& p : np[i].pos) lifts.push_back(canonical_lift(rec.zero_basis, dims[i], p));
    Claim2Result c2 = claim2_state(summands[i], zeros_[i], q.projection, lifts);
    rec.tau = c2.state.functional;
    rec.faithful = c2.faithful;
    rec.tau_bar = c2.tau_bar;
    for (const auto& p : np[i].pos) {
      if (sgn(dot(rec.tau_bar, p)) < 0) abort_claim("induced state negative on " + to_string(p));
    }

    std::vector<RatVec> pc = q.group.cone.generators;
    pc.insert(pc.end(), np[i].pos.begin(), np[i].pos.end());
    rec.sign_cone_generators = reduce_generators(pc, qdims[i]);
    res.oracles.push_back(make_sign_oracle(q.group, np[i].neg, rec.tau_bar));

    for (const auto& p : rec.sign_cone_generators) {
      if (sgn(dot(rec.tau_bar, p)) < 0) {
        abort_claim("induced state negative on sign cone generator " + to_string(p));
      }
    }
    ScaledOrderedGroup sg = make_group(Cone::fingen(rec.sign_cone_generators, qdims[i]), rec.quotient_unit);
    auto sys = state_set(sg).system();
    for (std::size_t j = 0; j < qdims[i]; ++j) {
      auto hi = lp(unit_vector(qdims[i], j), sys, qdims[i]);
      auto lo = lp(neg(unit_vector(qdims[i], j)), sys, qdims[i]);
      if (hi.kind != LpOutcome::Kind::Bounded || lo.kind != LpOutcome::Kind::Bounded ||
          hi.value != rec.tau_bar[j] || -lo.value != rec.tau_bar[j]) {
        abort_claim("sign cone of block " + std::to_string(i) + " has more than one state");
      }
    }
    sign_groups.push_back(std::move(sg));
  }
  cert.claims.claim2 = true;
  cert.claims.claim7 = true;
  cert.claims.claim8 = true;

  ScaledOrderedGroup sign_sum = direct_sum(sign_groups);
  if (auto s = is_singular(sign_sum.cone, cert.image_basis); !s.singular) {
    abort_claim("image meets the sign cones at " + to_string(s.witness));
  }

  auto phis = [&](const RatVec& x) {
    std::vector<int> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(phi_sign(res.oracles[i], slice(x, qoff[i], qdims[i])));
    return out;
  };
  std::vector<RatVec> elems = certificate_samples(cert.image_basis, options.seed, options.samples);
  for (const auto& x : elems) cert.samples.push_back({x, phis(x)});

  for (std::size_t s = 0; s < cert.samples.size(); ++s) {
    const SampleRecord& a = cert.samples[s];
    if (!is_zero(a.element)) {
      bool all_nonneg = true;
      for (int p : a.phi) all_nonneg = all_nonneg && p >= 0;
      if (all_nonneg) abort_claim("sampled image element " + to_string(a.element) + " is sign-positive");
    }
    for (std::size_t i = 0; i < k; ++i) {
      RatVec xi = slice(a.element, qoff[i], qdims[i]);
      if (a.phi[i] >= 0 && sgn(dot(cert.summands[i].tau_bar, xi)) < 0) {
        abort_claim("induced state negative on sign-positive " + to_string(xi));
      }
    }
    if (s + 1 == cert.samples.size()) break;
    const SampleRecord& b = cert.samples[s + 1];
    RatVec sum = add(a.element, b.element);
    for (std::size_t i = 0; i < k; ++i) {
      const SignOracle& o = res.oracles[i];
      RatVec xi = slice(a.element, qoff[i], qdims[i]);
      RatVec yi = slice(b.element, qoff[i], qdims[i]);
      RatVec si = slice(sum, qoff[i], qdims[i]);
      bool ok = phi_sign(o, neg(xi)) == -a.phi[i];
      if (a.phi[i] == b.phi[i] && a.phi[i] != 0) ok = ok && phi_sign(o, si) == a.phi[i];
      if (!is_zero(xi)) ok = ok && !(phi_nonneg_witness(o, xi) && phi_nonneg_witness(o, neg(xi)));
      if (!ok) abort_claim("sign laws fail in block " + std::to_string(i) + " at " + to_string(xi));
    }
  }
  cert.claims.sign_laws = true;
  cert.claims.claim6 = true;
  cert.verdict = "singular";
  return res;
}

}  // namespace k0bench
