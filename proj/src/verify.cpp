// Independent replay of kill certificates. Uses ratlin only.

#include <cstdio>
#include <random>

#include "k0bench/certificate.hpp"

namespace k0bench {

namespace {

struct Reject {
  std::string location;
};

void require(bool cond, const std::string& location) {
  if (!cond) throw Reject{location};
}

std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void require_lengths(const std::vector<RatVec>& vs, std::size_t n, const std::string& loc) {
  for (std::size_t i = 0; i < vs.size(); ++i) require(vs[i].size() == n, at(loc, i));
}

RatVec embed(const RatVec& v, std::size_t offset, std::size_t dim) {
  RatVec e = zeros(dim);
  for (std::size_t j = 0; j < v.size(); ++j) e[offset + j] = v[j];
  return e;
}

// lambda >= 0, sum lambda >= 1, rows . (sum lambda_k gens_k) = 0, and the sum lies in cone(other).
bool nonzero_meet(const std::vector<RatVec>& gens, const RatMat& rows,
                  const std::vector<RatVec>& other, std::size_t dim) {
  if (gens.empty()) return false;
  const std::size_t vars = gens.size() + other.size();
  std::vector<LinConstraint> sys;
  for (const auto& r : rows) {
    RatVec c = zeros(vars);
    for (std::size_t k = 0; k < gens.size(); ++k) c[k] = dot(r, gens[k]);
    sys.push_back({c, Rel::Eq, Rat(0)});
  }
  if (!other.empty()) {
    for (std::size_t j = 0; j < dim; ++j) {
      RatVec c = zeros(vars);
      for (std::size_t k = 0; k < gens.size(); ++k) c[k] = gens[k][j];
      for (std::size_t k = 0; k < other.size(); ++k) c[gens.size() + k] = -other[k][j];
      sys.push_back({c, Rel::Eq, Rat(0)});
    }
  }
  for (std::size_t k = 0; k < vars; ++k) sys.push_back({unit_vector(vars, k), Rel::Ge, Rat(0)});
  RatVec sum = zeros(vars);
  for (std::size_t k = 0; k < gens.size(); ++k) sum[k] = 1;
  sys.push_back({sum, Rel::Ge, Rat(1)});
  return lp(std::nullopt, sys, vars, Strictness::Weaken, false).feasible();
}

bool pointed(const std::vector<RatVec>& gens, std::size_t dim) {
  return !nonzero_meet(gens, identity(dim), {}, dim);
}

RatMat projection_for(const std::vector<RatVec>& basis, std::size_t dim) {
  Rref r = rref(basis, dim);
  std::vector<bool> pivot(dim, false);
  for (auto p : r.pivots) pivot[p] = true;
  RatMat out;
  for (std::size_t j = 0; j < dim; ++j) {
    if (pivot[j]) continue;
    RatVec row = unit_vector(dim, j);
    for (std::size_t k = 0; k < r.rows.size(); ++k) row[r.pivots[k]] = -r.rows[k][j];
    out.push_back(std::move(row));
  }
  return out;
}

bool sign_nonneg(const std::vector<RatVec>& positive, const std::vector<RatVec>& neg_gens,
                 const RatVec& x) {
  std::vector<RatVec> gens = positive;
  for (const auto& a : neg_gens) gens.push_back(neg(a));
  return nonneg_combination(gens, x, x.size()).has_value();
}

int sign_of(const std::vector<RatVec>& positive, const std::vector<RatVec>& neg_gens,
            const RatVec& x) {
  if (is_zero(x)) return 0;
  return sign_nonneg(positive, neg_gens, x) ? 1 : -1;
}

void check_structure(const KillCertificate& c) {
  require(c.tool_version == kToolVersion, "tool_version");
  require(!c.summands.empty(), "summands");
  std::size_t n = 0, m = 0;
  for (std::size_t i = 0; i < c.summands.size(); ++i) {
    const SummandRecord& s = c.summands[i];
    const std::string loc = at("summands", i);
    require(s.dim > 0, loc + ".dim");
    require_lengths(s.generators, s.dim, loc + ".generators");
    require(s.unit.size() == s.dim, loc + ".unit");
    require_lengths(s.zero_basis, s.dim, loc + ".zero_basis");
    require_lengths(s.projection, s.dim, loc + ".projection");
    const std::size_t q = s.projection.size();
    require_lengths(s.quotient_generators, q, loc + ".quotient_generators");
    require(s.quotient_unit.size() == q, loc + ".quotient_unit");
    require_lengths(s.neg_generators, q, loc + ".neg_generators");
    require(s.tau.size() == s.dim, loc + ".tau");
    require(s.tau_bar.size() == q, loc + ".tau_bar");
    require_lengths(s.sign_cone_generators, q, loc + ".sign_cone_generators");
    n += s.dim;
    m += q;
  }
  require_lengths(c.input_generators, n, "input_generators");
  require_lengths(c.maximal_basis, n, "maximal_basis");
  require_lengths(c.image_basis, m, "image_basis");
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    require(c.samples[i].element.size() == m, at("samples", i) + ".element");
    require(c.samples[i].phi.size() == c.summands.size(), at("samples", i) + ".phi");
    for (int p : c.samples[i].phi) require(p >= -1 && p <= 1, at("samples", i) + ".phi");
  }
  require(c.input_digest.size() == 16, "input_digest");
}

void check_input(const KillCertificate& c) {
  require(input_digest(c) == c.input_digest, "input_digest");
  for (std::size_t i = 0; i < c.summands.size(); ++i) {
    const SummandRecord& s = c.summands[i];
    const std::string loc = at("summands", i);
    std::vector<RatVec> gens;
    for (const auto& v : s.generators) {
      if (!is_zero(v)) gens.push_back(v);
    }
    require(rank(gens, s.dim) == s.dim, loc + ".generators");
    require(pointed(gens, s.dim), loc + ".generators");
    for (const auto& f : relative_facets(gens, s.dim)) require(sgn(dot(f, s.unit)) > 0, loc + ".unit");
    if (s.flavor == Flavor::AFClass) require(rank(gens, s.dim) == gens.size(), loc + ".flavor");
  }
}

void check(const KillCertificate& c) {
  check_structure(c);
  check_input(c);
  const std::size_t k = c.summands.size();
  std::vector<std::size_t> dims, qdims, off, qoff;
  std::size_t n = 0, m = 0;
  for (const auto& s : c.summands) {
    off.push_back(n);
    qoff.push_back(m);
    dims.push_back(s.dim);
    qdims.push_back(s.projection.size());
    n += s.dim;
    m += s.projection.size();
  }

  // the maximal subgroup: echelon, contains the input, singular, of codimension one
  require(span_basis(c.maximal_basis, n) == c.maximal_basis, "maximal_basis");
  for (std::size_t i = 0; i < c.input_generators.size(); ++i) {
    require(c.maximal_basis.empty() ? is_zero(c.input_generators[i])
                                    : in_span(c.maximal_basis, c.input_generators[i]),
            at("input_generators", i));
  }
  require(c.maximal_basis.size() + 1 == n, "maximal_basis");
  RatMat ann = annihilator(c.maximal_basis, n);
  std::vector<RatVec> ambient;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& v : c.summands[i].generators) {
      if (!is_zero(v)) ambient.push_back(embed(v, off[i], n));
    }
  }
  require(!nonzero_meet(ambient, ann, {}, n), "maximal_basis");

  // blocks, quotients, image
  std::vector<RatVec> image;
  for (const auto& b : c.maximal_basis) {
    RatVec y;
    for (std::size_t i = 0; i < k; ++i) {
      RatVec p = mat_vec(c.summands[i].projection, slice(b, off[i], dims[i]));
      y.insert(y.end(), p.begin(), p.end());
    }
    image.push_back(std::move(y));
  }
  require(span_basis(image, m) == c.image_basis, "image_basis");

  for (std::size_t i = 0; i < k; ++i) {
    const SummandRecord& s = c.summands[i];
    const std::string loc = at("summands", i);
    RatMat restricted;
    for (const auto& a : ann) restricted.push_back(slice(a, off[i], dims[i]));
    require(span_basis(kernel_basis(restricted, dims[i]), dims[i]) == s.zero_basis, loc + ".zero_basis");
    require(projection_for(s.zero_basis, s.dim) == s.projection, loc + ".projection");
    std::vector<RatVec> qg;
    for (const auto& v : s.generators) qg.push_back(mat_vec(s.projection, v));
    require(reduce_generators(qg, qdims[i]) == s.quotient_generators, loc + ".quotient_generators");
    require(mat_vec(s.projection, s.unit) == s.quotient_unit, loc + ".quotient_unit");
  }

  // claim 1: image singular for the quotient cones, no pure elements
  std::vector<RatVec> qambient;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& v : c.summands[i].quotient_generators) qambient.push_back(embed(v, qoff[i], m));
  }
  RatMat image_ann = annihilator(c.image_basis, m);
  require(!nonzero_meet(qambient, image_ann, {}, m), "claims.claim1");
  for (std::size_t i = 0; i < k; ++i) {
    RatMat restricted;
    for (const auto& a : image_ann) restricted.push_back(slice(a, qoff[i], qdims[i]));
    require(kernel_basis(restricted, qdims[i]).empty(), "claims.claim1");
  }

  // neg cones
  for (std::size_t i = 0; i < k; ++i) {
    const SummandRecord& s = c.summands[i];
    const std::string loc = at("summands", i);
    ConeDesc region;
    region.dim = m;
    region.equalities = image_ann;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const auto& gens = c.summands[j].quotient_generators;
      for (const auto& f : relative_facets(gens, qdims[j])) region.inequalities.push_back(embed(f, qoff[j], m));
      for (const auto& a : annihilator(gens, qdims[j])) region.equalities.push_back(embed(a, qoff[j], m));
    }
    std::vector<RatVec> negs;
    if (region.equalities.empty() && region.inequalities.empty()) {
      for (std::size_t d = 0; d < qdims[i]; ++d) {
        negs.push_back(unit_vector(qdims[i], d));
        negs.push_back(neg(unit_vector(qdims[i], d)));
      }
    } else {
      std::vector<std::size_t> keep;
      for (std::size_t d = 0; d < qdims[i]; ++d) keep.push_back(qoff[i] + d);
      negs = project_cone(region, keep).generators;
    }
    require(reduce_generators(negs, qdims[i]) == s.neg_generators, loc + ".neg_generators");
    require(pointed(s.neg_generators, qdims[i]), "claims.neg_pos");
    require(!nonzero_meet(s.neg_generators, {}, s.quotient_generators, qdims[i]), "claims.neg_pos");
  }

  // claim 2, sign cones, claims 7 and 8
  std::vector<RatVec> sign_ambient;
  for (std::size_t i = 0; i < k; ++i) {
    const SummandRecord& s = c.summands[i];
    const std::string loc = at("summands", i);
    require(dot(s.tau, s.unit) == 1, loc + ".tau");
    bool strict = true;
    for (const auto& v : s.generators) {
      require(sgn(dot(s.tau, v)) >= 0, loc + ".tau");
      if (!is_zero(v) && sgn(dot(s.tau, v)) <= 0) strict = false;
    }
    for (const auto& z : s.zero_basis) require(sgn(dot(s.tau, z)) == 0, loc + ".tau");
    require(strict == s.faithful, loc + ".faithful");
    if (s.flavor == Flavor::EClass) require(s.faithful, loc + ".faithful");
    require(vec_mat(s.tau_bar, s.projection, s.dim) == s.tau, loc + ".tau_bar");
    for (const auto& a : s.neg_generators) require(sgn(dot(s.tau_bar, a)) <= 0, "claims.claim2");

    std::vector<RatVec> pc = s.quotient_generators;
    for (const auto& a : s.neg_generators) pc.push_back(neg(a));
    require(reduce_generators(pc, qdims[i]) == s.sign_cone_generators, loc + ".sign_cone_generators");
    require(pointed(s.sign_cone_generators, qdims[i]), "claims.sign_laws");
    for (const auto& p : s.sign_cone_generators) require(sgn(dot(s.tau_bar, p)) >= 0, "claims.claim7");

    std::vector<LinConstraint> sys;
    for (const auto& p : s.sign_cone_generators) sys.push_back({p, Rel::Ge, Rat(0)});
    sys.push_back({s.quotient_unit, Rel::Eq, Rat(1)});
    for (std::size_t j = 0; j < qdims[i]; ++j) {
      auto hi = lp(unit_vector(qdims[i], j), sys, qdims[i]);
      auto lo = lp(neg(unit_vector(qdims[i], j)), sys, qdims[i]);
      require(hi.kind == LpOutcome::Kind::Bounded && lo.kind == LpOutcome::Kind::Bounded &&
                  hi.value == s.tau_bar[j] && -lo.value == s.tau_bar[j],
              "claims.claim8");
    }
    for (const auto& p : s.sign_cone_generators) sign_ambient.push_back(embed(p, qoff[i], m));
  }

  // claim 6, exact
  require(!nonzero_meet(sign_ambient, image_ann, {}, m), "claims.claim6");

  // samples
  std::vector<RatVec> elems = certificate_samples(c.image_basis, c.seed, c.sample_count);
  require(elems.size() == c.samples.size(), "samples");
  for (std::size_t t = 0; t < elems.size(); ++t) {
    const std::string loc = at("samples", t);
    require(elems[t] == c.samples[t].element, loc + ".element");
    bool all_nonneg = true;
    for (std::size_t i = 0; i < k; ++i) {
      const SummandRecord& s = c.summands[i];
      RatVec xi = slice(elems[t], qoff[i], qdims[i]);
      int p = sign_of(s.quotient_generators, s.neg_generators, xi);
      require(p == c.samples[t].phi[i], loc + ".phi");
      all_nonneg = all_nonneg && p >= 0;
      if (p >= 0) require(sgn(dot(s.tau_bar, xi)) >= 0, "claims.claim7");
      require(sign_of(s.quotient_generators, s.neg_generators, neg(xi)) == -p, "claims.sign_laws");
      if (!is_zero(xi)) {
        require(!(sign_nonneg(s.quotient_generators, s.neg_generators, xi) &&
                  sign_nonneg(s.quotient_generators, s.neg_generators, neg(xi))),
                "claims.sign_laws");
      }
      if (t + 1 < elems.size() && p != 0 && c.samples[t + 1].phi[i] == p) {
        RatVec yi = slice(elems[t + 1], qoff[i], qdims[i]);
        require(sign_of(s.quotient_generators, s.neg_generators, add(xi, yi)) == p, "claims.sign_laws");
      }
    }
    if (!is_zero(elems[t])) require(!all_nonneg, "claims.claim6");
  }

  require(c.claims.claim1, "claims.claim1");
  require(c.claims.neg_pos, "claims.neg_pos");
  require(c.claims.claim2, "claims.claim2");
  require(c.claims.sign_laws, "claims.sign_laws");
  require(c.claims.claim6, "claims.claim6");
  require(c.claims.claim7, "claims.claim7");
  require(c.claims.claim8, "claims.claim8");
  require(c.verdict == "singular", "verdict");
}

}  // namespace

std::string input_digest(const KillCertificate& cert) {
  std::string text;
  for (const auto& s : cert.summands) {
    text += s.flavor == Flavor::EClass ? "E;" : "AF;";
    text += std::to_string(s.dim) + ";";
    for (const auto& v : s.generators) text += to_string(v) + ";";
    text += "u" + to_string(s.unit) + "|";
  }
  text += cert.input_integral ? "Z;" : "Q;";
  for (const auto& v : cert.input_generators) text += to_string(v) + ";";
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<RatVec> certificate_samples(const std::vector<RatVec>& image_basis, std::uint64_t seed,
                                        std::size_t count) {
  std::vector<RatVec> out = image_basis;
  if (image_basis.empty()) return out;
  const std::size_t dim = image_basis.front().size();
  std::mt19937_64 rng(seed);
  while (out.size() < image_basis.size() + count) {
    RatVec x = zeros(dim);
    for (const auto& b : image_basis) {
      long c = static_cast<long>(rng() % 7) - 3;
      x = add(x, scale(Rat(c), b));
    }
    if (!is_zero(x)) out.push_back(std::move(x));
  }
  return out;
}

VerifyResult verify_certificate(const KillCertificate& cert) {
  try {
    check(cert);
  } catch (const Reject& r) {
    return {false, r.location};
  } catch (const std::exception& e) {
    return {false, std::string("malformed: ") + e.what()};
  }
  return {true, ""};
}

}  // namespace k0bench
