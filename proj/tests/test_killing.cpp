#include "doctest.h"
#include "fixtures.hpp"
#include "killgen.hpp"

using namespace k0bench;
using namespace k0bench::testgen;
using k0bench::fixtures::orthant;
using k0bench::fixtures::orthant2;

namespace {

SummandSpec af_orthant(std::size_t n) { return make_summand(orthant(n), Flavor::AFClass); }

std::vector<Quotient> block_quotients(const std::vector<SummandSpec>& ss, const Subgroup& g) {
  std::vector<std::size_t> dims;
  for (const auto& s : ss) dims.push_back(s.group.dim);
  std::vector<Quotient> qs;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    qs.push_back(quotient_order(ss[i].group, coordinate_zero_subgroup(g, dims, i)));
  }
  return qs;
}

ScaledOrderedGroup ray_group() { return make_group(Cone::fingen({ints({1})}, 1), ints({1})); }

}  // namespace

TEST_CASE("make_summand") {
  CHECK_NOTHROW(make_summand(orthant2(), Flavor::AFClass));
  auto three = make_group(Cone::fingen({ints({1, 0}), ints({0, 1}), ints({1, 1})}, 2), ints({1, 1}));
  CHECK_THROWS_AS(make_summand(three, Flavor::AFClass), PreconditionError);
  CHECK_NOTHROW(make_summand(three, Flavor::EClass));
  auto lex = make_group(Cone::lex({ints({1, 0})}, LexTail::ZeroOnly, 2), ints({1, 0}));
  CHECK_THROWS_AS(make_summand(lex, Flavor::EClass), PreconditionError);
}

TEST_CASE("coordinate_zero_subgroup") {
  std::vector<std::size_t> dims{1, 2, 1};
  auto pure = Subgroup::qspan({ints({0, 2, 3, 0})}, 4);
  auto z = coordinate_zero_subgroup(pure, dims, 1);
  REQUIRE(z.generators.size() == 1);
  CHECK(in_span(z.generators, ints({2, 3})));
  CHECK(coordinate_zero_subgroup(pure, dims, 0).generators.empty());

  auto transversal = Subgroup::qspan({ints({1, -1})}, 2);
  CHECK(coordinate_zero_subgroup(transversal, {1, 1}, 0).generators.empty());
  CHECK(coordinate_zero_subgroup(transversal, {1, 1}, 1).generators.empty());

  SUBCASE("random subgroups against the stacked kernel") {
    Rng rng(41);
    for (int t = 0; t < 40; ++t) {
      std::vector<std::size_t> ds{std::size_t(uniform_int(rng, 1, 3)), std::size_t(uniform_int(rng, 1, 3))};
      const std::size_t n = ds[0] + ds[1];
      std::vector<RatVec> gens;
      for (long c = uniform_int(rng, 0, long(n)); c > 0; --c) gens.push_back(int_vec(rng, n, -2, 2));
      auto g = Subgroup::qspan(gens, n);
      auto basis = g.basis();
      for (std::size_t i = 0; i < 2; ++i) {
        // coefficients c with sum c_k b_k vanishing off block i
        const std::size_t off = i == 0 ? 0 : ds[0];
        RatMat stacked;
        for (std::size_t j = 0; j < n; ++j) {
          if (j >= off && j < off + ds[i]) continue;
          RatVec row;
          for (const auto& b : basis) row.push_back(b[j]);
          stacked.push_back(row);
        }
        std::vector<RatVec> brute;
        for (const auto& c : kernel_basis(stacked, basis.size())) {
          RatVec x = zeros(n);
          for (std::size_t k = 0; k < basis.size(); ++k) x = add(x, scale(c[k], basis[k]));
          brute.push_back(slice(x, off, ds[i]));
        }
        auto got = coordinate_zero_subgroup(g, ds, i);
        CHECK(same_span(got.generators, brute, ds[i]));
      }
    }
  }
}

TEST_CASE("verify_claim1") {
  std::vector<SummandSpec> ss{af_orthant(2), af_orthant(2)};
  auto g = Subgroup::qspan({ints({1, -1, 0, 0}), ints({0, 0, 1, -1}), ints({1, 0, -1, 0})}, 4);
  auto r = verify_claim1(ss, g, block_quotients(ss, g));
  CHECK(r.ok());

  SUBCASE("positive element") {
    std::vector<SummandSpec> rays{make_summand(ray_group(), Flavor::AFClass),
                                  make_summand(ray_group(), Flavor::AFClass)};
    auto pos = Subgroup::qspan({ints({1, 1})}, 2);
    std::vector<Quotient> ids;
    for (int i = 0; i < 2; ++i) ids.push_back(quotient_order(ray_group(), Subgroup::qspan({}, 1)));
    auto bad = verify_claim1(rays, pos, ids);
    CHECK_FALSE(bad.singular);
    CHECK(bad.singular_witness == ints({1, 1}));
  }
  SUBCASE("pure element surviving the quotient") {
    auto h = Subgroup::qspan({ints({1, -1, 0, 0})}, 4);
    std::vector<Quotient> ids;
    for (const auto& s : ss) ids.push_back(quotient_order(s.group, Subgroup::qspan({}, 2)));
    auto bad = verify_claim1(ss, h, ids);
    CHECK(bad.singular);
    CHECK_FALSE(bad.no_pure);
    CHECK(bad.pure_block == 0);
    CHECK_FALSE(bad.maximal);
  }
}

TEST_CASE("neg_pos_cones") {
  auto q = quotient_order(ray_group(), Subgroup::qspan({}, 1));
  SUBCASE("zero image") {
    auto np = neg_pos_cones({q, q}, {});
    for (const auto& c : np) {
      CHECK(c.neg.empty());
      CHECK(c.pos.empty());
    }
  }
  SUBCASE("image spanned by (x1, x2) with x2 > 0") {
    auto np = neg_pos_cones({q, q}, {ints({-2, 3})});
    CHECK(nonneg_combination(np[0].neg, ints({-2}), 1).has_value());
    CHECK_FALSE(nonneg_combination(np[0].neg, ints({1}), 1).has_value());
    CHECK(nonneg_combination(np[1].neg, ints({-3}), 1).has_value());
    CHECK(np[0].pos == std::vector<RatVec>{ints({1})});
  }
  SUBCASE("positive image violates disjointness") {
    CHECK_THROWS_AS(neg_pos_cones({q, q}, {ints({1, 0})}), PreconditionError);
  }
}

TEST_CASE("claim2_state") {
  auto s = make_summand(orthant2(), Flavor::EClass);
  SUBCASE("nothing to kill") {
    auto r = claim2_state(s, Subgroup::qspan({}, 2), identity(2), {});
    CHECK(r.faithful);
    CHECK(is_state(s.group, r.state.functional));
  }
  SUBCASE("averaging state along a kill line") {
    auto zero = Subgroup::qspan({ints({1, -1})}, 2);
    auto r = claim2_state(s, zero, canonical_projection(zero.basis(), 2), {});
    CHECK(r.state.functional == RatVec{frac(1, 2), frac(1, 2)});
    CHECK(r.faithful);
    CHECK(r.tau_bar == RatVec{frac(1, 2)});
  }
  SUBCASE("infeasible pos constraint") {
    auto zero = Subgroup::qspan({ints({1, -1})}, 2);
    CHECK_THROWS_AS(claim2_state(s, zero, canonical_projection(zero.basis(), 2), {ints({-1, 0})}),
                    PreconditionError);
  }
}

TEST_CASE("phi_sign") {
  auto q = quotient_order(orthant2(), Subgroup::qspan({}, 2));
  auto o = make_sign_oracle(q.group, {ints({-1, 1})}, RatVec{frac(1, 2), frac(1, 2)});
  CHECK(phi_sign(o, ints({0, 0})) == 0);
  CHECK(phi_sign(o, ints({1, 0})) == 1);
  CHECK(phi_sign(o, ints({2, -1})) == 1);   // (2,-1) + (-1,1) >= 0
  CHECK(phi_sign(o, ints({-1, -1})) == -1);
  CHECK_FALSE(o.lex.has_value());

  SUBCASE("bounded search agrees on conclusive verdicts") {
    Rng rng(42);
    for (int t = 0; t < 15; ++t) {
      auto inst = random_kill_instance(rng, 2);
      auto res = kill_pipeline(inst.summands, inst.g, {7, 10, true});
      for (const auto& oracle : res.oracles) {
        const std::size_t m = oracle.quotient.dim;
        for (int s = 0; s < 10; ++s) {
          RatVec x = int_vec(rng, m, -3, 3);
          bool found = false;
          for (long k = 1; k <= 25 && !found; ++k) {
            for (long a = 0; a <= 3 && !found; ++a) {
              RatVec y = scale(Rat(k), x);
              for (const auto& nv : oracle.neg) y = add(y, scale(Rat(a), nv));
              found = nonneg_combination(oracle.quotient.cone.generators, y, m).has_value();
            }
          }
          if (found && !is_zero(x)) CHECK(phi_sign(oracle, x) == 1);
          if (phi_sign(oracle, x) == -1) CHECK_FALSE(found);
        }
      }
    }
  }
}

TEST_CASE("kill_pipeline") {
  SUBCASE("two orthants, hand computation") {
    std::vector<SummandSpec> ss{af_orthant(2), af_orthant(2)};
    auto g = Subgroup::qspan({ints({1, -1, 0, 0}), ints({0, 0, 1, -1}), ints({1, 0, -1, 0})}, 4);
    auto res = kill_pipeline(ss, g, {1, 20, false});
    const auto& c = res.certificate;
    CHECK_FALSE(res.extended);
    for (const auto& s : c.summands) {
      CHECK(s.projection == RatMat{ints({1, 1})});
      CHECK(s.quotient_generators == std::vector<RatVec>{ints({1})});
      CHECK(s.quotient_unit == ints({2}));
      CHECK(s.neg_generators == std::vector<RatVec>{ints({-1})});
      CHECK(s.tau == RatVec{frac(1, 2), frac(1, 2)});
      CHECK(s.tau_bar == RatVec{frac(1, 2)});
      CHECK(s.faithful);
    }
    CHECK(c.image_basis == std::vector<RatVec>{ints({1, -1})});
    CHECK(c.samples.front().phi == std::vector<int>{1, -1});
    CHECK(c.verdict == "singular");
    CHECK(verify_certificate(c).ok);
  }
  SUBCASE("single summand, one singular vector") {
    auto res = kill_pipeline({make_summand(orthant2(), Flavor::EClass)}, Subgroup::qspan({ints({1, -1})}, 2));
    const auto& s = res.certificate.summands[0];
    CHECK(s.tau == RatVec{frac(1, 2), frac(1, 2)});
    REQUIRE(res.oracles[0].lex);
    CHECK(in_cone(*res.oracles[0].lex, ints({1})));
    CHECK(res.certificate.samples.empty());
    CHECK(verify_certificate(res.certificate).ok);
  }
  SUBCASE("two orthants, one mixed vector, maximalized") {
    auto res = kill_pipeline({af_orthant(2), af_orthant(2)}, Subgroup::qspan({ints({1, -1, 0, 0})}, 4));
    CHECK(res.extended);
    CHECK(res.certificate.maximal_basis.size() == 3);
    CHECK(verify_certificate(res.certificate).ok);
  }
  SUBCASE("zero subgroup of a one-dimensional summand") {
    auto res = kill_pipeline({make_summand(ray_group(), Flavor::AFClass)}, Subgroup::qspan({}, 1));
    CHECK(res.certificate.maximal_basis.empty());
    CHECK(res.certificate.image_basis.empty());
    CHECK(verify_certificate(res.certificate).ok);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(kill_pipeline({af_orthant(2)}, Subgroup::qspan({ints({1, 0})}, 2)), PreconditionError);
    CHECK_THROWS_AS(kill_pipeline({af_orthant(3)}, Subgroup::qspan({ints({1, -1, 0})}, 3), {1, 0, false}),
                    PreconditionError);
    CHECK_THROWS_AS(kill_pipeline({}, Subgroup::qspan({}, 0)), PreconditionError);
  }
  SUBCASE("random valid instances") {
    Rng rng(43);
    for (int t = 0; t < 20; ++t) {
      auto inst = random_kill_instance(rng, std::size_t(uniform_int(rng, 2, 3)));
      auto res = kill_pipeline(inst.summands, inst.g, {std::uint64_t(t), 40, true});
      const auto& c = res.certificate;
      for (std::size_t i = 0; i < c.summands.size(); ++i) {
        const auto& s = c.summands[i];
        CHECK(is_state(inst.summands[i].group, s.tau));
        for (const auto& z : s.zero_basis) CHECK(dot(s.tau, z) == 0);
        for (const auto& a : s.neg_generators) CHECK(sgn(dot(s.tau_bar, a)) <= 0);
        if (s.flavor == Flavor::EClass) CHECK(s.faithful);
        CHECK(s.projection.size() == 1);
      }
      auto v = verify_certificate(c);
      CHECK_MESSAGE(v.ok, v.location);
    }
  }
}

TEST_CASE("verify_certificate mutations") {
  auto res = kill_pipeline({af_orthant(2), af_orthant(2)}, Subgroup::qspan({ints({1, -1, 0, 0})}, 4));
  KillCertificate c = res.certificate;
  REQUIRE(verify_certificate(c).ok);

  auto tau = c;
  tau.summands[1].tau[0] += 1;
  CHECK_FALSE(verify_certificate(tau).ok);

  auto phi = c;
  phi.samples[0].phi[0] = -phi.samples[0].phi[0];
  CHECK(verify_certificate(phi).location == "samples[0].phi");

  auto seed = c;
  seed.seed += 1;
  CHECK_FALSE(verify_certificate(seed).ok);

  auto flag = c;
  flag.claims.claim8 = false;
  CHECK(verify_certificate(flag).location == "claims.claim8");

  auto shape = c;
  shape.summands[0].tau_bar.push_back(Rat(0));
  CHECK(verify_certificate(shape).location == "summands[0].tau_bar");

  auto input = c;
  input.input_generators[0][0] += 1;
  CHECK(verify_certificate(input).location == "input_digest");

  KillCertificate empty;
  CHECK_FALSE(verify_certificate(empty).ok);
}
