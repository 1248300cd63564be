#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "k0bench/totalize.hpp"

using namespace k0bench;
using namespace k0bench::testgen;
using k0bench::fixtures::orthant2;
using k0bench::fixtures::sphere_plus_point;

namespace {

const State kHalfHalf{RatVec{Rat(1, 2), Rat(1, 2)}};

State centre_state(const ScaledOrderedGroup& g) {
  auto r = find_state(g, Subgroup::qspan({}, g.dim), {});
  REQUIRE(r.state);
  return *r.state;
}

RatVec random_kernel_element(Rng& rng, const RatVec& tau) {
  auto ker = kernel_basis(RatMat{tau}, tau.size());
  for (;;) {
    RatVec x = zeros(tau.size());
    for (const auto& k : ker) x = add(x, scale(Rat(uniform_int(rng, -3, 3)), k));
    if (!is_zero(x)) return x;
  }
}

}  // namespace

TEST_CASE("lex_order") {
  Cone std2 = lex_order(identity(2), 2);
  CHECK(sign_in(std2, ints({1, -7})) == Sign::Pos);
  CHECK(sign_in(std2, ints({0, -1})) == Sign::Neg);
  CHECK(sign_in(std2, ints({0, 0})) == Sign::Zero);
  Cone line = lex_order({ints({1})}, 1);
  CHECK(sign_in(line, ints({3})) == Sign::Pos);
  CHECK(sign_in(line, ints({-2})) == Sign::Neg);
  CHECK_THROWS_AS(lex_order({ints({1, 1}), ints({2, 2})}, 2), PreconditionError);

  SUBCASE("trichotomy on a grid for random bases") {
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
      std::vector<RatVec> b{nonzero_int_vec(rng, 3, -2, 2), nonzero_int_vec(rng, 3, -2, 2),
                            nonzero_int_vec(rng, 3, -2, 2)};
      if (rank(b, 3) != 3) continue;
      Cone c = lex_order(b, 3);
      for (long i = -2; i <= 2; ++i) {
        for (long j = -2; j <= 2; ++j) {
          for (long k = -2; k <= 2; ++k) {
            RatVec x = ints({i, j, k});
            int hits = (cone_contains(c, x) == Membership::PositiveNonzero) +
                       (cone_contains(c, neg(x)) == Membership::PositiveNonzero) + is_zero(x);
            CHECK(hits == 1);
          }
        }
      }
      // the basis vectors themselves are positive
      for (const auto& v : b) CHECK(sign_in(c, v) == Sign::Pos);
    }
  }
}

TEST_CASE("totalize_with_state") {
  SUBCASE("orthant with the averaging state") {
    auto t = totalize_with_state(orthant2(), kHalfHalf);
    CHECK(t.tiebreak == std::vector<RatVec>{ints({1, -1})});
    for (long a = -10; a <= 10; ++a) {
      for (long b = -10; b <= 10; ++b) {
        bool expect = a + b > 0 || (a + b == 0 && a >= 0);
        CHECK(in_cone(t.group.cone, ints({a, b})) == expect);
      }
    }
  }
  SUBCASE("one-dimensional group") {
    auto g = make_group(Cone::fingen({ints({2})}, 1), ints({3}));
    auto t = totalize_with_state(g, State{RatVec{Rat(1, 3)}});
    CHECK(in_cone(t.group.cone, ints({5})));
    CHECK_FALSE(in_cone(t.group.cone, ints({-1})));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(totalize_with_state(orthant2(), State{ints({1, 0})}), PreconditionError);
    CHECK_THROWS_AS(totalize_with_state(orthant2(), State{ints({1, 1})}), PreconditionError);
    CHECK_THROWS_AS(totalize_with_state(orthant2(), kHalfHalf, {ints({1, 0})}), PreconditionError);
  }
  SUBCASE("random faithful states: total, contains the cone, unique state") {
    Rng rng(32);
    for (int t = 0; t < 25; ++t) {
      auto g = fingen_group(rng, std::size_t(uniform_int(rng, 1, 4)));
      State tau = centre_state(g);
      auto tot = totalize_with_state(g, tau);
      for (const auto& v : g.cone.generators) {
        CHECK(cone_contains(tot.group, v) == Membership::PositiveNonzero);
      }
      for (const auto& val : tot.generator_values) CHECK(sgn(val) > 0);
      for (int s = 0; s < 20; ++s) {
        RatVec x = int_vec(rng, g.dim, -3, 3);
        int hits = in_cone(tot.group.cone, x) + in_cone(tot.group.cone, neg(x)) - is_zero(x);
        CHECK(hits == 1);
      }
      auto ss = state_set(tot.group);
      CHECK(ss.kind == StateSetKind::Singleton);
      CHECK(ss.singleton == tau.functional);
      for (std::size_t j = 0; j < g.dim; ++j) {
        auto hi = lp(unit_vector(g.dim, j), ss.system(), g.dim);
        auto lo = lp(neg(unit_vector(g.dim, j)), ss.system(), g.dim);
        CHECK(hi.value == tau.functional[j]);
        CHECK(-lo.value == tau.functional[j]);
      }
    }
  }
}

TEST_CASE("placements") {
  auto r = placements(orthant2(), kHalfHalf, {}, ints({1, -1}));
  CHECK(r.sign_forward == Sign::Pos);
  CHECK(r.sign_reverse == Sign::Neg);
  CHECK(r.sign_quotient == Sign::Zero);
  CHECK_THROWS_AS(placements(orthant2(), kHalfHalf, {}, ints({0, 0})), PreconditionError);
  CHECK_THROWS_AS(placements(orthant2(), kHalfHalf, {}, ints({1, 0})), PreconditionError);

  SUBCASE("forward and reverse signs are opposite") {
    Rng rng(33);
    for (int t = 0; t < 25; ++t) {
      auto g = fingen_group(rng, std::size_t(uniform_int(rng, 2, 4)));
      State tau = centre_state(g);
      RatVec x = random_kernel_element(rng, tau.functional);
      auto p = placements(g, tau, {}, x);
      CHECK(p.sign_forward != Sign::Zero);
      CHECK(static_cast<int>(p.sign_reverse) == -static_cast<int>(p.sign_forward));
      CHECK(p.sign_quotient == Sign::Zero);
    }
  }
}

TEST_CASE("doubling") {
  auto d = doubling(orthant2(), kHalfHalf);
  RatVec dx = mat_vec(d.diagonal, ints({1, -1}));
  CHECK(cone_contains(d.group, dx) == Membership::NotInCone);
  CHECK(cone_contains(d.group, neg(dx)) == Membership::NotInCone);
  CHECK(is_singular(d.group, Subgroup::qspan({dx}, 4)).singular);
  CHECK(cone_contains(d.group, mat_vec(d.diagonal, ints({0, 0}))) == Membership::Zero);
  CHECK_FALSE(is_singular(d.group, Subgroup::qspan({mat_vec(d.diagonal, ints({1, 0}))}, 4)).singular);

  SUBCASE("random instances") {
    Rng rng(34);
    for (int t = 0; t < 15; ++t) {
      auto g = fingen_group(rng, std::size_t(uniform_int(rng, 2, 4)));
      State tau = centre_state(g);
      auto dd = doubling(g, tau);
      RatVec x = random_kernel_element(rng, tau.functional);
      CHECK(is_singular(dd.group, Subgroup::qspan({mat_vec(dd.diagonal, x)}, 2 * g.dim)).singular);
      RatVec y = nonzero_int_vec(rng, g.dim, -3, 3);
      if (sgn(dot(tau.functional, y)) != 0) {
        CHECK_FALSE(
            is_singular(dd.group, Subgroup::qspan({mat_vec(dd.diagonal, y)}, 2 * g.dim)).singular);
      }
    }
  }
}

TEST_CASE("faithful_kill_check") {
  auto g = sphere_plus_point();
  auto strict = default_strict_set(g);
  CHECK(strict == std::vector<RatVec>{ints({1, 0, 0}), ints({0, 0, 1})});
  auto r = faithful_kill_check(g, ints({0, 1, -1}), strict);
  CHECK_FALSE(r.killable);
  REQUIRE(r.blocking);
  CHECK(*r.blocking == ints({0, 0, 1}));

  auto loose = faithful_kill_check(g, ints({0, 1, -1}), {});
  CHECK(loose.killable);
  REQUIRE(loose.state);
  CHECK(is_state(g, loose.state->functional));
  CHECK(dot(loose.state->functional, ints({0, 1, -1})) == 0);

  SUBCASE("simple cones: every state is faithful") {
    Rng rng(35);
    for (int t = 0; t < 25; ++t) {
      auto h = lex_group(rng, std::size_t(uniform_int(rng, 2, 4)), 1);
      RatVec x = random_kernel_element(rng, h.cone.functionals[0]);
      auto k = faithful_kill_check(h, x, default_strict_set(h));
      CHECK(k.killable);
    }
  }
}
