#include <random>

#include "doctest.h"
#include "ddim/charset.hpp"
#include "ddim/errors.hpp"

using namespace ddim;

namespace {

using Poly = DeltaSigmaPolynomial;

struct Entry {
  Rational c;
  std::vector<int> k;
  std::vector<int> l;
  int gen = 0;
};

Poly linear(const std::shared_ptr<const Shape>& sh, const std::vector<Entry>& entries,
            const Coefficient& constant = Coefficient()) {
  Poly out = Poly::constant(sh, constant);
  for (const auto& e : entries) out += Poly::term(sh, {{e.k, e.l}, e.gen}, e.c);
  return out;
}

std::shared_ptr<const Shape> two_blocks(int s = 1) {
  return std::make_shared<const Shape>(Shape{{1, 1}, 1, s});
}

Poly example_g1(const std::shared_ptr<const Shape>& sh) {
  return linear(sh, {{1, {0, 0}, {1}}, {1, {2, 0}, {0}}, {1, {0, 2}, {0}}},
                Coefficient::symbol({"a", LambdaMonomial::identity(*sh)}));
}

Poly example_f(const std::shared_ptr<const Shape>& sh, int a, int b, int c) {
  return linear(sh, {{1, {a, b}, {c}}, {1, {a, b}, {-c}}, {1, {a, b + c}, {0}},
                     {1, {a + c, b}, {0}}});
}

LambdaMonomial lam(std::vector<int> k, std::vector<int> l) { return {std::move(k), std::move(l)}; }

}  // namespace

TEST_CASE("is_reduced examples") {
  auto sh = two_blocks();
  auto g1 = example_g1(sh);
  CHECK(is_reduced(linear(sh, {{1, {0, 0}, {2}}}), g1));
  CHECK_FALSE(is_reduced(apply_lambda(lam({1, 0}, {0}), g1), g1));
  CHECK(is_reduced(Poly::constant(sh, 5), g1));
  CHECK_THROWS_AS(is_reduced(g1, Poly::constant(sh, 5)), PreconditionError);
  // Same leader with degree one: not reduced.
  CHECK_FALSE(is_reduced(g1 + linear(sh, {{1, {0, 0}, {0}}}), g1));
}

TEST_CASE("reduce examples") {
  auto sh = two_blocks();
  auto g1 = example_g1(sh);
  auto g2 = apply_lambda(lam({0, 0}, {-1}), g1);
  auto sigma = make_autoreduced({g2, g1});
  REQUIRE(sigma.size() == 2);
  CHECK(sigma.elements[0] == g1);
  CHECK(sigma.elements[1] == g2);

  auto r1 = reduce(apply_lambda(lam({1, 0}, {0}), g1), sigma);
  CHECK(r1.remainder.is_zero());
  CHECK(r1.steps > 0);

  auto b = linear(sh, {{3, {0, 0}, {2}}});
  auto r2 = reduce(b, sigma);
  CHECK(r2.remainder == b);
  CHECK(r2.multiplier.empty());
  CHECK(r2.steps == 0);

  auto r3 = reduce(apply_lambda(lam({0, 0}, {1}), g1) - g1, sigma);
  CHECK(r3.remainder.is_zero());

  // A derivative step records a separant factor.
  auto r4 = reduce(apply_lambda(lam({0, 1}, {0}), g2), sigma);
  CHECK(r4.remainder.is_zero());
  REQUIRE_FALSE(r4.multiplier.empty());
}

TEST_CASE("make_autoreduced and set_rank_compare examples") {
  auto sh = two_blocks();
  auto g1 = example_g1(sh);
  auto g2 = apply_lambda(lam({0, 0}, {-1}), g1);
  CHECK(is_autoreduced({g1, g2}));
  auto d1y = linear(sh, {{1, {1, 0}, {0}}});
  auto bad = linear(sh, {{1, {1, 0}, {0}}, {1, {0, 0}, {0}}});
  CHECK_THROWS_AS(make_autoreduced({bad, d1y}), PreconditionError);
  CHECK_FALSE(is_autoreduced({Poly::constant(sh, 1)}));

  auto one = make_autoreduced({g1});
  auto two = make_autoreduced({g1, g2});
  CHECK(set_rank_compare(two, one) < 0);
  CHECK(set_rank_compare(one, two) > 0);
  CHECK(set_rank_compare(two, two) == 0);
  auto low = make_autoreduced({linear(sh, {{1, {0, 0}, {0}}})});
  CHECK(set_rank_compare(low, one) < 0);
  CHECK(set_rank_compare(AutoreducedSet{}, AutoreducedSet{}) == 0);
  CHECK(set_rank_compare(one, AutoreducedSet{}) < 0);
}

TEST_CASE("principal_charset examples") {
  auto sh = two_blocks();
  auto g1 = example_g1(sh);
  auto cs = principal_charset(g1);
  REQUIRE(cs.size() == 2);
  CHECK(cs.elements[0] == g1);
  CHECK(cs.elements[1] == apply_lambda(lam({0, 0}, {-1}), g1));

  for (auto [a, b, c] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, 1, 1}, {1, 1, 2}}) {
    auto f = example_f(sh, a, b, c);
    auto fcs = principal_charset(f);
    REQUIRE(fcs.size() == 2);
    CHECK(fcs.elements[0] == f);
    CHECK(fcs.elements[1] == apply_lambda(lam({0, 0}, {-1}), f));
    CHECK(leaders(fcs.elements[0]).sigma == Term{lam({a, b}, {c}), 0});
    CHECK(leaders(fcs.elements[1]).sigma == Term{lam({a, b}, {-(c + 1)}), 0});
  }

  auto d1y = linear(sh, {{1, {1, 0}, {0}}});
  auto single = principal_charset(d1y);
  REQUIRE(single.size() == 1);
  CHECK(single.elements[0] == d1y);

  CHECK_THROWS_AS(principal_charset(Poly::constant(sh, 2)), PreconditionError);
  CHECK_THROWS_AS(principal_charset(Poly::term(sh, {lam({0, 0}, {0}), 0}, 1, 2)),
                  NonlinearError);
}

TEST_CASE("is_coherent examples") {
  auto sh = two_blocks();
  auto g1 = example_g1(sh);
  auto cs = make_autoreduced({g1, apply_lambda(lam({0, 0}, {-1}), g1)});
  auto report = is_coherent(cs);
  CHECK(report.verdict == Coherence::kCertified);
  CHECK(report.structural_bound == 2);
  CHECK(is_coherent(cs, 1).verdict == Coherence::kInconclusive);

  auto shifted_only = make_autoreduced({linear(sh, {{1, {0, 0}, {1}}, {1, {1, 0}, {0}}})});
  auto violation = is_coherent(shifted_only, 2);
  CHECK(violation.verdict == Coherence::kViolation);
  REQUIRE(violation.witness);
  CHECK_FALSE(violation.witness->is_zero());

  auto nonlinear = AutoreducedSet{{Poly::term(sh, {lam({0, 0}, {0}), 0}, 1, 2)}};
  CHECK_THROWS_AS(is_coherent(nonlinear), NonlinearError);
}

TEST_CASE("complete_linear examples") {
  auto sh = two_blocks();
  auto g1 = example_g1(sh);
  auto cs = complete_linear({g1});
  REQUIRE(cs.size() == 2);
  CHECK(set_rank_compare(cs, principal_charset(g1)) == 0);

  auto sh2 = two_blocks(2);
  auto y1 = linear(sh2, {{1, {0, 0}, {0}, 0}});
  auto y2 = linear(sh2, {{1, {0, 0}, {0}, 1}});
  auto ay2 = linear(sh2, {{1, {0, 0}, {1}, 1}});
  auto both = complete_linear({y1 - ay2, y2});
  CHECK(reduce(y1, both).remainder.is_zero());
  CHECK(reduce(y2, both).remainder.is_zero());
  CHECK(is_coherent(both).verdict == Coherence::kCertified);

  CHECK(complete_linear({}).empty());
  auto y = linear(sh, {{1, {0, 0}, {0}}});
  CHECK_THROWS_AS(complete_linear({y, y + Poly::constant(sh, 1)}), InconsistentSystemError);
  CHECK_THROWS_AS(complete_linear({Poly::term(sh, {lam({0, 0}, {0}), 0}, 1, 2)}),
                  NonlinearError);
}

TEST_CASE("property: ideal members reduce to zero modulo a characteristic set") {
  std::mt19937 rng(21);
  auto sh = two_blocks();
  std::vector<Poly> generators{example_g1(sh), example_f(sh, 1, 1, 1), example_f(sh, 1, 2, 1)};
  std::uniform_int_distribution<int> kd(0, 2), ld(-2, 2), cd(-4, 4), count(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const Poly& a = generators[trial % generators.size()];
    auto cs = principal_charset(a);
    Poly b(sh);
    for (int i = count(rng); i > 0; --i) {
      auto shift = lam({kd(rng), kd(rng)}, {ld(rng)});
      b += apply_lambda(shift, a).scaled(Coefficient(cd(rng)));
    }
    CHECK(reduce(b, cs).remainder.is_zero());
  }
}

TEST_CASE("property: remainders are reduced and stable") {
  std::mt19937 rng(22);
  auto sh = two_blocks();
  auto cs = principal_charset(example_f(sh, 1, 1, 1));
  std::uniform_int_distribution<int> kd(0, 3), ld(-3, 3), cd(-4, 4), count(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Entry> entries;
    for (int i = count(rng); i > 0; --i) entries.push_back({cd(rng), {kd(rng), kd(rng)}, {ld(rng)}});
    Poly b = linear(sh, entries);
    auto res = reduce(b, cs);
    CHECK(is_reduced(res.remainder, cs.elements));
    CHECK(reduce(res.remainder, cs).remainder == res.remainder);
  }
}

TEST_CASE("property: principal_charset has lowest rank among small candidate sets") {
  auto sh = two_blocks();
  std::vector<Poly> inputs{example_g1(sh), example_f(sh, 1, 1, 1),
                           linear(sh, {{1, {1, 0}, {1}}, {2, {0, 1}, {-1}}})};
  for (const auto& a : inputs) {
    auto cs = principal_charset(a);
    std::vector<Poly> pool;
    for (int k1 = 0; k1 <= 1; ++k1)
      for (int k2 = 0; k2 <= 1; ++k2)
        for (int l = -2; l <= 2; ++l) pool.push_back(apply_lambda(lam({k1, k2}, {l}), a));
    for (std::size_t i = 0; i < pool.size(); ++i) {
      CHECK(set_rank_compare(cs, AutoreducedSet{{pool[i]}}) <= 0);
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if (!is_autoreduced({pool[i], pool[j]})) continue;
        CHECK(set_rank_compare(cs, make_autoreduced({pool[i], pool[j]})) <= 0);
      }
    }
  }
}

TEST_CASE("property: set_rank_compare is transitive") {
  std::mt19937 rng(23);
  auto sh = two_blocks();
  std::uniform_int_distribution<int> kd(0, 2), ld(-2, 2), cd(1, 3), count(1, 3);
  auto random_set = [&]() {
    std::vector<Poly> elems;
    for (int i = count(rng); i > 0; --i) {
      Poly p = linear(sh, {{cd(rng), {kd(rng), kd(rng)}, {ld(rng)}},
                           {cd(rng), {kd(rng), kd(rng)}, {ld(rng)}}});
      std::vector<Poly> trial = elems;
      trial.push_back(p);
      if (!p.in_field() && is_autoreduced(trial)) elems = trial;
    }
    return make_autoreduced(elems);
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_set(), b = random_set(), c = random_set();
    auto ab = set_rank_compare(a, b);
    CHECK(set_rank_compare(b, a) == (0 <=> ab));
    if (ab <= 0 && set_rank_compare(b, c) <= 0) CHECK(set_rank_compare(a, c) <= 0);
  }
}
