#include <random>

#include "doctest.h"
#include "ddim/ddpoly.hpp"
#include "ddim/errors.hpp"

using namespace ddim;

namespace {

using Poly = DeltaSigmaPolynomial;

std::shared_ptr<const Shape> shape_of(std::vector<int> blocks, int n, int s) {
  return std::make_shared<const Shape>(Shape{std::move(blocks), n, s});
}

Term t(std::vector<int> k, std::vector<int> l, int gen = 0) { return {{std::move(k), std::move(l)}, gen}; }

Coefficient sym(const Shape& shape, const std::string& name) {
  return Coefficient::symbol({name, LambdaMonomial::identity(shape)});
}

// g1 = a1 y + d1^2 y + d2^2 y + a.
Poly example_g1(const std::shared_ptr<const Shape>& sh) {
  return Poly::term(sh, t({0, 0}, {1})) + Poly::term(sh, t({2, 0}, {0})) +
         Poly::term(sh, t({0, 2}, {0})) + Poly::constant(sh, sym(*sh, "a"));
}

Poly random_poly(std::mt19937& rng, const std::shared_ptr<const Shape>& sh, bool linear,
                 bool symbols) {
  std::uniform_int_distribution<int> kd(0, 2), ld(-2, 2), cd(-3, 3), nterms(1, 4);
  std::uniform_int_distribution<int> gen(0, sh->s - 1), pow(1, 2), coin(0, 3);
  Poly out(sh);
  for (int i = nterms(rng); i > 0; --i) {
    LambdaMonomial mono = LambdaMonomial::identity(*sh);
    for (auto& x : mono.k) x = kd(rng);
    for (auto& x : mono.l) x = ld(rng);
    Coefficient c = cd(rng);
    if (symbols && coin(rng) == 0) c = c * sym(*sh, "c");
    Poly piece = Poly::term(sh, {mono, gen(rng)}, c, linear ? 1 : pow(rng));
    if (!linear && coin(rng) == 0) {
      LambdaMonomial other = LambdaMonomial::identity(*sh);
      for (auto& x : other.l) x = ld(rng);
      piece = piece * Poly::term(sh, {other, gen(rng)});
    }
    out += piece;
  }
  if (coin(rng) == 0) out += Poly::constant(sh, symbols ? sym(*sh, "b") : Coefficient(5));
  return out;
}

}  // namespace

TEST_CASE("coefficient arithmetic") {
  Shape shape{{1}, 1, 1};
  auto a = sym(shape, "a");
  auto b = sym(shape, "b");
  CHECK((a + b) * (a - b) == a * a - b * b);
  CHECK((a - a).is_zero());
  CHECK(Coefficient(Rational(3, 2)).rational_value() == Rational(3, 2));
  CHECK_THROWS_AS(a.rational_value(), PreconditionError);
  // delta(a^2 b) = 2 a (delta a) b + a^2 (delta b).
  auto d = LambdaMonomial::delta(shape, 0);
  auto da = a.apply(d);
  auto db = b.apply(d);
  CHECK((a * a * b).apply(d) == Coefficient(2) * a * da * b + a * a * db);
  CHECK(Coefficient(7).apply(d).is_zero());
  CHECK(Coefficient(7).apply(LambdaMonomial::alpha(shape, 0, 2)) == Coefficient(7));
  auto shifted = a.apply(LambdaMonomial::alpha(shape, 0, -1));
  CHECK(to_string(shifted) == "[a1^-1]a");
  CHECK(to_string(a * a + Coefficient(-2)) == "a^2 - 2");
  Specialization s1(1), s2(2);
  CHECK(a.evaluate(s1) == s1.value({"a", LambdaMonomial::identity(shape)}));
  CHECK((a * b).evaluate(s1) == a.evaluate(s1) * b.evaluate(s1));
  CHECK(a.evaluate(s1) != a.evaluate(s2));
  CHECK(a.evaluate(s1) != shifted.evaluate(s1));
}

TEST_CASE("leaders examples") {
  auto sh = shape_of({1, 1}, 1, 1);
  auto g1 = example_g1(sh);
  auto lead = leaders(g1);
  CHECK(lead.sigma == t({0, 0}, {1}));
  CHECK(lead.block[0] == t({2, 0}, {0}));
  CHECK(lead.block[1] == t({0, 2}, {0}));

  auto sh2 = shape_of({1}, 1, 2);
  auto sum = Poly::term(sh2, t({0}, {0}, 0)) + Poly::term(sh2, t({0}, {0}, 1));
  auto l2 = leaders(sum);
  CHECK(l2.sigma == t({0}, {0}, 1));
  CHECK(l2.block[0] == t({0}, {0}, 1));

  auto single = Poly::term(sh2, t({1}, {0}));
  CHECK(leaders(single).sigma == t({1}, {0}));
  CHECK_THROWS_AS(leaders(Poly::constant(sh2, 3)), NoLeaderError);
  CHECK_THROWS_AS(leaders(Poly(sh2)), NoLeaderError);
}

TEST_CASE("initial and separant examples") {
  auto sh = shape_of({1, 1}, 1, 1);
  auto [i1, s1] = initial_separant(example_g1(sh));
  CHECK(i1 == Poly::constant(sh, 1));
  CHECK(s1 == Poly::constant(sh, 1));

  auto ay = t({0, 0}, {1});
  auto a = Poly::term(sh, ay, 3, 2) + Poly::term(sh, t({1, 0}, {0}));
  auto [i2, s2] = initial_separant(a);
  CHECK(i2 == Poly::constant(sh, 3));
  CHECK(s2 == Poly::term(sh, ay, 6));

  auto c = sym(*sh, "c");
  auto b = Poly::term(sh, ay, c) + Poly::term(sh, t({0, 0}, {0}));
  auto [i3, s3] = initial_separant(b);
  CHECK(i3 == Poly::constant(sh, c));
  CHECK(s3 == Poly::constant(sh, c));

  // Initial of y*(a y)^2 + (a y)^2 is y + 1.
  auto y = t({0, 0}, {0});
  auto q = Poly::term(sh, ay, 1, 2) * (Poly::term(sh, y) + Poly::constant(sh, 1));
  auto [i4, s4] = initial_separant(q);
  CHECK(i4 == Poly::term(sh, y) + Poly::constant(sh, 1));
  CHECK(s4 == (Poly::term(sh, y) + Poly::constant(sh, 1)) * Poly::term(sh, ay, 2));
}

TEST_CASE("rank_compare examples") {
  auto sh = shape_of({1, 1}, 1, 1);
  auto g1 = example_g1(sh);
  auto g2 = apply_lambda(LambdaMonomial::alpha(*sh, 0, -1), g1);
  CHECK(rank_compare(Poly::constant(sh, 4), g1) < 0);
  CHECK(rank_compare(g1, Poly::constant(sh, 4)) > 0);
  CHECK(rank_compare(Poly::constant(sh, 4), Poly(sh)) == 0);
  CHECK(rank_compare(g1, g1) == 0);
  CHECK(rank_compare(g1, g2) < 0);
  CHECK(rank_vector(g2).v == t({2, 0}, {-1}));
  CHECK(rank_vector(g2).block_ords == std::vector<std::int64_t>{2, 2});
}

TEST_CASE("apply_lambda examples") {
  auto sh = shape_of({1, 1}, 1, 1);
  auto g1 = example_g1(sh);
  auto g2 = apply_lambda(LambdaMonomial::alpha(*sh, 0, -1), g1);
  auto a_shift = Coefficient::symbol({"a", LambdaMonomial::alpha(*sh, 0, -1)});
  auto expected = Poly::term(sh, t({0, 0}, {0})) + Poly::term(sh, t({2, 0}, {-1})) +
                  Poly::term(sh, t({0, 2}, {-1})) + Poly::constant(sh, a_shift);
  CHECK(g2 == expected);
  CHECK(to_string(g2) == "d1^2 a1^-1 y1 + d2^2 a1^-1 y1 + y1 + [a1^-1]a");
  CHECK(apply_lambda(LambdaMonomial::identity(*sh), g1) == g1);

  auto sh2 = shape_of({1}, 0, 2);
  auto y12 = Poly::term(sh2, t({0}, {}, 0)) + Poly::term(sh2, t({0}, {}, 1));
  CHECK(apply_lambda(LambdaMonomial::delta(*sh2, 0), y12) ==
        Poly::term(sh2, t({1}, {}, 0)) + Poly::term(sh2, t({1}, {}, 1)));

  // Product rule on a square: d (y^2) = 2 y (d y).
  auto y = t({0}, {}, 0);
  auto sq = Poly::term(sh2, y, 1, 2);
  CHECK(apply_lambda(LambdaMonomial::delta(*sh2, 0), sq) ==
        Poly::term(sh2, y, 2) * Poly::term(sh2, t({1}, {}, 0)));
}

TEST_CASE("property: apply_lambda is multiplicative") {
  std::mt19937 rng(11);
  auto sh = shape_of({1, 1}, 1, 2);
  std::uniform_int_distribution<int> kd(0, 1), ld(-2, 2);
  for (int trial = 0; trial < 150; ++trial) {
    auto a = random_poly(rng, sh, trial % 2 == 0, trial % 3 != 0);
    LambdaMonomial lam = LambdaMonomial::identity(*sh), mu = lam;
    for (auto& x : lam.k) x = kd(rng);
    for (auto& x : lam.l) x = ld(rng);
    for (auto& x : mu.k) x = kd(rng);
    for (auto& x : mu.l) x = ld(rng);
    CHECK(apply_lambda(lam * mu, a) == apply_lambda(lam, apply_lambda(mu, a)));
  }
}

TEST_CASE("property: lambda on linear polynomials moves terms") {
  std::mt19937 rng(12);
  auto sh = shape_of({2}, 1, 2);
  std::uniform_int_distribution<int> kd(0, 2), ld(-2, 2);
  for (int trial = 0; trial < 150; ++trial) {
    const bool symbols = trial % 2 == 1;
    auto a = random_poly(rng, sh, true, symbols);
    LambdaMonomial lam = LambdaMonomial::identity(*sh);
    for (auto& x : lam.k) x = kd(rng);
    for (auto& x : lam.l) x = ld(rng);
    auto b = apply_lambda(lam, a);
    CHECK(b.is_linear());
    for (const Term& u : b.terms()) {
      bool found = false;
      for (const Term& v : a.terms()) {
        if (symbols) {
          // Derivatives of coefficients keep lower derivatives of v.
          Term moved = apply(lam.sigma_part(), v);
          found = found || (moved.gen == u.gen && divides(moved.mono, u.mono) &&
                            quotient(u.mono, moved.mono).sigma_part().is_identity() &&
                            divides(quotient(u.mono, moved.mono), lam.delta_part()));
        } else {
          found = found || apply(lam, v) == u;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("property: leaders follow alpha shifts inside their orthant") {
  std::mt19937 rng(13);
  auto sh = shape_of({1, 1}, 2, 1);
  std::uniform_int_distribution<int> ld(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_poly(rng, sh, true, false);
    if (a.in_field()) continue;
    Term v = leaders(a).sigma;
    LambdaMonomial shift = LambdaMonomial::identity(*sh);
    for (std::size_t j = 0; j < shift.l.size(); ++j) {
      int sign = v.mono.l[j] < 0 ? -1 : 1;
      shift.l[j] = sign * ld(rng);
    }
    CHECK(leaders(apply_lambda(shift, a)).sigma == apply(shift, v));
  }
}

TEST_CASE("property: rank_compare is a total preorder") {
  std::mt19937 rng(14);
  auto sh = shape_of({1, 1}, 1, 1);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_poly(rng, sh, trial % 2 == 0, false);
    auto b = random_poly(rng, sh, trial % 2 == 0, false);
    auto c = random_poly(rng, sh, trial % 2 == 0, false);
    auto ab = rank_compare(a, b);
    CHECK(rank_compare(b, a) == (0 <=> ab));
    if (ab <= 0 && rank_compare(b, c) <= 0) CHECK(rank_compare(a, c) <= 0);
    if (ab == 0 && !a.in_field()) {
      auto ra = rank_vector(a), rb = rank_vector(b);
      CHECK(ra.v == rb.v);
      CHECK(ra.degree == rb.degree);
      CHECK(ra.block_ords == rb.block_ords);
    }
  }
}
