#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wcl/json_io.hpp"

using namespace wcl;
using namespace wcl::test;

TEST_CASE("hermite product, same coordinate") {
  CHECK(xi(1) * xi(1) == H(2, 1) + C(1));
  CHECK(H(2, 1) * H(2, 1) == H(4, 1) + H(2, 1) * Rational(4) + C(2));
}

TEST_CASE("hermite product, independent coordinates multiply index-wise") {
  MultiIndex a;
  a.set(1, 1);
  a.set(2, 1);
  CHECK(xi(1) * xi(2) == ChaosElement::basis(a));
}

TEST_CASE("expectation reads the constant coefficient") {
  CHECK(expectation(C(1)) == 1);
  MultiIndex a;
  a.set(1, 2);
  a.set(2, 1);
  CHECK(expectation(ChaosElement::basis(a)) == 0);
  CHECK(expectation(H(2, 1) * Rational(3) + C(5)) == 5);
}

TEST_CASE("inner products against the Gaussian-moment oracle") {
  CHECK(inner_product(H(2, 1), H(2, 1)) == 2);
  CHECK(inner_product(H(2, 1), H(2, 1)) == monomial_product_expectation(H(2, 1), H(2, 1)));
  MultiIndex a;
  a.set(1, 1);
  a.set(2, 2);
  auto h12 = ChaosElement::basis(a);
  CHECK(inner_product(h12, h12) == 2);
  CHECK(inner_product(H(1, 1), H(2, 1)) == 0);
}

TEST_CASE("basis conversion matches recurrence unrolling") {
  MonomialForm cubic = to_monomial(H(3, 1));
  MonomialForm expected;
  MultiIndex x3, x1;
  x3.set(1, 3);
  x1.set(1, 1);
  expected.add(x3, 1);
  expected.add(x1, -3);
  CHECK(cubic == expected);

  CHECK(to_monomial(C(1)).terms == MonomialForm{{{MultiIndex{}, Rational(1)}}}.terms);

  MonomialForm sq = to_monomial(H(2, 1) + C(1));
  MonomialForm x2;
  MultiIndex ix2;
  ix2.set(1, 2);
  x2.add(ix2, 1);
  CHECK(sq == x2);
}

TEST_CASE("substitution") {
  std::map<int, ChaosElement> shift1 = {{1, xi(1) + C(1)}};
  CHECK(substitute(H(2, 1), shift1) == H(2, 1) + xi(1) * Rational(2) + C(1));

  std::map<int, ChaosElement> mix = {{1, xi(1) + xi(2)}};
  ChaosElement lhs = substitute(xi(1) * xi(1), mix);
  MultiIndex i11;
  i11.set(1, 1);
  i11.set(2, 1);
  ChaosElement rhs =
      H(2, 1) + ChaosElement::basis(i11) * Rational(2) + H(2, 2) + C(2);
  CHECK(lhs == rhs);
}

TEST_CASE("evaluation by the three-term recurrence") {
  CHECK(evaluate(H(3, 1), {{1, 2.0}}) == doctest::Approx(2.0));
  CHECK(evaluate(H(2, 1), {{1, 1.0}}) == doctest::Approx(0.0));
  CHECK(evaluate(C(7), {}) == doctest::Approx(7.0));
}

TEST_CASE("randomized: inner product = expectation of product = monomial oracle") {
  SeededRng rng(20240817);
  for (int t = 0; t < 100; ++t) {
    ChaosElement f = random_element(rng, 4, 6, 4, 9);
    ChaosElement g = random_element(rng, 4, 6, 4, 9);
    Rational via_inner = inner_product(f, g);
    Rational via_product = expectation(f * g);
    Rational via_oracle = monomial_product_expectation(f, g);
    CHECK(via_inner == via_product);
    CHECK(via_inner == via_oracle);
  }
}

TEST_CASE("randomized: multiply is commutative and associative") {
  SeededRng rng(7);
  for (int t = 0; t < 40; ++t) {
    ChaosElement f = random_element(rng, 3, 4, 3, 5);
    ChaosElement g = random_element(rng, 3, 4, 3, 5);
    ChaosElement h = random_element(rng, 3, 4, 3, 5);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
  }
}

TEST_CASE("randomized: monomial round-trip is the identity") {
  SeededRng rng(99);
  for (int t = 0; t < 60; ++t) {
    ChaosElement f = random_element(rng, 4, 6, 5, 9);
    CHECK(from_monomial(to_monomial(f)) == f);
  }
}

TEST_CASE("randomized: numeric evaluation agrees with the monomial form") {
  SeededRng rng(424242);
  for (int t = 0; t < 60; ++t) {
    ChaosElement f = random_element(rng, 3, 8, 4, 9);
    MonomialForm p = to_monomial(f);
    std::map<int, double> point;
    for (int i = 1; i <= 3; ++i)
      point[i] = static_cast<double>(rng.uniform(-400, 400)) / 100.0;
    double a = evaluate(f, point);
    double b = p.evaluate(point);
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    CHECK(std::fabs(a - b) / scale < 1e-9);
  }
}

TEST_CASE("orthogonality table over two coordinates up to order 4") {
  std::vector<MultiIndex> basis;
  for (int a1 = 0; a1 <= 4; ++a1)
    for (int a2 = 0; a1 + a2 <= 4; ++a2) {
      MultiIndex a;
      a.set(1, a1);
      a.set(2, a2);
      basis.push_back(a);
    }
  for (auto& a : basis)
    for (auto& b : basis) {
      Rational e = expectation(ChaosElement::basis(a) * ChaosElement::basis(b));
      if (a == b)
        CHECK(e == Rational(a.factorial()));
      else
        CHECK(e == 0);
    }
}

TEST_CASE("degree bookkeeping") {
  ChaosElement f = H(3, 1) * H(2, 2) + H(1, 4);
  CHECK(f.total_degree() == 5);
  CHECK(f.degree_in(1) == 3);
  CHECK(f.degree_in(2) == 2);
  CHECK(f.degree_in(3) == 0);
  CHECK(f.max_coord() == 4);
  CHECK((f - f).is_zero());
}

TEST_CASE("JSON round-trip is bit-exact") {
  SeededRng rng(5150);
  for (int t = 0; t < 30; ++t) {
    ChaosElement f = random_element(rng, 4, 5, 4, 9);
    Json j = chaos_to_json(f);
    CHECK(chaos_from_json(j) == f);
    CHECK(chaos_to_json(chaos_from_json(j)).dump() == j.dump());
  }
}

TEST_CASE("rational parsing and formatting") {
  CHECK(format_rational(parse_rational("3/2")) == "3/2");
  CHECK(format_rational(parse_rational("-4/8")) == "-1/2");
  CHECK(format_rational(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}
