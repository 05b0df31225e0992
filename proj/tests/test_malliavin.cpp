#include <doctest.h>

#include "oracles.hpp"
#include "wcl/malliavin.hpp"

using namespace wcl;
using namespace wcl::test;

TEST_CASE("directional derivative on the basis") {
  CHECK(derive(H(3, 1), Direction::unit(1)) == H(2, 1) * Rational(3));
  CHECK(derive(C(5), Direction::unit(2)).is_zero());
  Direction two_e1;
  two_e1.set(1, 2);
  CHECK(derive(xi(1) * xi(2), two_e1) == xi(2) * Rational(2));
}

TEST_CASE("skorokhod raises the ladder") {
  CHECK(skorokhod(C(1), Direction::unit(1)) == H(1, 1));
  for (int n = 0; n <= 6; ++n)
    CHECK(skorokhod(H(n, 1), Direction::unit(1)) == H(n + 1, 1));
  CHECK(skorokhod(H(1, 2), Direction::unit(1)) == xi(1) * xi(2));
}

TEST_CASE("exponential of the derivative is translation") {
  CHECK(exp_derive(H(2, 1), Direction::unit(1)) == H(2, 1) + xi(1) * Rational(2) + C(1));
  SeededRng rng(314);
  for (int t = 0; t < 50; ++t) {
    ChaosElement f = random_element(rng, 4, 5, 4, 9);
    Direction theta = random_direction(rng, 4, 9);
    CHECK(exp_derive(f, Direction{}) == f);
    std::map<int, ChaosElement> shift;
    for (auto& [i, v] : theta.coords()) shift[i] = xi(i) + ChaosElement::constant(v);
    CHECK(exp_derive(f, theta) == substitute(f, shift));
  }
}

TEST_CASE("exponential is multiplicative") {
  SeededRng rng(2718);
  for (int t = 0; t < 50; ++t) {
    ChaosElement f = random_element(rng, 3, 4, 3, 7);
    ChaosElement g = random_element(rng, 3, 4, 3, 7);
    Direction theta = random_direction(rng, 3, 7);
    CHECK(exp_derive(f * g, theta) == exp_derive(f, theta) * exp_derive(g, theta));
  }
}

TEST_CASE("creation powers of the constant") {
  CHECK(skorokhod_power_one(Direction::unit(1), 3) == H(3, 1));
  Direction two_e1;
  two_e1.set(1, 2);
  CHECK(skorokhod_power_one(two_e1, 2) == H(2, 1) * Rational(4));
  SeededRng rng(1);
  CHECK(skorokhod_power_one(random_direction(rng, 3, 5), 0) == C(1));
}

TEST_CASE("truncated exponential martingale") {
  auto te = exp_skorokhod_one(Direction::unit(1), 2);
  CHECK(te.element == C(1) + H(1, 1) + H(2, 1) * Rational(1, 2));
  CHECK(exp_skorokhod_one(Direction{}, 5).element == C(1));
  for (int order = 2; order <= 6; ++order)
    CHECK(inner_product(xi(1) * xi(1), exp_skorokhod_one(Direction::unit(1), order).element) ==
          2);
}

TEST_CASE("adjoint relation, fixed and randomized") {
  auto rep = verify_adjoint(xi(1) * xi(1), xi(1), Direction::unit(1));
  CHECK(rep.pass);
  CHECK(rep.lhs == "2");
  CHECK(rep.rhs == "2");

  SeededRng rng(11);
  for (int t = 0; t < 200; ++t) {
    ChaosElement f = random_element(rng, 4, 5, 4, 9);
    ChaosElement g = random_element(rng, 4, 5, 4, 9);
    Direction theta = random_direction(rng, 4, 9);
    // oracle route: both sides through monomial Gaussian moments
    Rational lhs = monomial_product_expectation(derive(f, theta), g);
    Rational rhs = monomial_product_expectation(f, skorokhod(g, theta));
    CHECK(lhs == rhs);
    CHECK(verify_adjoint(f, g, theta).pass);
  }
}

TEST_CASE("duality of derive and skorokhod in expectation") {
  SeededRng rng(1234);
  for (int t = 0; t < 200; ++t) {
    ChaosElement f = random_element(rng, 4, 5, 3, 9);
    ChaosElement g = random_element(rng, 4, 5, 3, 9);
    Direction theta = random_direction(rng, 4, 9);
    CHECK(expectation(derive(f, theta) * g) == expectation(f * skorokhod(g, theta)));
  }
}

TEST_CASE("number operator sanity") {
  for (int a1 = 0; a1 <= 4; ++a1)
    for (int a2 = 0; a1 + a2 <= 4; ++a2) {
      MultiIndex a;
      a.set(1, a1);
      a.set(2, a2);
      ChaosElement ha = ChaosElement::basis(a);
      CHECK(skorokhod(derive(ha, Direction::unit(1)), Direction::unit(1)) ==
            ha * Rational(a1));
    }
}

TEST_CASE("cameron-martin, fixed examples") {
  auto rep = verify_cm(xi(1) * xi(1), Direction::unit(1));
  CHECK(rep.pass);
  CHECK(rep.lhs == "2");
  SeededRng rng(5);
  auto rep2 = verify_cm(C(1), random_direction(rng, 3, 9));
  CHECK(rep2.pass);
  CHECK(rep2.lhs == "1");
  auto rep3 = verify_cm(xi(1), Direction::unit(1));
  CHECK(rep3.pass);
  CHECK(rep3.lhs == "1");
}

TEST_CASE("cameron-martin truncation is stable beyond deg F") {
  SeededRng rng(77);
  for (int t = 0; t < 30; ++t) {
    ChaosElement f = random_element(rng, 3, 4, 3, 9);
    Direction theta = random_direction(rng, 3, 5);
    Rational base = inner_product(f, exp_skorokhod_one(theta, f.total_degree()).element);
    for (int extra = 1; extra <= 3; ++extra)
      CHECK(inner_product(f, exp_skorokhod_one(theta, f.total_degree() + extra).element) ==
            base);
  }
}
