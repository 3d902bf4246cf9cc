#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hct/quadrature.hpp"
#include "oracles.hpp"

using namespace hct;

namespace {

double rule_monomial(const CompositeRule& rule, int a, int b) {
  return integrate_reference(rule, [a, b](const Bary& l) {
    return std::pow(l[1], a) * std::pow(l[2], b);
  });
}

void check_degree_exactness(const CompositeRule& rule, int degree) {
  for (int d = 0; d <= degree; ++d)
    for (int a = 0; a <= d; ++a) {
      const int b = d - a;
      const double exact = oracles::monomial_integral(a, b);
      CHECK(rule_monomial(rule, a, b) == doctest::Approx(exact).epsilon(1e-13));
    }
}

}  // namespace

TEST_CASE("base rules match the closed-form monomial integrals") {
  check_degree_exactness(realize({3, 0}), 2);
  check_degree_exactness(realize({6, 0}), 4);
  check_degree_exactness(realize({15, 0}), 7);
}

TEST_CASE("refinement preserves degree exactness") {
  for (const int level : {1, 2}) {
    check_degree_exactness(realize({3, level}), 2);
    check_degree_exactness(realize({6, level}), 4);
    check_degree_exactness(realize({15, level}), 7);
  }
}

TEST_CASE("composite point counts and weights") {
  CHECK(realize({15, 1}).size() == 60);
  CHECK(realize({3, 3}).size() == 192);
  CHECK(realize({6, 1}).size() == 24);
  CHECK(realize({6, 2}).size() == 96);
  for (const QuadSpec spec : {QuadSpec{3, 0}, QuadSpec{6, 2}, QuadSpec{15, 4}}) {
    const CompositeRule rule = realize(spec);
    double sum = 0.0;
    for (const double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
    for (const Bary& p : rule.points) {
      CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0).epsilon(1e-14));
      for (const double l : p) CHECK(l >= 0.0);
    }
  }
}

TEST_CASE("constant integrand gives the reference area") {
  const CompositeRule rule = realize({3, 0});
  CHECK(integrate_reference(rule, [](const Bary&) { return 1.0; }) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(integrate_reference(rule, [](const Bary&) { return 0.0; }) == 0.0);
}

TEST_CASE("unknown base rule is a configuration error") {
  CHECK_THROWS_AS(realize({7, 0}), Error);
  CHECK_THROWS_AS(parse_quad_spec("9x1"), Error);
  CHECK_THROWS_AS(parse_quad_spec("15"), Error);
  CHECK(parse_quad_spec("15x1").base_points == 15);
  CHECK(parse_quad_spec("3x2").refinement_level == 2);
  CHECK(QuadSpec{6, 1}.str() == "6x1");
}

TEST_CASE("non-uniform refinement: manual per-subtriangle levels") {
  const CompositeRule rule = realize_nonuniform(3, {0, 0, 0, 2});
  CHECK(rule.size() == 3 * 3 + 3 * 16);
  double sum = 0.0;
  for (const double w : rule.weights) sum += w;
  CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
  check_degree_exactness(rule, 2);
}

TEST_CASE("1D Gauss rules") {
  CHECK(tensor_gauss_1d(40).nodes.size() == 40);
  CHECK(tensor_rule_on(Domain{0, 1, 0, 1}, 40).points.size() == 1600);
  CHECK_THROWS_AS(tensor_gauss_1d(0), Error);
  CHECK_THROWS_AS(tensor_gauss_1d(65), Error);

  // n=1 on a constant integrates the domain area
  const RectRule r1 = tensor_rule_on(Domain{5, 15, 5, 15}, 1);
  double area = 0.0;
  for (const double w : r1.weights) area += w;
  CHECK(area == doctest::Approx(100.0).epsilon(1e-14));

  // n=3 integrates x^4 on [0,1] to machine precision (degree 2n-1 = 5)
  const RectRule r3 = tensor_rule_on(Domain{0, 1, 0, 1}, 3);
  double fourth = 0.0, fifth = 0.0;
  for (size_t q = 0; q < r3.points.size(); ++q) {
    fourth += r3.weights[q] * std::pow(r3.points[q].x, 4);
    fifth += r3.weights[q] * std::pow(r3.points[q].x, 5);
  }
  CHECK(fourth == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(fifth == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  // degree exactness of a larger rule
  const GaussRule1D g8 = tensor_gauss_1d(8);
  double p14 = 0.0;
  for (size_t i = 0; i < g8.nodes.size(); ++i)
    p14 += g8.weights[i] * std::pow(g8.nodes[i], 14);
  CHECK(p14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}
