#include <doctest.h>

#include <cmath>

#include "imprec/normal.hpp"
#include "support/oracles.hpp"

using namespace imprec;

TEST_CASE("normal_cdf: values, symmetry, monotonicity") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::fabs(normal_cdf(1.96) - 0.975002104851780) < 1e-12);
  CHECK(std::fabs(normal_cdf(2.0) - 0.977249868051821) < 1e-12);
  double prev = 0.0;
  for (double x = -9.0; x <= 9.0; x += 0.03125) {
    double p = normal_cdf(x);
    CHECK(p >= prev);
    CHECK(std::fabs(p + normal_cdf(-x) - 1.0) <= 1e-14);
    prev = p;
  }
}

TEST_CASE("normal_cdf agrees with the independent series oracle to 1e-10") {
  double worst = 0.0;
  for (double x = -8.0; x <= 8.0; x += 1.0 / 64.0)
    worst = std::max(worst, std::fabs(normal_cdf(x) - testsup::oracle_normal_cdf(x)));
  CHECK(worst <= 1e-10);   // the contract
  CHECK(worst <= 1e-13);   // what the rational approximation actually delivers
}

TEST_CASE("erf matches the oracle") {
  double worst = 0.0;
  for (double x = -6.0; x <= 6.0; x += 1.0 / 32.0)
    worst = std::max(worst, std::fabs(erf_approx(x) - testsup::oracle_erf(x)));
  CHECK(worst <= 1e-13);
}

TEST_CASE("normal_quantile: known points and round trip") {
  CHECK(std::fabs(normal_quantile(0.975) - 1.959963984540054) < 1e-9);
  CHECK(std::fabs(normal_quantile(0.9875) - 2.241402727604947) < 1e-9);
  CHECK(normal_quantile(0.5) == 0.0);
  for (double p = 0.0001; p < 1.0; p += 0.0007)
    CHECK(std::fabs(normal_cdf(normal_quantile(p)) - p) <= 1e-12);
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("invert_nondecreasing: smooth and jumpy targets") {
  auto f = [](double x) { return normal_cdf(x); };
  double x = invert_nondecreasing(f, 0.975, -10.0, 10.0, 1e-10);
  CHECK(std::fabs(x - 1.959963984540054) < 1e-8);

  auto step = [](double t) { return t < 3.0 ? 0.2 : 0.9; };
  double j = invert_nondecreasing(step, 0.5, 0.0, 10.0, 1e-10);
  CHECK(std::fabs(j - 3.0) < 1e-8);
}
