#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "modwalk/chains.hpp"
#include "modwalk/minkowski.hpp"
#include "modwalk/stats.hpp"

using namespace modwalk;

TEST_CASE("finite distributions merge, sort and validate") {
  FiniteDistribution d({{ExtendedRational(1), mpq_class(1, 4)},
                        {ExtendedRational(0), mpq_class(1, 2)},
                        {ExtendedRational(1), mpq_class(1, 4)},
                        {ExtendedRational(2), mpq_class(0)}});
  REQUIRE(d.atoms().size() == 2);
  CHECK(d.atoms()[0].first == ExtendedRational(0));
  CHECK(d.atoms()[0].second == mpq_class(1, 2));
  CHECK(d.atoms()[1].first == ExtendedRational(1));
  CHECK(d.atoms()[1].second == mpq_class(1, 2));
  CHECK(d.weight_of(ExtendedRational(0)) == mpq_class(1, 2));
  CHECK(d.weight_of(ExtendedRational(7)) == 0);

  CHECK_THROWS_AS(FiniteDistribution({{ExtendedRational(0), mpq_class(1, 2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FiniteDistribution({{ExtendedRational(0), mpq_class(3, 2)},
                                      {ExtendedRational(1), mpq_class(-1, 2)}}),
                  std::invalid_argument);

  FiniteDistribution p = FiniteDistribution::point_mass(ExtendedRational::infinity());
  CHECK(p.atoms().size() == 1);
  CHECK(p.weight_of(ExtendedRational::infinity()) == 1);
}

TEST_CASE("one-step exact laws of the projected chain") {
  FiniteDistribution from_zero = exact_distribution_W(mpq_class(0), 1);
  CHECK(from_zero.weight_of(ExtendedRational(0)) == mpq_class(5, 9));
  CHECK(from_zero.weight_of(ExtendedRational(1)) == mpq_class(4, 9));
  CHECK(from_zero.atoms().size() == 2);

  FiniteDistribution from_half = exact_distribution_W(mpq_class(1, 2), 1);
  CHECK(from_half.weight_of(ExtendedRational(1, 3)) == mpq_class(2, 9));
  CHECK(from_half.weight_of(ExtendedRational(1, 2)) == mpq_class(1, 3));
  CHECK(from_half.weight_of(ExtendedRational(2, 3)) == mpq_class(2, 9));
  CHECK(from_half.weight_of(ExtendedRational(1)) == mpq_class(2, 9));
  CHECK(from_half.atoms().size() == 4);

  CHECK(exact_distribution_W(mpq_class(1, 2), 0) ==
        FiniteDistribution::point_mass(ExtendedRational(1, 2)));
  CHECK_THROWS_AS(exact_distribution_W(mpq_class(1, 2), 13), std::invalid_argument);
  CHECK_THROWS_AS(exact_distribution_W(mpq_class(3, 2), 1), std::invalid_argument);
}

TEST_CASE("one-step exact law of the boundary chain") {
  FiniteDistribution law = exact_distribution_X(ExtendedRational(0), 1);
  CHECK(law.weight_of(ExtendedRational(-1)) == mpq_class(2, 9));
  CHECK(law.weight_of(ExtendedRational(0)) == mpq_class(2, 9));
  CHECK(law.weight_of(ExtendedRational(1)) == mpq_class(2, 9));
  CHECK(law.weight_of(ExtendedRational::infinity()) == mpq_class(1, 3));
  CHECK(law.atoms().size() == 4);
  CHECK_THROWS_AS(exact_distribution_X(ExtendedRational(0), 8), std::invalid_argument);
}

TEST_CASE("projection of the boundary law is the projected chain law") {
  CHECK(project_distribution(exact_distribution_X(ExtendedRational(0), 1)) ==
        exact_distribution_W(mpq_class(0), 1));
  ExtendedRational x0(2, 3);
  for (unsigned n = 0; n <= 5; ++n) {
    CHECK(project_distribution(exact_distribution_X(x0, n)) ==
          exact_distribution_W(project_C(x0), n));
  }
}

TEST_CASE("empirical samples are sorted and doubles snap to exact dyadics") {
  EmpiricalDistribution emp(std::vector<ExtendedRational>{
      ExtendedRational(3), ExtendedRational(1, 2), ExtendedRational::infinity()});
  CHECK(emp.count() == 3);
  CHECK(emp.samples()[0] == ExtendedRational(1, 2));
  CHECK(emp.samples()[2] == ExtendedRational::infinity());

  auto snapped = EmpiricalDistribution::from_doubles({0.5, 0.25, HUGE_VAL});
  CHECK(snapped.samples()[0] == ExtendedRational(1, 4));
  CHECK(snapped.samples()[1] == ExtendedRational(1, 2));
  CHECK(snapped.samples()[2] == ExtendedRational::infinity());

  CHECK_THROWS_AS(EmpiricalDistribution(std::vector<ExtendedRational>{}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDistribution::from_doubles({std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
}

TEST_CASE("reference distribution functions") {
  CHECK(reference_name(ReferenceCdf::qmark) == "qmark");
  CHECK(reference_name(ReferenceCdf::chi_half_survival) == "chi-half-survival");
  CHECK(reference_name(ReferenceCdf::lambda) == "lambda");

  CHECK(reference_cdf(ReferenceCdf::qmark, ExtendedRational(1, 2)) == mpq_class(1, 2));
  CHECK(reference_cdf(ReferenceCdf::qmark, ExtendedRational(1, 3)) == mpq_class(1, 4));
  CHECK_THROWS_AS(reference_cdf(ReferenceCdf::qmark, ExtendedRational(2)), std::domain_error);

  CHECK(reference_cdf(ReferenceCdf::chi_half_survival, ExtendedRational(1)) == mpq_class(1, 2));
  CHECK(reference_cdf(ReferenceCdf::chi_half_survival, ExtendedRational(3)) == mpq_class(7, 8));
  CHECK(reference_cdf(ReferenceCdf::chi_half_survival, ExtendedRational(0)) == 0);
  CHECK(reference_cdf(ReferenceCdf::chi_half_survival, ExtendedRational::infinity()) == 1);

  CHECK(reference_cdf(ReferenceCdf::lambda, ExtendedRational(0)) == mpq_class(1, 2));
  CHECK(reference_cdf(ReferenceCdf::lambda, ExtendedRational(1)) == mpq_class(3, 4));
  CHECK(reference_cdf(ReferenceCdf::lambda, ExtendedRational(-3)) == mpq_class(1, 16));
  CHECK(reference_cdf(ReferenceCdf::lambda, ExtendedRational::infinity()) == 1);
}

TEST_CASE("Kolmogorov-Smirnov distance on crafted samples") {
  EmpiricalDistribution single(std::vector<ExtendedRational>{ExtendedRational(1, 2)});
  KSResult r = ks_distance(single, ReferenceCdf::qmark);
  CHECK(r.statistic == 0.5);
  CHECK(r.count == 1);
  CHECK(r.reference == "qmark");

  // quantile grid at the odd multiples of 2^-5: discrepancy exactly 2^-5
  std::vector<ExtendedRational> grid;
  for (int j = 1; j <= 16; ++j)
    grid.push_back(ExtendedRational(qmark_inverse(DyadicRational(mpz_class(2 * j - 1), 5))));
  KSResult g = ks_distance(EmpiricalDistribution(std::move(grid)), ReferenceCdf::qmark);
  CHECK(g.statistic == 0.03125);

  // uniform samples are far from the singular reference
  std::vector<ExtendedRational> uniform;
  for (int j = 1; j <= 2000; ++j) uniform.push_back(ExtendedRational(j, 2001));
  KSResult u = ks_distance(EmpiricalDistribution(std::move(uniform)), ReferenceCdf::qmark);
  CHECK(u.statistic > 0.05);
}

TEST_CASE("long projected chains approach the singular law") {
  WalkConfig cfg{.seed = 1, .steps = 32, .trajectories = 2000};
  auto finals = simulate_W_finals(mpq_class(2, 3), cfg);
  KSResult r = ks_distance(EmpiricalDistribution(finals), ReferenceCdf::qmark);
  CHECK(r.statistic < 0.05);
  CHECK(r.count == 2000);
}

TEST_CASE("kernel averaged over reference quantiles reproduces the reference") {
  // midpoint grid in the reference quantile scale, 256 cells
  std::vector<mpq_class> grid;
  for (int j = 1; j <= 256; ++j)
    grid.push_back(qmark_inverse(DyadicRational(mpz_class(2 * j - 1), 9)));
  for (long wn : {1L, 2L, 3L}) {
    mpq_class w = wn == 1 ? mpq_class(1, 3) : wn == 2 ? mpq_class(1, 2) : mpq_class(2, 3);
    mpq_class acc = 0;
    for (const auto& u : grid) {
      FiniteDistribution step = exact_distribution_W(u, 1);
      for (const auto& [v, p] : step.atoms())
        if (v < ExtendedRational(w)) acc += p;
    }
    mpq_class avg = acc / 256;
    mpq_class target = qmark(w).to_mpq();
    CHECK(abs(avg - target) <= mpq_class(1, 50));
  }
}

TEST_CASE("Fourier coefficients of sample batches") {
  std::vector<double> halves(100, 0.5);
  CHECK(fourier_coefficient(0, halves) == std::complex<double>(1.0, 0.0));
  auto c1 = fourier_coefficient(1, halves);
  CHECK(c1.real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(c1.imag()) < 1e-9);
  auto c2 = fourier_coefficient(2, halves);
  CHECK(c2.real() == doctest::Approx(1.0).epsilon(1e-12));

  EmpiricalDistribution emp(std::vector<ExtendedRational>{ExtendedRational(1, 2)});
  auto via_emp = fourier_coefficient(1, emp);
  CHECK(via_emp.real() == doctest::Approx(-1.0).epsilon(1e-12));

  EmpiricalDistribution with_inf(std::vector<ExtendedRational>{ExtendedRational::infinity()});
  CHECK_THROWS_AS(fourier_coefficient(1, with_inf), std::domain_error);
  CHECK_THROWS_AS(fourier_coefficient(0, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("geometric part check on a degenerate batch") {
  std::vector<StationaryYSample> constant;
  for (int t = 0; t < 50; ++t) {
    StationaryYSample s;
    s.k0 = 1;
    s.fractional = mpq_class(t % 5, 7);
    s.value = s.fractional;
    constant.push_back(s);
  }
  GeometricCheck check = geometric_pmf_check(constant);
  CHECK(check.pmf[1] == 1.0);
  CHECK(check.deviation[1] == 0.5);
  CHECK(check.pmf[2] == 0.0);
  CHECK(check.chi_square_2x4 == 0.0);
  CHECK(check.p_value_2x4 == 1.0);
  CHECK(check.p_value_4x4 == 1.0);
  CHECK_THROWS_AS(geometric_pmf_check({}), std::invalid_argument);
}

TEST_CASE("geometric part check on stationary samples") {
  WalkConfig cfg{.seed = 3, .steps = 0, .trajectories = 20000};
  auto samples = sample_stationary_Y(cfg, 16);
  GeometricCheck check = geometric_pmf_check(samples);
  for (int k = 1; k <= 8; ++k) CHECK(check.deviation[k] < 0.02);
  CHECK(check.p_value_2x4 > 1e-3);
  CHECK(check.p_value_4x4 > 1e-3);
  CHECK(check.chi_square_2x4 >= 0.0);
  CHECK(check.chi_square_4x4 >= 0.0);
}
