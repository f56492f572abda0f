#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modwalk/chains.hpp"
#include "modwalk/rational.hpp"

namespace modwalk {

/// An exact finitely-supported law on the extended reals: support sorted and
/// deduplicated, weights positive rationals summing to exactly 1.
class FiniteDistribution {
 public:
  using Atom = std::pair<ExtendedRational, mpq_class>;

  /// Merges duplicate values, drops zero weights, sorts; throws
  /// std::invalid_argument when a weight is negative or the total is not 1.
  explicit FiniteDistribution(std::vector<Atom> atoms);

  static FiniteDistribution point_mass(const ExtendedRational& value);

  const std::vector<Atom>& atoms() const { return atoms_; }
  mpq_class weight_of(const ExtendedRational& value) const;

  bool operator==(const FiniteDistribution&) const = default;

 private:
  std::vector<Atom> atoms_;
};

/// Exact law of the projected chain after n steps from w0 in [0, 1]: the
/// pushforward of the point mass through n applications of the five-map
/// kernel with weights (1/9, 2/9, 2/9, 2/9, 2/9).  Requires n <= 12.
FiniteDistribution exact_distribution_W(const mpq_class& w0, unsigned n);

/// Exact law of the boundary chain after n steps from x0: uniform choice
/// among the nine generators at every step.  Requires n <= 7.
FiniteDistribution exact_distribution_X(const ExtendedRational& x0, unsigned n);

/// Pushforward through C(x) = min(|x|, 1/|x|).
FiniteDistribution project_distribution(const FiniteDistribution& d);

/// Sorted exact samples.  Floating-point inputs are snapped to rationals
/// with denominator 2^53, an error below double resolution.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<ExtendedRational> samples);
  explicit EmpiricalDistribution(const std::vector<mpq_class>& samples);
  static EmpiricalDistribution from_doubles(const std::vector<double>& samples);

  const std::vector<ExtendedRational>& samples() const { return samples_; }
  std::size_t count() const { return samples_.size(); }

 private:
  std::vector<ExtendedRational> samples_;
};

/// Reference laws for Kolmogorov-Smirnov comparison: the singular CDF ? on
/// [0, 1]; the half-line law with survival function chi_half (CDF 1 - chi);
/// the symmetric boundary law with survival lambda (CDF 1 - lambda).
enum class ReferenceCdf { qmark, chi_half_survival, lambda };

std::string reference_name(ReferenceCdf ref);

/// Exact CDF value of the reference at x.  qmark requires x in [0, 1].
mpq_class reference_cdf(ReferenceCdf ref, const ExtendedRational& x);

struct KSResult {
  double statistic = 0;
  std::size_t count = 0;
  std::string reference;
};

/// sup-norm discrepancy between the empirical CDF and the reference,
/// evaluated exactly at the sample points with both one-sided gaps.
KSResult ks_distance(const EmpiricalDistribution& emp, ReferenceCdf ref);

/// (1/N) * sum_j exp(i 2 pi n x_j); exactly 1 at n = 0.
std::complex<double> fourier_coefficient(std::uint64_t n, const std::vector<double>& samples);
std::complex<double> fourier_coefficient(std::uint64_t n, const EmpiricalDistribution& emp);

/// Goodness-of-fit report for K = floor(Y) + 1 against Pr(K = n) = 2^-n,
/// plus contingency-table independence checks between K and the quartile
/// bin of the fractional part (bin boundaries 1/3, 1/2, 2/3, the exact
/// ?-quartiles).  Collapsed K rows: {1}/{>=2} for the 2x4 table and
/// {1}/{2}/{3}/{>=4} for the 4x4 table.  Empty rows and columns are dropped
/// before the chi-square statistic; with no degrees of freedom left the
/// p-value is reported as 1.
struct GeometricCheck {
  std::array<double, 9> pmf{};        // pmf[n] = empirical Pr(K = n), n = 1..8
  std::array<double, 9> deviation{};  // |pmf[n] - 2^-n|, n = 1..8
  double chi_square_2x4 = 0;
  double p_value_2x4 = 1;
  double chi_square_4x4 = 0;
  double p_value_4x4 = 1;
};

GeometricCheck geometric_pmf_check(const std::vector<StationaryYSample>& samples);

}  // namespace modwalk
