#include "modwalk/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "modwalk/minkowski.hpp"
#include "modwalk/parallel.hpp"

namespace modwalk {

FiniteDistribution::FiniteDistribution(std::vector<Atom> atoms) {
  std::map<ExtendedRational, mpq_class> merged;
  for (auto& [value, weight] : atoms) {
    if (weight < 0) throw std::invalid_argument("FiniteDistribution: negative weight");
    if (weight == 0) continue;
    merged[value] += weight;
  }
  mpq_class total = 0;
  atoms_.reserve(merged.size());
  for (auto& [value, weight] : merged) {
    total += weight;
    atoms_.emplace_back(value, weight);
  }
  if (total != 1) throw std::invalid_argument("FiniteDistribution: weights must sum to 1");
}

FiniteDistribution FiniteDistribution::point_mass(const ExtendedRational& value) {
  return FiniteDistribution({{value, mpq_class(1)}});
}

mpq_class FiniteDistribution::weight_of(const ExtendedRational& value) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), value,
                             [](const Atom& a, const ExtendedRational& v) { return a.first < v; });
  if (it == atoms_.end() || it->first != value) return mpq_class(0);
  return it->second;
}

FiniteDistribution exact_distribution_W(const mpq_class& w0, unsigned n) {
  if (w0 < 0 || w0 > 1) throw std::invalid_argument("exact_distribution_W: start outside [0, 1]");
  if (n > 12) throw std::invalid_argument("exact_distribution_W: n must be <= 12");
  const mpq_class rho[5] = {mpq_class(1, 9), mpq_class(2, 9), mpq_class(2, 9), mpq_class(2, 9),
                            mpq_class(2, 9)};
  std::map<mpq_class, mpq_class> law{{w0, mpq_class(1)}};
  for (unsigned step = 0; step < n; ++step) {
    std::map<mpq_class, mpq_class> next;
    for (const auto& [w, p] : law)
      for (int i = 0; i < 5; ++i) next[interval_map(i, w)] += p * rho[i];
    law = std::move(next);
  }
  std::vector<FiniteDistribution::Atom> atoms;
  atoms.reserve(law.size());
  for (const auto& [w, p] : law) atoms.emplace_back(ExtendedRational(w), p);
  return FiniteDistribution(std::move(atoms));
}

FiniteDistribution exact_distribution_X(const ExtendedRational& x0, unsigned n) {
  if (n > 7) throw std::invalid_argument("exact_distribution_X: n must be <= 7");
  const mpq_class ninth(1, 9);
  std::map<ExtendedRational, mpq_class> law{{x0, mpq_class(1)}};
  for (unsigned step = 0; step < n; ++step) {
    std::map<ExtendedRational, mpq_class> next;
    for (const auto& [x, p] : law)
      for (int i = 0; i < kGeneratorCount; ++i) next[mobius_real(generator(i), x)] += p * ninth;
    law = std::move(next);
  }
  return FiniteDistribution({law.begin(), law.end()});
}

FiniteDistribution project_distribution(const FiniteDistribution& d) {
  std::vector<FiniteDistribution::Atom> atoms;
  atoms.reserve(d.atoms().size());
  for (const auto& [value, weight] : d.atoms())
    atoms.emplace_back(ExtendedRational(project_C(value)), weight);
  return FiniteDistribution(std::move(atoms));
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<ExtendedRational> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("EmpiricalDistribution: no samples");
  std::sort(samples_.begin(), samples_.end());
}

EmpiricalDistribution::EmpiricalDistribution(const std::vector<mpq_class>& samples)
    : EmpiricalDistribution(std::vector<ExtendedRational>(samples.begin(), samples.end())) {}

EmpiricalDistribution EmpiricalDistribution::from_doubles(const std::vector<double>& samples) {
  static const mpz_class kTwo53 = mpz_class(1) << 53;
  std::vector<ExtendedRational> exact;
  exact.reserve(samples.size());
  for (double x : samples) {
    if (std::isinf(x) && x > 0) {
      exact.push_back(ExtendedRational::infinity());
      continue;
    }
    if (!std::isfinite(x)) throw std::invalid_argument("EmpiricalDistribution: non-finite sample");
    mpq_class scaled = mpq_class(x) * kTwo53;
    mpz_class rounded;
    scaled += mpq_class(1, 2);
    mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    exact.emplace_back(rounded, kTwo53);
  }
  return EmpiricalDistribution(std::move(exact));
}

std::string reference_name(ReferenceCdf ref) {
  switch (ref) {
    case ReferenceCdf::qmark:
      return "qmark";
    case ReferenceCdf::chi_half_survival:
      return "chi-half-survival";
    case ReferenceCdf::lambda:
      return "lambda";
  }
  throw std::logic_error("reference_name: unknown reference");
}

mpq_class reference_cdf(ReferenceCdf ref, const ExtendedRational& x) {
  switch (ref) {
    case ReferenceCdf::qmark: {
      if (x.is_infinity() || x.is_negative() || x > ExtendedRational(1))
        throw std::domain_error("reference_cdf: qmark needs samples in [0, 1]");
      return qmark(x.to_mpq()).to_mpq();
    }
    case ReferenceCdf::chi_half_survival: {
      if (x.is_infinity()) return mpq_class(1);
      if (x.is_negative() || x.is_zero()) return mpq_class(0);
      return 1 - chi_half(x.to_mpq()).to_mpq();
    }
    case ReferenceCdf::lambda:
      return 1 - lambda_survival(x).to_mpq();
  }
  throw std::logic_error("reference_cdf: unknown reference");
}

KSResult ks_distance(const EmpiricalDistribution& emp, ReferenceCdf ref) {
  const auto& xs = emp.samples();
  const std::size_t n = xs.size();
  std::vector<mpq_class> cdf(n);
  parallel_for(n, [&](std::size_t i) { cdf[i] = reference_cdf(ref, xs[i]); });
  mpq_class best = 0;
  const mpq_class step(1, static_cast<unsigned long>(n));
  mpq_class ecdf_below = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class ecdf_at = ecdf_below + step;
    mpq_class lower = cdf[i] - ecdf_below;
    mpq_class upper = ecdf_at - cdf[i];
    if (lower > best) best = lower;
    if (upper > best) best = upper;
    ecdf_below = std::move(ecdf_at);
  }
  return {best.get_d(), n, reference_name(ref)};
}

std::complex<double> fourier_coefficient(std::uint64_t n, const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("fourier_coefficient: no samples");
  const double omega = 2.0 * std::numbers::pi * static_cast<double>(n);
  double re = 0;
  double im = 0;
  for (double x : samples) {
    re += std::cos(omega * x);
    im += std::sin(omega * x);
  }
  const double inv = 1.0 / static_cast<double>(samples.size());
  return {re * inv, im * inv};
}

std::complex<double> fourier_coefficient(std::uint64_t n, const EmpiricalDistribution& emp) {
  std::vector<double> xs;
  xs.reserve(emp.count());
  for (const auto& x : emp.samples()) {
    if (x.is_infinity()) throw std::domain_error("fourier_coefficient: sample at infinity");
    xs.push_back(x.to_double());
  }
  return fourier_coefficient(n, xs);
}

namespace {

/// Chi-square independence statistic with empty rows/columns removed; the
/// p-value is 1 when no degrees of freedom remain.
std::pair<double, double> contingency_chi_square(const std::vector<std::vector<double>>& table) {
  std::vector<double> row_total(table.size(), 0);
  std::vector<double> col_total(table.front().size(), 0);
  double total = 0;
  for (std::size_t r = 0; r < table.size(); ++r)
    for (std::size_t c = 0; c < table[r].size(); ++c) {
      row_total[r] += table[r][c];
      col_total[c] += table[r][c];
      total += table[r][c];
    }
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (double t : row_total)
    if (t > 0) ++rows;
  for (double t : col_total)
    if (t > 0) ++cols;
  if (rows < 2 || cols < 2 || total <= 0) return {0.0, 1.0};
  double stat = 0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (row_total[r] <= 0) continue;
    for (std::size_t c = 0; c < table[r].size(); ++c) {
      if (col_total[c] <= 0) continue;
      double expected = row_total[r] * col_total[c] / total;
      double diff = table[r][c] - expected;
      stat += diff * diff / expected;
    }
  }
  boost::math::chi_squared_distribution<double> dist(
      static_cast<double>((rows - 1) * (cols - 1)));
  return {stat, boost::math::cdf(boost::math::complement(dist, stat))};
}

}  // namespace

GeometricCheck geometric_pmf_check(const std::vector<StationaryYSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("geometric_pmf_check: no samples");
  static const mpq_class kQuartile[3] = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(2, 3)};
  std::array<std::uint64_t, 9> counts{};
  std::vector<std::vector<double>> table2(2, std::vector<double>(4, 0));
  std::vector<std::vector<double>> table4(4, std::vector<double>(4, 0));
  for (const auto& s : samples) {
    if (s.k0 >= 1 && s.k0 <= 8) ++counts[s.k0];
    int bin = 3;
    for (int b = 0; b < 3; ++b) {
      if (s.fractional < kQuartile[b]) {
        bin = b;
        break;
      }
    }
    table2[s.k0 == 1 ? 0 : 1][bin] += 1;
    table4[s.k0 >= 4 ? 3 : static_cast<int>(s.k0) - 1][bin] += 1;
  }
  GeometricCheck out;
  const double n = static_cast<double>(samples.size());
  for (int k = 1; k <= 8; ++k) {
    out.pmf[k] = static_cast<double>(counts[k]) / n;
    out.deviation[k] = std::abs(out.pmf[k] - std::ldexp(1.0, -k));
  }
  std::tie(out.chi_square_2x4, out.p_value_2x4) = contingency_chi_square(table2);
  std::tie(out.chi_square_4x4, out.p_value_4x4) = contingency_chi_square(table4);
  return out;
}

}  // namespace modwalk
