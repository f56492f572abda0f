#include "modwalk/chains.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "modwalk/cfrac.hpp"
#include "modwalk/parallel.hpp"

namespace modwalk {

namespace {

// Generator involution for negation: h_i(-x) = -h_{kNegate[i]}(x).
constexpr int kNegate[9] = {0, 2, 1, 4, 3, 6, 5, 8, 7};
// Interval-index involution for reciprocals: C-preimages of H_j under
// w -> 1/w swap 1<->4 and 2<->3.
constexpr int kReciprocal[5] = {0, 4, 3, 2, 1};
constexpr int kClassify[9] = {0, 1, 2, 3, 4, 4, 3, 1, 2};

void check_generator_index(int i) {
  if (i < 0 || i >= kGeneratorCount) throw std::out_of_range("generator index out of range");
}

void check_unit(const mpq_class& w, const char* who) {
  if (sgn(w) < 0 || w > 1) throw std::domain_error(std::string(who) + ": value outside [0, 1]");
}

}  // namespace

mpq_class interval_map(int i, const mpq_class& w) {
  check_unit(w, "interval_map");
  const mpz_class& p = w.get_num();
  const mpz_class& q = w.get_den();
  switch (i) {
    case 0:
      return w;
    case 1:  // 1/(1+w) = q/(p+q); gcd(q, p+q) = 1
      return mpq_class(q, p + q);
    case 2:  // 1-w = (q-p)/q; gcd(q-p, q) = 1
      return mpq_class(q - p, q);
    case 3:
      // tent: w/(1-w) below 1/2, (1-w)/w above; endpoints to 0, center to 1
      if (2 * w <= 1) return mpq_class(p, q - p);
      return mpq_class(q - p, p);
    case 4:  // w/(1+w) = p/(p+q)
      return mpq_class(p, p + q);
    default:
      throw std::out_of_range("interval map index out of range");
  }
}

int classify_generator(int i) {
  check_generator_index(i);
  return kClassify[i];
}

int effective_interval_map(int i, const ExtendedRational& x) {
  check_generator_index(i);
  int g = x.is_negative() ? kNegate[i] : i;
  int j = kClassify[g];
  bool inverted = x.is_infinity() || cmp(abs(x.num()), x.den()) > 0;
  return inverted ? kReciprocal[j] : j;
}

mpq_class project_C(const ExtendedRational& x) {
  if (x.is_infinity() || x.is_zero()) return mpq_class(0);
  mpz_class a = abs(x.num());
  if (cmp(a, x.den()) <= 0) return mpq_class(a, x.den());
  return mpq_class(x.den(), a);
}

ExtendedRational lift(const mpq_class& w, SignPair signs) {
  check_unit(w, "lift");
  if ((signs.s1 != 1 && signs.s1 != -1) || (signs.s2 != 1 && signs.s2 != -1))
    throw std::invalid_argument("lift: signs must be ±1");
  ExtendedRational x = signs.s1 == 1 ? ExtendedRational(w.get_num(), w.get_den())
                                     : ExtendedRational(w.get_den(), w.get_num());
  return signs.s2 == 1 ? x : x.negated();
}

std::pair<ExtendedRational, mpq_class> coupled_step(const ExtendedRational& x, const mpq_class& w,
                                                    int i) {
  check_generator_index(i);
  if (project_C(x) != w) throw std::invalid_argument("coupled_step: w is not C(x)");
  ExtendedRational x2 = mobius_real(generator(i), x);
  mpq_class w2 = interval_map(effective_interval_map(i, x), w);
  return {std::move(x2), std::move(w2)};
}

namespace {

template <class State, class Step>
std::vector<std::vector<State>> run_paths(const State& start, const WalkConfig& cfg, Step step) {
  std::vector<std::vector<State>> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    std::vector<State> path;
    path.reserve(cfg.steps + 1);
    path.push_back(start);
    State cur = start;
    for (std::uint64_t k = 0; k < cfg.steps; ++k) {
      cur = step(cur, rng);
      path.push_back(cur);
    }
    out[j] = std::move(path);
  });
  return out;
}

template <class State, class Step>
std::vector<State> run_finals(const State& start, const WalkConfig& cfg, Step step) {
  std::vector<State> out(cfg.trajectories, start);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    State cur = start;
    for (std::uint64_t k = 0; k < cfg.steps; ++k) cur = step(cur, rng);
    out[j] = std::move(cur);
  });
  return out;
}

ExtendedRational x_step(const ExtendedRational& x, TrajectoryRng& rng) {
  return mobius_real(generator(rng.next_generator_index()), x);
}

mpq_class w_step(const mpq_class& w, TrajectoryRng& rng) {
  return interval_map(kClassify[rng.next_generator_index()], w);
}

mpq_class u_step(const mpq_class& u, TrajectoryRng& rng) {
  return apply_A(rng.next_geometric(), u);
}

}  // namespace

std::vector<std::vector<ExtendedRational>> simulate_X(const ExtendedRational& x0,
                                                      const WalkConfig& cfg) {
  return run_paths(x0, cfg, x_step);
}

std::vector<std::vector<ExtendedRational>> simulate_Y(const ExtendedRational& x0,
                                                      const WalkConfig& cfg) {
  std::vector<std::vector<ExtendedRational>> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    std::vector<ExtendedRational> path;
    path.reserve(cfg.steps + 1);
    path.push_back(x0);
    ProjectiveMatrix product;
    for (std::uint64_t k = 0; k < cfg.steps; ++k) {
      product = multiply(product, generator(rng.next_generator_index()));
      path.push_back(mobius_real(product, x0));
    }
    out[j] = std::move(path);
  });
  return out;
}

std::vector<std::vector<mpq_class>> simulate_W(const mpq_class& w0, const WalkConfig& cfg) {
  check_unit(w0, "simulate_W");
  return run_paths(w0, cfg, w_step);
}

std::vector<std::vector<mpq_class>> simulate_U(const mpq_class& u0, const WalkConfig& cfg) {
  check_unit(u0, "simulate_U");
  return run_paths(u0, cfg, u_step);
}

std::vector<ExtendedRational> simulate_X_finals(const ExtendedRational& x0,
                                                const WalkConfig& cfg) {
  return run_finals(x0, cfg, x_step);
}

std::vector<mpq_class> simulate_W_finals(const mpq_class& w0, const WalkConfig& cfg) {
  check_unit(w0, "simulate_W");
  return run_finals(w0, cfg, w_step);
}

std::vector<mpq_class> simulate_U_finals(const mpq_class& u0, const WalkConfig& cfg) {
  check_unit(u0, "simulate_U");
  return run_finals(u0, cfg, u_step);
}

namespace {

constexpr double kPoleGuard = 1e-12;

struct GeneratorDoubles {
  double a, b, c, d;
};

const GeneratorDoubles& generator_doubles(int i) {
  static const std::array<GeneratorDoubles, kGeneratorCount> table = [] {
    std::array<GeneratorDoubles, kGeneratorCount> t{};
    for (int g = 0; g < kGeneratorCount; ++g) {
      const ProjectiveMatrix& m = generator(g);
      t[g] = {m.a().get_d(), m.b().get_d(), m.c().get_d(), m.d().get_d()};
    }
    return t;
  }();
  return table[i];
}

std::vector<double> exact_x_path_doubles(const ExtendedRational& x0, std::uint64_t seed,
                                         std::uint64_t j, std::uint64_t steps) {
  TrajectoryRng rng(seed, j);
  std::vector<double> out;
  out.reserve(steps + 1);
  ExtendedRational x = x0;
  out.push_back(x.to_double());
  for (std::uint64_t k = 0; k < steps; ++k) {
    x = mobius_real(generator(rng.next_generator_index()), x);
    out.push_back(x.to_double());
  }
  return out;
}

std::vector<double> exact_y_path_doubles(const ExtendedRational& x0, std::uint64_t seed,
                                         std::uint64_t j, std::uint64_t steps) {
  TrajectoryRng rng(seed, j);
  std::vector<double> out;
  out.reserve(steps + 1);
  out.push_back(x0.to_double());
  ProjectiveMatrix product;
  for (std::uint64_t k = 0; k < steps; ++k) {
    product = multiply(product, generator(rng.next_generator_index()));
    out.push_back(mobius_real(product, x0).to_double());
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> simulate_X_float(const ExtendedRational& x0,
                                                  const WalkConfig& cfg) {
  std::vector<std::vector<double>> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    std::vector<double> path;
    path.reserve(cfg.steps + 1);
    double x = x0.to_double();
    path.push_back(x);
    bool replay = false;
    for (std::uint64_t k = 0; k < cfg.steps && !replay; ++k) {
      const GeneratorDoubles& m = generator_doubles(rng.next_generator_index());
      if (std::isinf(x)) {
        x = m.c != 0.0 ? m.a / m.c : HUGE_VAL;
      } else {
        double den = m.c * x + m.d;
        if (std::fabs(den) < kPoleGuard * std::max(1.0, std::fabs(m.c * x) + std::fabs(m.d))) {
          replay = true;
          break;
        }
        x = (m.a * x + m.b) / den;
        if (std::isnan(x)) {
          replay = true;
          break;
        }
      }
      path.push_back(x);
    }
    // pole too close for doubles: rerun this trajectory exactly (same draws)
    out[j] = replay ? exact_x_path_doubles(x0, cfg.seed, j, cfg.steps) : std::move(path);
  });
  return out;
}

std::vector<std::vector<double>> simulate_Y_float(const ExtendedRational& x0,
                                                  const WalkConfig& cfg) {
  std::vector<std::vector<double>> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    std::vector<double> path;
    path.reserve(cfg.steps + 1);
    double x0d = x0.to_double();
    path.push_back(x0d);
    double p[4] = {1.0, 0.0, 0.0, 1.0};
    bool replay = false;
    for (std::uint64_t k = 0; k < cfg.steps && !replay; ++k) {
      const GeneratorDoubles& m = generator_doubles(rng.next_generator_index());
      double q[4] = {p[0] * m.a + p[1] * m.c, p[0] * m.b + p[1] * m.d,
                     p[2] * m.a + p[3] * m.c, p[2] * m.b + p[3] * m.d};
      double mx = std::max({std::fabs(q[0]), std::fabs(q[1]), std::fabs(q[2]), std::fabs(q[3])});
      if (mx > 1e100)
        for (double& e : q) e /= mx;
      for (int t = 0; t < 4; ++t) p[t] = q[t];
      double y;
      if (std::isinf(x0d)) {
        y = p[2] != 0.0 ? p[0] / p[2] : HUGE_VAL;
      } else {
        double den = p[2] * x0d + p[3];
        if (std::fabs(den) <
            kPoleGuard * std::max(1.0, std::fabs(p[2] * x0d) + std::fabs(p[3]))) {
          replay = true;
          break;
        }
        y = (p[0] * x0d + p[1]) / den;
      }
      if (std::isnan(y)) {
        replay = true;
        break;
      }
      path.push_back(y);
    }
    out[j] = replay ? exact_y_path_doubles(x0, cfg.seed, j, cfg.steps) : std::move(path);
  });
  return out;
}

std::vector<std::vector<double>> simulate_W_float(const mpq_class& w0, const WalkConfig& cfg) {
  check_unit(w0, "simulate_W");
  double start = w0.get_d();
  std::vector<std::vector<double>> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    std::vector<double> path;
    path.reserve(cfg.steps + 1);
    double w = start;
    path.push_back(w);
    for (std::uint64_t k = 0; k < cfg.steps; ++k) {
      switch (kClassify[rng.next_generator_index()]) {
        case 0:
          break;
        case 1:
          w = 1.0 / (1.0 + w);
          break;
        case 2:
          w = 1.0 - w;
          break;
        case 3:
          w = w <= 0.5 ? (w == 0.0 ? 0.0 : w / (1.0 - w)) : (1.0 - w) / w;
          break;
        default:
          w = w / (1.0 + w);
          break;
      }
      path.push_back(w);
    }
    out[j] = std::move(path);
  });
  return out;
}

std::vector<std::vector<double>> simulate_U_float(const mpq_class& u0, const WalkConfig& cfg) {
  check_unit(u0, "simulate_U");
  double start = u0.get_d();
  std::vector<std::vector<double>> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    std::vector<double> path;
    path.reserve(cfg.steps + 1);
    double u = start;
    path.push_back(u);
    for (std::uint64_t k = 0; k < cfg.steps; ++k) {
      u = 1.0 / (static_cast<double>(rng.next_geometric()) + u);
      path.push_back(u);
    }
    out[j] = std::move(path);
  });
  return out;
}

std::vector<std::vector<HalfPlanePoint<mpq_class>>> simulate_Z_exact(
    const HalfPlanePoint<mpq_class>& z0, const WalkConfig& cfg) {
  return run_paths(z0, cfg, [](const HalfPlanePoint<mpq_class>& z, TrajectoryRng& rng) {
    return mobius_complex(generator(rng.next_generator_index()), z);
  });
}

std::vector<std::vector<HalfPlanePoint<mpq_class>>> simulate_V_exact(
    const HalfPlanePoint<mpq_class>& z0, const WalkConfig& cfg) {
  std::vector<std::vector<HalfPlanePoint<mpq_class>>> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    std::vector<HalfPlanePoint<mpq_class>> path;
    path.reserve(cfg.steps + 1);
    path.push_back(z0);
    ProjectiveMatrix product;
    for (std::uint64_t k = 0; k < cfg.steps; ++k) {
      product = multiply(product, generator(rng.next_generator_index()));
      path.push_back(mobius_complex(product, z0));
    }
    out[j] = std::move(path);
  });
  return out;
}

namespace {

bool good_point(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) && z.imag() > 0.0;
}

}  // namespace

std::vector<ComplexFloatTrajectory> simulate_Z_float(std::complex<double> z0,
                                                     const WalkConfig& cfg) {
  if (!good_point(z0)) throw std::domain_error("simulate_Z: start must lie in the upper half plane");
  std::vector<ComplexFloatTrajectory> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    ComplexFloatTrajectory traj;
    traj.points.reserve(cfg.steps + 1);
    traj.points.push_back(z0);
    std::complex<double> z = z0;
    for (std::uint64_t k = 0; k < cfg.steps; ++k) {
      if (!traj.degenerate) {
        const GeneratorDoubles& m = generator_doubles(rng.next_generator_index());
        std::complex<double> next = (m.a * z + m.b) / (m.c * z + m.d);
        if (good_point(next))
          z = next;
        else
          traj.degenerate = true;  // im underflow: freeze, treated as converged
      }
      traj.points.push_back(z);
    }
    out[j] = std::move(traj);
  });
  return out;
}

std::vector<ComplexFloatTrajectory> simulate_V_float(std::complex<double> z0,
                                                     const WalkConfig& cfg) {
  if (!good_point(z0)) throw std::domain_error("simulate_V: start must lie in the upper half plane");
  std::vector<ComplexFloatTrajectory> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    ComplexFloatTrajectory traj;
    traj.points.reserve(cfg.steps + 1);
    traj.points.push_back(z0);
    double p[4] = {1.0, 0.0, 0.0, 1.0};
    std::complex<double> v = z0;
    for (std::uint64_t k = 0; k < cfg.steps; ++k) {
      if (!traj.degenerate) {
        const GeneratorDoubles& m = generator_doubles(rng.next_generator_index());
        double q[4] = {p[0] * m.a + p[1] * m.c, p[0] * m.b + p[1] * m.d,
                       p[2] * m.a + p[3] * m.c, p[2] * m.b + p[3] * m.d};
        double mx = std::max({std::fabs(q[0]), std::fabs(q[1]), std::fabs(q[2]), std::fabs(q[3])});
        if (mx > 1e100)
          for (double& e : q) e /= mx;
        for (int t = 0; t < 4; ++t) p[t] = q[t];
        std::complex<double> next = (p[0] * z0 + p[1]) / (p[2] * z0 + p[3]);
        if (good_point(next))
          v = next;
        else
          traj.degenerate = true;
      }
      traj.points.push_back(v);
    }
    out[j] = std::move(traj);
  });
  return out;
}

namespace {

StationarySample stationary_w_from_stream(TrajectoryRng& rng, std::uint64_t depth) {
  std::vector<std::uint64_t> ks(depth);
  std::uint64_t sum = 0;
  for (std::uint64_t t = 0; t < depth; ++t) {
    ks[t] = rng.next_geometric();
    sum += ks[t];
  }
  // fold [0; k_1, ..., k_m] from the inside out
  mpz_class p = 0, q = 1;
  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    mpz_class np = q;
    q = mpz_class(static_cast<unsigned long>(*it)) * q + p;
    p = std::move(np);
  }
  return {mpq_class(p, q), sum};
}

}  // namespace

std::vector<StationarySample> sample_stationary_W(const WalkConfig& cfg, std::uint64_t depth) {
  if (depth == 0) throw std::domain_error("sample_stationary_W: depth must be >= 1");
  std::vector<StationarySample> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    out[j] = stationary_w_from_stream(rng, depth);
  });
  return out;
}

std::vector<StationaryYSample> sample_stationary_Y(const WalkConfig& cfg, std::uint64_t depth) {
  if (depth == 0) throw std::domain_error("sample_stationary_Y: depth must be >= 1");
  std::vector<StationaryYSample> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    StationaryYSample s;
    s.k0 = rng.next_geometric();
    StationarySample w = stationary_w_from_stream(rng, depth);
    s.fractional = std::move(w.value);
    s.quotient_sum = w.quotient_sum;
    s.value = mpq_class(static_cast<unsigned long>(s.k0 - 1)) + s.fractional;
    out[j] = std::move(s);
  });
  return out;
}

std::vector<ExtendedRational> sample_stationary_X(const WalkConfig& cfg, std::uint64_t depth) {
  if (depth == 0) throw std::domain_error("sample_stationary_X: depth must be >= 1");
  std::vector<ExtendedRational> out(cfg.trajectories);
  parallel_for(cfg.trajectories, [&](std::size_t j) {
    TrajectoryRng rng(cfg.seed, j);
    StationarySample w = stationary_w_from_stream(rng, depth);
    SignPair signs;
    signs.s1 = rng.next_sign();
    signs.s2 = rng.next_sign();
    out[j] = lift(w.value, signs);
  });
  return out;
}

}  // namespace modwalk
