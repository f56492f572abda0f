#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "modwalk/psl2z.hpp"
#include "modwalk/rational.hpp"
#include "modwalk/rng.hpp"

namespace modwalk {

enum class NumericMode { exact, floating };

/// Deterministic simulation request: identical config means identical output.
struct WalkConfig {
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint64_t trajectories = 1;
  NumericMode mode = NumericMode::exact;
};

/// The five interval maps driving the projected chain:
///   H_0 = id, H_1 = 1/(1+w), H_2 = 1-w, H_3 = min(w/(1-w), (1-w)/w),
///   H_4 = w/(1+w).  Requires 0 <= w <= 1.
mpq_class interval_map(int i, const mpq_class& w);

/// Interval-map index fed by a uniform generator index: 0..4 map to
/// themselves, 5 -> 4, 6 -> 3, 7 -> 1, 8 -> 2.  Fiber sizes (1,2,2,2,2)
/// turn the uniform law on 0..8 into weights (1/9, 2/9, 2/9, 2/9, 2/9).
int classify_generator(int i);

/// Branch-aware index making the projection exact pathwise for every seed:
/// C(h_i(x)) = H_{effective_interval_map(i, x)}(C(x)) for all extended
/// rationals x, including {0, ±1, ∞}.  On (0, 1) it coincides with
/// classify_generator(i); elsewhere the generator index is first pushed
/// through the negation involution (12)(34)(56)(78) when x < 0, and the
/// resulting interval index through (14)(23) when |x| > 1 (∞ counts as > 1).
/// Each fiber keeps sizes (1,2,2,2,2), so the projected kernel is unchanged.
int effective_interval_map(int i, const ExtendedRational& x);

/// C(x) = min(|x|, 1/|x|) in [0, 1]; C(0) = C(∞) = 0.
mpq_class project_C(const ExtendedRational& x);

struct SignPair {
  int s1 = 1;
  int s2 = 1;
};

/// s2 * w^{s1}: the four sign pairs carry w to {w, -w, 1/w, -1/w}.
/// w = 0 lifts to 0 (s1 = +1) or ∞ (s1 = -1) by convention.
ExtendedRational lift(const mpq_class& w, SignPair signs);

/// One coupled move of the boundary chain and its projection:
/// x' = h_{generator(i)}(x), w' = H_{effective_interval_map(i, x)}(w).
/// Requires w = C(x); guarantees w' = C(x').
std::pair<ExtendedRational, mpq_class> coupled_step(const ExtendedRational& x, const mpq_class& w,
                                                    int i);

/// --- trajectory simulators ---------------------------------------------
/// Each trajectory j consumes only its own stream TrajectoryRng(seed, j);
/// batch results are therefore independent of scheduling.  Exact simulators
/// return steps+1 states (index 0 is the start).

std::vector<std::vector<ExtendedRational>> simulate_X(const ExtendedRational& x0,
                                                      const WalkConfig& cfg);
std::vector<std::vector<ExtendedRational>> simulate_Y(const ExtendedRational& x0,
                                                      const WalkConfig& cfg);
std::vector<std::vector<mpq_class>> simulate_W(const mpq_class& w0, const WalkConfig& cfg);
std::vector<std::vector<mpq_class>> simulate_U(const mpq_class& u0, const WalkConfig& cfg);

/// Final state only, one per trajectory (same streams as the simulators
/// above; avoids materializing full paths for large KS batches).
std::vector<ExtendedRational> simulate_X_finals(const ExtendedRational& x0, const WalkConfig& cfg);
std::vector<mpq_class> simulate_W_finals(const mpq_class& w0, const WalkConfig& cfg);
std::vector<mpq_class> simulate_U_finals(const mpq_class& u0, const WalkConfig& cfg);

/// Float-mode boundary chains.  A step with |c x + d| < 1e-12 would lose the
/// pole structure, so such a trajectory is replayed from the start in exact
/// arithmetic (same stream, bitwise the same draws) and then converted.
/// The infinite point prints as +inf.
std::vector<std::vector<double>> simulate_X_float(const ExtendedRational& x0,
                                                  const WalkConfig& cfg);
std::vector<std::vector<double>> simulate_Y_float(const ExtendedRational& x0,
                                                  const WalkConfig& cfg);
std::vector<std::vector<double>> simulate_W_float(const mpq_class& w0, const WalkConfig& cfg);
std::vector<std::vector<double>> simulate_U_float(const mpq_class& u0, const WalkConfig& cfg);

/// Upper-half-plane chains.  Exact mode keeps rational coordinates; float
/// V keeps the accumulated matrix as renormalized doubles.
std::vector<std::vector<HalfPlanePoint<mpq_class>>> simulate_Z_exact(
    const HalfPlanePoint<mpq_class>& z0, const WalkConfig& cfg);
std::vector<std::vector<HalfPlanePoint<mpq_class>>> simulate_V_exact(
    const HalfPlanePoint<mpq_class>& z0, const WalkConfig& cfg);

struct ComplexFloatTrajectory {
  std::vector<std::complex<double>> points;
  /// Set when the imaginary part underflowed to zero or a value stopped
  /// being finite; the trajectory is frozen at its last good point and
  /// treated as converged.
  bool degenerate = false;
};
std::vector<ComplexFloatTrajectory> simulate_Z_float(std::complex<double> z0,
                                                     const WalkConfig& cfg);
std::vector<ComplexFloatTrajectory> simulate_V_float(std::complex<double> z0,
                                                     const WalkConfig& cfg);

/// --- stationary samplers ------------------------------------------------
/// One sample per trajectory.  quotient_sum records k_1+...+k_m; the
/// truncation error of the sampled law is at most 2 * 2^-quotient_sum in
/// Kolmogorov distance.

struct StationarySample {
  mpq_class value;
  std::uint64_t quotient_sum = 0;
};

/// W = [0; K_1, ..., K_m] with i.i.d. geometric(1/2) quotients.
std::vector<StationarySample> sample_stationary_W(const WalkConfig& cfg, std::uint64_t depth);

struct StationaryYSample {
  mpq_class value;              // (k0 - 1) + fractional
  std::uint64_t k0 = 1;        // floor(Y) + 1, geometric(1/2)
  mpq_class fractional;        // [0; K_1, ..., K_m]
  std::uint64_t quotient_sum = 0;
};

/// Y = (K_0 - 1) + [0; K_1, ..., K_m]; draw order per stream: K_0 first.
std::vector<StationaryYSample> sample_stationary_Y(const WalkConfig& cfg, std::uint64_t depth);

/// X = S_2 W^{S_1} with a stationary W sample; draw order per stream:
/// K_1..K_m then s1, s2.
std::vector<ExtendedRational> sample_stationary_X(const WalkConfig& cfg, std::uint64_t depth);

}  // namespace modwalk
