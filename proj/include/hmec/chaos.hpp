#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hmec::chaos {

/// Lower edge of the chaotic region of the logistic map.
inline constexpr double kChaoticMin = 3.57;
inline constexpr double kChaoticMax = 4.0;

/// Every emitted state lies in [kClampEpsilon, 1 - kClampEpsilon]; 0 and 1 are absorbing.
inline constexpr double kClampEpsilon = 1e-12;

double clamp_unit(double x) noexcept;

/// Map parameter r. Key-bearing parameters must lie in [3.57, 4.0].
class LogisticParams {
 public:
  /// Throws Error{out_of_region} outside the chaotic region.
  explicit LogisticParams(double r);

  /// Accepts any r in (0, 4]; for plotting non-chaotic regimes.
  static LogisticParams any_region(double r);

  double r() const noexcept { return r_; }

  friend bool operator==(const LogisticParams&, const LogisticParams&) = default;

 private:
  struct Unchecked {};
  LogisticParams(double r, Unchecked) noexcept : r_(r) {}

  double r_;
};

/// A point of the open interval (0, 1).
class LogisticState {
 public:
  /// Throws Error{invalid_argument} unless 0 < x < 1. The value is clamped to the emitted range.
  explicit LogisticState(double x);

  double x() const noexcept { return x_; }

  friend bool operator==(const LogisticState&, const LogisticState&) = default;

 private:
  friend LogisticState logistic_step(const LogisticParams&, LogisticState) noexcept;
  friend LogisticState perturb_state(LogisticState, std::uint8_t) noexcept;
  friend LogisticState unperturb_state(LogisticState, std::uint8_t) noexcept;

  struct Raw {};
  LogisticState(double x, Raw) noexcept : x_(x) {}

  double x_;
};

struct OrbitSample {
  std::size_t k;
  double x;
};

using Orbit = std::vector<OrbitSample>;

// Evaluated as ((r * x) * (1 - x)) in binary64; the core is built with -ffp-contract=off so
// encryptor and decryptor evolve bit-identical trajectories.
LogisticState logistic_step(const LogisticParams& params, LogisticState state) noexcept;

LogisticState logistic_iterate(const LogisticParams& params, LogisticState state,
                               std::size_t n) noexcept;

/// floor(x * 256) limited to 255.
std::uint8_t quantize_state(LogisticState state) noexcept;

/// frac(x + (feedback + 1) / 257), clamped. Injects a ciphertext byte into the map state.
LogisticState perturb_state(LogisticState state, std::uint8_t feedback) noexcept;

/// Analytic inverse of perturb_state, exact up to one clamping epsilon.
LogisticState unperturb_state(LogisticState state, std::uint8_t feedback) noexcept;

/// First n iterates starting at x0 (index 0 is x0 itself).
Orbit generate_orbit(const LogisticParams& params, double x0, std::size_t n);

/// CSV with header `k,x`, x printed with 17 significant digits.
std::string orbit_csv(const Orbit& orbit);

}  // namespace hmec::chaos
