#include "hmec/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hmec/error.hpp"

namespace hmec::chaos {

double clamp_unit(double x) noexcept {
  return std::clamp(x, kClampEpsilon, 1.0 - kClampEpsilon);
}

LogisticParams::LogisticParams(double r) : r_(r) {
  if (!(r >= kChaoticMin && r <= kChaoticMax)) {
    throw Error(ErrorCode::out_of_region,
                "logistic parameter r = " + std::to_string(r) + " is outside [3.57, 4]");
  }
}

LogisticParams LogisticParams::any_region(double r) {
  if (!(r > 0.0 && r <= kChaoticMax)) {
    throw Error(ErrorCode::out_of_region,
                "logistic parameter r = " + std::to_string(r) + " is outside (0, 4]");
  }
  return LogisticParams(r, Unchecked{});
}

LogisticState::LogisticState(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "logistic state must lie in (0, 1)");
  }
  x_ = clamp_unit(x);
}

LogisticState logistic_step(const LogisticParams& params, LogisticState state) noexcept {
  const double rx = params.r() * state.x_;
  const double next = rx * (1.0 - state.x_);
  return LogisticState(clamp_unit(next), LogisticState::Raw{});
}

LogisticState logistic_iterate(const LogisticParams& params, LogisticState state,
                               std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) state = logistic_step(params, state);
  return state;
}

std::uint8_t quantize_state(LogisticState state) noexcept {
  const double scaled = std::floor(state.x() * 256.0);
  return static_cast<std::uint8_t>(std::min(scaled, 255.0));
}

namespace {

double feedback_offset(std::uint8_t feedback) noexcept {
  return (static_cast<double>(feedback) + 1.0) / 257.0;
}

}  // namespace

LogisticState perturb_state(LogisticState state, std::uint8_t feedback) noexcept {
  double y = state.x_ + feedback_offset(feedback);
  if (y >= 1.0) y -= 1.0;
  return LogisticState(clamp_unit(y), LogisticState::Raw{});
}

LogisticState unperturb_state(LogisticState state, std::uint8_t feedback) noexcept {
  double y = state.x_ - feedback_offset(feedback);
  if (y < 0.0) y += 1.0;
  return LogisticState(clamp_unit(y), LogisticState::Raw{});
}

Orbit generate_orbit(const LogisticParams& params, double x0, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "orbit length must be at least 1");
  LogisticState state(x0);
  Orbit orbit;
  orbit.reserve(n);
  orbit.push_back({0, state.x()});
  for (std::size_t k = 1; k < n; ++k) {
    state = logistic_step(params, state);
    orbit.push_back({k, state.x()});
  }
  return orbit;
}

std::string orbit_csv(const Orbit& orbit) {
  std::string out = "k,x\n";
  char line[64];
  for (const auto& s : orbit) {
    std::snprintf(line, sizeof line, "%zu,%.17g\n", s.k, s.x);
    out += line;
  }
  return out;
}

}  // namespace hmec::chaos
