#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gridsar/planner.hpp"

namespace gridsar::detail {

// Shortest round-trip decimal form; identical bytes for identical doubles on
// every run, which the deterministic-output contract relies on.
inline std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad numeric value: " + std::string(s));
  return v;
}

inline long parse_int(std::string_view s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer value: " + std::string(s));
  return v;
}

inline std::string kv(std::string_view key, const std::string& value) {
  return std::string(key) + " " + value + "\n";
}

// Planner knobs with every default resolved, for provenance headers.
inline std::string planner_block(std::string_view prefix, const PlannerConfig& cfg, int grid_n,
                                 double cell_size_m) {
  const std::string p(prefix);
  std::string out;
  out += kv(p + "max_iterations", std::to_string(cfg.max_iterations));
  out += kv(p + "max_time_ms", fmt(cfg.max_time_ms));
  out += kv(p + "max_level", std::to_string(cfg.max_level));
  out += kv(p + "p_epsilon", fmt(cfg.resolved_p_epsilon(grid_n)));
  out += kv(p + "gamma", fmt(cfg.gamma));
  out += kv(p + "c_uct", fmt(cfg.c_uct));
  out += kv(p + "max_depth", std::to_string(cfg.max_depth));
  out += kv(p + "alpha", fmt(cfg.alpha));
  out += kv(p + "rollout_samples", std::to_string(cfg.rollout.sample_count));
  out += kv(p + "rollout_step_scale_m",
            fmt(cfg.rollout.step_cost_scale_m > 0 ? cfg.rollout.step_cost_scale_m : cell_size_m));
  return out;
}

inline std::string height_block(std::string_view prefix, const HeightConfig& hc) {
  const std::string p(prefix);
  std::string out;
  out += kv(p + "tau", std::to_string(hc.tau));
  out += kv(p + "delta_h_m", fmt(hc.delta_h_m));
  out += kv(p + "h_max_m", fmt(hc.h_max_m));
  out += kv(p + "h_init_m", fmt(hc.h_init_m));
  return out;
}

}  // namespace gridsar::detail
