#pragma once

// Line-oriented `section.key = value` run configuration. Sections: metric,
// points, tolerances, suite. Unknown keys are rejected.

#include <cstdint>
#include <map>
#include <string>

#include "ghs/metric_zoo.hpp"

namespace ghs {

struct RunConfig {
  FamilySpec metric;
  uint64_t seed = 42;
  int count = 20;
  double x_box = 1.0;   // x sampled uniformly in [-x_box, x_box]^n
  double k_box = 0.5;   // k sampled uniformly in [-k_box*Lambda, k_box*Lambda]^n
  std::string suite = "all";
  std::map<std::string, double> tolerances;  // per-check overrides
  double blanket_tolerance = 0;  // applies to every check without an explicit override
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Seeded, platform-stable point sampler (rejection sampling against the
// family's validity domain).
class PointSampler {
 public:
  PointSampler(uint64_t seed, double x_box, double k_box) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL), x_box_(x_box), k_box_(k_box) {}

  double uniform(double lo, double hi);
  PhasePoint sample(const MetricFamily& fam);
  // sample with |kbar^2| <= cap * Lambda^2 (used by the shooting checks)
  PhasePoint sample_capped(const MetricFamily& fam, double cap);

 private:
  uint64_t next_();
  uint64_t state_;
  double x_box_, k_box_;
};

}  // namespace ghs
