#include "ghs/config.hpp"

#include <fstream>
#include <sstream>

namespace ghs {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_branch(const std::string& v) {
  if (v == "plus" || v == "+1" || v == "+") return +1;
  if (v == "minus" || v == "-1" || v == "-") return -1;
  throw ConfigError("metric.branch must be plus or minus, got: " + v);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": " + v);
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

    if (key == "metric.family") {
      cfg.metric.id = family_from_string(value);
    } else if (key == "metric.n") {
      cfg.metric.n = static_cast<int>(to_double(value, key));
    } else if (key == "metric.lambda") {
      cfg.metric.lambda = to_double(value, key);
    } else if (key == "metric.alpha") {
      cfg.metric.alpha = to_double(value, key);
    } else if (key == "metric.branch") {
      cfg.metric.branch = parse_branch(value);
    } else if (key == "metric.f1") {
      cfg.metric.f1 = fsel_from_string(value);
    } else if (key == "metric.f2") {
      cfg.metric.f2 = fsel_from_string(value);
    } else if (key == "metric.f3") {
      cfg.metric.f3 = fsel_from_string(value);
    } else if (key == "metric.f4") {
      cfg.metric.f4 = fsel_from_string(value);
    } else if (key == "metric.nvec") {
      std::istringstream vs(value);
      std::string item;
      int i = 0;
      while (std::getline(vs, item, ',')) {
        if (i >= 4) throw ConfigError("metric.nvec takes at most 4 components");
        cfg.metric.nvec[static_cast<size_t>(i++)] = to_double(trim(item), key);
      }
    } else if (key == "points.seed") {
      cfg.seed = static_cast<uint64_t>(to_double(value, key));
    } else if (key == "points.count") {
      cfg.count = static_cast<int>(to_double(value, key));
      if (cfg.count < 1) throw ConfigError("points.count must be positive");
    } else if (key == "points.x_box") {
      cfg.x_box = to_double(value, key);
    } else if (key == "points.k_box") {
      cfg.k_box = to_double(value, key);
    } else if (key == "suite.name") {
      cfg.suite = value;
    } else if (key.rfind("tolerances.", 0) == 0) {
      cfg.tolerances[key.substr(11)] = to_double(value, key);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  cfg.metric.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

uint64_t PointSampler::next_() {
  // splitmix64: platform-stable
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double PointSampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(next_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

PhasePoint PointSampler::sample(const MetricFamily& fam) {
  const int n = fam.spec.n;
  const double kb = k_box_ * fam.spec.lambda;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    VecN<double> x(n), k(n);
    for (int i = 0; i < n; ++i) x[i] = uniform(-x_box_, x_box_);
    for (int i = 0; i < n; ++i) k[i] = uniform(-kb, kb);
    PhasePoint p(x, k);
    if (!fam.in_domain || fam.in_domain(p)) return p;
  }
  throw DomainError("could not sample a point inside the family domain");
}

PhasePoint PointSampler::sample_capped(const MetricFamily& fam, double cap) {
  const double l2 = fam.spec.lambda * fam.spec.lambda;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    PhasePoint p = sample(fam);
    if (std::fabs(fam.casimir_base.value(p)) <= cap * l2) return p;
  }
  throw DomainError("could not sample a point under the kbar^2 cap");
}

}  // namespace ghs
