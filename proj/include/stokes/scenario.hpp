#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stokes/complex_util.hpp"
#include "stokes/errors.hpp"
#include "stokes/parameters.hpp"

namespace stokes {

struct Tolerances {
  double tol_quad = 1e-10;
  double tol_verify = 1e-6;
  double int_tol = kIntTol;
};

// One batch work item: parameters, optional ray overrides, sample points,
// tolerances and the set of requested checks.
struct Scenario {
  std::string name;
  Parameters params;
  std::optional<std::array<double, 3>> rays;
  std::vector<Complex> x_samples;
  Tolerances tol;
  std::set<std::string> tasks;  // subset of {stokes, verify, product-sum, gevrey, residual}
};

namespace detail {

inline Complex parse_complex(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidParameters(std::string("config: ") + what + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& j, std::size_t index) {
  Scenario s;
  s.name = j.value("name", "scenario-" + std::to_string(index));
  if (!j.contains("alpha") || !j.contains("beta") || j["alpha"].size() != 3 ||
      j["beta"].size() != 3)
    throw InvalidParameters("config: alpha and beta must be arrays of three [re, im] pairs");
  for (int k = 0; k < 3; ++k) {
    s.params.alpha[static_cast<std::size_t>(k)] = detail::parse_complex(j["alpha"][static_cast<std::size_t>(k)], "alpha");
    s.params.beta[static_cast<std::size_t>(k)] = detail::parse_complex(j["beta"][static_cast<std::size_t>(k)], "beta");
  }
  if (j.contains("rays")) {
    if (j["rays"].size() != 3) throw InvalidParameters("config: rays must hold three angles");
    s.rays = std::array<double, 3>{j["rays"][0].get<double>(), j["rays"][1].get<double>(),
                                   j["rays"][2].get<double>()};
  }
  if (j.contains("x_samples"))
    for (const auto& xj : j["x_samples"]) s.x_samples.push_back(detail::parse_complex(xj, "x_samples"));
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    s.tol.tol_quad = t.value("tol_quad", s.tol.tol_quad);
    s.tol.tol_verify = t.value("tol_verify", s.tol.tol_verify);
    s.tol.int_tol = t.value("int_tol", s.tol.int_tol);
  }
  if (s.tol.tol_quad <= 0 || s.tol.tol_verify <= 0 || s.tol.int_tol <= 0)
    throw InvalidParameters("config: tolerances must be positive");
  if (j.contains("tasks"))
    for (const auto& t : j["tasks"]) s.tasks.insert(t.get<std::string>());
  else
    s.tasks = {"stokes"};
  const std::set<std::string> known = {"stokes", "verify", "product-sum", "gevrey", "residual"};
  for (const auto& t : s.tasks)
    if (!known.count(t)) throw InvalidParameters("config: unknown task '" + t + "'");
  const bool needs_x = s.tasks.count("gevrey") || s.tasks.count("residual") ||
                       s.tasks.count("product-sum");
  if (needs_x && s.x_samples.empty())
    throw InvalidParameters("config: x_samples required for the requested tasks");
  return s;
}

inline std::vector<Scenario> parse_config(const nlohmann::json& j) {
  std::vector<Scenario> out;
  if (j.contains("scenarios")) {
    std::size_t i = 0;
    for (const auto& sj : j["scenarios"]) out.push_back(parse_scenario(sj, i++));
  } else {
    out.push_back(parse_scenario(j, 0));
  }
  if (out.empty()) throw InvalidParameters("config: no scenarios");
  return out;
}

}  // namespace stokes
