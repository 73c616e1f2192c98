#pragma once
//! Scenario files: one JSON document describing graph, kernels, initial
//! data, run mode, numerics and optional certificate parameters.
//!
//! Layout (sections may be omitted where marked optional):
//!
//!   {
//!     "graph":   {"type":"edges","n":3,"edges":[[0,1],[1,2]]}
//!                | {"type":"complete"|"cycle"|"path","n":4}
//!                | {"type":"random","n":6,"p":0.4,"seed":7},
//!     "phi":     {"family":"constant","kappa":1.0}
//!                | {"family":"algebraic","kappa":1.0,"s":0.5}
//!                | {"family":"exponential","kappa":1.0,"ell":2.0}
//!                | {"family":"tabulated","table":[[0,1.0],[2,0.5]]},
//!     "zeta":    same shape as "phi",
//!     "initial": {"x":[[..]],"v":[[..]],"theta":[..]}        (or "beta")
//!                | {"positions":{"box":1.0},"velocities":{"scale":0.1},
//!                   "temperatures":{"min":0.9,"max":1.1},"dim":2,"seed":42},
//!     "mode":    "continuous" | "discrete",
//!     "numerics":{"h":1e-3,"t_end":10.0,"sample_every":10}   (t_end continuous)
//!                | {"h":0.1,"n_steps":1000,"sample_every":10} (discrete),
//!     "certificate": {"x_inf":1.0,"delta":0.5}      (scalars or grids;
//!                     "n0" instead of "delta" in discrete mode;
//!                     optional "h_values":[..] for limit checks),   (optional)
//!     "output":  {"trajectory":"trajectory.csv", ...}               (optional)
//!   }
//!
//! Random draws are agent-major per block, positions then velocities then
//! temperatures, from one engine seeded by the section seed.  Seeds are
//! mandatory wherever randomness is requested; a --seed override replaces
//! every seed the scenario carries.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcs/model.hpp"

namespace tcs {

struct Scenario {
  ModelSpec model;
  EnsembleState initial;

  bool discrete = false;
  double h = 0.0;
  double t_end = 0.0;  // continuous horizon
  long n_steps = 0;    // discrete horizon
  long sample_every = 1;

  bool has_certificate = false;
  std::vector<double> x_inf_values;
  std::vector<double> delta_values;  // continuous windows
  std::vector<long> n0_values;       // discrete windows
  std::vector<double> h_values;      // limit-check step sizes (optional)

  std::string trajectory_name = "trajectory.csv";
  std::string diagnostics_name = "diagnostics.csv";
  std::string report_name = "certificate.json";
  std::string limit_name = "limit_check.csv";

  Scenario(ModelSpec m, EnsembleState s) : model(std::move(m)), initial(std::move(s)) {}
};

//! Parse a scenario document; throws scenario_error with field context on any
//! malformed or inconsistent input.
Scenario parse_scenario(const std::string& text,
                        std::optional<std::uint64_t> seed_override = std::nullopt);

//! Read and parse a scenario file.
Scenario load_scenario(const std::string& path,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace tcs
