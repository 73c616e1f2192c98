#pragma once
//! Command layer behind the CLI binary.
//!
//! Each command takes a parsed scenario, writes its artifacts under an output
//! directory and returns the process exit code:
//!   0  success / certificate satisfied
//!   1  certificate (or required graph property) not satisfied
//!   2  invalid scenario
//!   3  numeric failure (integration guard tripped)
//! The functions are plain library calls so tests can drive them in-process;
//! the binary in tools/ is a thin wrapper.

#include <iosfwd>
#include <string>

#include "tcs/scenario.hpp"

namespace tcs {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUnsatisfied = 1;
inline constexpr int kExitBadScenario = 2;
inline constexpr int kExitNumeric = 3;

//! Prints agent count, arc count, roots and the spanning-tree depth (or "no
//! spanning tree", with exit code 1).
int cmd_graph_info(const Scenario& sc, std::ostream& out);

//! Runs the configured simulation and writes trajectory + diagnostics CSVs.
//! When the scenario carries certificate parameters, a usable certificate
//! adds envelope columns to the diagnostics.  A tripped integration guard
//! still writes the partial trajectory plus an error record, exit code 3.
int cmd_simulate(const Scenario& sc, const std::string& out_dir, std::ostream& out);

//! Evaluates the certificate (single point or grid search) and writes the
//! report JSON; exit code 0 iff satisfied.
int cmd_certify(const Scenario& sc, const std::string& out_dir, std::ostream& out);

//! Discrete-vs-continuous condition table over a range of step sizes;
//! printed and written as CSV.
int cmd_limit_check(const Scenario& sc, const std::string& out_dir, std::ostream& out);

//! Full argument parsing + dispatch; what main() calls.
int run_cli(int argc, const char* const* argv);

}  // namespace tcs
