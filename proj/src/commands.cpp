#include "tcs/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcs/certificates.hpp"
#include "tcs/dynamics.hpp"
#include "tcs/errors.hpp"
#include "tcs/io.hpp"

namespace tcs {

namespace {

using nlohmann::json;

std::filesystem::path ensure_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) throw scenario_error("output directory must not be empty");
  std::filesystem::path p(out_dir);
  std::filesystem::create_directories(p);
  return p;
}

//! One evaluated certificate for the scenario's certificate section: a single
//! parameter point is checked directly (so out-of-domain step sizes still
//! produce a report), grids go through the deterministic search.
struct ResolvedCertificate {
  std::optional<FlockingCertificate> cert;
  SearchResult search;
  bool from_grid = false;
};

ResolvedCertificate resolve_certificate(const Scenario& sc) {
  ResolvedCertificate out;
  if (!sc.has_certificate) return out;
  const EnsembleSummary ens = summarize(sc.initial, sc.model);
  const CommKernel& phi = sc.model.phi();
  const CommKernel& zeta = sc.model.zeta();
  if (sc.discrete) {
    out.from_grid = sc.x_inf_values.size() > 1 || sc.n0_values.size() > 1;
    if (out.from_grid) {
      out.search = search_parameters_discrete(ens, phi, zeta, sc.x_inf_values, sc.n0_values, sc.h);
      out.cert = out.search.best ? out.search.best : out.search.closest;
    } else {
      out.cert = check_flocking(
          make_inputs_discrete(ens, phi, zeta, sc.x_inf_values[0], sc.n0_values[0], sc.h));
    }
  } else {
    out.from_grid = sc.x_inf_values.size() > 1 || sc.delta_values.size() > 1;
    if (out.from_grid) {
      out.search = search_parameters(ens, phi, zeta, sc.x_inf_values, sc.delta_values);
      out.cert = out.search.best ? out.search.best : out.search.closest;
    } else {
      out.cert = check_flocking(
          make_inputs_continuous(ens, phi, zeta, sc.x_inf_values[0], sc.delta_values[0]));
    }
  }
  return out;
}

}  // namespace

int cmd_graph_info(const Scenario& sc, std::ostream& out) {
  const Digraph& g = sc.model.graph();
  out << "agents: " << g.size() << "\n";
  out << "arcs: " << g.arc_count() << "\n";
  const std::vector<std::size_t> roots = g.roots();
  if (roots.empty()) {
    out << "roots: none\n";
    out << "no spanning tree\n";
    return kExitUnsatisfied;
  }
  out << "roots:";
  for (std::size_t r : roots) out << ' ' << r;
  out << "\n";
  out << "depth: " << g.smallest_depth() << "\n";
  return kExitSuccess;
}

int cmd_simulate(const Scenario& sc, const std::string& out_dir, std::ostream& out) {
  const std::filesystem::path dir = ensure_out_dir(out_dir);
  sc.initial.validate();
  const ResolvedCertificate rc = resolve_certificate(sc);

  // Step plan: fixed steps, with a shorter final continuous step landing
  // exactly on t_end.
  const double t0 = sc.initial.t;
  std::size_t total = 0;
  bool partial = false;
  double rem = 0.0;
  if (sc.discrete) {
    total = static_cast<std::size_t>(sc.n_steps);
  } else {
    const double span = sc.t_end - t0;
    const std::size_t full = static_cast<std::size_t>(std::floor(span / sc.h + 1e-9));
    rem = span - static_cast<double>(full) * sc.h;
    partial = rem > 1e-9 * sc.h;
    total = full + (partial ? 1 : 0);
  }

  Trajectory tr;
  tr.samples.push_back(sc.initial);
  EnsembleState cur = sc.initial;
  std::optional<std::string> failure;
  const std::size_t every = static_cast<std::size_t>(sc.sample_every);
  std::size_t done = 0;
  for (std::size_t k = 1; k <= total; ++k) {
    try {
      if (sc.discrete) {
        cur = step_discrete(cur, sc.model, sc.h);
        cur.t = t0 + static_cast<double>(k) * sc.h;
      } else {
        const bool last_short = partial && k == total;
        cur = step_rk4(cur, sc.model, last_short ? rem : sc.h);
        cur.t = (k == total) ? sc.t_end : t0 + static_cast<double>(k) * sc.h;
      }
    } catch (const numeric_error& e) {
      failure = e.what();
      break;
    }
    done = k;
    if (k % every == 0) tr.samples.push_back(cur);
  }
  if (!failure && total % every != 0) tr.samples.push_back(cur);

  write_text_file((dir / sc.trajectory_name).string(), trajectory_csv(tr));
  write_text_file((dir / sc.diagnostics_name).string(), diagnostics_csv(tr, rc.cert));
  if (failure) {
    json err{{"error", *failure},
             {"steps_completed", done},
             {"t_reached", tr.back().t}};
    write_text_file((dir / "error.json").string(), err.dump(2) + "\n");
    out << "integration failed after " << done << " steps: " << *failure << "\n";
    return kExitNumeric;
  }
  out << "simulated " << total << " steps, " << tr.size() << " samples\n";
  if (rc.cert && rc.cert->usable)
    out << "envelope columns from certificate (satisfied="
        << (rc.cert->satisfied ? "true" : "false") << ")\n";
  return kExitSuccess;
}

int cmd_certify(const Scenario& sc, const std::string& out_dir, std::ostream& out) {
  if (!sc.has_certificate)
    throw scenario_error("certify: scenario has no 'certificate' section");
  const std::filesystem::path dir = ensure_out_dir(out_dir);
  const ResolvedCertificate rc = resolve_certificate(sc);

  json r;
  r["mode"] = sc.discrete ? "discrete" : "continuous";
  if (rc.cert) {
    const FlockingCertificate& c = *rc.cert;
    const CertificateInputs& in = c.inputs;
    const double horizon = c.discrete ? c.h * c.window : c.window;
    r["constants"] = json{{"window_gain_coldness", c.gain_b},
                          {"window_gain_velocity", c.gain_v},
                          {"contraction_coldness", c.contraction_b},
                          {"contraction_velocity", c.contraction_v},
                          {"velocity_sup", c.velocity_sup},
                          {"mixing_linear_coeff", c.mixing_coeff},
                          {"depth", static_cast<std::uint64_t>(in.ens.depth)}};
    if (c.discrete) {
      r["constants"]["certified_step_bound"] = certified_step_bound(
          in.kappa_v, in.kappa_b, in.ens.coldness_max, in.ens.coldness_min);
      r["h"] = c.h;
    }
    r["lhs"] = c.usable ? json(c.lhs) : json(nullptr);
    r["x_inf"] = c.x_inf;
    r["satisfied"] = c.satisfied;
    r["h_certified"] = c.discrete ? json(c.h_certified) : json(nullptr);
    r["usable"] = c.usable;
    if (!c.note.empty()) r["note"] = c.note;
    r["envelopes"] =
        json{{"B",
              {{"base", 1.0 - c.contraction_b}, {"prefactor", in.ens.db0}, {"window", c.window}}},
             {"V",
              {{"base", 1.0 - c.contraction_v},
               {"prefactor", in.ens.dv0},
               {"base_secondary", 1.0 - c.contraction_b},
               {"prefactor_secondary", 2.0 * horizon * in.kappa_v * c.velocity_sup * in.ens.db0},
               {"linear_coeff", c.mixing_coeff},
               {"window", c.window}}}};
  } else {
    r["lhs"] = nullptr;
    r["x_inf"] = nullptr;
    r["satisfied"] = false;
    r["h_certified"] = nullptr;
    r["usable"] = false;
    r["note"] = "no usable parameter point on the grid";
  }
  if (rc.from_grid)
    r["search"] = json{{"evaluated", rc.search.evaluated},
                       {"satisfied_count", rc.search.satisfied_count}};
  r["horizon"] = sc.discrete ? json{{"n_steps", sc.n_steps}} : json{{"t_end", sc.t_end}};
  r["horizon"]["comment"] = "decay statements are checked against this configured horizon";

  write_text_file((dir / sc.report_name).string(), r.dump(2) + "\n");

  const bool satisfied = rc.cert && rc.cert->satisfied;
  if (rc.cert && rc.cert->usable)
    out << (satisfied ? "satisfied" : "not satisfied") << ": lhs=" << format_double(rc.cert->lhs)
        << " x_inf=" << format_double(rc.cert->x_inf) << "\n";
  else
    out << "not satisfied: no usable certificate\n";
  return satisfied ? kExitSuccess : kExitUnsatisfied;
}

int cmd_limit_check(const Scenario& sc, const std::string& out_dir, std::ostream& out) {
  if (sc.discrete)
    throw scenario_error("limit-check: scenario must be in continuous mode");
  if (!sc.has_certificate)
    throw scenario_error("limit-check: scenario needs a 'certificate' section");
  if (sc.x_inf_values.size() != 1 || sc.delta_values.size() != 1)
    throw scenario_error("limit-check: needs scalar 'x_inf' and 'delta'");
  const std::filesystem::path dir = ensure_out_dir(out_dir);

  const EnsembleSummary ens = summarize(sc.initial, sc.model);
  const CertificateInputs in = make_inputs_continuous(ens, sc.model.phi(), sc.model.zeta(),
                                                      sc.x_inf_values[0], sc.delta_values[0]);
  std::vector<double> hs = sc.h_values;
  if (hs.empty())
    for (int k = 3; k <= 10; ++k) hs.push_back(in.delta / static_cast<double>(1 << k));

  const LimitCheck lc = continuum_limit_check(in, hs);

  std::string csv = "h,n0,status,lhs_discrete,lhs_continuous,gap\n";
  out << "lhs_continuous: " << format_double(lc.lhs_continuous) << "\n";
  out << "h  n0  lhs_discrete  gap\n";
  for (const LimitEntry& e : lc.entries) {
    if (e.skipped) {
      out << format_double(e.h) << "  " << e.n0 << "  skipped\n";
      csv += format_double(e.h) + "," + std::to_string(e.n0) + ",skipped,,," + "\n";
    } else {
      out << format_double(e.h) << "  " << e.n0 << "  " << format_double(e.lhs_discrete) << "  "
          << format_double(e.gap) << "\n";
      csv += format_double(e.h) + "," + std::to_string(e.n0) + ",ok," +
             format_double(e.lhs_discrete) + "," + format_double(lc.lhs_continuous) + "," +
             format_double(e.gap) + "\n";
    }
  }
  write_text_file((dir / sc.limit_name).string(), csv);
  return kExitSuccess;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"simulation and certification toolkit for thermomechanical flocking on digraphs"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  const auto add_common = [&](CLI::App* sub, bool out_required) {
    sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    CLI::Option* o = sub->add_option("--out", out_dir, "output directory");
    if (out_required) o->required();
    sub->add_option("--seed", seed, "override every seed in the scenario");
  };

  CLI::App* info = app.add_subcommand("graph-info", "print digraph facts");
  add_common(info, false);
  CLI::App* sim = app.add_subcommand("simulate", "run the configured simulation");
  add_common(sim, true);
  CLI::App* cert = app.add_subcommand("certify", "evaluate the flocking certificate");
  add_common(cert, true);
  CLI::App* lim = app.add_subcommand("limit-check", "discrete-vs-continuous condition table");
  add_common(lim, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitBadScenario;
  }

  try {
    const Scenario sc = load_scenario(scenario_path, seed);
    if (info->parsed()) return cmd_graph_info(sc, std::cout);
    if (sim->parsed()) return cmd_simulate(sc, out_dir, std::cout);
    if (cert->parsed()) return cmd_certify(sc, out_dir, std::cout);
    if (lim->parsed()) return cmd_limit_check(sc, out_dir, std::cout);
  } catch (const scenario_error& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitBadScenario;
  } catch (const numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const no_spanning_tree_error& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitBadScenario;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitBadScenario;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitBadScenario;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitBadScenario;
}

}  // namespace tcs
