#include "tcs/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tcs/errors.hpp"
#include "tcs/rng.hpp"

namespace tcs {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw scenario_error("scenario." + where + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double need_number(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) fail(where, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

long need_integer(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) fail(where, std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

std::string need_string(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) fail(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t need_seed(const json& j, const std::string& where,
                        std::optional<std::uint64_t> seed_override) {
  if (seed_override) return *seed_override;
  const auto it = j.find("seed");
  if (it == j.end()) fail(where, "random generation needs a 'seed' (or use --seed)");
  if (!it->is_number_integer()) fail(where, "field 'seed' must be an integer");
  return it->get<std::uint64_t>();
}

Digraph parse_graph(const json& g, std::optional<std::uint64_t> seed_override) {
  const std::string where = "graph";
  if (!g.is_object()) fail(where, "must be an object");
  const std::string type = need_string(g, "type", where);
  const long n_raw = need_integer(g, "n", where);
  if (n_raw < 1) fail(where, "'n' must be at least 1");
  const std::size_t n = static_cast<std::size_t>(n_raw);
  try {
    if (type == "edges") {
      const json& edges = need(g, "edges", where);
      if (!edges.is_array()) fail(where, "'edges' must be an array of [source,target] pairs");
      std::vector<std::pair<std::size_t, std::size_t>> list;
      list.reserve(edges.size());
      for (const json& e : edges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
          fail(where, "each edge must be an integer pair [source,target]");
        const long a = e[0].get<long>(), b = e[1].get<long>();
        if (a < 0 || b < 0 || a >= n_raw || b >= n_raw)
          fail(where, "edge endpoint out of range");
        list.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      }
      return from_edge_list(n, list);
    }
    if (type == "complete") return make_complete(n);
    if (type == "cycle") return make_cycle(n);
    if (type == "path") return make_path(n);
    if (type == "random") {
      const double p = need_number(g, "p", where);
      if (!(p >= 0.0 && p <= 1.0)) fail(where, "'p' must lie in [0, 1]");
      return make_random(n, p, need_seed(g, where, seed_override));
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where, "unknown graph type '" + type + "'");
}

CommKernel parse_kernel(const json& k, const std::string& where) {
  if (!k.is_object()) fail(where, "must be an object");
  const std::string family = need_string(k, "family", where);
  try {
    if (family == "constant") return CommKernel::constant(need_number(k, "kappa", where));
    if (family == "algebraic")
      return CommKernel::algebraic(need_number(k, "kappa", where), need_number(k, "s", where));
    if (family == "exponential")
      return CommKernel::exponential(need_number(k, "kappa", where), need_number(k, "ell", where));
    if (family == "tabulated") {
      const json& table = need(k, "table", where);
      if (!table.is_array()) fail(where, "'table' must be an array of [r, value] pairs");
      std::vector<std::pair<double, double>> pts;
      pts.reserve(table.size());
      for (const json& row : table) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
          fail(where, "each table row must be a numeric pair [r, value]");
        pts.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      return CommKernel::tabulated(std::move(pts));
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where, "unknown kernel family '" + family + "'");
}

std::vector<double> parse_matrix_rows(const json& v, std::size_t n, std::size_t& dim,
                                      const char* key, const std::string& where) {
  if (!v.is_array() || v.size() != n)
    fail(where, std::string("'") + key + "' must be an array with one row per agent");
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.empty())
      fail(where, std::string("'") + key + "' rows must be non-empty arrays");
    if (dim == 0) dim = row.size();
    if (row.size() != dim)
      fail(where, std::string("'") + key + "' rows must all have the same length");
    for (const json& x : row) {
      if (!x.is_number()) fail(where, std::string("'") + key + "' entries must be numbers");
      out.push_back(x.get<double>());
    }
  }
  return out;
}

EnsembleState parse_initial(const json& init, std::size_t n,
                            std::optional<std::uint64_t> seed_override) {
  const std::string where = "initial";
  if (!init.is_object()) fail(where, "must be an object");
  EnsembleState s;
  s.n = n;
  if (init.contains("x") || init.contains("v") || init.contains("theta") ||
      init.contains("beta")) {
    std::size_t dim = 0;
    s.pos = parse_matrix_rows(need(init, "x", where), n, dim, "x", where);
    s.vel = parse_matrix_rows(need(init, "v", where), n, dim, "v", where);
    s.dim = dim;
    const bool has_theta = init.contains("theta");
    const bool has_beta = init.contains("beta");
    if (has_theta == has_beta)
      fail(where, "explicit data needs exactly one of 'theta' or 'beta'");
    const json& arr = init[has_theta ? "theta" : "beta"];
    if (!arr.is_array() || arr.size() != n)
      fail(where, "'theta'/'beta' must be an array with one entry per agent");
    s.coldness.reserve(n);
    for (const json& x : arr) {
      if (!x.is_number()) fail(where, "'theta'/'beta' entries must be numbers");
      const double val = x.get<double>();
      if (!(val > 0.0)) fail(where, "'theta'/'beta' entries must be strictly positive");
      s.coldness.push_back(has_theta ? 1.0 / val : val);
    }
  } else {
    const json& jp = need(init, "positions", where);
    const json& jv = need(init, "velocities", where);
    const json& jt = need(init, "temperatures", where);
    const long dim_raw = need_integer(init, "dim", where);
    if (dim_raw < 1) fail(where, "'dim' must be at least 1");
    const double box = need_number(jp, "box", where + ".positions");
    const double scale = need_number(jv, "scale", where + ".velocities");
    const double tmin = need_number(jt, "min", where + ".temperatures");
    const double tmax = need_number(jt, "max", where + ".temperatures");
    if (!(box >= 0.0)) fail(where, "'positions.box' must be non-negative");
    if (!(scale >= 0.0)) fail(where, "'velocities.scale' must be non-negative");
    if (!(tmin > 0.0 && tmax >= tmin))
      fail(where, "'temperatures' must satisfy 0 < min <= max");
    s.dim = static_cast<std::size_t>(dim_raw);
    Rng rng(need_seed(init, where, seed_override));
    s.pos.resize(n * s.dim);
    s.vel.resize(n * s.dim);
    s.coldness.resize(n);
    for (double& x : s.pos) x = rng.uniform(0.0, box);
    for (double& v : s.vel) v = rng.uniform(-scale, scale);
    for (double& b : s.coldness) b = 1.0 / rng.uniform(tmin, tmax);
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return s;
}

std::vector<double> number_or_array(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array() && !v.empty()) {
    for (const json& x : v) {
      if (!x.is_number()) fail(where, std::string("'") + key + "' entries must be numbers");
      out.push_back(x.get<double>());
    }
  } else {
    fail(where, std::string("'") + key + "' must be a number or a non-empty array");
  }
  return out;
}

std::vector<long> integer_or_array(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  std::vector<long> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<long>());
  } else if (v.is_array() && !v.empty()) {
    for (const json& x : v) {
      if (!x.is_number_integer())
        fail(where, std::string("'") + key + "' entries must be integers");
      out.push_back(x.get<long>());
    }
  } else {
    fail(where, std::string("'") + key + "' must be an integer or a non-empty array");
  }
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text, std::optional<std::uint64_t> seed_override) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw scenario_error(std::string("scenario: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw scenario_error("scenario: document must be a JSON object");

  Digraph graph = parse_graph(need(j, "graph", "(root)"), seed_override);
  CommKernel phi = parse_kernel(need(j, "phi", "(root)"), "phi");
  CommKernel zeta = parse_kernel(need(j, "zeta", "(root)"), "zeta");
  EnsembleState initial = parse_initial(need(j, "initial", "(root)"), graph.size(), seed_override);

  Scenario sc(ModelSpec(std::move(graph), std::move(phi), std::move(zeta)), std::move(initial));

  const std::string mode = need_string(j, "mode", "(root)");
  if (mode == "discrete")
    sc.discrete = true;
  else if (mode != "continuous")
    fail("mode", "must be 'continuous' or 'discrete'");

  const json& num = need(j, "numerics", "(root)");
  if (!num.is_object()) fail("numerics", "must be an object");
  sc.h = need_number(num, "h", "numerics");
  if (!(sc.h > 0.0)) fail("numerics", "'h' must be positive");
  if (sc.discrete) {
    sc.n_steps = need_integer(num, "n_steps", "numerics");
    if (sc.n_steps < 0) fail("numerics", "'n_steps' must be non-negative");
  } else {
    sc.t_end = need_number(num, "t_end", "numerics");
    if (!(sc.t_end >= sc.initial.t)) fail("numerics", "'t_end' must not precede the start time");
  }
  if (num.contains("sample_every")) {
    sc.sample_every = need_integer(num, "sample_every", "numerics");
    if (sc.sample_every < 1) fail("numerics", "'sample_every' must be at least 1");
  }

  if (j.contains("certificate")) {
    const json& cert = j["certificate"];
    if (!cert.is_object()) fail("certificate", "must be an object");
    sc.has_certificate = true;
    sc.x_inf_values = number_or_array(cert, "x_inf", "certificate");
    if (sc.discrete) {
      if (cert.contains("delta"))
        fail("certificate", "'delta' applies to continuous mode; use 'n0'");
      sc.n0_values = integer_or_array(cert, "n0", "certificate");
    } else {
      if (cert.contains("n0"))
        fail("certificate", "'n0' applies to discrete mode; use 'delta'");
      sc.delta_values = number_or_array(cert, "delta", "certificate");
    }
    if (cert.contains("h_values")) {
      const json& hv = cert["h_values"];
      if (!hv.is_array()) fail("certificate", "'h_values' must be an array");
      for (const json& x : hv) {
        if (!x.is_number()) fail("certificate", "'h_values' entries must be numbers");
        sc.h_values.push_back(x.get<double>());
      }
    }
  }

  if (j.contains("output")) {
    const json& outS = j["output"];
    if (!outS.is_object()) fail("output", "must be an object");
    if (outS.contains("trajectory")) sc.trajectory_name = need_string(outS, "trajectory", "output");
    if (outS.contains("diagnostics"))
      sc.diagnostics_name = need_string(outS, "diagnostics", "output");
    if (outS.contains("report")) sc.report_name = need_string(outS, "report", "output");
    if (outS.contains("limit_table")) sc.limit_name = need_string(outS, "limit_table", "output");
  }
  return sc;
}

Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw scenario_error("scenario: cannot open file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_scenario(buf.str(), seed_override);
}

}  // namespace tcs
