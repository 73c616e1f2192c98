#include "tcs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace tcs {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& tr) {
  if (tr.samples.empty()) throw std::invalid_argument("trajectory csv: no samples");
  const std::size_t dim = tr.front().dim;
  std::string out = "t,agent";
  for (std::size_t k = 1; k <= dim; ++k) out += ",x" + std::to_string(k);
  for (std::size_t k = 1; k <= dim; ++k) out += ",v" + std::to_string(k);
  out += ",beta,theta\n";
  for (const EnsembleState& s : tr.samples) {
    const std::string t = format_double(s.t);
    for (std::size_t i = 0; i < s.n; ++i) {
      out += t;
      out += ',';
      out += std::to_string(i);
      for (std::size_t k = 0; k < dim; ++k) {
        out += ',';
        out += format_double(s.pos_row(i)[k]);
      }
      for (std::size_t k = 0; k < dim; ++k) {
        out += ',';
        out += format_double(s.vel_row(i)[k]);
      }
      out += ',';
      out += format_double(s.coldness[i]);
      out += ',';
      out += format_double(1.0 / s.coldness[i]);
      out += '\n';
    }
  }
  return out;
}

std::string diagnostics_csv(const Trajectory& tr, const std::optional<FlockingCertificate>& cert) {
  if (tr.samples.empty()) throw std::invalid_argument("diagnostics csv: no samples");
  const bool with_env = cert.has_value() && cert->usable;
  std::string out = "t,DX,DV,DB,DTheta,Ru";
  if (with_env) out += ",envB,envV";
  out += '\n';
  const double t0 = tr.front().t;
  for (const EnsembleState& s : tr.samples) {
    const Diameters d = diameters(s);
    out += format_double(s.t);
    out += ',';
    out += format_double(d.x);
    out += ',';
    out += format_double(d.v);
    out += ',';
    out += format_double(d.b);
    out += ',';
    out += format_double(d.theta);
    out += ',';
    out += format_double(d.r_u);
    if (with_env) {
      const double elapsed =
          cert->discrete ? std::round((s.t - t0) / cert->h) : (s.t - t0);
      out += ',';
      out += format_double(envelope_coldness(cert->inputs, elapsed));
      out += ',';
      out += format_double(envelope_velocity(cert->inputs, elapsed));
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace tcs
