#pragma once
//! CSV emission with byte-stable number formatting.
//!
//! Doubles are printed with the shortest decimal representation that parses
//! back to the same bits, so identical runs produce identical bytes and no
//! precision is lost in round trips.

#include <optional>
#include <string>

#include "tcs/certificates.hpp"
#include "tcs/dynamics.hpp"

namespace tcs {

std::string format_double(double v);

//! Rows are (sample, agent) pairs: t,agent,x1..xd,v1..vd,beta,theta.
std::string trajectory_csv(const Trajectory& tr);

//! One row per sample: t,DX,DV,DB,DTheta,Ru; with a usable certificate two
//! envelope columns envB,envV are appended, evaluated at the elapsed time
//! (continuous) or step count (discrete) since the first sample.
std::string diagnostics_csv(const Trajectory& tr, const std::optional<FlockingCertificate>& cert);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace tcs
