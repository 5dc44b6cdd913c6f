#pragma once

#include <string>

namespace pstable {

// Outcome of one inequality / estimate check. `margin` is the relative slack
// (rhs - lhs) / max(|rhs|, tiny); `resolution` records the mesh spacing (or
// node count for radial data) the check ran at, so a failure can be told
// apart from an under-resolved run.
struct Report {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double margin = 0.0;
  double resolution = 0.0;
  bool pass = false;
  std::string note;
};

// Fills margin from lhs/rhs and returns pass = lhs <= rhs * (1 + tol).
bool finalize_report(Report& rep, double tol);

std::string to_json(const Report& rep);
Report report_from_json(const std::string& text);

// Structural validation mirroring share/report.schema.json.
bool validate_report_json(const std::string& text, std::string* error = nullptr);

}  // namespace pstable
