#include "pstable/report.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace pstable {

bool finalize_report(Report& rep, double tol) {
  double scale = std::max(std::abs(rep.rhs), 1e-300);
  rep.margin = (rep.rhs - rep.lhs) / scale;
  rep.pass = rep.lhs <= rep.rhs * (1.0 + tol) + 1e-300;
  return rep.pass;
}

std::string to_json(const Report& rep) {
  nlohmann::json j;
  j["name"] = rep.name;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["constant"] = rep.constant;
  j["margin"] = rep.margin;
  j["resolution"] = rep.resolution;
  j["pass"] = rep.pass;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j.dump(2);
}

Report report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Report rep;
  rep.name = j.value("name", "");
  rep.lhs = j.at("lhs").get<double>();
  rep.rhs = j.at("rhs").get<double>();
  rep.constant = j.at("constant").get<double>();
  rep.margin = j.at("margin").get<double>();
  rep.resolution = j.at("resolution").get<double>();
  rep.pass = j.at("pass").get<bool>();
  rep.note = j.value("note", "");
  return rep;
}

bool validate_report_json(const std::string& text, std::string* error) {
  auto fail = [&](const std::string& why) {
    if (error) *error = why;
    return false;
  };
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) return fail("not valid JSON");
  if (!j.is_object()) return fail("root is not an object");
  for (const char* key : {"lhs", "rhs", "constant", "margin", "resolution"}) {
    if (!j.contains(key)) return fail(std::string("missing key: ") + key);
    if (!j[key].is_number()) return fail(std::string("not a number: ") + key);
  }
  if (!j.contains("pass") || !j["pass"].is_boolean()) return fail("missing boolean: pass");
  return true;
}

}  // namespace pstable
