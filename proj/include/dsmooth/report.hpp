#ifndef DSMOOTH_REPORT_HPP
#define DSMOOTH_REPORT_HPP

#include "dsmooth/field.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace dsmooth {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, not_applicable };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    default: return "NOT-APPLICABLE";
  }
}

/// Data that reproduces a failure: the offending element, the relation it
/// came from and its degree.
struct Witness {
  std::string description;
  std::string relation;
  std::string element;
  int degree = -1;
};

struct CheckReport {
  std::string id;
  Status status = Status::pass;
  std::string summary;
  /// Why the check does not apply (NOT-APPLICABLE only).
  std::string reason;
  std::optional<Witness> witness;
  /// Parameter side conditions the result depends on, e.g. "p != 0".
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
  Json details = Json::object();
  double seconds = 0.0;

  bool passed() const { return status == Status::pass; }

  void fail(Witness w, std::string why = {}) {
    status = Status::fail;
    witness = std::move(w);
    if (!why.empty()) summary = std::move(why);
  }
  void not_applicable(std::string why) {
    status = Status::not_applicable;
    reason = std::move(why);
  }
};

template <ExactField K>
std::vector<std::string> nonzero_assumptions(const std::vector<K>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) {
    if (!is_parametric(v)) continue;
    std::string s = v.to_string() + " != 0";
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

inline Json to_json(const Witness& w) {
  Json j;
  j["description"] = w.description;
  if (!w.relation.empty()) j["relation"] = w.relation;
  if (!w.element.empty()) j["element"] = w.element;
  if (w.degree >= 0) j["degree"] = w.degree;
  return j;
}

inline Json to_json(const CheckReport& r, bool timings = false) {
  Json j;
  j["id"] = r.id;
  j["status"] = to_string(r.status);
  j["summary"] = r.summary;
  if (r.status == Status::not_applicable) j["reason"] = r.reason;
  if (r.witness) j["witness"] = to_json(*r.witness);
  j["assumptions"] = r.assumptions;
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["details"] = r.details;
  if (timings) j["seconds"] = r.seconds;
  return j;
}

/// Runs `body` and records its wall-clock time on the report.
template <class F>
CheckReport timed(F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r = body();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace dsmooth

#endif  // DSMOOTH_REPORT_HPP
