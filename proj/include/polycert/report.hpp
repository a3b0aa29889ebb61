#pragma once

#include <string>

#include <json.hpp>

#include "polycert/validate.hpp"

namespace polycert {

namespace detail {

inline nlohmann::ordered_json ratJson(const Rat& r) {
  nlohmann::ordered_json j;
  j["rat"] = r.str();
  j["dec"] = r.decimalStr(12);
  return j;
}

inline Rat ratFromJson(const nlohmann::json& j) {
  return parseRational(j.at("rat").get<std::string>());
}

}  // namespace detail

/// Deterministic JSON rendering of a check report. Every rational appears
/// as an exact "num/den" string plus a 12-digit decimal approximation.
inline nlohmann::ordered_json reportToJson(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = verdictName(r.verdict);
  j["reason"] = r.reason;
  j["delta1"] = detail::ratJson(r.delta1);
  j["gamma"] = detail::ratJson(r.gamma);
  j["numZeros"] = r.numZeros;
  nlohmann::ordered_json zs = nlohmann::ordered_json::array();
  for (const ConfInterval& ci : r.zeros) {
    nlohmann::ordered_json z;
    z["u"] = detail::ratJson(ci.u);
    z["v"] = detail::ratJson(ci.v);
    zs.push_back(std::move(z));
  }
  j["zeros"] = std::move(zs);
  j["B"] = detail::ratJson(r.extremal.B);
  j["K"] = detail::ratJson(r.extremal.K);
  j["e"] = detail::ratJson(r.extremal.e);
  j["bound"] = detail::ratJson(r.extremal.bound);
  j["timings_ms"] = {{"phase1", r.timings.phase1Ms},
                     {"phase2", r.timings.phase2Ms},
                     {"total", r.timings.phase1Ms + r.timings.phase2Ms}};
  return j;
}

inline std::string emitReport(const CheckReport& r) {
  return reportToJson(r).dump(2);
}

/// Inverse of emitReport for the fields it serializes (detail is not
/// serialized and comes back empty).
inline CheckReport parseReport(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CheckReport r;
  std::string verdict = j.at("verdict").get<std::string>();
  if (verdict == "certified")
    r.verdict = Verdict::Certified;
  else if (verdict == "not_certified")
    r.verdict = Verdict::NotCertified;
  else
    r.verdict = Verdict::Error;
  r.reason = j.at("reason").get<std::string>();
  r.delta1 = detail::ratFromJson(j.at("delta1"));
  r.gamma = detail::ratFromJson(j.at("gamma"));
  r.numZeros = j.at("numZeros").get<unsigned long>();
  for (const auto& z : j.at("zeros"))
    r.zeros.emplace_back(detail::ratFromJson(z.at("u")),
                         detail::ratFromJson(z.at("v")));
  r.extremal.B = detail::ratFromJson(j.at("B"));
  r.extremal.K = detail::ratFromJson(j.at("K"));
  r.extremal.e = detail::ratFromJson(j.at("e"));
  r.extremal.bound = detail::ratFromJson(j.at("bound"));
  r.timings.phase1Ms = j.at("timings_ms").at("phase1").get<long long>();
  r.timings.phase2Ms = j.at("timings_ms").at("phase2").get<long long>();
  return r;
}

}  // namespace polycert
