#pragma once

#include <string>

#include "nrhw/fieldspec.hpp"

// Reports are ordered JSON trees; the text rendering is derived from the same
// tree, so the JSON is the single source of truth. Every report carries the
// echoed command, a field summary, optional prime-independent verdicts, the
// per-prime records, and aggregated suite counts.

namespace nrhw {

inline Json field_summary(const FieldSpec& spec, const GaloisGroup& G) {
  Json j;
  j["name"] = spec.name;
  j["degree"] = G.n();
  j["f"] = spec.f;
  return j;
}

// count every boolean under a "verdicts" object, anywhere in the tree
inline void count_verdicts(const Json& j, int& pass, int& fail) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key == "verdicts" && value.is_object()) {
        for (const auto& [name, v] : value.items()) {
          (void)name;
          if (v.is_boolean()) (v.get<bool>() ? pass : fail)++;
        }
      } else {
        count_verdicts(value, pass, fail);
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) count_verdicts(item, pass, fail);
  }
}

// append the suite totals and the overall verdict; returns pass/fail as bool
inline bool finalize_report(Json& report) {
  int pass = 0, fail = 0;
  count_verdicts(report, pass, fail);
  report["suite"] = Json{{"pass", pass}, {"fail", fail}};
  report["overall"] = fail == 0;
  return fail == 0;
}

inline std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

namespace detail {

inline std::string inline_value(const Json& j) { return j.dump(); }

inline void render_verdicts(const Json& v, const std::string& indent, std::string& out) {
  for (const auto& [name, val] : v.items()) {
    if (val.is_boolean())
      out += indent + (val.get<bool>() ? "[PASS] " : "[FAIL] ") + name + "\n";
    else
      out += indent + name + ": " + inline_value(val) + "\n";
  }
}

inline bool is_object_list(const Json& v) {
  return v.is_array() && !v.empty() && v[0].is_object();
}

inline void render_record(const Json& rec, const std::string& indent, std::string& out,
                          bool bullet = false) {
  const std::string base = bullet ? indent + "  " : indent;
  std::string scalars;
  for (const auto& [key, val] : rec.items()) {
    if (key == "p" || key == "verdicts" || val.is_object() || is_object_list(val)) continue;
    if (!scalars.empty()) scalars += "  ";
    scalars += key + "=" + inline_value(val);
  }
  if (!scalars.empty()) out += (bullet ? indent + "- " : indent) + scalars + "\n";
  for (const auto& [key, val] : rec.items()) {
    if (key == "verdicts") {
      render_verdicts(val, base + "  ", out);
    } else if (is_object_list(val)) {
      out += base + key + ":\n";
      for (const auto& item : val) render_record(item, base + "  ", out, true);
    } else if (val.is_object()) {
      out += base + key + ": " + inline_value(val) + "\n";
    }
  }
}

}  // namespace detail

inline std::string render_text(const Json& report) {
  std::string out;
  if (report.contains("command"))
    out += "command: " + report["command"].get<std::string>() + "\n";
  if (report.contains("field")) {
    const Json& f = report["field"];
    out += "field: " + f["name"].get<std::string>() + "  degree " +
           std::to_string(f["degree"].get<int>()) + "  f = " + detail::inline_value(f["f"]) + "\n";
  }
  if (report.contains("verdicts")) detail::render_verdicts(report["verdicts"], "", out);
  if (report.contains("primes")) {
    for (const auto& rec : report["primes"]) {
      out += "prime " + detail::inline_value(rec.contains("p") ? rec["p"] : Json()) + ":\n";
      detail::render_record(rec, "  ", out);
    }
  }
  if (report.contains("error"))
    out += "error: " + report["error"].get<std::string>() + "\n";
  if (report.contains("suite")) {
    const Json& s = report["suite"];
    out += "suite: " + std::to_string(s["pass"].get<int>()) + " passed, " +
           std::to_string(s["fail"].get<int>()) + " failed\n";
  }
  if (report.contains("overall"))
    out += std::string("overall: ") + (report["overall"].get<bool>() ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace nrhw
