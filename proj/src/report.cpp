#include "gkx/report.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"

namespace gkx {

namespace {

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass || c.skipped; });
}

CheckRecord& Report::record(std::string id, std::string detail, double residual, double tolerance,
                            int samples) {
  CheckRecord rec;
  rec.id = std::move(id);
  rec.detail = std::move(detail);
  rec.samples = samples;
  rec.max_residual = residual;
  rec.tolerance = tolerance;
  rec.pass = residual <= tolerance;
  checks.push_back(std::move(rec));
  return checks.back();
}

CheckRecord& Report::skip(std::string id, std::string detail) {
  CheckRecord rec;
  rec.id = std::move(id);
  rec.detail = std::move(detail);
  rec.skipped = true;
  checks.push_back(std::move(rec));
  return checks.back();
}

const CheckRecord* Report::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["meta"] = {{"seed", r.meta.seed}, {"samples", r.meta.samples}, {"version", r.meta.version}};
  j["pass"] = r.pass();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["detail"] = c.detail;
    jc["samples"] = c.samples;
    jc["max_residual"] = c.max_residual;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    if (c.skipped) jc["skipped"] = true;
    arr.push_back(std::move(jc));
  }
  j["checks"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  out << "id,detail,samples,max_residual,tolerance,pass,skipped\n";
  for (const auto& c : r.checks) {
    out << csv_escape(c.id) << ',' << csv_escape(c.detail) << ',' << c.samples << ','
        << format_number(c.max_residual) << ',' << format_number(c.tolerance) << ','
        << (c.pass ? "true" : "false") << ',' << (c.skipped ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string to_human(const Report& r) {
  std::ostringstream out;
  out << "seed " << r.meta.seed << "  samples " << r.meta.samples << "  version "
      << r.meta.version << "\n";
  for (const auto& c : r.checks) {
    const char* tag = c.skipped ? "SKIP" : (c.pass ? "pass" : "FAIL");
    out << "  [" << tag << "] " << c.id;
    if (!c.skipped)
      out << "  max " << format_number(c.max_residual) << "  tol " << format_number(c.tolerance)
          << "  (" << c.samples << " samples)";
    if (!c.detail.empty()) out << "  -- " << c.detail;
    out << "\n";
  }
  out << (r.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace gkx
