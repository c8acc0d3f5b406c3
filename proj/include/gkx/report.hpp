#pragma once

#include <string>
#include <vector>

namespace gkx {

inline constexpr const char* kVersion = "1.0.0";

// One verified identity: the largest residual seen over a sample set,
// against the tolerance that gates it.
struct CheckRecord {
  std::string id;
  std::string detail;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
};

struct RunMeta {
  unsigned seed = 0;
  int samples = 0;
  std::string version = kVersion;
};

struct Report {
  RunMeta meta;
  std::vector<CheckRecord> checks;

  bool pass() const;
  // Appends a finished record; pass = residual <= tolerance.
  CheckRecord& record(std::string id, std::string detail, double residual, double tolerance,
                      int samples);
  CheckRecord& skip(std::string id, std::string detail);
  const CheckRecord* find(const std::string& id) const;  // nullptr when absent
  void merge(const Report& other);                       // appends other's checks
};

// Serializations are deterministic: fixed field order, shortest round-trip
// number formatting, no timestamps.
std::string to_json(const Report& r);
std::string to_csv(const Report& r);
std::string to_human(const Report& r);

}  // namespace gkx
