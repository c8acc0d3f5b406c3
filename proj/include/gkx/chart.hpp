#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gkx/jet.hpp"

namespace gkx {

// Coordinate chart: a list of slots, each a complex coordinate, together with
// an involution pairing a slot with its conjugate.  A holomorphic chart with
// coordinates (z1..zn) has 2n slots (z1..zn, conj(z1)..conj(zn)); a real chart
// has the identity involution.  Evaluation points always satisfy
// coords[conj(i)] == conj(coords[i]), so fields built from the slots are
// functions on the real locus and conjugation is exact on jets.
class Chart {
public:
  static std::shared_ptr<const Chart> complex_chart(std::string name,
                                                    std::vector<std::string> coords);
  static std::shared_ptr<const Chart> real_chart(std::string name,
                                                 std::vector<std::string> coords);

  const std::string& name() const { return name_; }
  int nslots() const { return static_cast<int>(slot_names_.size()); }
  const std::string& slot_name(int i) const { return slot_names_[i]; }
  const std::vector<std::string>& slot_names() const { return slot_names_; }
  const std::vector<int>& conj_map() const { return conj_; }
  int conj_slot(int i) const { return conj_[i]; }
  bool is_real() const { return real_; }
  // Number of holomorphic coordinates for a complex chart (nslots/2).
  int ncomplex() const { return real_ ? 0 : nslots() / 2; }
  int slot_index(const std::string& coord_name) const;  // -1 when absent

private:
  std::string name_;
  std::vector<std::string> slot_names_;
  std::vector<int> conj_;
  bool real_ = false;
};

using ChartPtr = std::shared_ptr<const Chart>;

struct Point {
  ChartPtr chart;
  std::vector<cplx> coords;
};

// Point of a complex chart from its holomorphic coordinates.
Point make_point(const ChartPtr& chart, std::vector<cplx> holo);
// Point of a real chart.
Point make_real_point(const ChartPtr& chart, std::vector<double> coords);

}  // namespace gkx
