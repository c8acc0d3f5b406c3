#include "gkx/chart.hpp"

#include <stdexcept>

namespace gkx {

std::shared_ptr<const Chart> Chart::complex_chart(std::string name,
                                                  std::vector<std::string> coords) {
  auto c = std::make_shared<Chart>();
  c->name_ = std::move(name);
  int n = static_cast<int>(coords.size());
  for (auto& s : coords) c->slot_names_.push_back(s);
  for (auto& s : coords) c->slot_names_.push_back("conj(" + s + ")");
  c->conj_.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    c->conj_[i] = n + i;
    c->conj_[n + i] = i;
  }
  c->real_ = false;
  return c;
}

std::shared_ptr<const Chart> Chart::real_chart(std::string name,
                                               std::vector<std::string> coords) {
  auto c = std::make_shared<Chart>();
  c->name_ = std::move(name);
  c->slot_names_ = std::move(coords);
  c->conj_.resize(c->slot_names_.size());
  for (size_t i = 0; i < c->conj_.size(); ++i) c->conj_[i] = static_cast<int>(i);
  c->real_ = true;
  return c;
}

int Chart::slot_index(const std::string& coord_name) const {
  for (int i = 0; i < nslots(); ++i)
    if (slot_names_[i] == coord_name) return i;
  return -1;
}

Point make_point(const ChartPtr& chart, std::vector<cplx> holo) {
  if (chart->is_real()) throw std::invalid_argument("make_point: chart is real");
  int n = chart->ncomplex();
  if (static_cast<int>(holo.size()) != n) throw std::invalid_argument("make_point: arity");
  Point p{chart, std::vector<cplx>(2 * n)};
  for (int i = 0; i < n; ++i) {
    p.coords[i] = holo[i];
    p.coords[n + i] = std::conj(holo[i]);
  }
  return p;
}

Point make_real_point(const ChartPtr& chart, std::vector<double> coords) {
  if (!chart->is_real()) throw std::invalid_argument("make_real_point: chart is complex");
  Point p{chart, {}};
  p.coords.assign(coords.begin(), coords.end());
  return p;
}

}  // namespace gkx
