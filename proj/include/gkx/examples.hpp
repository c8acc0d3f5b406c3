#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gkx/cech.hpp"
#include "gkx/expr.hpp"
#include "gkx/gk.hpp"
#include "gkx/lie.hpp"

namespace gkx {

// Generalized Kahler instance bundled with evaluation points: a generic
// sample set on the fundamental annulus (or torus lattice for the flat
// families) plus named degeneration loci.
struct GKExample {
  GKInstance instance;
  std::vector<Point> samples;
  std::map<std::string, std::vector<Point>> loci;
};

// Bi-invariant compact-group instance, carried exactly and numerically.
struct GroupExample {
  LieAlgebra<Rational> exact;
  LieAlgebra<double> algebra;
};

// Meromorphic anticanonical representative together with the smoothed flux
// obtained by cutting the pole divisor off before differentiating.
struct MeroExample {
  ChartPtr chart;
  cplx coefficient{0.0, 0.0};
  FormField representative;
  FormField flux;
  std::vector<Point> samples;
};

using ExampleData = std::variant<GKExample, GroupExample, GerbeCech, MeroExample>;

struct Example {
  std::string name;
  std::string summary;
  ExampleData data;
};

// Registry row describing one check a verification suite runs on an example.
struct ExampleCheck {
  std::string id;
  std::string expected;
  std::string detail;
};

std::vector<std::string> list_examples();

// Builds a named example with `samples` generic evaluation points drawn from
// the seeded stream.  Throws std::invalid_argument for unknown names.
Example get_example(const std::string& name, int samples = 12, unsigned seed = 0);

std::vector<ExampleCheck> list_checks(const std::string& name);

// Maximum componentwise mismatch of the instance fields under the declared
// symmetry maps, evaluated at the given base points and their images.
double symmetry_residual(const GKInstance& data, std::span<const Point> samples);

// Closed (2,0) representative c/(x1 x2) dx1^dx2 and its smoothed de Rham
// representative d((1 - cutoff) Re-part).
FormField meromorphic_anticanonical(const ChartPtr& chart, cplx c);
FormField smoothed_anticanonical_flux(const ChartPtr& chart, cplx c);

// Declarative-document surface (docs/FORMAT.md).  `example_document` renders
// a built-in gerbe example as text; names without a declarative form throw.
// `gerbe_from_instance` assembles cocycle data from a realized document,
// checking the role fields (g on triples, A on pairs, B per chart, optional
// theta per chart and hermitian flag) for presence, kind, and degree.
std::string example_document(const std::string& name);
GerbeCech gerbe_from_instance(const InstanceData& data, int overlap_samples = 12,
                              unsigned seed = 1);

}  // namespace gkx
