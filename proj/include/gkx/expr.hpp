#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gkx/field.hpp"
#include "gkx/forms.hpp"

namespace gkx {

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, SourcePos pos);
  SourcePos pos() const { return pos_; }

private:
  SourcePos pos_;
};

// Coordinate expression over a chart: rational/decimal literals, coordinate
// names, + - * /, integer powers with ^, log, exp, sqrt, conj, constants pi
// and i (unless shadowed by a coordinate), parentheses.
ScalarField parse_expression(std::string_view text, const ChartPtr& chart);

// ---------------------------------------------------------------------------
// Declarative instance documents (see docs/FORMAT.md).

struct DocChart {
  std::string name;
  std::vector<std::string> coords;  // holomorphic coordinate names
  SourcePos pos;
};

struct DocMap {
  std::string from;
  std::string to;
  // target holomorphic coordinate name -> expression in source coordinates
  std::vector<std::pair<std::string, std::string>> assignments;
  SourcePos pos;
};

struct DocField {
  enum class Kind { Scalar, Form, Matrix };
  Kind kind = Kind::Scalar;
  std::string name;               // base name, e.g. "A"
  std::vector<std::string> tags;  // chart tags, e.g. {"U0","U1"}
  std::string chart;
  // canonical key ("value", "d(z0)^d(w0)", "[0,1]") -> expression text
  std::vector<std::pair<std::string, std::string>> entries;
  SourcePos pos;
};

struct Document {
  int version = 1;
  std::string name;
  std::vector<DocChart> charts;
  std::vector<DocMap> maps;
  std::vector<DocField> fields;
};

Document parse_document(std::string_view text);
Document load_document(const std::string& path);
std::string format_document(const Document& doc);

// "A[U0,U1]" for base "A" and tags {U0, U1}; just the base when tags are empty.
std::string field_key(const std::string& base, const std::vector<std::string>& tags);

// Charts, transition maps, and fields constructed from a document.
struct InstanceData {
  std::string name;
  std::vector<ChartPtr> charts;
  std::map<std::pair<int, int>, ChartMap> transitions;  // (from, to)
  std::map<std::string, ScalarField> scalars;           // keyed by field_key
  std::map<std::string, FormField> forms;
  std::map<std::string, MatrixField> matrices;

  int chart_index(const std::string& chart_name) const;  // -1 when absent
  const ChartMap& transition(int from, int to) const;
};

InstanceData realize(const Document& doc);

}  // namespace gkx
