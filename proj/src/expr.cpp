#include "gkx/expr.hpp"

#include <cctype>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gkx {
namespace {

enum class Tok { Ident, Number, Punct, Newline, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  bool is_integer = false;
  double num = 0.0;
};

std::string pos_str(SourcePos p) {
  return std::to_string(p.line) + ":" + std::to_string(p.col);
}

[[noreturn]] void fail(const std::string& msg, SourcePos pos) {
  throw ParseError(msg, pos);
}

class Lexer {
public:
  Lexer(std::string_view text, bool keep_newlines) {
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k, ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
    };
    while (i < text.size()) {
      char c = text[i];
      SourcePos here{line, col};
      if (c == '#') {
        while (i < text.size() && text[i] != '\n') advance(1);
        continue;
      }
      if (c == '\\' && i + 1 < text.size() && text[i + 1] == '\n') {
        advance(2);
        continue;
      }
      if (c == '\n') {
        if (keep_newlines && !tokens_.empty() && tokens_.back().kind != Tok::Newline)
          tokens_.push_back({Tok::Newline, "\n", here});
        advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
          ++j;
        tokens_.push_back({Tok::Ident, std::string(text.substr(i, j - i)), here});
        advance(j - i);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        bool integral = true;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j < text.size() && text[j] == '.') {
          integral = false;
          ++j;
          while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        }
        if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
          size_t k = j + 1;
          if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
          if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
            integral = false;
            j = k;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
          }
        }
        Token t{Tok::Number, std::string(text.substr(i, j - i)), here};
        t.is_integer = integral;
        t.num = std::stod(t.text);
        tokens_.push_back(t);
        advance(j - i);
        continue;
      }
      if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
        tokens_.push_back({Tok::Punct, "->", here});
        advance(2);
        continue;
      }
      static const std::string puncts = "+-*/^()[],;:=";
      if (puncts.find(c) != std::string::npos) {
        tokens_.push_back({Tok::Punct, std::string(1, c), here});
        advance(1);
        continue;
      }
      fail(std::string("unexpected character '") + c + "'", here);
    }
    SourcePos end{line, col};
    if (keep_newlines && !tokens_.empty() && tokens_.back().kind != Tok::Newline)
      tokens_.push_back({Tok::Newline, "\n", end});
    tokens_.push_back({Tok::End, "", end});
  }

  const std::vector<Token>& tokens() const { return tokens_; }

private:
  std::vector<Token> tokens_;
};

// Recursive-descent expression parser over a token span.
class ExprParser {
public:
  ExprParser(std::span<const Token> toks, const ChartPtr& chart) : toks_(toks), chart_(chart) {}

  ScalarField parse_all() {
    if (peek().kind == Tok::End)
      fail("empty expression", peek().pos);
    ScalarField f = expr();
    if (peek().kind != Tok::End)
      fail("unexpected '" + peek().text + "' after expression", peek().pos);
    return f;
  }

private:
  const Token& peek() const { return toks_[idx_]; }
  const Token& take() { return toks_[idx_++]; }
  bool eat_punct(const char* p) {
    if (peek().kind == Tok::Punct && peek().text == p) {
      ++idx_;
      return true;
    }
    return false;
  }
  void expect_punct(const char* p) {
    if (!eat_punct(p))
      fail(std::string("expected '") + p + "', found '" + peek().text + "'", peek().pos);
  }

  ScalarField expr() {
    ScalarField a = term();
    for (;;) {
      if (eat_punct("+"))
        a = a + term();
      else if (eat_punct("-"))
        a = a - term();
      else
        return a;
    }
  }

  ScalarField term() {
    ScalarField a = unary();
    for (;;) {
      if (eat_punct("*"))
        a = a * unary();
      else if (eat_punct("/"))
        a = a / unary();
      else
        return a;
    }
  }

  ScalarField unary() {
    if (eat_punct("-")) return -unary();
    if (eat_punct("+")) return unary();
    return power();
  }

  ScalarField power() {
    ScalarField a = atom();
    if (eat_punct("^")) {
      int sign = 1;
      if (eat_punct("-")) sign = -1;
      const Token& t = peek();
      if (t.kind != Tok::Number || !t.is_integer)
        fail("exponent must be an integer literal", t.pos);
      take();
      long k = std::stol(t.text);
      a = pow(a, sign * static_cast<int>(k));
      if (peek().kind == Tok::Punct && peek().text == "^")
        fail("chained '^' requires parentheses", peek().pos);
    }
    return a;
  }

  ScalarField atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      take();
      return ScalarField::constant(t.num);
    }
    if (t.kind == Tok::Punct && t.text == "(") {
      take();
      ScalarField inner = expr();
      expect_punct(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      take();
      bool call = peek().kind == Tok::Punct && peek().text == "(";
      if (call && (t.text == "log" || t.text == "exp" || t.text == "sqrt" || t.text == "conj")) {
        take();
        ScalarField inner = expr();
        expect_punct(")");
        if (t.text == "log") return log(inner);
        if (t.text == "exp") return exp(inner);
        if (t.text == "sqrt") return sqrt(inner);
        return inner.conj();
      }
      int slot = chart_->slot_index(t.text);
      if (slot >= 0) return ScalarField::coord(slot);
      if (t.text == "pi") return ScalarField::constant(std::numbers::pi);
      if (t.text == "i") return ScalarField::constant(cplx(0.0, 1.0));
      fail("unknown identifier '" + t.text + "' in chart '" + chart_->name() + "'", t.pos);
    }
    fail("expected a value, found '" + (t.kind == Tok::End ? "end of input" : t.text) + "'",
         t.pos);
  }

  std::span<const Token> toks_;
  ChartPtr chart_;
  size_t idx_ = 0;
};

// --------------------------------------------------------------------------
// Document statements.

class DocParser {
public:
  explicit DocParser(std::string_view text) : lexer_(text, /*keep_newlines=*/true) {}

  Document parse() {
    Document doc;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        ++idx_;
        continue;
      }
      const Token& kw = peek();
      if (kw.kind != Tok::Ident)
        fail("expected a statement keyword, found '" + kw.text + "'", kw.pos);
      if (kw.text == "version") {
        take();
        const Token& v = take();
        if (v.kind != Tok::Number || !v.is_integer)
          fail("version requires an integer", v.pos);
        doc.version = static_cast<int>(v.num);
      } else if (kw.text == "name") {
        take();
        doc.name = expect_ident("instance name");
      } else if (kw.text == "chart") {
        doc.charts.push_back(parse_chart());
      } else if (kw.text == "map") {
        doc.maps.push_back(parse_map());
      } else if (kw.text == "scalar" || kw.text == "form" || kw.text == "matrix") {
        doc.fields.push_back(parse_field());
      } else {
        fail("unknown statement '" + kw.text + "'", kw.pos);
      }
      end_statement();
    }
    return doc;
  }

private:
  const Token& peek() const { return lexer_.tokens()[idx_]; }
  const Token& take() { return lexer_.tokens()[idx_++]; }

  std::string expect_ident(const char* what) {
    const Token& t = take();
    if (t.kind != Tok::Ident)
      fail(std::string("expected ") + what + ", found '" + t.text + "'", t.pos);
    return t.text;
  }
  void expect_punct(const char* p) {
    const Token& t = take();
    if (t.kind != Tok::Punct || t.text != p)
      fail(std::string("expected '") + p + "', found '" + t.text + "'", t.pos);
  }
  bool at_punct(const char* p) const {
    return peek().kind == Tok::Punct && peek().text == p;
  }
  void end_statement() {
    const Token& t = peek();
    if (t.kind == Tok::Newline) {
      ++idx_;
      return;
    }
    if (t.kind != Tok::End)
      fail("unexpected '" + t.text + "' at end of statement", t.pos);
  }

  DocChart parse_chart() {
    DocChart c;
    c.pos = take().pos;  // 'chart'
    c.name = expect_ident("chart name");
    expect_punct(":");
    while (peek().kind == Tok::Ident) c.coords.push_back(take().text);
    if (c.coords.empty())
      fail("chart '" + c.name + "' lists no coordinates", c.pos);
    return c;
  }

  // Expression text: tokens joined by spaces, up to ';' or end of statement.
  std::string expr_text() {
    std::string out;
    SourcePos start = peek().pos;
    while (peek().kind != Tok::Newline && peek().kind != Tok::End && !at_punct(";")) {
      if (!out.empty()) out += ' ';
      out += take().text;
    }
    if (out.empty()) fail("empty expression", start);
    return out;
  }

  DocMap parse_map() {
    DocMap m;
    m.pos = take().pos;  // 'map'
    m.from = expect_ident("source chart");
    expect_punct("->");
    m.to = expect_ident("target chart");
    expect_punct(":");
    for (;;) {
      std::string coord = expect_ident("target coordinate");
      expect_punct("=");
      m.assignments.emplace_back(coord, expr_text());
      if (at_punct(";")) {
        ++idx_;
        continue;
      }
      break;
    }
    return m;
  }

  std::string form_key() {
    // d(name) or d(conj(name)), wedged with '^'.
    std::string key;
    for (;;) {
      const Token& d = take();
      if (d.kind != Tok::Ident || d.text != "d")
        fail("form component key must be a wedge of d(...) factors", d.pos);
      expect_punct("(");
      std::string inner = expect_ident("coordinate");
      if (inner == "conj") {
        expect_punct("(");
        inner += "(" + expect_ident("coordinate") + ")";
        expect_punct(")");
      }
      expect_punct(")");
      key += "d(" + inner + ")";
      if (at_punct("^")) {
        ++idx_;
        key += "^";
        continue;
      }
      return key;
    }
  }

  DocField parse_field() {
    DocField f;
    const Token& kw = take();
    f.pos = kw.pos;
    f.kind = kw.text == "scalar"  ? DocField::Kind::Scalar
             : kw.text == "form" ? DocField::Kind::Form
                                 : DocField::Kind::Matrix;
    f.name = expect_ident("field name");
    if (at_punct("[")) {
      ++idx_;
      for (;;) {
        f.tags.push_back(expect_ident("chart tag"));
        if (at_punct(",")) {
          ++idx_;
          continue;
        }
        break;
      }
      expect_punct("]");
    }
    std::string on = expect_ident("'on'");
    if (on != "on") fail("expected 'on', found '" + on + "'", f.pos);
    f.chart = expect_ident("chart name");
    expect_punct(":");
    for (;;) {
      std::string key;
      if (f.kind == DocField::Kind::Scalar) {
        const Token& t = take();
        if (t.kind != Tok::Ident || t.text != "value")
          fail("scalar entry key must be 'value'", t.pos);
        key = "value";
      } else if (f.kind == DocField::Kind::Form) {
        key = form_key();
      } else {
        expect_punct("[");
        const Token& r = take();
        if (r.kind != Tok::Number || !r.is_integer) fail("matrix row index expected", r.pos);
        expect_punct(",");
        const Token& c = take();
        if (c.kind != Tok::Number || !c.is_integer) fail("matrix column index expected", c.pos);
        expect_punct("]");
        key = "[" + r.text + "," + c.text + "]";
      }
      expect_punct("=");
      f.entries.emplace_back(key, expr_text());
      if (at_punct(";")) {
        ++idx_;
        continue;
      }
      break;
    }
    return f;
  }

  Lexer lexer_;
  size_t idx_ = 0;
};

// Slot list for a canonical form key like "d(z0)^d(conj(w0))".
std::vector<int> form_key_slots(const std::string& key, const ChartPtr& chart,
                                SourcePos pos) {
  std::vector<int> slots;
  size_t i = 0;
  while (i < key.size()) {
    if (key.compare(i, 2, "d(") != 0) fail("malformed form key '" + key + "'", pos);
    i += 2;
    int depth = 1;
    size_t j = i;
    while (j < key.size() && depth > 0) {
      if (key[j] == '(') ++depth;
      if (key[j] == ')') --depth;
      ++j;
    }
    if (depth != 0) fail("malformed form key '" + key + "'", pos);
    std::string inner = key.substr(i, j - 1 - i);
    bool conjugated = false;
    if (inner.rfind("conj(", 0) == 0 && inner.back() == ')') {
      conjugated = true;
      inner = inner.substr(5, inner.size() - 6);
    }
    int slot = chart->slot_index(inner);
    if (slot < 0)
      fail("unknown coordinate '" + inner + "' in chart '" + chart->name() + "'", pos);
    slots.push_back(conjugated ? chart->conj_slot(slot) : slot);
    i = j;
    if (i < key.size()) {
      if (key[i] != '^') fail("malformed form key '" + key + "'", pos);
      ++i;
    }
  }
  return slots;
}

}  // namespace

ParseError::ParseError(const std::string& msg, SourcePos pos)
    : std::runtime_error(pos_str(pos) + ": " + msg), pos_(pos) {}

ScalarField parse_expression(std::string_view text, const ChartPtr& chart) {
  Lexer lexer(text, /*keep_newlines=*/false);
  ExprParser parser(lexer.tokens(), chart);
  return parser.parse_all();
}

Document parse_document(std::string_view text) { return DocParser(text).parse(); }

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string field_key(const std::string& base, const std::vector<std::string>& tags) {
  if (tags.empty()) return base;
  std::string key = base + "[";
  for (size_t i = 0; i < tags.size(); ++i) {
    if (i) key += ",";
    key += tags[i];
  }
  return key + "]";
}

std::string format_document(const Document& doc) {
  std::ostringstream out;
  out << "version " << doc.version << "\n";
  if (!doc.name.empty()) out << "name " << doc.name << "\n";
  out << "\n";
  for (const DocChart& c : doc.charts) {
    out << "chart " << c.name << " :";
    for (const std::string& x : c.coords) out << " " << x;
    out << "\n";
  }
  for (const DocMap& m : doc.maps) {
    out << "map " << m.from << " -> " << m.to << " :";
    for (size_t i = 0; i < m.assignments.size(); ++i) {
      out << (i ? " ; " : " ") << m.assignments[i].first << " = " << m.assignments[i].second;
    }
    out << "\n";
  }
  for (const DocField& f : doc.fields) {
    const char* kw = f.kind == DocField::Kind::Scalar  ? "scalar"
                     : f.kind == DocField::Kind::Form ? "form"
                                                       : "matrix";
    out << kw << " " << field_key(f.name, f.tags) << " on " << f.chart << " :";
    for (size_t i = 0; i < f.entries.size(); ++i) {
      out << (i ? " ; " : " ") << f.entries[i].first << " = " << f.entries[i].second;
    }
    out << "\n";
  }
  return out.str();
}

int InstanceData::chart_index(const std::string& chart_name) const {
  for (size_t i = 0; i < charts.size(); ++i)
    if (charts[i]->name() == chart_name) return static_cast<int>(i);
  return -1;
}

const ChartMap& InstanceData::transition(int from, int to) const {
  auto it = transitions.find({from, to});
  if (it == transitions.end())
    throw std::runtime_error("no transition map " + charts.at(from)->name() + " -> " +
                             charts.at(to)->name());
  return it->second;
}

InstanceData realize(const Document& doc) {
  InstanceData inst;
  inst.name = doc.name;
  for (const DocChart& c : doc.charts) {
    if (inst.chart_index(c.name) >= 0) fail("duplicate chart '" + c.name + "'", c.pos);
    inst.charts.push_back(Chart::complex_chart(c.name, c.coords));
  }
  auto chart_at = [&](const std::string& name, SourcePos pos) {
    int k = inst.chart_index(name);
    if (k < 0) fail("unknown chart '" + name + "'", pos);
    return k;
  };
  auto parse_entry = [&](const std::string& text, const ChartPtr& chart,
                         const std::string& context, SourcePos pos) {
    try {
      return parse_expression(text, chart);
    } catch (const ParseError& e) {
      fail(context + ": " + e.what(), pos);
    }
  };

  for (const DocMap& m : doc.maps) {
    int from = chart_at(m.from, m.pos);
    int to = chart_at(m.to, m.pos);
    if (inst.transitions.count({from, to}))
      fail("duplicate map " + m.from + " -> " + m.to, m.pos);
    const ChartPtr& src = inst.charts[from];
    const ChartPtr& dst = inst.charts[to];
    std::vector<ScalarField> holo(dst->ncomplex());
    for (const auto& [coord, text] : m.assignments) {
      int slot = dst->slot_index(coord);
      if (slot < 0 || slot >= dst->ncomplex())
        fail("'" + coord + "' is not a holomorphic coordinate of '" + m.to + "'", m.pos);
      if (holo[slot].valid())
        fail("duplicate assignment for '" + coord + "'", m.pos);
      holo[slot] = parse_entry(text, src, "map " + m.from + " -> " + m.to, m.pos);
    }
    for (int s = 0; s < dst->ncomplex(); ++s)
      if (!holo[s].valid())
        fail("map " + m.from + " -> " + m.to + " misses coordinate '" + dst->slot_name(s) + "'",
             m.pos);
    inst.transitions.emplace(std::pair{from, to}, make_chart_map(src, dst, std::move(holo)));
  }

  for (const DocField& f : doc.fields) {
    const ChartPtr& chart = inst.charts[chart_at(f.chart, f.pos)];
    std::string key = field_key(f.name, f.tags);
    std::string context = "field " + key;
    if (f.entries.empty()) fail(context + " has no entries", f.pos);
    if (f.kind == DocField::Kind::Scalar) {
      if (inst.scalars.count(key)) fail("duplicate field " + key, f.pos);
      if (f.entries.size() != 1) fail(context + ": scalar takes a single entry", f.pos);
      inst.scalars.emplace(key, parse_entry(f.entries[0].second, chart, context, f.pos));
    } else if (f.kind == DocField::Kind::Form) {
      if (inst.forms.count(key)) fail("duplicate field " + key, f.pos);
      int degree = -1;
      FormField acc;
      std::vector<std::string> seen;
      for (const auto& [k, text] : f.entries) {
        std::vector<int> slots = form_key_slots(k, chart, f.pos);
        if (degree < 0) {
          degree = static_cast<int>(slots.size());
          acc = FormField::zero(chart, degree);
        } else if (static_cast<int>(slots.size()) != degree) {
          fail(context + ": mixed component degrees", f.pos);
        }
        for (const std::string& s : seen)
          if (s == k) fail(context + ": duplicate component " + k, f.pos);
        seen.push_back(k);
        ScalarField coeff = parse_entry(text, chart, context + " entry " + k, f.pos);
        acc = acc + coeff * FormField::basis(chart, slots);
      }
      inst.forms.emplace(key, std::move(acc));
    } else {
      if (inst.matrices.count(key)) fail("duplicate field " + key, f.pos);
      int n = chart->nslots();
      MatrixField m = MatrixField::zero(chart, n, n);
      std::vector<std::string> seen;
      for (const auto& [k, text] : f.entries) {
        size_t comma = k.find(',');
        int r = std::stoi(k.substr(1, comma - 1));
        int c = std::stoi(k.substr(comma + 1, k.size() - comma - 2));
        if (r < 0 || r >= n || c < 0 || c >= n)
          fail(context + ": index " + k + " out of range for " + std::to_string(n) + " slots",
               f.pos);
        for (const std::string& s : seen)
          if (s == k) fail(context + ": duplicate entry " + k, f.pos);
        seen.push_back(k);
        m.at(r, c) = parse_entry(text, chart, context + " entry " + k, f.pos);
      }
      inst.matrices.emplace(key, std::move(m));
    }
  }
  return inst;
}

}  // namespace gkx
