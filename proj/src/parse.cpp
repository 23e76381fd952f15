#include "gcv/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gcv {

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;
  size_t line_start = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw Error("parse error at line " + std::to_string(line) + ", column " +
                std::to_string(pos - line_start + 1) + ": " + message);
  }

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  double number() {
    skip_space();
    const char* begin = text.data() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos += static_cast<size_t>(end - begin);
    return v;
  }

  std::string ident() {
    skip_space();
    size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])))) ++pos;
    if (start == pos) fail("expected an identifier");
    return std::string(text.substr(start, pos - start));
  }
};

// linear := [int '*'] tN (('+'|'-') [int '*'] tN)*
Freq parse_linear(Cursor& c, int dim) {
  Freq k{};
  bool first = true;
  while (true) {
    int sign = 1;
    c.skip_space();
    if (c.eat('+')) {
      sign = 1;
    } else if (c.eat('-')) {
      sign = -1;
    } else if (!first) {
      break;
    }
    first = false;
    int coef = 1;
    c.skip_space();
    if (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
      const double v = c.number();
      coef = static_cast<int>(v);
      if (coef != v) c.fail("frequencies must be integers");
      if (!c.eat('*')) c.fail("expected '*' between a frequency and its angle variable");
    }
    const auto name = c.ident();
    if (name.size() != 2 || name[0] != 't' || name[1] < '1' || name[1] > '0' + dim) {
      c.fail("expected an angle variable t1..t" + std::to_string(dim));
    }
    k[name[1] - '1'] += sign * coef;
  }
  return k;
}

ScalarField parse_factor(Cursor& c, int dim);

ScalarField parse_primary(Cursor& c, int dim) {
  c.skip_space();
  if (c.pos >= c.text.size()) c.fail("unexpected end of expression");
  const char ch = c.text[c.pos];
  if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
    return ScalarField::constant(dim, c.number());
  }
  if (std::isalpha(static_cast<unsigned char>(ch))) {
    const auto name = c.ident();
    if (name != "cos" && name != "sin") c.fail("expected cos(...), sin(...), or a number");
    if (!c.eat('(')) c.fail("expected '(' after " + name);
    const auto k = parse_linear(c, dim);
    if (!c.eat(')')) c.fail("expected ')'");
    return name == "cos" ? ScalarField::harmonic(dim, k, 1.0, 0.0)
                         : ScalarField::harmonic(dim, k, 0.0, 1.0);
  }
  c.fail(std::string("unexpected character '") + ch + "'");
}

ScalarField parse_factor(Cursor& c, int dim) {
  if (c.eat('-')) return -parse_factor(c, dim);
  return parse_primary(c, dim);
}

ScalarField parse_term(Cursor& c, int dim) {
  auto f = parse_factor(c, dim);
  while (c.eat('*')) f = f * parse_factor(c, dim);
  return f;
}

ScalarField parse_expr(Cursor& c, int dim) {
  auto f = parse_term(c, dim);
  while (true) {
    if (c.eat('+')) {
      f += parse_term(c, dim);
    } else if (c.eat('-')) {
      f -= parse_term(c, dim);
    } else {
      break;
    }
  }
  return f;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_linear(const Freq& k, int dim) {
  std::string out;
  for (int i = 0; i < dim; ++i) {
    if (k[i] == 0) continue;
    if (!out.empty()) out += k[i] > 0 ? " + " : " - ";
    else if (k[i] < 0) out += "-";
    out += std::to_string(std::abs(k[i])) + "*t" + std::to_string(i + 1);
  }
  return out;
}

}  // namespace

ScalarField parse_trig_expression(std::string_view text, int dim) {
  Cursor c{text};
  const auto f = parse_expr(c, dim);
  if (!c.at_end()) c.fail("trailing input after expression");
  return f;
}

std::string format_trig_expression(const ScalarField& f) {
  if (f.is_zero()) return "0";
  const int dim = f.dimension();
  std::string out;
  auto append = [&](double coef, const std::string& basis) {
    if (coef == 0.0) return;
    if (out.empty()) {
      if (coef < 0) out += "-";
    } else {
      out += coef < 0 ? " - " : " + ";
    }
    const double mag = std::abs(coef);
    if (basis.empty()) {
      out += format_double(mag);
    } else if (mag == 1.0) {
      out += basis;
    } else {
      out += format_double(mag) + "*" + basis;
    }
  };
  for (const auto& [k, h] : f.terms()) {
    const auto lin = format_linear(k, dim);
    append(h.c, lin.empty() ? "" : "cos(" + lin + ")");
    if (!lin.empty()) append(h.s, "sin(" + lin + ")");
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

namespace {

struct LineReader {
  int line_no = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw Error("parse error at line " + std::to_string(line_no) + ": " + message);
  }

  ScalarField expr(std::string_view text, int dim) const {
    try {
      return parse_trig_expression(text, dim);
    } catch (const Error& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  std::vector<ScalarField> expr_list(std::string_view text, int dim, size_t expected) const {
    std::vector<ScalarField> out;
    size_t start = 0;
    while (start <= text.size()) {
      const size_t comma = text.find(',', start);
      const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                            : comma - start);
      out.push_back(expr(piece, dim));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (out.size() != expected) {
      fail("expected " + std::to_string(expected) + " comma-separated expressions, got " +
           std::to_string(out.size()));
    }
    return out;
  }

  RealVectorField vec(std::string_view text, int dim) const {
    return RealVectorField(expr_list(text, dim, dim));
  }
};

std::string trim(std::string s) {
  const auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

}  // namespace

ParsedStructure parse_structure(std::string_view text) {
  ParsedStructure ps;
  ps.inputs.b = RealForm(4, 2);
  ps.inputs.twist = RealForm(4, 3);
  const int dim = 4;
  ps.dim = dim;

  std::string kind;
  std::map<std::string, RealVectorField> frames;
  std::array<std::array<std::optional<RealVectorField>, 2>, 4> eigen;  // [zp1,zp2,zm1,zm2][re,im]
  std::optional<std::array<ScalarField, 4>> jn;
  RealEndomorphism metric(dim), jplus(dim), jminus(dim);
  bool has_metric = false, has_jplus = false, has_jminus = false;

  LineReader reader;
  std::istringstream stream{std::string(text)};
  std::string raw;
  while (std::getline(stream, raw)) {
    ++reader.line_no;
    auto line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    const auto eq = line.find('=');
    std::string head = trim(eq == std::string::npos ? line : line.substr(0, eq));
    const std::string rhs = eq == std::string::npos ? "" : trim(line.substr(eq + 1));

    std::istringstream hs(head);
    std::vector<std::string> words;
    for (std::string w; hs >> w;) words.push_back(w);
    if (words.empty()) reader.fail("empty statement");

    const auto& key = words[0];
    if (key == "kind") {
      if (words.size() != 2) reader.fail("usage: kind foliation|distribution|bihermitian");
      kind = words[1];
      if (kind != "foliation" && kind != "distribution" && kind != "bihermitian") {
        reader.fail("unknown kind '" + kind + "'");
      }
    } else if (key == "dim") {
      if (words.size() != 2 || words[1] != "4") {
        reader.fail("only dim 4 structures are supported");
      }
    } else if (key == "frame") {
      if (words.size() != 2) reader.fail("usage: frame <name> = e1, e2, e3, e4");
      frames.emplace(words[1], reader.vec(rhs, dim));
    } else if (key == "jn") {
      auto list = reader.expr_list(rhs, dim, 4);
      jn = std::array<ScalarField, 4>{list[0], list[1], list[2], list[3]};
    } else if (key == "metric" || key == "jplus" || key == "jminus") {
      if (words.size() != 3) reader.fail("usage: " + key + " <row> <col> = expr");
      const int r = std::stoi(words[1]);
      const int c = std::stoi(words[2]);
      if (r < 0 || r >= dim || c < 0 || c >= dim) reader.fail("matrix index out of range");
      auto& target = key == "metric" ? metric : (key == "jplus" ? jplus : jminus);
      target.at(r, c) = reader.expr(rhs, dim);
      (key == "metric" ? has_metric : (key == "jplus" ? has_jplus : has_jminus)) = true;
    } else if (key == "b") {
      if (words.size() != 3) reader.fail("usage: b <i> <j> = expr");
      const int i = std::stoi(words[1]);
      const int j = std::stoi(words[2]);
      if (i < 0 || j <= i || j >= dim) reader.fail("2-form indices must satisfy 0 <= i < j < 4");
      ps.inputs.b.add_component(MultiIndex::of({i, j}), reader.expr(rhs, dim));
    } else if (key == "twist") {
      if (words.size() != 4) reader.fail("usage: twist <i> <j> <k> = expr");
      const int i = std::stoi(words[1]);
      const int j = std::stoi(words[2]);
      const int k = std::stoi(words[3]);
      if (i < 0 || j <= i || k <= j || k >= dim) {
        reader.fail("3-form indices must satisfy 0 <= i < j < k < 4");
      }
      ps.inputs.twist.add_component(MultiIndex::of({i, j, k}), reader.expr(rhs, dim));
    } else if (key == "zplus1" || key == "zplus2" || key == "zminus1" || key == "zminus2") {
      if (words.size() != 2 || (words[1] != "re" && words[1] != "im")) {
        reader.fail("usage: " + key + " re|im = e1, e2, e3, e4");
      }
      const int slot = key == "zplus1" ? 0 : key == "zplus2" ? 1 : key == "zminus1" ? 2 : 3;
      eigen[slot][words[1] == "re" ? 0 : 1] = reader.vec(rhs, dim);
    } else {
      reader.fail("unknown keyword '" + key + "'");
    }
  }

  if (kind.empty()) throw Error("parse error: missing 'kind' declaration");

  auto need_frame = [&](const char* name) -> const RealVectorField& {
    auto it = frames.find(name);
    if (it == frames.end()) {
      throw Error(std::string("parse error: missing frame ") + name);
    }
    return it->second;
  };

  if (kind == "foliation") {
    ps.inputs.kind = CatalogInputs::Kind::Foliation;
    FoliationData fol;
    fol.f_frame = {need_frame("F1"), need_frame("F2")};
    fol.n_frame = {need_frame("N1"), need_frame("N2")};
    if (!jn) throw Error("parse error: foliation input needs 'jn = a, b, c, d'");
    fol.j_action = *jn;
    if (has_metric) fol.metric = MetricField(metric);
    ps.inputs.foliation = std::move(fol);
  } else if (kind == "distribution") {
    ps.inputs.kind = CatalogInputs::Kind::Distribution;
    DistributionFrame dist;
    dist.e_frame = {need_frame("E1"), need_frame("E2")};
    dist.n_frame = {need_frame("N1"), need_frame("N2")};
    dist.metric = has_metric ? MetricField(metric) : MetricField::flat(dim);
    ps.inputs.distribution = std::move(dist);
  } else {
    ps.inputs.kind = CatalogInputs::Kind::Bihermitian;
    if (!has_jplus || !has_jminus) {
      throw Error("parse error: bihermitian input needs jplus and jminus entries");
    }
    ps.inputs.metric = has_metric ? MetricField(metric) : MetricField::flat(dim);
    ps.inputs.jplus = jplus;
    ps.inputs.jminus = jminus;
    const bool any_eigen = eigen[0][0] || eigen[1][0] || eigen[2][0] || eigen[3][0];
    if (any_eigen) {
      EigenframeSet set;
      auto build = [&](int slot) {
        if (!eigen[slot][0] || !eigen[slot][1]) {
          throw Error("parse error: adapted frames need both re and im parts");
        }
        std::vector<ComplexScalarField> comps;
        for (int i = 0; i < dim; ++i) {
          comps.emplace_back(eigen[slot][0]->comp(i), eigen[slot][1]->comp(i));
        }
        return ComplexVectorField(std::move(comps));
      };
      set.plus = {build(0), build(1)};
      set.minus = {build(2), build(3)};
      ps.inputs.frames = std::move(set);
    }
  }
  return ps;
}

// ---------------------------------------------------------------------------

namespace {

void emit_matrix(std::ostringstream& out, const char* key, const RealEndomorphism& m) {
  for (int i = 0; i < m.dimension(); ++i) {
    for (int j = 0; j < m.dimension(); ++j) {
      if (m.at(i, j).is_zero()) continue;
      out << key << " " << i << " " << j << " = " << format_trig_expression(m.at(i, j))
          << "\n";
    }
  }
}

void emit_vec(std::ostringstream& out, const std::string& head, const RealVectorField& v) {
  out << head << " = ";
  for (int i = 0; i < v.dimension(); ++i) {
    if (i) out << ", ";
    out << format_trig_expression(v.comp(i));
  }
  out << "\n";
}

void emit_form(std::ostringstream& out, const char* key, const RealForm& w) {
  for (const auto& [I, f] : w.components()) {
    if (f.is_zero()) continue;
    out << key;
    for (int i = 0; i < I.len; ++i) out << " " << static_cast<int>(I.idx[i]);
    out << " = " << format_trig_expression(f) << "\n";
  }
}

}  // namespace

std::string format_structure(const CatalogInputs& inputs) {
  std::ostringstream out;
  out << "dim 4\n";
  switch (inputs.kind) {
    case CatalogInputs::Kind::Foliation: {
      out << "kind foliation\n";
      const auto& fol = *inputs.foliation;
      emit_vec(out, "frame F1", fol.f_frame[0]);
      emit_vec(out, "frame F2", fol.f_frame[1]);
      emit_vec(out, "frame N1", fol.n_frame[0]);
      emit_vec(out, "frame N2", fol.n_frame[1]);
      out << "jn = ";
      for (int i = 0; i < 4; ++i) {
        if (i) out << ", ";
        out << format_trig_expression(fol.j_action[i]);
      }
      out << "\n";
      if (fol.metric) emit_matrix(out, "metric", fol.metric->entries());
      break;
    }
    case CatalogInputs::Kind::Distribution: {
      out << "kind distribution\n";
      const auto& dist = *inputs.distribution;
      emit_vec(out, "frame E1", dist.e_frame[0]);
      emit_vec(out, "frame E2", dist.e_frame[1]);
      emit_vec(out, "frame N1", dist.n_frame[0]);
      emit_vec(out, "frame N2", dist.n_frame[1]);
      emit_matrix(out, "metric", dist.metric.entries());
      break;
    }
    case CatalogInputs::Kind::Bihermitian: {
      out << "kind bihermitian\n";
      emit_matrix(out, "metric", inputs.metric->entries());
      emit_matrix(out, "jplus", *inputs.jplus);
      emit_matrix(out, "jminus", *inputs.jminus);
      if (inputs.frames) {
        const std::array<const ComplexVectorField*, 4> vecs = {
            &inputs.frames->plus[0], &inputs.frames->plus[1], &inputs.frames->minus[0],
            &inputs.frames->minus[1]};
        const std::array<const char*, 4> names = {"zplus1", "zplus2", "zminus1", "zminus2"};
        for (int s = 0; s < 4; ++s) {
          std::vector<ScalarField> re, im;
          for (int i = 0; i < 4; ++i) {
            re.push_back(vecs[s]->comp(i).real_part());
            im.push_back(vecs[s]->comp(i).imag_part());
          }
          emit_vec(out, std::string(names[s]) + " re", RealVectorField(re));
          emit_vec(out, std::string(names[s]) + " im", RealVectorField(im));
        }
      }
      break;
    }
  }
  emit_form(out, "b", inputs.b);
  emit_form(out, "twist", inputs.twist);
  return out.str();
}

BihermitianData realize(const CatalogInputs& inputs, const std::vector<SamplePoint>& pts,
                        FoliationChecks* checks_out) {
  switch (inputs.kind) {
    case CatalogInputs::Kind::Foliation: {
      const auto base = build_from_foliation(*inputs.foliation, pts, checks_out, false);
      if (inputs.b.max_abs_coeff() == 0.0) return base;
      EigenframeSet frames = base.frames();
      return BihermitianData::validate(base.metric(), base.jplus(), base.jminus(), inputs.b,
                                       pts, frames);
    }
    case CatalogInputs::Kind::Distribution: {
      const auto base = build_from_distribution(*inputs.distribution, pts);
      if (inputs.b.max_abs_coeff() == 0.0) return base;
      EigenframeSet frames = base.frames();
      return BihermitianData::validate(base.metric(), base.jplus(), base.jminus(), inputs.b,
                                       pts, frames);
    }
    case CatalogInputs::Kind::Bihermitian:
      return BihermitianData::validate(*inputs.metric, *inputs.jplus, *inputs.jminus, inputs.b,
                                       pts, inputs.frames);
  }
  throw Error("realize: unreachable");
}

}  // namespace gcv
