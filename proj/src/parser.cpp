#include "overdet/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <regex>
#include <set>

#include <json.hpp>

namespace overdet {

using nlohmann::json;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : InputError(what), line_(line), column_(column) {}

namespace {

constexpr int kMaxNesting = 256;

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> vars)
      : text_(text), vars_(vars) {}

  Polynomial parse() {
    skip();
    if (pos_ >= text_.size()) fail("empty polynomial");
    Polynomial p = expr(0);
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + msg, 1, pos_ + 1);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Polynomial expr(int depth) {
    if (depth > kMaxNesting) fail("nesting too deep");
    Polynomial acc = term(depth);
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term(depth);
      } else if (peek('-')) {
        ++pos_;
        acc -= term(depth);
      } else {
        return acc;
      }
    }
  }

  Polynomial term(int depth) {
    Polynomial acc = factor(depth);
    while (peek('*')) {
      ++pos_;
      acc *= factor(depth);
    }
    return acc;
  }

  Polynomial factor(int depth) {
    if (depth > kMaxNesting) fail("nesting too deep");
    if (peek('-')) {
      ++pos_;
      return -factor(depth + 1);
    }
    if (peek('+')) {
      ++pos_;
      return factor(depth + 1);
    }
    Polynomial base = primary(depth);
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      Integer e = integer_literal();
      if (e > kMaxTotalDegree) {
        pos_ = start;
        throw ResourceError("exponent " + e.get_str() + " at column " + std::to_string(start + 1) +
                            " exceeds the degree cap of " + std::to_string(kMaxTotalDegree));
      }
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer_literal() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Polynomial primary(int depth) {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr(depth + 1);
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q(integer_literal());
      if (peek('/')) {
        ++pos_;
        skip();
        Integer den = integer_literal();
        if (den == 0) fail("zero denominator");
        q /= Rational(den);
      }
      return Polynomial::constant(vars_.size(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json load(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    auto [line, col] = line_col(text, byte);
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col),
                     line, col);
  }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where, const ParseOptions& opt) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  if (opt.lenient) return;
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw InputError(where + ": unknown field '" + key + "'");
    }
  }
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite number");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

Rational json_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(Integer(std::to_string(v.get<std::uint64_t>())))
                                  : Rational(Integer(std::to_string(v.get<std::int64_t>())));
  }
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  throw InputError(where + ": expected a rational number");
}

double json_double(const json& v, const std::string& where) {
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(where + ": non-finite number");
    return x;
  }
  if (v.is_string()) return json_rational(v, where).get_d();
  throw InputError(where + ": expected a number");
}

int json_int(const json& v, const std::string& where, int lo, int hi) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    throw InputError(where + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     "]");
  }
  return static_cast<int>(x);
}

std::optional<Rational> json_bound(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "-inf") return std::nullopt;
  }
  return json_rational(v, where);
}

Polynomial json_polynomial(const json& v, std::span<const std::string> vars,
                           const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a polynomial string");
  try {
    return parse_polynomial(v.get<std::string>(), vars);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.line(), e.column());
  }
}

std::vector<std::string> json_variables(const json& doc) {
  std::vector<std::string> vars;
  if (doc.contains("variables")) {
    const json& v = doc["variables"];
    if (!v.is_array() || v.empty()) throw InputError("variables: expected a nonempty array");
    std::set<std::string> seen;
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    for (const auto& name : v) {
      if (!name.is_string()) throw InputError("variables: expected strings");
      auto s = name.get<std::string>();
      if (!std::regex_match(s, ident)) throw InputError("variables: invalid name '" + s + "'");
      if (!seen.insert(s).second) throw InputError("variables: duplicate name '" + s + "'");
      vars.push_back(std::move(s));
    }
    if (vars.size() > kMaxVariables) {
      throw ResourceError("at most " + std::to_string(kMaxVariables) + " variables supported");
    }
    return vars;
  }
  // Default names z1..zN with N the largest index mentioned.
  std::size_t n = 1;
  static const std::regex zvar("z([1-9][0-9]?)");
  const std::string dump = doc.dump();
  for (auto it = std::sregex_iterator(dump.begin(), dump.end(), zvar); it != std::sregex_iterator();
       ++it) {
    n = std::max<std::size_t>(n, std::stoul((*it)[1].str()));
  }
  if (n > kMaxVariables) {
    throw ResourceError("at most " + std::to_string(kMaxVariables) + " variables supported");
  }
  return default_variable_names(n);
}

SystemSpec system_from(const json& doc, const std::vector<std::string>& vars) {
  SystemSpec s;
  s.variables = vars;
  if (doc.contains("label") && doc["label"].is_string()) s.label = doc["label"];
  const json& m = doc["matrix"];
  if (!m.is_array() || m.empty()) throw InputError("matrix: expected a nonempty array of rows");
  for (std::size_t i = 0; i < m.size(); ++i) {
    const json& row = m[i];
    const std::string where = "matrix[" + std::to_string(i) + "]";
    if (!row.is_array() || row.empty()) throw InputError(where + ": expected a nonempty row");
    if (i > 0 && row.size() != m[0].size()) {
      throw InputError("ragged matrix: row " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, row 0 has " +
                       std::to_string(m[0].size()));
    }
    std::vector<Polynomial> parsed;
    for (std::size_t j = 0; j < row.size(); ++j) {
      parsed.push_back(json_polynomial(row[j], vars, where + "[" + std::to_string(j) + "]"));
    }
    s.matrix.push_back(std::move(parsed));
  }
  return s;
}

WeightSpec weight_from(const json& w, const ParseOptions& opt) {
  check_keys(w, {"family", "parameter", "points", "normalize"}, "weight", opt);
  if (!w.contains("family") || !w["family"].is_string()) {
    throw InputError("weight: missing family");
  }
  WeightSpec spec;
  const auto fam = w["family"].get<std::string>();
  if (fam == "gevrey") {
    spec.family = WeightFamily::gevrey;
  } else if (fam == "logpow") {
    spec.family = WeightFamily::logpow;
  } else if (fam == "sublinear-log" || fam == "sublinear_log") {
    spec.family = WeightFamily::sublinear_log;
  } else if (fam == "table") {
    spec.family = WeightFamily::table;
  } else {
    throw InputError("weight: unknown family '" + fam + "'");
  }
  if (w.contains("normalize")) {
    if (!w["normalize"].is_boolean()) throw InputError("weight.normalize: expected a boolean");
    spec.normalize = w["normalize"];
  }
  if (spec.family == WeightFamily::table) {
    if (!w.contains("points") || !w["points"].is_array()) {
      throw InputError("weight: table family needs a points array");
    }
    for (std::size_t i = 0; i < w["points"].size(); ++i) {
      const json& p = w["points"][i];
      const std::string where = "weight.points[" + std::to_string(i) + "]";
      if (!p.is_array() || p.size() != 2) throw InputError(where + ": expected [t, omega]");
      spec.points.emplace_back(json_double(p[0], where), json_double(p[1], where));
    }
  } else {
    if (!w.contains("parameter")) throw InputError("weight: missing parameter");
    spec.parameter = json_rational(w["parameter"], "weight.parameter");
  }
  validate_weight(spec);
  return spec;
}

RegionSpec region_from(const json& r, const std::string& where, std::size_t nvars,
                       const ParseOptions& opt) {
  check_keys(r, {"kind", "bounds", "vertices", "exhaustion"}, where, opt);
  RegionSpec spec;
  const std::string kind = r.value("kind", std::string(r.contains("vertices") ? "polytope" : "box"));
  if (kind == "box") {
    spec.kind = RegionSpec::Kind::box;
    if (!r.contains("bounds") || !r["bounds"].is_array()) {
      throw InputError(where + ": box needs a bounds array");
    }
    for (std::size_t i = 0; i < r["bounds"].size(); ++i) {
      const json& b = r["bounds"][i];
      const std::string w = where + ".bounds[" + std::to_string(i) + "]";
      if (!b.is_array() || b.size() != 2) throw InputError(w + ": expected [lo, hi]");
      auto lo = json_bound(b[0], w);
      auto hi = json_bound(b[1], w);
      if (b[0].is_string() && b[0].get<std::string>().find('+') != std::string::npos) {
        throw InputError(w + ": lower bound cannot be +inf");
      }
      if (lo && hi && *lo > *hi) throw InputError(w + ": empty interval");
      spec.bounds.emplace_back(lo, hi);
    }
    if (spec.bounds.size() != nvars) {
      throw InputError(where + ": box has " + std::to_string(spec.bounds.size()) +
                       " axes, expected " + std::to_string(nvars));
    }
  } else if (kind == "polytope") {
    spec.kind = RegionSpec::Kind::polytope;
    if (!r.contains("vertices") || !r["vertices"].is_array() || r["vertices"].empty()) {
      throw InputError(where + ": polytope needs a nonempty vertices array");
    }
    for (std::size_t i = 0; i < r["vertices"].size(); ++i) {
      const json& v = r["vertices"][i];
      const std::string w = where + ".vertices[" + std::to_string(i) + "]";
      if (!v.is_array() || v.size() != nvars) {
        throw InputError(w + ": expected " + std::to_string(nvars) + " coordinates");
      }
      std::vector<Rational> pt;
      for (const auto& x : v) pt.push_back(json_rational(x, w));
      spec.vertices.push_back(std::move(pt));
    }
    // Affine rank of the vertex set.
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < spec.vertices.size(); ++i) {
      std::vector<Rational> d(nvars);
      for (std::size_t k = 0; k < nvars; ++k) d[k] = spec.vertices[i][k] - spec.vertices[0][k];
      rows.push_back(std::move(d));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nvars && rank < rows.size(); ++col) {
      std::size_t piv = rank;
      while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      for (std::size_t i = rank + 1; i < rows.size(); ++i) {
        const Rational f = rows[i][col] / rows[rank][col];
        for (std::size_t k = col; k < nvars; ++k) rows[i][k] -= f * rows[rank][k];
      }
      ++rank;
    }
    spec.lower_dimensional = rank < nvars;
  } else {
    throw InputError(where + ": unknown kind '" + kind + "'");
  }
  spec.exhaustion.rule = spec.compact() ? Exhaustion::Rule::constant : Exhaustion::Rule::dilate;
  if (r.contains("exhaustion")) {
    const json& e = r["exhaustion"];
    check_keys(e, {"rule", "factors"}, where + ".exhaustion", opt);
    const std::string rule = e.value("rule", std::string("constant"));
    if (rule == "constant") {
      spec.exhaustion.rule = Exhaustion::Rule::constant;
    } else if (rule == "dilate") {
      if (spec.kind != RegionSpec::Kind::box) {
        throw InputError(where + ".exhaustion: dilate rule needs a box");
      }
      spec.exhaustion.rule = Exhaustion::Rule::dilate;
    } else if (rule == "scale") {
      spec.exhaustion.rule = Exhaustion::Rule::scale;
      if (!e.contains("factors") || !e["factors"].is_array() || e["factors"].empty()) {
        throw InputError(where + ".exhaustion: scale rule needs factors");
      }
      for (const auto& f : e["factors"]) {
        Rational q = json_rational(f, where + ".exhaustion.factors");
        if (sgn(q) <= 0) throw InputError(where + ".exhaustion: factors must be positive");
        if (!spec.exhaustion.factors.empty() && q < spec.exhaustion.factors.back()) {
          throw InputError(where + ".exhaustion: factors must be nondecreasing");
        }
        spec.exhaustion.factors.push_back(q);
      }
    } else {
      throw InputError(where + ".exhaustion: unknown rule '" + rule + "'");
    }
  }
  if (!spec.compact() && spec.exhaustion.rule != Exhaustion::Rule::dilate) {
    throw InputError(where + ": unbounded box needs the dilate exhaustion");
  }
  return spec;
}

CandidateSpec candidate_from(const json& c, std::span<const std::string> vars,
                             const std::string& where, const ParseOptions& opt, int depth) {
  if (depth > 8) throw InputError(where + ": candidate nesting too deep");
  check_keys(c, {"kind", "g", "c", "of"}, where, opt);
  const std::string kind = c.value("kind", std::string());
  CandidateSpec spec;
  if (kind == "log_abs") {
    spec.kind = CandidateSpec::Kind::log_abs;
    if (!c.contains("g")) throw InputError(where + ": log_abs needs g");
    spec.g = json_polynomial(c["g"], vars, where + ".g");
    if (spec.g.is_zero()) throw InputError(where + ": g must be nonzero");
  } else if (kind == "linear_im") {
    spec.kind = CandidateSpec::Kind::linear_im;
    if (!c.contains("c") || !c["c"].is_array() || c["c"].size() != vars.size()) {
      throw InputError(where + ": linear_im needs c with " + std::to_string(vars.size()) +
                       " entries");
    }
    for (const auto& x : c["c"]) spec.c.push_back(json_rational(x, where + ".c"));
  } else if (kind == "max") {
    spec.kind = CandidateSpec::Kind::max;
    if (!c.contains("of") || !c["of"].is_array() || c["of"].empty()) {
      throw InputError(where + ": max needs a nonempty 'of' list");
    }
    for (std::size_t i = 0; i < c["of"].size(); ++i) {
      spec.parts.push_back(candidate_from(c["of"][i], vars,
                                          where + ".of[" + std::to_string(i) + "]", opt,
                                          depth + 1));
    }
  } else if (kind == "envelope") {
    spec.kind = CandidateSpec::Kind::envelope;
  } else {
    throw InputError(where + ": unknown candidate kind '" + kind + "'");
  }
  spec.label = candidate_label(spec, vars);
  return spec;
}

json weight_json(const WeightSpec& w) {
  json out = json::object();
  out["family"] = family_name(w.family);
  if (w.family == WeightFamily::table) {
    out["points"] = json::array();
    for (const auto& [t, v] : w.points) out["points"].push_back({t, v});
  } else {
    out["parameter"] = format_rational(w.parameter);
  }
  if (!w.normalize) out["normalize"] = false;
  return out;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables) {
  return PolyParser(text, variables).parse();
}

Rational parse_rational(std::string_view text) {
  static const std::regex frac(R"(\s*([+-]?)(\d+)(?:/(\d+))?\s*)");
  static const std::regex dec(R"(\s*([+-]?)(\d*)\.(\d*)(?:[eE]([+-]?\d+))?\s*)");
  static const std::regex sci(R"(\s*([+-]?)(\d+)[eE]([+-]?\d+)\s*)");
  const std::string s(text);
  std::smatch m;
  Rational q;
  if (std::regex_match(s, m, frac)) {
    q = Rational(Integer(m[2].str(), 10));
    if (m[3].matched) {
      Integer den(m[3].str(), 10);
      if (den == 0) throw InputError("zero denominator in '" + s + "'");
      q /= Rational(den);
    }
  } else if (std::regex_match(s, m, dec) && (m[2].length() + m[3].length()) > 0) {
    const std::string digits = m[2].str() + m[3].str();
    Integer num(digits.empty() ? "0" : digits, 10);
    long exp10 = -static_cast<long>(m[3].length());
    if (m[4].matched) exp10 += std::stol(m[4].str());
    if (std::labs(exp10) > 400) throw InputError("exponent out of range in '" + s + "'");
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    q = exp10 >= 0 ? Rational(num * p) : Rational(num, p);
    q.canonicalize();
  } else if (std::regex_match(s, m, sci)) {
    const long exp10 = std::stol(m[3].str());
    if (std::labs(exp10) > 400) throw InputError("exponent out of range in '" + s + "'");
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Integer num(m[2].str(), 10);
    q = exp10 >= 0 ? Rational(num * p) : Rational(num, p);
    q.canonicalize();
  } else {
    throw InputError("malformed rational '" + s + "'");
  }
  if (m[1].str() == "-") q = -q;
  return q;
}

std::size_t RegionSpec::dimension() const {
  return kind == Kind::box ? bounds.size() : (vertices.empty() ? 0 : vertices.front().size());
}

bool RegionSpec::compact() const {
  if (kind == Kind::polytope) return true;
  return std::all_of(bounds.begin(), bounds.end(),
                     [](const auto& b) { return b.first.has_value() && b.second.has_value(); });
}

void validate_weight(const WeightSpec& w) {
  const Rational& p = w.parameter;
  switch (w.family) {
    case WeightFamily::gevrey:
      if (!(sgn(p) > 0 && p < 1)) {
        throw InputError("gevrey parameter must satisfy 0 < alpha < 1, got " +
                         format_rational(p));
      }
      break;
    case WeightFamily::logpow:
      if (p < 1) throw InputError("logpow parameter must satisfy beta >= 1, got " + format_rational(p));
      break;
    case WeightFamily::sublinear_log:
      if (p <= 1) {
        throw InputError("sublinear-log parameter must satisfy beta > 1, got " +
                         format_rational(p));
      }
      break;
    case WeightFamily::table: {
      if (w.points.size() < 2) throw InputError("table weight needs at least two points");
      for (std::size_t i = 0; i < w.points.size(); ++i) {
        const auto [t, v] = w.points[i];
        if (t < 0 || v < 0) throw InputError("table weight needs t >= 0 and omega >= 0");
        if (i > 0 && !(t > w.points[i - 1].first)) {
          throw InputError("table abscissae must be strictly increasing (index " +
                           std::to_string(i) + ")");
        }
      }
      break;
    }
  }
}

WeightSpec parse_weight(std::string_view text) {
  WeightSpec w = weight_from(load(text), {});
  if (w.family == WeightFamily::logpow && w.parameter == 1) {
    w.notes.push_back("satisfies (gamma') but not (gamma)");
  }
  return w;
}

SystemSpec parse_system(std::string_view text, const ParseOptions& options) {
  Document d = parse_document(text, options);
  if (!d.system) throw InputError("document has no matrix");
  return *d.system;
}

Document parse_document(std::string_view text, const ParseOptions& options) {
  const json doc = load(text);
  check_keys(doc,
             {"label", "metadata", "variables", "matrix", "curve", "primes", "weights", "regions",
              "probe", "pw"},
             "document", options);
  Document d;
  d.variables = json_variables(doc);
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw InputError("label: expected a string");
    d.label = doc["label"];
  }
  if (doc.contains("matrix")) d.system = system_from(doc, d.variables);
  if (doc.contains("curve")) d.curve = json_polynomial(doc["curve"], d.variables, "curve");
  if (doc.contains("primes")) {
    if (!doc["primes"].is_array()) throw InputError("primes: expected an array");
    for (std::size_t i = 0; i < doc["primes"].size(); ++i) {
      d.primes.push_back(
          json_polynomial(doc["primes"][i], d.variables, "primes[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("weights")) {
    const json& w = doc["weights"];
    auto add = [&](const json& item) {
      WeightSpec spec = weight_from(item, options);
      if (spec.family == WeightFamily::logpow && spec.parameter == 1) {
        spec.notes.push_back("satisfies (gamma') but not (gamma)");
      }
      d.weights.push_back(std::move(spec));
    };
    if (w.is_array()) {
      for (const auto& item : w) add(item);
    } else {
      add(w);
    }
  }
  if (doc.contains("regions")) {
    const json& r = doc["regions"];
    check_keys(r, {"K1", "K2"}, "regions", options);
    if (r.contains("K1")) d.k1 = region_from(r["K1"], "regions.K1", d.variables.size(), options);
    if (r.contains("K2")) d.k2 = region_from(r["K2"], "regions.K2", d.variables.size(), options);
  }
  if (doc.contains("probe")) {
    const json& p = doc["probe"];
    check_keys(p, {"alpha", "rmax", "radii", "angles", "c_budget", "candidates"}, "probe",
               options);
    if (p.contains("alpha")) d.probe.alpha = json_int(p["alpha"], "probe.alpha", 1, 64);
    if (p.contains("rmax")) {
      d.probe.rmax = json_double(p["rmax"], "probe.rmax");
      if (!(d.probe.rmax >= 10 && d.probe.rmax <= 1e12)) {
        throw InputError("probe.rmax: must lie in [10, 1e12]");
      }
    }
    if (p.contains("radii")) d.probe.radii = json_int(p["radii"], "probe.radii", 2, 200);
    if (p.contains("angles")) d.probe.angles = json_int(p["angles"], "probe.angles", 1, 720);
    if (p.contains("c_budget")) {
      d.probe.c_budget = json_double(p["c_budget"], "probe.c_budget");
      if (d.probe.c_budget < 0) throw InputError("probe.c_budget: must be non-negative");
    }
    if (p.contains("candidates")) {
      if (!p["candidates"].is_array()) throw InputError("probe.candidates: expected an array");
      for (std::size_t i = 0; i < p["candidates"].size(); ++i) {
        d.probe.candidates.push_back(candidate_from(p["candidates"][i], d.variables,
                                                    "probe.candidates[" + std::to_string(i) + "]",
                                                    options, 0));
      }
    }
  }
  if (doc.contains("pw")) {
    const json& p = doc["pw"];
    check_keys(p, {"epsilon", "factors"}, "pw", options);
    if (p.contains("epsilon")) {
      d.pw.epsilon = json_double(p["epsilon"], "pw.epsilon");
      if (!(d.pw.epsilon > 0)) throw InputError("pw.epsilon: must be positive");
    }
    if (p.contains("factors")) d.pw.factors = json_int(p["factors"], "pw.factors", 1, 10000);
  }
  return d;
}

std::string render_system(const SystemSpec& s) {
  json out = json::object();
  if (!s.label.empty()) out["label"] = s.label;
  out["variables"] = s.variables;
  out["matrix"] = json::array();
  for (const auto& row : s.matrix) {
    json r = json::array();
    for (const auto& p : row) r.push_back(format_polynomial(p, s.variables));
    out["matrix"].push_back(std::move(r));
  }
  return out.dump(2);
}

std::string render_weight(const WeightSpec& w) { return weight_json(w).dump(2); }

std::string family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::gevrey:
      return "gevrey";
    case WeightFamily::logpow:
      return "logpow";
    case WeightFamily::sublinear_log:
      return "sublinear-log";
    case WeightFamily::table:
      return "table";
  }
  return "?";
}

std::string candidate_label(const CandidateSpec& c, std::span<const std::string> names) {
  switch (c.kind) {
    case CandidateSpec::Kind::log_abs:
      return "log|" + format_polynomial(c.g, names) + "|";
    case CandidateSpec::Kind::linear_im: {
      std::string s = "Im(";
      bool first = true;
      for (std::size_t k = 0; k < c.c.size(); ++k) {
        if (sgn(c.c[k]) == 0) continue;
        if (!first) s += sgn(c.c[k]) > 0 ? " + " : " - ";
        else if (sgn(c.c[k]) < 0) s += "-";
        first = false;
        const Rational a = abs(c.c[k]);
        if (a != 1) s += format_rational(a) + "*";
        s += names[k];
      }
      return s + (first ? "0)" : ")");
    }
    case CandidateSpec::Kind::max: {
      std::string s = "max(";
      for (std::size_t k = 0; k < c.parts.size(); ++k) {
        if (k) s += ", ";
        s += candidate_label(c.parts[k], names);
      }
      return s + ")";
    }
    case CandidateSpec::Kind::envelope:
      return "envelope";
  }
  return "?";
}

}  // namespace overdet
