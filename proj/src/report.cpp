#include "overdet/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "overdet/bounds.hpp"
#include "overdet/errors.hpp"
#include "overdet/pl_probe.hpp"
#include "overdet/resolution.hpp"
#include "overdet/variety.hpp"
#include "overdet/weights.hpp"

namespace overdet {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json complex_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

std::vector<std::string> names_for(const Document& doc, std::size_t nvars) {
  if (doc.variables.size() == nvars) return doc.variables;
  return default_variable_names(nvars);
}

json matrix_json(const OperatorMatrix& m, std::span<const std::string> names) {
  json rows = json::array();
  for (const auto& row : m.entries()) {
    json r = json::array();
    for (const auto& p : row) r.push_back(format_polynomial(p, names));
    rows.push_back(r);
  }
  return rows;
}

json strings(const std::vector<std::string>& v) { return json(v); }

WeightSpec default_weight() {
  WeightSpec w;
  w.family = WeightFamily::gevrey;
  w.parameter = Rational(1, 2);
  return w;
}

struct CurveChoice {
  Polynomial curve;
  std::string source;
  std::vector<std::string> notes;
};

CurveChoice choose_curve(const Document& doc) {
  CurveChoice c;
  if (doc.curve) {
    c.curve = *doc.curve;
    c.source = "curve";
  } else if (doc.primes.size() == 1) {
    c.curve = characteristic_variety(doc.primes).generators.front();
    c.source = "primes (sign-flipped)";
  } else if (doc.primes.size() > 1) {
    throw InputError("primes has " + std::to_string(doc.primes.size()) +
                     " generators; a plane curve needs exactly one, or give \"curve\" directly");
  } else if (doc.system) {
    const auto ann = annihilator(*doc.system);
    if (ann.size() != 1) {
      throw InputError("the annihilator has " + std::to_string(ann.size()) +
                       " generators and is not principal; add a \"curve\" field with one "
                       "generator of the characteristic variety in two variables");
    }
    c.curve = ann.front().sign_flip();
    c.source = "annihilator (sign-flipped)";
  } else {
    throw InputError("no curve: give \"curve\", a single entry in \"primes\", or a \"matrix\" "
                     "whose annihilator is principal");
  }
  if (c.curve.nvars() != 2) {
    throw InputError("curve must be in exactly two variables, got " +
                     std::to_string(c.curve.nvars()));
  }
  if (c.curve.is_zero()) throw InputError("curve is zero");
  return c;
}

json branch_json(const PuiseuxBranch& b) {
  json terms = json::array();
  for (const auto& t : b.terms) {
    json jt{{"exponent", format_rational(t.exponent)}, {"coefficient", complex_json(t.coefficient)}};
    if (t.exact) jt["exact"] = format_rational(*t.exact);
    terms.push_back(jt);
  }
  json j{{"ramification", b.ramification},
         {"terms", terms},
         {"truncation_order", b.truncation_order},
         {"terminated", b.terminated},
         {"separated", b.separated},
         {"exact", b.exact},
         {"conjugacy_class", b.conjugacy_class},
         {"class_size", b.class_size}};
  j["residual_bound"] = b.residual_bound ? json(format_rational(*b.residual_bound)) : json(nullptr);
  return j;
}

json axioms_json(const AxiomReport& a) {
  json trace = json::array();
  for (auto [t, v] : a.beta.trace) trace.push_back({number(t), number(v)});
  return {{"horizon", number(a.horizon)},
          {"shift", number(a.shift)},
          {"alpha", {{"holds", a.alpha.holds},
                     {"K", number(a.alpha.K)},
                     {"worst_t", number(a.alpha.worst_t)},
                     {"fails_at", a.alpha.fails_at ? number(*a.alpha.fails_at) : json(nullptr)}}},
          {"beta", {{"verdict", convergence_name(a.beta.verdict)},
                    {"integral", number(a.beta.integral)},
                    {"p", number(a.beta.p)},
                    {"r", number(a.beta.r)},
                    {"trace", trace}}},
          {"gamma_prime", {{"holds", a.gamma_prime.holds},
                           {"a", number(a.gamma_prime.a)},
                           {"b", number(a.gamma_prime.b)},
                           {"a_normalized", number(a.gamma_prime.a_normalized)}}},
          {"gamma", {{"holds", a.gamma.holds},
                     {"ratio_mid", number(a.gamma.ratio_mid)},
                     {"ratio_end", number(a.gamma.ratio_end)}}},
          {"delta", {{"holds", a.delta.holds},
                     {"min_second_difference", number(a.delta.min_second_difference)},
                     {"violation_x", a.delta.violation_x ? number(*a.delta.violation_x) : json(nullptr)}}},
          {"notes", strings(a.notes)}};
}

bool all_pass(const AxiomReport& a) {
  return a.alpha.holds && a.beta.verdict == Convergence::converges && a.gamma_prime.holds &&
         a.delta.holds;
}

const WeightSpec& first_weight(const Document& doc, std::vector<std::string>& notes,
                               WeightSpec& fallback) {
  if (!doc.weights.empty()) return doc.weights.front();
  fallback = default_weight();
  notes.push_back("no weight given; using gevrey 1/2");
  return fallback;
}

}  // namespace

std::string input_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json number(double x) {
  if (!std::isfinite(x)) return fmt(x);
  return std::strtod(fmt(x).c_str(), nullptr);
}

RunResult run_resolve(const Document& doc, const RunOptions&) {
  if (!doc.system) throw InputError("resolve needs a \"matrix\" in the input");
  const SystemSpec& sys = *doc.system;
  const auto res = hilbert_resolution(sys);
  const auto over = overdetermination_report(res);
  const auto ann = annihilator(sys);
  const auto names = names_for(doc, res.nvars());
  RunResult out;
  json& r = out.report;
  r["subcommand"] = "resolve";
  r["label"] = sys.label.empty() ? doc.label : sys.label;
  r["variables"] = names;
  r["ranks"] = res.ranks;
  r["length"] = res.length();
  r["free_module"] = res.free_module;
  r["injective_tail"] = res.injective_tail;
  json maps = json::array();
  for (const auto& m : res.maps) maps.push_back(matrix_json(m, names));
  r["maps"] = maps;
  json certs = json::array();
  for (const auto& c : res.certificates) {
    certs.push_back({{"step", c.step},
                     {"composition_zero", c.composition_zero},
                     {"oracle_degree", c.oracle_degree},
                     {"kernel_dimension", c.kernel_dimension},
                     {"kernel_in_image", c.kernel_in_image}});
  }
  r["certificates"] = certs;
  r["overdetermined"] = over.overdetermined;
  r["conditions"] = over.conditions;
  r["integrability"] = over.equations;
  if (!over.overdetermined) r["verdict"] = "not overdetermined";
  else r["verdict"] = std::to_string(over.conditions) + " integrability condition(s)";
  json annj = json::array();
  for (const auto& p : ann) annj.push_back(format_polynomial(p, names));
  r["annihilator"] = annj;
  const auto cv = characteristic_variety(doc.primes.empty() ? ann : doc.primes);
  json cvj = json::array();
  for (const auto& p : cv.generators) cvj.push_back(format_polynomial(p, names));
  r["characteristic_variety"] = cvj;
  const auto ext = dual_complex_homology(res);
  json extj = json::array();
  for (const auto& e : ext.ext) {
    extj.push_back({{"degree", e.degree},
                    {"generators", e.generators},
                    {"relations", e.relations.size()},
                    {"zero", e.is_zero},
                    {"free", e.is_free},
                    {"summary", e.summary}});
  }
  r["ext"] = extj;
  r["dual_composition_zero"] = ext.composition_zero;

  out.csv.push_back({"step", "rank", "composition_zero"});
  for (std::size_t i = 0; i < res.ranks.size(); ++i) {
    const bool cz = i < res.certificates.size() ? res.certificates[i].composition_zero : true;
    out.csv.push_back({std::to_string(i), std::to_string(res.ranks[i]), cz ? "1" : "0"});
  }
  return out;
}

RunResult run_variety(const Document& doc, const RunOptions& opt) {
  if (opt.puiseux_order < 1 || opt.puiseux_order > 32) {
    throw InputError("--puiseux-order must be in 1..32");
  }
  const auto choice = choose_curve(doc);
  const auto names = names_for(doc, 2);
  RunResult out;
  json& r = out.report;
  r["subcommand"] = "variety";
  r["label"] = doc.label;
  r["curve_source"] = choice.source;
  r["curve"] = format_polynomial(choice.curve, names);
  const auto fl = factor(choice.curve);
  json fj = json::array();
  for (const auto& [p, m] : fl.factors) fj.push_back({{"factor", format_polynomial(p, names)}, {"multiplicity", m}});
  r["factors"] = {{"unit", format_rational(fl.unit)}, {"list", fj}, {"complete", fl.complete}};
  const auto pr = puiseux_at_infinity(choice.curve, opt.puiseux_order);
  json bj = json::array();
  int sum_q = 0;
  std::set<int> seen;
  for (const auto& b : pr.branches) {
    bj.push_back(branch_json(b));
    if (seen.insert(b.conjugacy_class).second) sum_q += b.ramification;
  }
  r["puiseux"] = {{"order", opt.puiseux_order},
                  {"degree_z2", pr.degree_z2},
                  {"square_free_input", pr.square_free_input},
                  {"monic_in_z2", pr.monic_in_z2},
                  {"ramification_sum", sum_q},
                  {"branches", bj},
                  {"notes", strings(pr.notes)}};
  std::vector<std::string> notes = choice.notes;
  WeightSpec fallback;
  const WeightSpec& w = first_weight(doc, notes, fallback);
  const auto rep = branch_report(pr.branches, w);
  json rows = json::array();
  for (const auto& s : rep.rows) {
    rows.push_back({{"leading_exponent", s.leading_exponent},
                    {"ramification", s.ramification},
                    {"leading_real", s.leading_real},
                    {"coefficients_real", s.coefficients_real},
                    {"class_size", s.class_size},
                    {"annotations", strings(s.annotations)}});
  }
  r["branch_report"] = {{"label", rep.label},
                        {"weight", json::parse(render_weight(w))},
                        {"gevrey_s", rep.gevrey_s ? json(format_rational(*rep.gevrey_s)) : json(nullptr)},
                        {"rows", rows}};
  r["notes"] = notes;

  out.csv.push_back({"branch", "ramification", "exponent", "re", "im"});
  for (std::size_t i = 0; i < pr.branches.size(); ++i) {
    for (const auto& t : pr.branches[i].terms) {
      out.csv.push_back({std::to_string(i), std::to_string(pr.branches[i].ramification),
                         format_rational(t.exponent), fmt(t.coefficient.real()),
                         fmt(t.coefficient.imag())});
    }
  }
  return out;
}

RunResult run_weights(const Document& doc, const RunOptions&) {
  if (doc.weights.empty()) throw InputError("weights needs a \"weights\" entry in the input");
  RunResult out;
  json& r = out.report;
  r["subcommand"] = "weights";
  r["label"] = doc.label;
  json list = json::array();
  std::vector<WeightFunction> fns;
  bool every = true;
  out.csv.push_back({"weight", "t", "omega", "y", "phi_star"});
  for (const auto& spec : doc.weights) {
    const WeightFunction w(spec);
    fns.push_back(w);
    const auto ax = check_axioms(w);
    const auto yc = young_conjugate(w);
    json samples = json::array();
    const auto ys = log_grid(1, 1e4, 9);
    const auto ts = log_grid(1e-2, 1e6, 9);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      samples.push_back({{"t", number(ts[i])}, {"omega", number(w(ts[i]))},
                         {"y", number(ys[i])}, {"phi_star", number(yc(ys[i]))}});
      out.csv.push_back({w.describe(), fmt(ts[i]), fmt(w(ts[i])), fmt(ys[i]), fmt(yc(ys[i]))});
    }
    const auto sub = subadditivity_check(w, std::max(1.0, ax.alpha.K));
    const auto L = conjugate_shift_constant(w);
    const bool pass = all_pass(ax);
    every = every && pass;
    list.push_back({{"weight", json::parse(render_weight(spec))},
                    {"describe", w.describe()},
                    {"axioms", axioms_json(ax)},
                    {"all_pass", pass},
                    {"young_conjugate", {{"method", method_name(yc.method())},
                                         {"at_zero", number(yc(0))},
                                         {"samples", samples}}},
                    {"biconjugate_error", number(biconjugate_check(w))},
                    {"subadditivity", {{"holds", sub.holds},
                                       {"K", number(std::max(1.0, ax.alpha.K))},
                                       {"worst_ratio", number(sub.worst_ratio)},
                                       {"x", number(sub.x)},
                                       {"y", number(sub.y)}}},
                    {"conjugate_shift_L", L ? number(*L) : json(nullptr)},
                    {"dilation_L2", number(dilation_constant(w, 2))},
                    {"notes", strings(spec.notes)}});
  }
  r["weights"] = list;
  json pairs = json::array();
  for (std::size_t i = 0; i < fns.size(); ++i) {
    for (std::size_t j = i + 1; j < fns.size(); ++j) {
      const auto e = equivalence_check(fns[i], fns[j]);
      pairs.push_back({{"first", i}, {"second", j},
                       {"verdict", comparison_name(e.verdict)},
                       {"min_ratio", number(e.min_ratio)},
                       {"max_ratio", number(e.max_ratio)},
                       {"tail_slope", number(e.tail_slope)}});
    }
  }
  r["comparisons"] = pairs;
  r["verdict"] = every ? "all-pass" : "some axioms fail";
  return out;
}

RunResult run_pw_check(const Document& doc, const RunOptions& opt) {
  WeightSpec w;
  std::vector<std::string> notes;
  if (opt.s) {
    const Rational s = parse_rational(*opt.s);
    if (s <= 1) throw InputError("--s must be greater than 1");
    w.family = WeightFamily::gevrey;
    w.parameter = 1 / s;
    w.parameter.canonicalize();
  } else {
    auto it = std::find_if(doc.weights.begin(), doc.weights.end(),
                           [](const WeightSpec& x) { return x.family == WeightFamily::gevrey; });
    if (it == doc.weights.end()) {
      throw InputError("pw-check needs --s or a gevrey weight in the input");
    }
    w = *it;
  }
  const auto rep = paley_wiener_experiment(w, doc.pw.epsilon, doc.pw.factors);
  RunResult out;
  json& r = out.report;
  r["subcommand"] = "pw-check";
  r["label"] = doc.label;
  r["weight"] = json::parse(render_weight(w));
  json env = json::array();
  out.csv.push_back({"t", "log_envelope"});
  for (auto [t, e] : rep.envelope) {
    env.push_back({number(t), number(e)});
    out.csv.push_back({fmt(t), fmt(e)});
  }
  json kt = json::array();
  for (const auto& k : rep.k_table) {
    kt.push_back({{"k", number(k.k)}, {"log_C", number(k.log_C)}, {"achieved", k.achieved}});
  }
  r["alpha"] = number(rep.alpha);
  r["s"] = number(rep.s);
  r["epsilon"] = number(rep.epsilon);
  r["factors"] = rep.factors;
  r["c"] = number(rep.c);
  r["widths_sum"] = number(rep.widths_sum);
  r["p_fit"] = number(rep.p_fit);
  r["p_expected"] = number(rep.alpha);
  r["k_fit"] = number(rep.k_fit);
  r["k_achieved"] = number(rep.k_achieved);
  r["k_table"] = kt;
  r["envelope"] = env;
  r["monotone"] = rep.monotone;
  r["gamma_prime"] = {{"a", number(rep.gamma_a)}, {"b", number(rep.gamma_b)}};
  r["D"] = number(rep.D);
  r["lambda"] = number(rep.lambda);
  r["reverse_threshold"] = number(rep.reverse_threshold);
  r["reverse_ok"] = rep.reverse_ok;
  r["notes"] = strings(rep.notes);
  r["verdict"] = rep.monotone ? "decay exponent " + fmt(rep.p_fit) : "envelope not monotone";
  return out;
}

RunResult run_pl_probe(const Document& doc, const RunOptions& opt) {
  if (opt.mode != "probe" && opt.mode != "uniqueness") {
    throw InputError("--mode must be probe or uniqueness");
  }
  if (!doc.k1 || !doc.k2) throw InputError("pl-probe needs regions K1 and K2");
  if (doc.k1->dimension() != 2 || doc.k2->dimension() != 2) {
    throw InputError("pl-probe regions must be two-dimensional");
  }
  const double rmax = opt.rmax.value_or(doc.probe.rmax);
  if (!(rmax >= 10 && rmax <= 1e12)) throw InputError("--rmax must lie in [10, 1e12]");
  const auto choice = choose_curve(doc);
  std::vector<std::string> notes = choice.notes;
  WeightSpec fallback;
  const WeightSpec& ws = first_weight(doc, notes, fallback);
  const auto sampler = sample_curve(choice.curve, rmax, doc.probe.radii, doc.probe.angles, opt.seed);
  ProbeContext ctx{*doc.k1, *doc.k2, WeightFunction(ws), doc.probe.alpha, doc.probe.c_budget};
  const auto candidates = doc.probe.candidates.empty()
                              ? default_candidates(opt.mode == "uniqueness")
                              : doc.probe.candidates;
  const auto v = opt.mode == "probe" ? probe(sampler, ctx, candidates)
                                     : uniqueness_probe(sampler, ctx, candidates);
  const auto names = names_for(doc, 2);
  RunResult out;
  json& r = out.report;
  r["subcommand"] = "pl-probe";
  r["label"] = doc.label;
  r["mode"] = v.mode;
  r["curve_source"] = choice.source;
  r["curve"] = format_polynomial(sampler.curve, names);
  r["weight"] = json::parse(render_weight(ws));
  r["sampler"] = {{"rmax", number(rmax)},
                  {"radii", doc.probe.radii},
                  {"angles", doc.probe.angles},
                  {"points", sampler.points.size()},
                  {"rejected", sampler.rejected},
                  {"perturbed", sampler.perturbed},
                  {"notes", strings(sampler.notes)}};
  json cj = json::array();
  out.csv.push_back({"candidate", "r", "samples", "beta", "C"});
  for (const auto& c : v.candidates) {
    json rows = json::array();
    for (const auto& row : c.rows) {
      rows.push_back({{"r", number(row.r)},
                      {"samples", row.samples},
                      {"beta", row.beta ? json(*row.beta) : json(nullptr)},
                      {"C", number(row.C)}});
      out.csv.push_back({c.label, fmt(row.r), std::to_string(row.samples),
                         row.beta ? std::to_string(*row.beta) : "", fmt(row.C)});
    }
    json jc{{"label", c.label},
            {"hypothesis1", c.hypothesis1},
            {"hypothesis1_rate", number(c.hypothesis1_rate)},
            {"admissible", c.admissible},
            {"rows", rows},
            {"trend", trend_name(c.trend)},
            {"replay_ok", c.replay_ok}};
    if (v.mode == "probe") {
      jc["hypothesis2"] = c.hypothesis2;
      jc["alpha_u"] = c.alpha_u;
      jc["c_u"] = number(c.c_u);
    }
    cj.push_back(jc);
  }
  r["alpha"] = v.alpha;
  r["c_budget"] = number(v.c_budget);
  r["candidates"] = cj;
  r["vacuous"] = v.vacuous;
  r["beta"] = v.beta ? json(*v.beta) : json(nullptr);
  r["trend"] = trend_name(v.trend);
  r["replay_ok"] = v.replay_ok;
  r["caveat"] = v.caveat;
  for (const auto& n : v.notes) notes.push_back(n);
  r["notes"] = notes;
  r["verdict"] = v.vacuous ? "vacuous at this scale" : trend_name(v.trend);
  out.exit_code = v.exit_code();
  return out;
}

RunResult run_subcommand(const std::string& name, std::string_view input, const RunOptions& opt,
                         const ParseOptions& parse) {
  const auto start = std::chrono::steady_clock::now();
  Document doc;
  if (!input.empty()) doc = parse_document(input, parse);
  else if (name != "pw-check" || !opt.s) throw InputError(name + " needs an input document");
  RunResult out;
  if (name == "resolve") out = run_resolve(doc, opt);
  else if (name == "variety") out = run_variety(doc, opt);
  else if (name == "weights") out = run_weights(doc, opt);
  else if (name == "pw-check") out = run_pw_check(doc, opt);
  else if (name == "pl-probe") out = run_pl_probe(doc, opt);
  else throw InputError("unknown subcommand " + name);
  json params{{"puiseux_order", opt.puiseux_order}, {"mode", opt.mode}};
  params["rmax"] = opt.rmax ? number(*opt.rmax) : json(nullptr);
  params["s"] = opt.s ? json(*opt.s) : json(nullptr);
  json manifest{{"subcommand", name},
                {"input_hash", input_hash(input)},
                {"version", kToolVersion},
                {"seed", opt.seed},
                {"parameters", params},
                {"verdict", out.report.value("verdict", "ok")},
                {"exit_code", out.exit_code}};
  if (opt.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    manifest["wall_time_s"] = number(dt.count());
  }
  out.report["manifest"] = manifest;
  return out;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_csv(const CsvTable& table) {
  std::ostringstream os;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      const auto& cell = row[i];
      if (cell.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char c : cell) os << (c == '"' ? "\"\"" : std::string(1, c));
        os << '"';
      } else {
        os << cell;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace overdet
