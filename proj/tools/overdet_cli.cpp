#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "overdet/errors.hpp"
#include "overdet/report.hpp"

namespace {

struct Flags {
  std::string input, output;
  std::uint64_t seed = overdet::kDefaultSeed;
  int puiseux_order = 4;
  double rmax = -1;
  std::string s, mode = "probe";
  bool lenient = false, csv = false, timing = false;
};

void common(CLI::App* sub, Flags& f) {
  sub->add_option("--input,-i", f.input, "input JSON document");
  sub->add_option("--output,-o", f.output, "report path (default stdout)");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_flag("--lenient", f.lenient, "ignore unknown keys");
  sub->add_flag("--csv", f.csv, "write a flat CSV table instead of JSON");
  sub->add_flag("--timing", f.timing, "record wall time in the manifest");
}

int run(const std::string& name, const Flags& f) {
  std::string text;
  if (!f.input.empty()) {
    std::ifstream in(f.input, std::ios::binary);
    if (!in) throw overdet::InputError("cannot read " + f.input);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  overdet::RunOptions opt;
  opt.seed = f.seed;
  opt.puiseux_order = f.puiseux_order;
  if (f.rmax > 0) opt.rmax = f.rmax;
  if (!f.s.empty()) opt.s = f.s;
  opt.mode = f.mode;
  opt.timing = f.timing;
  const auto res = overdet::run_subcommand(name, text, opt, {.lenient = f.lenient});
  const std::string body = f.csv ? overdet::render_csv(res.csv) : overdet::render_json(res.report);
  if (f.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(f.output, std::ios::binary);
    if (!out) throw overdet::InputError("cannot write " + f.output);
    out << body;
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"overdet: overdetermined constant-coefficient systems workbench"};
  app.set_version_flag("--version", std::string(overdet::kToolVersion));
  app.require_subcommand(1);
  Flags f;
  auto* resolve = app.add_subcommand("resolve", "free resolution and integrability conditions");
  auto* variety = app.add_subcommand("variety", "factors and Puiseux branches of a plane curve");
  auto* weights = app.add_subcommand("weights", "weight axioms and Young conjugates");
  auto* pw = app.add_subcommand("pw-check", "Paley-Wiener decay experiment");
  auto* pl = app.add_subcommand("pl-probe", "finite-radius Phragmen-Lindelof probe");
  for (auto* sub : {resolve, variety, weights, pw, pl}) common(sub, f);
  variety->add_option("--puiseux-order", f.puiseux_order, "terms per branch")->check(CLI::Range(1, 32));
  pw->add_option("--s", f.s, "Gevrey index s > 1 (weight t^{1/s})");
  pl->add_option("--rmax", f.rmax, "largest sampled radius")->check(CLI::Range(10.0, 1e12));
  pl->add_option("--mode", f.mode, "probe or uniqueness")->check(CLI::IsMember({"probe", "uniqueness"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  CLI::App* sub = app.get_subcommands().front();
  try {
    return run(sub->get_name(), f);
  } catch (const overdet::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const overdet::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const overdet::RangeError& e) {
    std::cerr << "range error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
