#include "pwaeb/commands.hpp"

#include "pwaeb/errors.hpp"
#include "pwaeb/fixtures.hpp"
#include "pwaeb/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>

namespace pwaeb::cli {

namespace {

using certify::Certificate;
using certify::Verdict;

certify::TauConfig tau_config(const Options& opt) {
  certify::TauConfig cfg;
  cfg.samples = opt.samples;
  cfg.box_radius = opt.box;
  cfg.seed = opt.seed;
  cfg.norm = opt.norm;
  cfg.grid_step = opt.grid_step;
  return cfg;
}

report::Header header(std::string command, const Options& opt) { return {std::move(command), opt.seed, opt.norm}; }

std::vector<report::Input> inputs(const Resolved& in) {
  return {{"function", in.function_source, io::to_json(in.function)}, {"set", in.set_source, io::to_json(in.set)}};
}

bool any_fails(const Certificate& c) {
  if (c.verdict == Verdict::Fails) return true;
  return std::any_of(c.parts.begin(), c.parts.end(), any_fails);
}

std::string verdict_line(const Certificate& c) {
  return c.theorem + ": " + std::string(certify::to_string(c.verdict));
}

Rational parse_positive(const std::string& text, const char* what) {
  const Rational r = parse_rational(text);
  if (r <= 0) throw InputError(std::string(what) + " must be positive");
  return r;
}

std::vector<Certificate> run_theorem(const Resolved& in, const Options& opt) {
  const auto& f = in.function;
  const auto& v = in.set;
  const auto cfg = tau_config(opt);
  const std::string& t = opt.theorem;
  if (t == "auto") return {certify::certify_auto(f, v, cfg)};
  if (t == "robinson") {
    if (std::holds_alternative<certify::FullSpace>(v)) return {certify::classify_robinson(f)};
    if (std::holds_alternative<certify::StrictSublevel>(v)) return {certify::certify_strict_sublevel(f, v)};
    throw InputError("theorem robinson applies to the full space or a strict_sublevel set, not '" +
                     std::string(certify::kind(v)) + "'");
  }
  if (t == "growth") return {certify::check_growth(f, v, cfg)};
  if (t == "cone") return {certify::check_coercive_on_cone(f, v)};
  if (t == "polyhedral") return {certify::certify_polyhedral(f, v, opt.norm)};
  if (t == "stratified") return {certify::certify_stratified(f, v)};
  if (t == "bounded") return {certify::certify_bounded(f, v, cfg)};
  if (t == "geometric") {
    if (opt.piece) return {certify::check_geometric(f, v, *opt.piece)};
    const auto analysis = pwa::analyze_pieces(f);
    std::vector<Certificate> out;
    for (std::size_t i = 0; i < analysis.pieces.size(); ++i)
      if (!analysis.pieces[i].in_i0) out.push_back(certify::check_geometric(f, v, i));
    if (out.empty()) throw InputError("theorem geometric needs a piece with positive minimum; none exists");
    return out;
  }
  throw InputError("unknown theorem '" + t + "'");
}

Json piece_analysis_json(const pwa::MinMaxFunction& f, const pwa::PieceAnalysis& a) {
  Json pieces = Json::array();
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const auto& p = a.pieces[i];
    Json pj{{"index", i}, {"f_star", io::to_json(p.f_star)}, {"in_i0", p.in_i0}};
    if (!p.minimizer.empty()) pj["minimizer"] = io::to_json(p.minimizer);
    pieces.push_back(std::move(pj));
  }
  Json i0 = Json::array();
  for (auto i : a.i0()) i0.push_back(i);
  Json out{{"dim", f.dim()}, {"pieces", std::move(pieces)}, {"i0", std::move(i0)}};
  Json sub = Json::array();
  for (const auto& p : pwa::sublevel_union(f).pieces) sub.push_back(io::to_json(p));
  out["sublevel_pieces"] = std::move(sub);
  Json rec = Json::array();
  for (const auto& c : pwa::rec_plus_sublevel(f)) rec.push_back(io::to_json(c));
  out["rec_plus_sublevel"] = std::move(rec);
  return out;
}

std::string value_text(const Certificate& c, std::string_view name) {
  const auto v = c.get(name);
  return v ? to_string(*v) : "n/a";
}

}  // namespace

Resolved resolve(const std::string& function_arg, const std::optional<std::string>& set_arg) {
  namespace fs = std::filesystem;
  const fixtures::Fixture* fixture = nullptr;
  std::optional<pwa::MinMaxFunction> f;
  if (fs::exists(function_arg)) {
    const Json j = io::read_json_file(function_arg);
    try {
      f = io::function_from_json(j);
    } catch (const InputError& e) {
      throw InputError(function_arg + ": " + e.what());
    }
  } else if ((fixture = fixtures::find(function_arg))) {
    f = fixture->function;
  } else {
    throw InputError("'" + function_arg + "' is neither a readable file nor a fixture name");
  }

  if (!set_arg) {
    if (fixture) return {*f, fixture->set, function_arg, function_arg};
    return {*f, certify::FullSpace{f->dim()}, function_arg, "full"};
  }
  certify::SetSpec set;
  if (fs::exists(*set_arg)) {
    const Json j = io::read_json_file(*set_arg);
    try {
      set = io::set_from_json(j, &*f);
    } catch (const InputError& e) {
      throw InputError(*set_arg + ": " + e.what());
    }
  } else if (const auto* s = fixtures::find(*set_arg)) {
    set = s->set;
  } else {
    throw InputError("'" + *set_arg + "' is neither a readable file nor a fixture name");
  }
  if (certify::dimension(set) != f->dim())
    throw InputError("set dimension " + std::to_string(certify::dimension(set)) + " differs from function dimension " +
                     std::to_string(f->dim()));
  return {*f, std::move(set), function_arg, *set_arg};
}

Outcome cmd_analyze(const Resolved& in, const Options& opt) {
  const auto& f = in.function;
  const auto analysis = pwa::analyze_pieces(f);
  std::vector<Certificate> certs;
  std::string summary;
  if (analysis.sublevel_empty()) {
    summary = "sublevel set empty";
  } else {
    certs.push_back(certify::classify_robinson(f));
    certs.push_back(certify::uniform_local_radius(f, opt.norm));
    certs.push_back(certify::certify_polyhedral(f, certify::FullSpace{f.dim()}, opt.norm));
    const auto& r = certs[0];
    const auto& u = certs[1];
    summary = "rho = " + value_text(r, "rho") + ", L = " + value_text(u, "L") + ", r = " + value_text(u, "r") +
              "; robinson scope " + r.scope + "; global error bound " +
              std::string(certify::to_string(certs[2].verdict));
  }
  Json rep = report::make_report(header("analyze", opt), {{"function", in.function_source, io::to_json(f)}}, certs,
                                 std::move(summary));
  rep["analysis"] = piece_analysis_json(f, analysis);
  return {std::move(rep), kOk};
}

Outcome cmd_certify(const Resolved& in, const Options& opt) {
  const auto certs = run_theorem(in, opt);
  std::string summary;
  bool fails = false;
  for (const auto& c : certs) {
    summary += (summary.empty() ? "" : "; ") + verdict_line(c);
    fails = fails || any_fails(c);
  }
  Outcome o{report::make_report(header("certify", opt), inputs(in), certs, std::move(summary)), kOk};
  if (opt.fail_on_no && fails) o.exit_code = kNo;
  return o;
}

Outcome cmd_estimate_tau(const Resolved& in, const Options& opt) {
  const auto c = certify::estimate_tau(in.function, in.set, tau_config(opt));
  std::string summary;
  if (!c.get("min_ratio")) {
    summary = "no sample outside S(f)";
  } else {
    summary = "min ratio " + value_text(c, "min_ratio") + " at " + to_string(c.witness_points.front()) +
              "; trend " + value_text(c, "trend_inner") + " -> " + value_text(c, "trend_outer") +
              (c.value("vanishing") == 1 ? "; vanishing" : "; stable");
  }
  return {report::make_report(header("estimate-tau", opt), inputs(in), {c}, std::move(summary)), kOk};
}

Outcome cmd_examples_list() {
  Json list = Json::array();
  for (const auto& f : fixtures::all()) list.push_back(Json{{"name", f.name}, {"description", f.description}});
  const std::size_t n = list.size();
  Json rep = report::make_report({"examples list", 0, Norm::Linf}, {}, {}, std::to_string(n) + " fixtures");
  rep["fixtures"] = std::move(list);
  return {std::move(rep), kOk};
}

Outcome cmd_examples_run(const std::vector<std::string>& names) {
  std::vector<const fixtures::Fixture*> selected;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& f : fixtures::all()) selected.push_back(&f);
      continue;
    }
    const auto* f = fixtures::find(n);
    if (!f) throw InputError("unknown fixture '" + n + "'");
    selected.push_back(f);
  }
  if (selected.empty()) throw InputError("examples run needs a fixture name or 'all'");
  Json checks = Json::array();
  std::optional<std::string> divergence;
  std::size_t count = 0;
  std::vector<report::Input> in;
  for (const auto* f : selected) {
    in.push_back({"function", f->name, io::to_json(f->function)});
    for (const auto& c : f->run()) {
      ++count;
      checks.push_back(Json{{"fixture", f->name},
                            {"label", c.label},
                            {"expected", c.expected},
                            {"actual", c.actual},
                            {"pass", c.pass}});
      if (!c.pass && !divergence)
        divergence = f->name + ": " + c.label + " expected " + c.expected + ", got " + c.actual;
    }
  }
  const std::string summary =
      divergence ? "first divergence: " + *divergence : "all " + std::to_string(count) + " checks passed";
  Json rep = report::make_report({"examples run", 0, Norm::Linf}, in, {}, summary);
  rep["checks"] = std::move(checks);
  return {std::move(rep), divergence ? kNo : kOk};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Error bounds for min-max piecewise affine functions", "pwaeb"};
  app.require_subcommand(1);
  std::string format = "text";
  Options opt;
  std::string seed_text = "0", norm_text = "linf", box_text = "16", step_text;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed_text, "Sampling seed (PWA_SEED overrides)");
  app.add_option("--norm", norm_text, "Norm for distances")->check(CLI::IsMember({"linf", "l1"}));

  std::string function_arg;
  std::optional<std::string> set_arg;
  auto add_tau_flags = [&](CLI::App* sub) {
    sub->add_option("--samples", opt.samples, "Seeded random samples per level");
    sub->add_option("--box", box_text, "Sampling radius R");
    sub->add_option("--grid-step", step_text, "Lattice step (default R/64)");
  };

  auto* analyze = app.add_subcommand("analyze", "Piece minima, S(f), recession cones, rho, r and L");
  analyze->add_option("function", function_arg, "Function file or fixture name")->required();

  auto* cert = app.add_subcommand("certify", "Run a certification theorem");
  cert->add_option("function", function_arg, "Function file or fixture name")->required();
  cert->add_option("set", set_arg, "Set file or fixture name");
  cert->add_option("--theorem", opt.theorem, "Theorem to apply")
      ->check(CLI::IsMember({"auto", "robinson", "growth", "cone", "geometric", "polyhedral", "stratified", "bounded"}));
  cert->add_flag("--fail-on-no", opt.fail_on_no, "Exit 1 when any verdict is fails");
  cert->add_option("--piece", opt.piece, "Piece index for the geometric theorem");
  add_tau_flags(cert);

  auto* tau = app.add_subcommand("estimate-tau", "Sample the ratio [f]_+ / dist(x, S(f))");
  tau->add_option("function", function_arg, "Function file or fixture name")->required();
  tau->add_option("set", set_arg, "Set file or fixture name");
  add_tau_flags(tau);

  auto* examples = app.add_subcommand("examples", "Bundled fixtures");
  examples->require_subcommand(1);
  auto* ex_list = examples->add_subcommand("list", "List fixture names");
  auto* ex_run = examples->add_subcommand("run", "Run fixture checks");
  std::vector<std::string> names;
  ex_run->add_option("names", names, "Fixture names or 'all'")->required();

  for (auto* sub : {analyze, cert, tau, examples}) sub->fallthrough();
  ex_list->fallthrough();
  ex_run->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (const char* env = std::getenv("PWA_SEED"); env && *env) seed_text = env;
    try {
      std::size_t used = 0;
      if (seed_text.empty() || seed_text[0] == '-') throw std::invalid_argument("sign");
      opt.seed = std::stoull(seed_text, &used);
      if (used != seed_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw InputError("seed must be a nonnegative integer, got '" + seed_text + "'");
    }
    opt.norm = parse_norm(norm_text);
    opt.box = parse_positive(box_text, "--box");
    if (!step_text.empty()) opt.grid_step = parse_positive(step_text, "--grid-step");

    Outcome o;
    if (analyze->parsed()) {
      o = cmd_analyze(resolve(function_arg, std::nullopt), opt);
    } else if (cert->parsed()) {
      o = cmd_certify(resolve(function_arg, set_arg), opt);
    } else if (tau->parsed()) {
      o = cmd_estimate_tau(resolve(function_arg, set_arg), opt);
    } else if (ex_run->parsed()) {
      o = cmd_examples_run(names);
    } else {
      o = cmd_examples_list();
    }
    out << (format == "json" ? o.report.dump(2) + "\n" : report::render_text(o.report));
    return o.exit_code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const LimitError& e) {
    err << "limit exceeded: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace pwaeb::cli
