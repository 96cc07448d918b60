// goi: command-line front end.
//
// Exit codes: 0 success, 1 logical failure (proof rejected, property
// violated, project not successful), 2 usage, input or resource error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "goi/battery.hpp"
#include "goi/interpret.hpp"
#include "goi/json_io.hpp"

using namespace goi;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct Output {
  std::string path;
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ProofPtr load(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_proof(text);
  } catch (const SyntaxError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

int cmd_check(const std::string& path, const std::string& format, const Output& out) {
  auto p = load(path);
  auto r = check_proof(*p);
  if (format == "json") {
    json j;
    j["ok"] = r.ok();
    if (r.conclusion) j["conclusion"] = r.conclusion->str();
    j["diagnostics"] = json::array();
    for (const auto& d : r.diagnostics) j["diagnostics"].push_back(to_json(d));
    out.write(dump(j));
  } else {
    std::ostringstream os;
    if (r.ok()) os << "ok: " << r.conclusion->str() << "\n";
    for (const auto& d : r.diagnostics) os << path << ": " << d.str() << "\n";
    out.write(os.str());
  }
  return r.ok() ? kOk : kFail;
}

int cmd_interpret(const std::string& path, const std::string& format, const InterpretOptions& opt, const Output& out) {
  auto p = load(path);
  auto r = check_proof(*p);
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) std::cerr << path << ": " << d.str() << "\n";
    return kFail;
  }
  Project I = interpret(*p, opt);
  out.write(format == "dot" ? project_to_dot(I, path) : dump(to_json(I)));
  return kOk;
}

int cmd_exec(const std::string& a, const std::string& b, const std::string& format, const InterpretOptions& opt,
             const Output& out) {
  Project pa = project_from_json(read_json(a)), pb = project_from_json(read_json(b));
  Project r = execute_project(pa, pb, opt.m, opt.fuel);
  out.write(format == "dot" ? project_to_dot(r, "exec") : dump(to_json(r)));
  return kOk;
}

int cmd_verify(const std::string& path, const std::string& basis_path, const std::string& format,
               const InterpretOptions& opt, const Output& out) {
  auto p = load(path);
  Basis basis;
  if (!basis_path.empty()) basis = basis_from_json(read_json(basis_path));
  SoundnessReport r = verify_soundness(*p, basis, opt);
  if (format == "json") {
    out.write(dump(to_json(r)));
  } else {
    std::ostringstream os;
    for (const auto& d : r.diagnostics) os << path << ": " << d.str() << "\n";
    if (r.checked) {
      os << "conclusion: " << r.conclusion << "\n";
      if (!r.error.empty()) os << "interpretation failed: " << r.error << "\n";
      else {
        os << "success: " << to_string(r.success);
        if (r.success == Success::Weak && r.uses_with) os << " (flagged: proof uses &)";
        os << "\n";
        for (const auto& why : r.reasons) os << "  " << why << "\n";
        for (const auto& t : r.pairings)
          os << "  <I, " << t.test << "> = " << (t.error ? "resource limit: " : "") << t.value << "\n";
      }
      os << (r.ok() ? "verified" : "NOT verified") << "\n";
    }
    out.write(os.str());
  }
  if (r.checked && !r.error.empty()) return kUsage;
  return r.ok() ? kOk : kFail;
}

int cmd_export(const std::string& path, const std::string& format, const InterpretOptions& opt, const Output& out) {
  if (path.size() > 3 && path.substr(path.size() - 3) == ".gl") return cmd_interpret(path, format, opt, out);
  json j = read_json(path);
  bool dot = format != "json";
  if (j.contains("wager")) {
    Project p = project_from_json(j);
    out.write(dot ? project_to_dot(p, path) : dump(to_json(p)));
  } else if (j.contains("slices")) {
    SlicedThickGraph g = sliced_from_json(j);
    std::string s;
    for (size_t i = 0; i < g.slices.size(); ++i) s += thick_to_dot(g.slices[i].second, "slice " + std::to_string(i));
    out.write(dot ? s : dump(to_json(g)));
  } else if (j.contains("dialect") && j.contains("carrier") && j["carrier"].is_array() && !j["carrier"].empty() &&
             j["carrier"][0].get<std::string>().rfind("[", 0) == 0) {
    Graphing g = graphing_from_json(j);
    out.write(dot ? graphing_to_dot(g, path) : dump(to_json(g)));
  } else if (j.contains("dialect")) {
    ThickGraph g = thick_from_json(j);
    out.write(dot ? thick_to_dot(g, path) : dump(to_json(g)));
  } else {
    Graph g = graph_from_json(j);
    out.write(dot ? to_dot(g, path) : dump(to_json(g)));
  }
  return kOk;
}

int cmd_prop(const std::string& name, const BatteryOptions& opt, const std::string& format, const Output& out) {
  BatteryResult r = run_battery(name, opt);
  if (format == "json") {
    out.write(dump(to_json(r)));
  } else {
    std::ostringstream os;
    os << name << " (seed " << opt.seed << "): " << r.summary() << "\n";
    for (const auto& f : r.failures) os << "  counterexample " << f << "\n";
    out.write(os.str());
  }
  return r.ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goi: exact geometry-of-interaction engine for polarized elementary linear logic"};
  app.require_subcommand(1);
  app.footer(
      "EXIT STATUS\n"
      "  0  success\n"
      "  1  logical failure: proof rejected, property violated, project not successful\n"
      "  2  usage, input or resource error (fuel exhausted, infinite enumeration)\n\n"
      "Every infinite value and every resource limit met during a run is printed;\n"
      "nothing is truncated or approximated silently.");

  uint64_t fuel = 10000, seed = 42, iters = 100;
  std::string basis, format = "text", output;
  auto common = [&](CLI::App* c, bool with_format = true) {
    c->add_option("--fuel", fuel, "Execution rounds before giving up")->capture_default_str();
    c->add_option("-o,--output", output, "Write the result to FILE instead of stdout");
    if (with_format) c->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  };

  std::string file, file2, battery;
  auto* check = app.add_subcommand("check", "Check a proof against the rules of ELL_pol");
  check->add_option("proof", file, "Proof file (.gl)")->required();
  common(check);

  auto* interp = app.add_subcommand("interpret", "Interpret a proof as a project (JSON or DOT)");
  interp->add_option("proof", file, "Proof file (.gl)")->required();
  common(interp);

  auto* exec = app.add_subcommand("exec", "Execute two projects given as JSON files");
  exec->add_option("a", file, "First project")->required();
  exec->add_option("b", file2, "Second project")->required();
  common(exec);

  auto* verify = app.add_subcommand("verify", "Check, interpret and test a proof (soundness report)");
  verify->add_option("proof", file, "Proof file (.gl)")->required();
  verify->add_option("--basis", basis, "Interpretation basis (JSON: variable name -> generator projects)");
  common(verify);

  auto* exp = app.add_subcommand("export", "Render a graph, thick graph, graphing, project or proof");
  exp->add_option("file", file, "JSON object or proof file")->required();
  common(exp);

  auto* prop = app.add_subcommand("prop", "Run a seeded property battery");
  prop->add_option("battery", battery, "Battery name")->required()->check(CLI::IsMember(battery_names()));
  prop->add_option("--seed", seed, "PRNG seed (SplitMix64)")->capture_default_str();
  prop->add_option("--iters", iters, "Number of cases")->capture_default_str();
  common(prop);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  InterpretOptions opt;
  opt.fuel = Fuel{fuel};
  Output out{output};
  bool dot_ok = exp->parsed() || interp->parsed() || exec->parsed();
  if (format == "dot" && !dot_ok) {
    std::cerr << "goi: --format dot applies to interpret, exec and export\n";
    return kUsage;
  }
  if (exp->parsed() && format == "text") format = "dot";
  try {
    if (check->parsed()) return cmd_check(file, format, out);
    if (interp->parsed()) return cmd_interpret(file, format, opt, out);
    if (exec->parsed()) return cmd_exec(file, file2, format, opt, out);
    if (verify->parsed()) return cmd_verify(file, basis, format, opt, out);
    if (exp->parsed()) return cmd_export(file, format, opt, out);
    if (prop->parsed()) {
      BatteryOptions b;
      b.seed = seed;
      b.iters = iters;
      b.fuel = opt.fuel;
      return cmd_prop(battery, b, format, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "goi: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "goi: resource limit: " << e.what() << "\n";
    return kUsage;
  } catch (const ProofError& e) {
    std::cerr << "goi: " << e.what() << "\n";
    return kFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "goi: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "goi: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
