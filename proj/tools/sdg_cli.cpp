#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sdg/coalition_solver.hpp"
#include "sdg/core.hpp"
#include "sdg/errors.hpp"
#include "sdg/game.hpp"
#include "sdg/instance_io.hpp"
#include "sdg/lli.hpp"
#include "sdg/report.hpp"

using sdg::report::json;

namespace {

struct Options {
  std::string instance_path;
  std::string out_path;
  bool machine = false;
  std::string coalition;
  int n_cap = sdg::kDefaultTableCap;
  bool trace = false;
  std::string method = "downstream";
  std::string psi;
  std::string allocation_path;
  bool directional = false;
  bool superadditivity = false;
  bool convexity = false;
  std::string permutation;
};

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sdg::Error(sdg::errc::kParseError, "bad " + what + " entry '" + item + "'");
    }
  }
  return out;
}

sdg::Allocation load_allocation(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw sdg::Error(sdg::errc::kParseError, "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw sdg::Error(sdg::errc::kParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("payoffs") || !doc["payoffs"].is_array())
    throw sdg::Error(sdg::errc::kParseError, "allocation file needs a 'payoffs' array");
  for (const auto& [key, _] : doc.items())
    if (key != "payoffs") throw sdg::Error(sdg::errc::kParseError, "unknown allocation field '" + key + "'");
  sdg::Allocation a;
  a.provenance = sdg::Provenance::user;
  for (const auto& v : doc["payoffs"]) {
    if (!v.is_number()) throw sdg::Error(sdg::errc::kParseError, "payoffs must be numbers");
    a.payoffs.push_back(v.get<double>());
  }
  if (static_cast<int>(a.payoffs.size()) != n)
    throw sdg::Error(sdg::errc::kParseError, "allocation has " + std::to_string(a.payoffs.size()) +
                                                 " payoffs, instance has " + std::to_string(n) + " nodes");
  return a;
}

std::string scalar(const json& v) {
  if (v.is_number_float()) {
    std::ostringstream out;
    out << std::setprecision(12) << v.get<double>();
    return out.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool flat(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

void render(std::ostream& out, const json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) {
      if (child.is_structured() && !flat(child)) {
        out << pad << key << ":\n";
        render(out, child, depth + 1);
      } else if (flat(child)) {
        out << pad << key << ": [";
        for (std::size_t j = 0; j < child.size(); ++j) out << (j ? ", " : "") << scalar(child[j]);
        out << "]\n";
      } else {
        out << pad << key << ": " << scalar(child) << "\n";
      }
    }
  } else if (v.is_array()) {
    std::size_t idx = 0;
    for (const auto& child : v) {
      if (child.is_object()) {
        out << pad << "- #" << idx << "\n";
        render(out, child, depth + 1);
      } else if (flat(child)) {
        out << pad << "- [";
        for (std::size_t j = 0; j < child.size(); ++j) out << (j ? ", " : "") << scalar(child[j]);
        out << "]\n";
      } else {
        out << pad << "- " << scalar(child) << "\n";
      }
      ++idx;
    }
  } else {
    out << pad << scalar(v) << "\n";
  }
}

json run_command(const std::string& command, const Options& opt, int& status) {
  const sdg::Instance inst = sdg::load_instance(opt.instance_path);
  const sdg::CoalitionSolver solver(inst);
  json results;
  status = 0;

  auto permutation = [&]() -> sdg::Permutation {
    if (opt.permutation.empty()) return {};
    sdg::Permutation pi = parse_int_list(opt.permutation, "permutation");
    sdg::check_permutation(pi, inst.n());
    return pi;
  };

  if (command == "myopic") {
    results = sdg::report::myopic(solver.myopic());
  } else if (command == "solve") {
    const sdg::SdpSolution sol = sdg::solve_grand(inst, opt.trace);
    results = {{"value", sol.value},
               {"plan", sdg::report::plan(sol.plan, inst)},
               {"iterations", sol.iterations},
               {"decomposition_points", sdg::find_decomposition_points(sol.plan, inst)}};
    json violations = json::array();
    for (const auto& v : sdg::verify_optimality(sol.plan, inst))
      violations.push_back({{"node", v.node}, {"next", v.next}, {"clause", v.clause}, {"detail", v.detail}});
    results["optimality_violations"] = violations;
    if (opt.trace) results["trace"] = sdg::report::trace(sol.trace);
  } else if (command == "value") {
    const sdg::Coalition s = sdg::parse_coalition(opt.coalition);
    results = sdg::report::solution(solver.coalition_value(s), solver);
  } else if (command == "table") {
    results = sdg::report::table(sdg::build_table(solver, opt.n_cap));
  } else if (command == "coop") {
    results = sdg::report::ledger(sdg::cooperation_quantities(solver, sdg::parse_coalition(opt.coalition)));
  } else if (command == "core") {
    const sdg::GameTable table = sdg::build_table(solver, opt.n_cap);
    std::vector<sdg::Allocation> allocations;
    json extra;
    if (opt.method == "downstream") {
      allocations.push_back(sdg::downstream_incremental(table));
    } else if (opt.method == "vertices") {
      if (!opt.psi.empty())
        allocations.push_back(sdg::psi_vertex(table, parse_int_list(opt.psi, "psi"), permutation()));
      else
        allocations = sdg::all_psi_vertices(table, permutation());
    } else if (opt.method == "lp") {
      const sdg::LeastCore lc = sdg::least_core(table);
      allocations.push_back(lc.allocation);
      extra["epsilon"] = std::isfinite(lc.epsilon) ? json(lc.epsilon) : json("-inf");
      extra["core_nonempty"] = lc.epsilon <= 1e-9;
    } else {
      throw sdg::Error(sdg::errc::kParseError, "unknown method '" + opt.method + "'");
    }
    json rows = json::array();
    for (const auto& a : allocations) {
      const sdg::CoreReport rep = sdg::core_membership(a, table);
      if (!rep.member) status = 1;
      rows.push_back({{"allocation", sdg::report::allocation(a)}, {"core", sdg::report::core_report(rep)}});
    }
    results = {{"method", opt.method}, {"allocations", rows}};
    for (const auto& [k, v] : extra.items()) results[k] = v;
  } else if (command == "check") {
    const sdg::GameTable table = sdg::build_table(solver, opt.n_cap);
    json checks = json::array();
    auto add = [&](const sdg::PairCheckReport& rep, const std::string& name) {
      if (!rep.holds) status = 1;
      checks.push_back(sdg::report::pair_report(rep, name));
    };
    if (opt.directional) add(sdg::check_directional_convexity(table, permutation()), "directional-convexity");
    if (opt.superadditivity) add(sdg::check_superadditivity(table), "superadditivity");
    if (opt.convexity) add(sdg::check_convexity(table), "convexity");
    results["checks"] = checks;
    if (!opt.allocation_path.empty()) {
      const sdg::CoreReport rep = sdg::core_membership(load_allocation(opt.allocation_path, inst.n()), table);
      if (!rep.member) status = 1;
      results["allocation"] = sdg::report::core_report(rep);
    }
    if (checks.empty() && opt.allocation_path.empty())
      throw sdg::Error(sdg::errc::kParseError, "check needs at least one of the check flags");
  }
  json doc = {{"instance_digest", sdg::report::instance_digest(inst)}, {"results", results}};
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sewage discharge game solver"};
  app.require_subcommand(1, 1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--instance", opt.instance_path, "instance JSON file")->required();
    sub->add_flag("--json", opt.machine, "print the machine report instead of the human one");
    sub->add_option("--out", opt.out_path, "also write the machine report to FILE");
  };
  auto capped = [&](CLI::App* sub) {
    sub->add_option("--n-cap", opt.n_cap, "largest n for full-table operations")->capture_default_str();
  };

  auto* myopic = app.add_subcommand("myopic", "myopic levels d and discharges theta");
  common(myopic);
  auto* solve = app.add_subcommand("solve", "grand-coalition plan and v(N)");
  common(solve);
  solve->add_flag("--trace", opt.trace, "include the per-iteration trace");
  auto* value = app.add_subcommand("value", "coalition plan, v(S) and free riders");
  common(value);
  value->add_option("-S,--coalition", opt.coalition, "1-based comma list")->required();
  auto* table = app.add_subcommand("table", "full characteristic function");
  common(table);
  capped(table);
  auto* coop = app.add_subcommand("coop", "cooperation ledger of a coalition");
  common(coop);
  coop->add_option("-S,--coalition", opt.coalition, "1-based comma list")->required();
  auto* core = app.add_subcommand("core", "core allocations with membership verdicts");
  common(core);
  capped(core);
  core->add_option("--method", opt.method, "downstream|vertices|lp")
      ->check(CLI::IsMember({"downstream", "vertices", "lp"}))
      ->capture_default_str();
  core->add_option("--psi", opt.psi, "binary comma list for a single vertex");
  core->add_option("--permutation", opt.permutation, "pi(1),...,pi(n); identity by default");
  auto* check = app.add_subcommand("check", "structural checks on the characteristic function");
  common(check);
  capped(check);
  check->add_flag("--directional-convexity", opt.directional, "pairs ordered by the permutation");
  check->add_flag("--superadditivity", opt.superadditivity, "disjoint pairs");
  check->add_flag("--convexity", opt.convexity, "all pairs");
  check->add_option("--allocation", opt.allocation_path, "JSON file {\"payoffs\": [...]}");
  check->add_option("--permutation", opt.permutation, "pi(1),...,pi(n); identity by default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json doc;
  int status = 0;
  try {
    doc = run_command(command, opt, status);
  } catch (const sdg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == sdg::errc::kParseError) std::cerr << "see docs/schema.md for the instance format\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  json echo = json::array();
  for (int a = 1; a < argc; ++a) echo.push_back(argv[a]);
  json full = {{"command", echo}};
  full.update(doc);
  full["exit_status"] = status;
  const std::string machine = sdg::report::dump(full);

  if (opt.machine) {
    std::cout << machine << "\n";
  } else {
    render(std::cout, full, 0);
  }
  if (!opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << opt.out_path << "'\n";
      return 2;
    }
    out << machine << "\n";
  }
  return status;
}
