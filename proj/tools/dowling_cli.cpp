#include "dowling/arrangement.hpp"
#include "dowling/checks.hpp"
#include "dowling/egf.hpp"
#include "dowling/errors.hpp"
#include "dowling/forest.hpp"
#include "dowling/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

using namespace dowling;

namespace {

enum Exit { kOk = 0, kDisagree = 1, kInput = 2, kBound = 3 };

struct Common {
  std::string input;
  std::optional<int> n;
  std::optional<std::size_t> cap_lattice;
  std::optional<std::size_t> cap_nested;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Common& c, bool with_format) {
  cmd->add_option("--input", c.input, "instance JSON file")->required();
  cmd->add_option("--n", c.n, "number of V factors (overrides the file)")->check(CLI::Range(1, 30));
  cmd->add_option("--cap-lattice", c.cap_lattice, "maximum intersection lattice size");
  cmd->add_option("--cap-nested", c.cap_nested, "maximum number of nested sets");
  if (with_format) cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
}

ProblemInstance load(const Common& c) {
  nlohmann::json doc;
  {
    std::ifstream in(c.input);
    if (!in) throw InputError(c.input + ": cannot open instance file");
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(c.input + ": invalid JSON: " + e.what());
    }
  }
  if (c.n) doc["n"] = *c.n;
  if (c.cap_lattice) doc["bounds"]["lattice"] = *c.cap_lattice;
  if (c.cap_nested) doc["bounds"]["nested"] = *c.cap_nested;
  return parse_instance(doc);
}

int cmd_closed(const Common& c) {
  const ProblemInstance inst = load(c);
  const auto report = closed_subgroups_json(inst);
  if (c.format == "json") {
    std::cout << report.dump(2) << "\n";
    return kOk;
  }
  std::cout << "closed subgroups: " << inst.closed_count() << "\n";
  for (const auto& k : report["closed"]) {
    std::cout << "  " << k["index"].get<int>() << "  " << k["name"].get<std::string>() << "  order "
              << k["elements"].size() << "  dim Fix " << k["fixed_dim"].get<int>() << "  class "
              << k["conjugacy_class"].get<int>() << "\n";
  }
  std::cout << "non-closed subgroups: " << report["non_closed"].size() << "\n";
  for (const auto& h : report["non_closed"]) {
    std::cout << "  " << h["name"].get<std::string>() << "  phi -> " << h["closure"].get<std::string>() << "\n";
  }
  std::cout << "conjugacy classes of closed subgroups: " << report["conjugacy_classes"].size() << "\n";
  for (const auto& cl : report["conjugacy_classes"]) {
    std::cout << "  [" << cl["index"].get<int>() << "]";
    for (const auto& m : cl["members"]) std::cout << " " << m.get<std::string>();
    std::cout << "  below:";
    for (const auto& d : cl["contained_in"]) std::cout << " [" << d.get<int>() << "]";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_lattice(const Common& c) {
  const ProblemInstance inst = load(c);
  const auto lattice = intersection_lattice(inst);
  if (c.format == "json") {
    std::cout << lattice_json(inst, lattice).dump(2) << "\n";
  } else if (c.format == "dot") {
    std::cout << lattice_dot(inst, lattice);
  } else {
    std::map<std::size_t, std::size_t> by_dim;
    for (const auto& x : lattice.elements()) ++by_dim[inst.complex_dim(x)];
    std::cout << "intersection lattice: " << lattice.size() << " elements\n";
    for (auto it = by_dim.rbegin(); it != by_dim.rend(); ++it) {
      std::cout << "  dim " << it->first << ": " << it->second << "\n";
    }
  }
  return kOk;
}

int cmd_nested(const Common& c) {
  const ProblemInstance inst = load(c);
  const BuildingSet bs(inst);
  const auto sets = enumerate_nested_sets(bs);
  if (c.format == "json") {
    std::cout << nested_json(bs, sets).dump(2) << "\n";
  } else if (c.format == "dot") {
    std::cout << nested_dot(bs, sets);
  } else {
    std::cout << "building blocks: " << bs.size() << "\n";
    for (const auto& b : bs.blocks()) std::cout << "  " << block_name(inst, b) << "\n";
    std::cout << "nested sets: " << sets.size() << "\n";
    for (const auto& s : sets) {
      std::cout << " ";
      for (std::size_t b : s) std::cout << " " << block_name(inst, bs.blocks()[b]);
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_forests(const Common& c) {
  const ProblemInstance inst = load(c);
  const auto forests = generate_forests(inst);
  if (c.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : forests) arr.push_back(forest_json(inst, f));
    std::cout << arr.dump(2) << "\n";
  } else if (c.format == "dot") {
    std::cout << forests_dot(inst, forests);
  } else {
    std::cout << "forests: " << forests.size() << "\n";
    for (const auto& f : forests) std::cout << "  " << forest_to_string(inst, f) << "\n";
  }
  return kOk;
}

int cmd_count(const Common& c, const std::string& method, bool all) {
  const ProblemInstance inst = load(c);
  std::vector<std::string> methods;
  if (all) {
    methods = {"lattice", "forest"};
    if (inst.group().is_abelian()) methods.push_back("egf");
  } else {
    methods = {method};
  }
  std::optional<mpz_class> first;
  bool agree = true;
  for (const auto& m : methods) {
    const auto start = std::chrono::steady_clock::now();
    mpz_class value;
    if (m == "lattice") {
      value = count_by_lattice(inst);
    } else if (m == "forest") {
      value = count_by_forests(inst);
    } else {
      value = count_by_egf(inst);
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cout << (all ? m + " " : "") << value.get_str() << "\n";
    std::cerr << m << ": " << ms << " ms\n";
    if (first && *first != value) agree = false;
    if (!first) first = value;
  }
  if (!agree) {
    std::cerr << "error: counting methods disagree\n";
    return kDisagree;
  }
  return kOk;
}

int cmd_series(const Common& c, std::optional<int> max_degree) {
  const ProblemInstance inst = load(c);
  const int n = max_degree.value_or(inst.n());
  const MultiSeries gt = gamma_tilde(inst, n);
  nlohmann::json out;
  out["gamma_tilde"] = series_json(gt);
  out["gamma_bar"] = series_json(gamma_bar(inst, gt));
  out["G"] = series_json(big_g(inst, n));
  nlohmann::json lambdas = nlohmann::json::object();
  for (std::size_t k : proper_closed(inst)) lambdas[inst.closed_name(k)] = series_json(lambda_h(inst, k, n));
  out["lambda"] = lambdas;
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_export(const Common& c, const std::string& what) {
  Common copy = c;
  if (copy.format == "text") copy.format = "json";
  if (what == "lattice") return cmd_lattice(copy);
  if (what == "nested") return cmd_nested(copy);
  return cmd_forests(copy);
}

int cmd_selftest(const Common& c) {
  const ProblemInstance inst = load(c);
  bool ok = true;
  for (const auto& r : run_selftest(inst)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    ok = ok && r.passed;
  }
  return ok ? kOk : kDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Dowling arrangements: building sets, nested sets, forests and generating series"};
  app.require_subcommand(1);

  Common closed_opts, lattice_opts, nested_opts, forests_opts, count_opts, series_opts, export_opts, selftest_opts;
  auto* closed = app.add_subcommand("closed-subgroups", "closed subgroups, fixed dimensions, conjugacy classes");
  add_common(closed, closed_opts, true);
  auto* lattice = app.add_subcommand("lattice", "intersection lattice of the arrangement");
  add_common(lattice, lattice_opts, true);
  auto* nested = app.add_subcommand("nested", "building blocks and nested sets");
  add_common(nested, nested_opts, true);
  auto* forests = app.add_subcommand("forests", "labelled forests");
  add_common(forests, forests_opts, true);

  auto* count = app.add_subcommand("count", "number of nonempty nested sets");
  add_common(count, count_opts, false);
  std::string method = "lattice";
  bool all_methods = false;
  count->add_option("--method", method, "lattice, forest or egf")->check(CLI::IsMember({"lattice", "forest", "egf"}));
  count->add_flag("--all-methods", all_methods, "run every applicable method and compare");

  auto* series = app.add_subcommand("series", "generating series as JSON");
  add_common(series, series_opts, false);
  std::optional<int> max_degree;
  series->add_option("--max-degree", max_degree, "truncation degree (default n)")->check(CLI::Range(0, 40));

  auto* exp = app.add_subcommand("export", "export lattice, nested sets or forests");
  add_common(exp, export_opts, false);
  std::string what = "nested";
  exp->add_option("--what", what, "lattice, nested or forests")->check(CLI::IsMember({"lattice", "nested", "forests"}));
  exp->add_option("--format", export_opts.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  export_opts.format = "json";

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite on the instance");
  add_common(selftest, selftest_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*closed) return cmd_closed(closed_opts);
    if (*lattice) return cmd_lattice(lattice_opts);
    if (*nested) return cmd_nested(nested_opts);
    if (*forests) return cmd_forests(forests_opts);
    if (*count) return cmd_count(count_opts, method, all_methods);
    if (*series) return cmd_series(series_opts, max_degree);
    if (*exp) return cmd_export(export_opts, what);
    if (*selftest) return cmd_selftest(selftest_opts);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const CrossCheckFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDisagree;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDisagree;
  }
  return kOk;
}
