#include "treebar/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "treebar/barkoszul.hpp"
#include "treebar/homotopy.hpp"
#include "treebar/levelbar.hpp"

namespace treebar::cli {

using nlohmann::json;

namespace {

constexpr const char* schema = "treebar-report/1";

struct CheckResult {
  std::string suite;
  std::string cell;
  bool passed = true;
  std::vector<Witness> witnesses;
  std::optional<Betti> betti;
  double seconds = 0;
};

struct Config {
  std::string labels;
  std::string operad;
  std::string field = "q";
  std::string output = "table";
  std::size_t max_labels = 4;
  std::string perturb;
  std::string input;
};

CheckResult result(std::string suite, std::string cell) {
  CheckResult r;
  r.suite = std::move(suite);
  r.cell = std::move(cell);
  return r;
}

struct Task {
  std::string suite, cell;
  std::function<CheckResult()> run;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs the tasks on a bounded pool; results keep task order.
std::vector<CheckResult> run_all(const std::vector<Task>& tasks) {
  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = tasks[i].run();
      } catch (const std::exception& e) {
        results[i] = result(tasks[i].suite, tasks[i].cell);
        results[i].passed = false;
        results[i].witnesses.push_back({"exception", e.what()});
      }
      results[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

json betti_json(const Betti& b) {
  json out = json::object();
  for (const auto& [n, v] : b) out[std::to_string(n)] = v;
  return out;
}

std::string betti_text(const Betti& b) {
  std::string s = "{";
  bool first = true;
  for (const auto& [n, v] : b) {
    s += (first ? "" : ", ") + std::to_string(n) + ": " + std::to_string(v);
    first = false;
  }
  return s + "}";
}

void take(CheckResult& r, const Report& rep) {
  if (rep.passed()) return;
  r.passed = false;
  r.witnesses.insert(r.witnesses.end(), rep.failures().begin(), rep.failures().end());
}

LabelSetPtr make_labels(const std::string& csv) { return std::make_shared<const LabelSet>(LabelSet::parse(csv)); }

Operad resolve_operad(const std::string& name, std::size_t arity) {
  if (is_builtin_operad(name)) return builtin_operad(name, std::max<std::size_t>(arity, 1));
  if (std::filesystem::exists(name)) return load_operad(name);
  throw UsageError("unknown operad '" + name + "' (builtin: com, ass, free-binary, nilpotent[:c]; or a JSON file)");
}

Tree parse_tree_arg(const std::string& form, const Tree* reference) {
  if (form == "corolla") {
    if (!reference) throw UsageError("'corolla' needs a --tree to take labels from");
    return Tree::corolla(reference->labels_ptr());
  }
  Tree t = Tree::parse(form);
  if (reference && t.labels() == reference->labels()) return Tree(reference->labels_ptr(), t.edges());
  return t;
}

std::vector<std::size_t> label_sizes(const Config& c, std::size_t from) {
  std::vector<std::size_t> out;
  if (!c.labels.empty()) {
    out.push_back(LabelSet::parse(c.labels).size());
    return out;
  }
  for (std::size_t n = from; n <= c.max_labels; ++n) out.push_back(n);
  return out;
}

LabelSetPtr labels_for(const Config& c, std::size_t n) {
  return c.labels.empty() ? std::make_shared<const LabelSet>(LabelSet::range(n)) : make_labels(c.labels);
}

std::vector<std::string> operads_for(const Config& c) {
  if (!c.operad.empty()) return {c.operad};
  return {"com", "ass", "free-binary"};
}

void check_grid(const Config& c) {
  if (c.max_labels > 5) throw UsageError("--max-labels is capped at 5");
  if (!c.perturb.empty() && c.input.empty() && c.max_labels < 3)
    throw UsageError("--perturb sign needs --max-labels >= 3");
  if (c.max_labels == 5) {
    const Field f = parse_field(c.field);
    const auto ops = operads_for(c);
    if (f.is_rational() || ops.size() != 1 || ops[0] != "com")
      throw UsageError("--max-labels 5 requires --field <prime> and --operad com");
  }
}

std::string cell(std::size_t n, const std::string& op = "") {
  return "|I|=" + std::to_string(n) + (op.empty() ? "" : " P=" + op);
}

// Every (t, E) over the labels.
template <class F>
void for_each_morphism(const LabelSetPtr& labels, F&& f) {
  for (const Tree& t : enumerate_trees(labels))
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t.edge_count()); ++bits) f(t, edge_subset(t, bits));
}

void suite_dsquared(const Config& c, std::vector<Task>& tasks) {
  for (std::size_t n : label_sizes(c, 1)) {
    tasks.push_back({"dsquared", cell(n) + " category complexes", [c, n] {
      CheckResult r = result("dsquared", cell(n) + " category complexes");
      for_each_morphism(labels_for(c, n), [&](const Tree& t, const EdgeSet& e) {
        const Tree s = contract(t, e);
        take(r, verify_d_squared(*build_N_category(t, s).complex));
        take(r, verify_d_squared(*build_K_resolution(t, s).complex));
        take(r, verify_d_squared(*build_K_bifunctor(t, s).complex));
      });
      return r;
    }});
    if (n < 2) continue;
    for (const auto& op : operads_for(c))
      tasks.push_back({"dsquared", cell(n, op) + " N, K, N°", [c, n, op] {
        CheckResult r = result("dsquared", cell(n, op) + " N, K, N°");
        const auto labels = labels_for(c, n);
        const Operad p = resolve_operad(op, n);
        take(r, verify_d_squared(*build_N_operad(labels, p).complex));
        take(r, verify_d_squared(*build_K_operad(labels, p).complex));
        take(r, verify_d_squared(*build_levelbar(labels, p).complex));
        return r;
      }});
  }
}

void suite_koszul(const Config& c, std::vector<Task>& tasks) {
  const Field field = parse_field(c.field);
  for (std::size_t n : label_sizes(c, 1))
    tasks.push_back({"koszul", cell(n), [c, n, field] {
      CheckResult r = result("koszul", cell(n));
      for_each_morphism(labels_for(c, n), [&](const Tree& t, const EdgeSet& e) {
        const Tree s = contract(t, e);
        const auto bar = build_N_category(t, s);
        const Betti b = nonzero(betti(*bar.complex, field));
        const Betti want{{static_cast<int>(e.size()), 1}};
        if (b != want) {
          r.passed = false;
          r.witnesses.push_back({"H(N(b_s,T_I,b_t)) = k in degree |E|",
                                 t.to_string() + " -> " + s.to_string() + ": " + betti_text(b)});
        }
        const auto q = is_quasi_iso(kappa_category(build_K_category(t, s), bar), field);
        take(r, q.report);
      });
      return r;
    }});
}

void suite_resolution(const Config& c, std::vector<Task>& tasks) {
  const Field field = parse_field(c.field);
  for (std::size_t n : label_sizes(c, 1))
    tasks.push_back({"resolution", cell(n), [c, n, field] {
      CheckResult r = result("resolution", cell(n));
      for_each_morphism(labels_for(c, n), [&](const Tree& t, const EdgeSet& e) {
        const Tree s = contract(t, e);
        for (const bool bifunctor : {false, true}) {
          if (!bifunctor && e.empty()) continue;
          const auto k = bifunctor ? build_K_bifunctor(t, s) : build_K_resolution(t, s);
          const Betti b = nonzero(betti(*k.complex, field));
          if (!b.empty()) {
            r.passed = false;
            r.witnesses.push_back({bifunctor ? "augmented K(T_I,T_I,T_I)(t,s) acyclic" : "augmented K(b_s,T_I,T_I)(t) acyclic",
                                   t.to_string() + " -> " + s.to_string() + ": " + betti_text(b)});
          }
        }
      });
      return r;
    }});
}

void suite_factorization(const Config& c, std::vector<Task>& tasks) {
  const Field field = parse_field(c.field);
  for (std::size_t n : label_sizes(c, 2))
    for (const auto& op : operads_for(c))
      tasks.push_back({"factorization", cell(n, op), [c, n, op, field] {
        CheckResult r = result("factorization", cell(n, op));
        const Operad p = resolve_operad(op, n);
        const auto f = verify_factorization(labels_for(c, n), p, field);
        take(r, f.report);
        Betti ok;
        for (const auto& [d, good] : f.degree_ok) ok[d] = good ? 1 : 0;
        r.betti = ok;  // per-degree pass flags
        return r;
      }});
}

// Negates one single-edge operation over the largest label set, preferring a
// tree with two edges so that a composite relation sees it.
std::string perturb_sign(HomotopyOperadData& h, std::size_t max_labels) {
  const auto trees = enumerate_trees(std::make_shared<const LabelSet>(LabelSet::range(max_labels)));
  for (std::size_t want : {2, 1})
    for (const Tree& t : trees)
      if (t.edge_count() >= want) {
        h.negate(t, {t.edges()[0]});
        return "o_" + t.labels().subset_string(t.edges()[0]) + " negated on " + t.to_string();
      }
  throw UsageError("--perturb sign needs a tree with an edge; raise --max-labels");
}

void suite_homotopy(const Config& c, std::vector<Task>& tasks) {
  if (!c.input.empty()) {
    tasks.push_back({"homotopy", c.input, [c] {
      std::ifstream in(c.input);
      if (!in) throw UsageError("cannot open " + c.input);
      const auto h = HomotopyOperadData::from_json(json::parse(in));
      CheckResult r = result("homotopy", c.input + " I_max=" + std::to_string(c.max_labels));
      take(r, check_homotopy_operad(h, c.max_labels).report);
      return r;
    }});
    return;
  }
  for (const auto& op : operads_for(c))
    tasks.push_back({"homotopy", "strict " + op, [c, op] {
      const Operad p = resolve_operad(op, c.max_labels);
      auto h = strict_to_homotopy(p, c.max_labels);
      std::string what = "strict " + op;
      if (c.perturb == "sign") what += " with " + perturb_sign(h, c.max_labels);
      CheckResult r = result("homotopy", what + " I_max=" + std::to_string(c.max_labels));
      take(r, check_homotopy_operad(h, c.max_labels).report);
      return r;
    }});
}

json report_json(const std::string& command, const Config& c, const std::vector<CheckResult>& results) {
  json checks = json::array();
  bool all = true;
  for (const auto& r : results) {
    json w = json::array();
    for (const auto& x : r.witnesses) w.push_back({{"identity", x.identity}, {"detail", x.detail}});
    json j = {{"suite", r.suite}, {"cell", r.cell}, {"status", r.passed ? "pass" : "fail"}, {"witnesses", w},
              {"seconds", r.seconds}};
    if (r.betti) j[r.suite == "factorization" ? "degrees_ok" : "betti"] = betti_json(*r.betti);
    checks.push_back(std::move(j));
    all = all && r.passed;
  }
  json config = {{"field", parse_field(c.field).name()}, {"max_labels", c.max_labels}};
  if (!c.labels.empty()) config["labels"] = c.labels;
  if (!c.operad.empty()) config["operad"] = c.operad;
  if (!c.perturb.empty()) config["perturb"] = c.perturb;
  if (!c.input.empty()) config["input"] = c.input;
  return {{"schema", schema}, {"command", command}, {"config", config}, {"checks", checks}, {"passed", all}};
}

void print_table(std::ostream& out, const std::vector<CheckResult>& results) {
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(14) << r.suite << r.cell;
    if (r.betti && r.suite == "factorization") {
      out << "  degrees:";
      for (const auto& [d, ok] : *r.betti) out << ' ' << d << (ok ? ":ok" : ":FAIL");
    }
    out << std::fixed << std::setprecision(3) << "  (" << r.seconds << " s)\n";
    const std::size_t shown = std::min<std::size_t>(r.witnesses.size(), 5);
    for (std::size_t i = 0; i < shown; ++i)
      out << "    " << r.witnesses[i].identity << ": " << r.witnesses[i].detail << '\n';
    if (r.witnesses.size() > shown) out << "    ... " << r.witnesses.size() - shown << " more\n";
    failed += r.passed ? 0 : 1;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
}

struct ComplexChoice {
  std::string kind = "N";
  std::string coeff = "bI";
  std::string tree, s;
};

// Builds the complex selected by --kind/--coeff/--tree/--s or --labels/--operad.
std::shared_ptr<const BasedChainComplex> choose_complex(const Config& c, const ComplexChoice& k) {
  const std::string coeff = k.coeff;
  const bool category = coeff != "bI";
  if (category) {
    if (k.tree.empty()) throw UsageError("--coeff " + coeff + " needs --tree (and --s)");
    const Tree t = parse_tree_arg(k.tree, nullptr);
    const Tree s = k.s.empty() ? t : parse_tree_arg(k.s, &t);
    if (coeff == "bs,bt" || coeff == "bt,bs") {
      if (k.kind == "N") return build_N_category(t, s).complex;
      if (k.kind == "K") return build_K_category(t, s).complex;
    } else if (coeff == "bs") {
      if (k.kind == "K") return build_K_resolution(t, s).complex;
    } else if (coeff == "bt" || coeff == "T") {
      if (k.kind == "K") return build_K_bifunctor(t, s).complex;
    }
    throw UsageError("unsupported --kind " + k.kind + " with --coeff " + coeff);
  }
  if (c.labels.empty()) throw UsageError("--coeff bI needs --labels");
  const auto labels = make_labels(c.labels);
  const Operad p = resolve_operad(c.operad.empty() ? "com" : c.operad, labels->size());
  if (k.kind == "N") return build_N_operad(labels, p).complex;
  if (k.kind == "K") return build_K_operad(labels, p).complex;
  if (k.kind == "L") return build_levelbar(labels, p).complex;
  throw UsageError("--kind must be N, K or L");
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("TREEBAR_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trees, bar and Koszul complexes, and operad bar constructions with exact homology", "treebar"};
  app.require_subcommand(1);
  Config cfg;
  ComplexChoice choice;
  bool count_only = false, csv = false;
  std::string suite = "all", format = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--labels", cfg.labels, "Label set, comma separated");
    sub->add_option("--operad", cfg.operad, "com | ass | free-binary | nilpotent[:c] | operad JSON file");
    sub->add_option("--field", cfg.field, "q or a prime such as 101")->capture_default_str();
    sub->add_option("--output", cfg.output, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  };

  auto* trees = app.add_subcommand("trees", "List reduced trees on a label set");
  trees->add_option("--labels", cfg.labels, "Label set, comma separated")->required();
  trees->add_flag("--count-only", count_only, "Print only the number of trees");
  trees->add_option("--output", cfg.output, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto* homology = app.add_subcommand("homology", "Betti numbers of a bar or Koszul complex");
  add_common(homology);
  homology->add_option("--kind", choice.kind, "N (bar), K (Koszul) or L (level bar)")->capture_default_str();
  homology->add_option("--coeff", choice.coeff, "bI, or bs,bt / bs / bt with --tree and --s")->capture_default_str();
  homology->add_option("--tree", choice.tree, "Source tree in canonical form");
  homology->add_option("--s", choice.s, "Target tree (canonical form or 'corolla')");
  homology->add_flag("--csv", csv, "Print the Betti table as CSV");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  add_common(verify);
  verify->add_option("--suite", suite, "dsquared | koszul | resolution | factorization | homotopy | all")
      ->check(CLI::IsMember({"dsquared", "koszul", "resolution", "factorization", "homotopy", "all"}))
      ->capture_default_str();
  verify->add_option("--max-labels", cfg.max_labels, "Largest label set of the grid")->capture_default_str();
  verify->add_option("--perturb", cfg.perturb, "sign: negate one single-edge operation")->check(CLI::IsMember({"sign"}));
  verify->add_option("--input", cfg.input, "Homotopy operad data JSON");

  auto* complex = app.add_subcommand("complex", "Complex utilities");
  auto* cexport = complex->add_subcommand("export", "Export a complex as JSON or triplets");
  complex->require_subcommand(1);
  add_common(cexport);
  cexport->add_option("--kind", choice.kind, "N, K or L")->capture_default_str();
  cexport->add_option("--coeff", choice.coeff, "bI, or bs,bt / bs / bt")->capture_default_str();
  cexport->add_option("--tree", choice.tree, "Source tree");
  cexport->add_option("--s", choice.s, "Target tree");
  cexport->add_option("--format", format, "json or triplets")->check(CLI::IsMember({"json", "triplets"}))->capture_default_str();

  auto* hdata = app.add_subcommand("homotopy-data", "Homotopy operad data utilities");
  auto* hexport = hdata->add_subcommand("export", "Export strict operations as homotopy operad data");
  hdata->require_subcommand(1);
  hexport->add_option("--operad", cfg.operad, "Operad")->required();
  hexport->add_option("--max-labels", cfg.max_labels, "Largest label set")->capture_default_str();
  hexport->add_option("--perturb", cfg.perturb, "sign")->check(CLI::IsMember({"sign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*trees) {
      const auto labels = make_labels(cfg.labels);
      const auto all = enumerate_trees(labels);
      if (count_only) {
        out << all.size() << '\n';
      } else if (cfg.output == "json") {
        json list = json::array();
        for (const auto& t : all) list.push_back(t.to_string());
        out << json{{"labels", labels->to_string()}, {"count", all.size()}, {"trees", list}}.dump(2) << '\n';
      } else {
        for (const auto& t : all) out << t.to_string() << '\n';
        out << "count: " << all.size() << '\n';
      }
      return 0;
    }
    if (*homology) {
      const Field field = parse_field(cfg.field);
      const auto c = choose_complex(cfg, choice);
      const Betti b = betti(*c, field);
      if (csv) {
        out << "degree,dim,betti\n";
        for (const auto& [n, v] : b) out << n << ',' << c->dim(n) << ',' << v << '\n';
      } else if (cfg.output == "json") {
        json dims = json::object();
        for (int n : c->degrees()) dims[std::to_string(n)] = c->dim(n);
        out << json{{"field", field.name()}, {"dims", dims}, {"betti", betti_json(b)}, {"nonzero", betti_json(nonzero(b))}}
                   .dump(2)
            << '\n';
      } else {
        out << "degree  dim  betti\n";
        for (const auto& [n, v] : b) out << std::setw(6) << n << std::setw(5) << c->dim(n) << std::setw(7) << v << '\n';
        out << "nonzero: " << betti_text(nonzero(b)) << '\n';
      }
      return 0;
    }
    if (*verify) {
      check_grid(cfg);
      std::vector<Task> tasks;
      const bool all = suite == "all";
      if (all || suite == "dsquared") suite_dsquared(cfg, tasks);
      if (all || suite == "koszul") suite_koszul(cfg, tasks);
      if (all || suite == "resolution") suite_resolution(cfg, tasks);
      if (all || suite == "factorization") suite_factorization(cfg, tasks);
      if (all || suite == "homotopy") suite_homotopy(cfg, tasks);
      const auto results = run_all(tasks);
      if (cfg.output == "json")
        out << report_json("verify " + suite, cfg, results).dump(2) << '\n';
      else
        print_table(out, results);
      for (const auto& r : results)
        if (!r.passed) return 1;
      return 0;
    }
    if (*cexport) {
      const auto c = choose_complex(cfg, choice);
      if (format == "json")
        out << to_json(*c).dump(2) << '\n';
      else
        out << to_triplets(*c);
      return 0;
    }
    if (*hexport) {
      if (cfg.max_labels < 2 || cfg.max_labels > 5) throw UsageError("--max-labels must be in 2..5");
      const Operad p = resolve_operad(cfg.operad, cfg.max_labels);
      auto h = strict_to_homotopy(p, cfg.max_labels);
      if (cfg.perturb == "sign") perturb_sign(h, cfg.max_labels);
      out << h.to_json().dump(2) << '\n';
      return 0;
    }
  } catch (const NotAComplex& e) {
    err << "error: refusing to compute homology: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace treebar::cli
