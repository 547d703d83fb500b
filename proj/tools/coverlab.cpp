// coverlab: enumerate congruences, build covers from recipes, extract
// congruences, run verification suites and lift covers.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage, 3 input validation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coverlab/coverlab.hpp"

namespace {

using coverlab::json;

constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;
constexpr int kInput = 3;

struct Common {
  std::string format = "json";
  std::string output;
  std::string caps;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("-o,--output", c.output, "Output path (default stdout)");
  sub->add_option("--caps", c.caps, "Size caps, key=value[,key=value]");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw coverlab::ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw coverlab::ParseError("'" + path + "': " + e.what());
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw coverlab::ParseError("cannot write '" + c.output + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string cover_table(const coverlab::Cover& c) {
  std::ostringstream s;
  s << "points      " << c.domain().size() << " (" << c.domain().w_size() << " fibres of " << c.domain().delta << ")\n";
  s << "generators  " << c.autgroup().generators().size() << "\n";
  s << "order       " << c.autgroup().order() << "\n";
  s << "kernel      " << c.kernel().order() << "\n";
  return s.str();
}

int run_enumerate(const Common& c, std::size_t n, std::optional<std::size_t> omega) {
  auto specs = coverlab::predicted_congruences(n);
  std::optional<coverlab::TupleSpace> space;
  if (omega) {
    if (*omega < n + 1) throw coverlab::DomainError("enumerate: omega must be at least n+1");
    space.emplace(*omega, n);
  }
  json out = json::array();
  std::ostringstream table;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    json item{{"spec", coverlab::to_json(specs[i])}};
    table << i << "  " << specs[i].describe();
    if (space) {
      coverlab::BlockSystem b = coverlab::realize_congruence(specs[i], *space);
      item["system"] = coverlab::to_json(b);
      table << "  classes=" << b.class_count() << " size=" << b.classes().front().size();
    }
    table << "\n";
    out.push_back(std::move(item));
  }
  emit(c, c.format == "json" ? dump(out) : table.str());
  return 0;
}

int run_build(const Common& c, const std::string& recipe_path) {
  coverlab::BuiltCover built = coverlab::build_from_recipe(read_json(recipe_path));
  json out = coverlab::to_json(built.cover);
  out["provenance"] = built.provenance;
  emit(c, c.format == "json" ? dump(out) : cover_table(built.cover));
  return 0;
}

int run_extract(const Common& c, const std::string& cover_path, std::size_t jobs) {
  coverlab::Cover cover = coverlab::cover_from_json(read_json(cover_path));
  coverlab::BlockSystem rho = coverlab::extract_congruence(cover, jobs);
  std::ostringstream table;
  table << rho.class_count() << " classes\n";
  for (const auto& cls : rho.classes()) {
    for (std::size_t i = 0; i < cls.size(); ++i) table << (i ? " " : "") << cls[i];
    table << "\n";
  }
  emit(c, c.format == "json" ? dump(coverlab::to_json(rho)) : table.str());
  return 0;
}

int run_verify(const Common& c, const coverlab::SuiteConfig& cfg) {
  auto verdicts = coverlab::run_suite(cfg);
  std::ostringstream table;
  for (const auto& v : verdicts)
    table << coverlab::status_name(v.status) << "  " << v.check << "  " << v.instance.dump() << "\n";
  emit(c, c.format == "json" ? dump(coverlab::report_json(verdicts)) : table.str());
  return coverlab::any_fail(verdicts) ? kVerificationFailure : 0;
}

int run_lift(const Common& c, const std::string& cover_path, std::size_t m, std::size_t jobs) {
  coverlab::Cover base = coverlab::cover_from_json(read_json(cover_path));
  coverlab::LiftResult lr = coverlab::biinterp_lift(base, m, jobs);
  json report{{"m", lr.m},
              {"kernel_iso", lr.kernel_iso},
              {"binding_equals_fibre", lr.binding_equals_fibre},
              {"class_correspondence", lr.class_correspondence},
              {"beta_bijective", lr.beta_bijective},
              {"class_size", lr.class_size},
              {"rho", coverlab::to_json(lr.rho)},
              {"lifted_spec", coverlab::to_json(lr.lifted_spec)}};
  const bool ok = lr.kernel_iso && lr.binding_equals_fibre && lr.class_correspondence && lr.beta_bijective;
  std::ostringstream table;
  table << cover_table(lr.cover);
  for (const char* key : {"kernel_iso", "binding_equals_fibre", "class_correspondence", "beta_bijective"})
    table << key << "  " << (report[key].get<bool>() ? "pass" : "fail") << "\n";
  table << "class_size  " << lr.class_size << "\n";
  emit(c, c.format == "json" ? dump(json{{"cover", coverlab::to_json(lr.cover)}, {"report", report}}) : table.str());
  return ok ? 0 : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverlab: finite covers, kernels and congruences"};
  app.require_subcommand(1);
  Common common;

  std::size_t n = 0, m = 0, jobs = 1;
  std::optional<std::size_t> omega_opt;
  std::string recipe, cover;

  auto* en = app.add_subcommand("enumerate", "List the predicted congruences on n-tuples");
  en->add_option("--n", n, "Tuple arity")->required()->check(CLI::PositiveNumber);
  en->add_option("--omega", omega_opt, "Realize each congruence on this many letters");
  add_common(en, common);

  auto* bu = app.add_subcommand("build", "Build a cover from a recipe JSON");
  bu->add_option("--recipe", recipe, "Recipe JSON path")->required();
  add_common(bu, common);

  auto* ex = app.add_subcommand("extract", "Extract the congruence of a cover's kernel");
  ex->add_option("--cover", cover, "Cover JSON path")->required();
  ex->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_common(ex, common);

  coverlab::SuiteConfig cfg;
  std::optional<std::size_t> suite_n, suite_m;
  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  ve->add_option("--suite", cfg.suite, "Suite name")->required()->check(CLI::IsMember(coverlab::suite_names()));
  ve->add_option("--n", suite_n, "Tuple arity");
  ve->add_option("--m", suite_m, "Lift arity (default n+1)");
  ve->add_option("--omega", cfg.omega_sizes, "Letter counts (repeatable)");
  ve->add_option("--group", cfg.group, "Fibre group keyword");
  ve->add_option("--upsilon", cfg.upsilon, "Base group keyword (primitive-corollary)");
  ve->add_option("--seed", cfg.seed, "Random seed");
  ve->add_option("--twists", cfg.twists, "Random twists per congruence");
  ve->add_option("--pregeometry-twists", cfg.pregeometry_twists, "Twisted variants per congruence in the pregeometry suite");
  ve->add_option("--subset-bound", cfg.subset_bound, "Largest subset size for the pregeometry scan");
  ve->add_flag("--exhaustive", cfg.exhaustive, "Check every class and pair instead of orbit representatives");
  ve->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  ve->add_option("--inject-fault", cfg.fault, "Corrupt the input on purpose")->check(CLI::IsMember(coverlab::fault_names()));
  add_common(ve, common);

  auto* li = app.add_subcommand("lift", "Lift a cover on n-tuples to m-tuples");
  li->add_option("--cover", cover, "Cover JSON path")->required();
  li->add_option("--m", m, "Target arity")->required()->check(CLI::PositiveNumber);
  li->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_common(li, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (!common.caps.empty()) coverlab::set_caps(coverlab::Caps::from_string(common.caps, coverlab::caps()));
    if (*en) return run_enumerate(common, n, omega_opt);
    if (*bu) return run_build(common, recipe);
    if (*ex) return run_extract(common, cover, jobs);
    if (*ve) {
      cfg.n = suite_n;
      cfg.m = suite_m;
      return run_verify(common, cfg);
    }
    if (*li) return run_lift(common, cover, m, jobs);
  } catch (const coverlab::TheoremViolation& e) {
    std::cerr << "coverlab: " << e.what() << " [" << e.witness() << "]\n";
    return kVerificationFailure;
  } catch (const coverlab::InternalError& e) {
    std::cerr << "coverlab: internal error: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const coverlab::Error& e) {
    std::cerr << "coverlab: " << e.what() << "\n";
    return kInput;
  } catch (const json::exception& e) {
    std::cerr << "coverlab: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
