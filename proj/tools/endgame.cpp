// endgame: classify mapping class groups of infinite-type surfaces from
// symbolic end-space descriptions.
//
// Subcommands:
//   classify FILE [--json] [--mode strict|as-applied] [--trace]
//   order FILE [--dot PATH]
//   gens FILE [--json]
//   table [--json] [--mode ...]
//   oracle-check [--seed N] [--cases M]
//
// Exit codes: 0 success (unknown verdicts are success), 1 syntax error,
// 2 validation error, 3 internal inconsistency or oracle disagreement.
// ENDGAME_MODE overrides the default evaluation mode.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "endgame/emit.hpp"
#include "endgame/oracle.hpp"

using namespace endgame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSyntax = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

Mode default_mode() {
  if (const char* env = std::getenv("ENDGAME_MODE")) {
    if (auto m = parse_mode(env)) return *m;
    std::cerr << "warning: unrecognized ENDGAME_MODE '" << env << "', using as-applied\n";
  }
  return Mode::AsApplied;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SurfaceDesc load(const std::string& path) {
  SurfaceDesc d = parse_surface(read_file(path));
  if (d.name.empty()) d.name = path;
  return d;
}

int run_classify(const std::string& file, bool json, Mode mode, bool trace) {
  SurfaceDesc d = load(file);
  Analysis a = analyze(d);
  Report r = classify_report(a, mode);
  std::optional<GenSetRecipe> recipe;
  if (r.cb_generated.value == V3::Yes) {
    auto [lc, wit] = locally_cb(a, mode);
    recipe = synthesize(a, r, wit);
  }
  if (json)
    std::cout << report_to_json(r, recipe ? &*recipe : nullptr).dump(2) << "\n";
  else
    std::cout << render_report(r, trace);
  return kExitOk;
}

int run_order(const std::string& file, const std::string& dot_path) {
  SurfaceDesc d = load(file);
  Analysis a = analyze(d);
  Report r = classify_report(a, default_mode());
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    out << emit_dot(r);
    std::cout << "wrote " << dot_path << "\n";
  } else {
    std::cout << "classes of " << r.name << ":\n";
    for (auto& c : r.classes)
      std::cout << "  {" << c.name << "} mult=" << c.mult << (c.maximal ? " maximal" : "")
                << (c.stable ? "" : " unstable") << "\n";
    for (auto& [x, y] : r.edges) std::cout << "  {" << x << "} < {" << y << "}\n";
  }
  return kExitOk;
}

int run_gens(const std::string& file, bool json, Mode mode) {
  SurfaceDesc d = load(file);
  Analysis a = analyze(d);
  Report r = classify_report(a, mode);
  if (r.cb_generated.value != V3::Yes) {
    std::cout << "NotCBGenerated: " << d.name << " (cb_generated = "
              << to_string(r.cb_generated.value) << ")\n";
    return kExitOk;
  }
  auto [lc, wit] = locally_cb(a, mode);
  GenSetRecipe rec = synthesize(a, r, wit);
  if (json) {
    std::cout << recipe_to_json(rec).dump(2) << "\n";
    return kExitOk;
  }
  if (rec.globally_cb) {
    std::cout << d.name << ": globally CB; the recipe degenerates\n";
    return kExitOk;
  }
  std::cout << d.name << ": V_K with K = (genus " << rec.identity_nbhd.genus << ", "
            << rec.identity_nbhd.boundary << " boundary, " << rec.identity_nbhd.punctures
            << " punctures)\n";
  std::cout << "  D: " << rec.twist_set << "\n";
  std::cout << "  handle shifts: " << rec.handle_shifts.size() << "\n";
  for (auto& s : rec.handle_shifts)
    std::cout << "    regions (" << s.region_a << ", " << s.region_b << ")\n";
  std::cout << "  generalized shifts: " << rec.generalized_shifts.size() << "\n";
  for (auto& s : rec.generalized_shifts)
    std::cout << "    regions (" << s.region_a << ", " << s.region_b << ") " << s.tmpl.describe()
              << "\n";
  std::cout << "  half-twists: " << rec.half_twists.size() << "\n";
  for (auto& t : rec.half_twists)
    std::cout << "    class {" << t.class_name << "} regions (" << t.region_a << ", "
              << t.region_b << ")\n";
  return kExitOk;
}

int run_table(bool json, Mode mode) {
  auto rows = classify_corpus(mode);
  if (json) {
    ordered_json out = ordered_json::array();
    for (auto& r : rows) out.push_back(report_to_json(r.report));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << render_table(rows);
  }
  return kExitOk;
}

int run_oracle_check(uint32_t seed, int cases) {
  std::mt19937 rng(seed);
  Embedder em;
  int disagreements = 0;
  for (int i = 0; i < cases; ++i) {
    ExprPtr s = oracle::random_scattered(rng, 3, false);
    ExprPtr t = oracle::random_scattered(rng, 3, false);
    bool engine = em.clopen_embeds(s, t);
    bool oracle = oracle::embeds(s, t);
    if (engine != oracle) {
      ++disagreements;
      std::cout << "DISAGREE: " << to_string(s) << "  into  " << to_string(t)
                << "  engine=" << engine << " oracle=" << oracle << "\n";
    }
  }
  std::cout << cases << " cases, " << disagreements << " disagreements\n";
  return disagreements == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for coarse boundedness of big mapping class groups"};
  app.require_subcommand(1);

  std::string file, dot_path, mode_str;
  bool json = false, trace = false;
  uint32_t seed = 1;
  int cases = 200;

  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode_str, "evaluation mode: strict or as-applied")
        ->check(CLI::IsMember({"strict", "as-applied"}));
  };

  auto* c_classify = app.add_subcommand("classify", "classify a surface description");
  c_classify->add_option("file", file, "surface file")->required();
  c_classify->add_flag("--json", json, "emit JSON");
  c_classify->add_flag("--trace", trace, "print derivation traces");
  add_mode(c_classify);

  auto* c_order = app.add_subcommand("order", "print or export the end class poset");
  c_order->add_option("file", file, "surface file")->required();
  c_order->add_option("--dot", dot_path, "write a DOT Hasse diagram");

  auto* c_gens = app.add_subcommand("gens", "synthesize the CB generating set recipe");
  c_gens->add_option("file", file, "surface file")->required();
  c_gens->add_flag("--json", json, "emit JSON");
  add_mode(c_gens);

  auto* c_table = app.add_subcommand("table", "classify the built-in corpus");
  c_table->add_flag("--json", json, "emit JSON");
  add_mode(c_table);

  auto* c_oracle = app.add_subcommand("oracle-check", "compare the engine with the desk oracle");
  c_oracle->add_option("--seed", seed, "random seed");
  c_oracle->add_option("--cases", cases, "number of random cases");

  CLI11_PARSE(app, argc, argv);

  Mode mode = mode_str.empty() ? default_mode() : *parse_mode(mode_str);

  try {
    if (*c_classify) return run_classify(file, json, mode, trace);
    if (*c_order) return run_order(file, dot_path);
    if (*c_gens) return run_gens(file, json, mode);
    if (*c_table) return run_table(json, mode);
    if (*c_oracle) return run_oracle_check(seed, cases);
  } catch (const parse_error& e) {
    std::cerr << e.what() << "\n";
    return kExitSyntax;
  } catch (const validation_error& e) {
    std::cerr << "ValidationError: " << e.what() << "\n";
    return kExitValidation;
  } catch (const internal_inconsistency& e) {
    std::cerr << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
