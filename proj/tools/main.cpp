#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "twarrow/bisset.hpp"
#include "twarrow/common.hpp"
#include "twarrow/fincat.hpp"
#include "twarrow/formats.hpp"
#include "twarrow/gss.hpp"
#include "twarrow/sset.hpp"
#include "twarrow/suites.hpp"

using namespace twarrow;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << content;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string dot_of_category(const formats::NamedCategory& c) {
  const auto& cat = c.category;
  std::string out = "digraph twarrow {\n";
  for (fincat::ObjId x = 0; x < cat.object_count(); ++x)
    out += "  \"" + dot_escape(c.objects[x]) + "\";\n";
  for (fincat::MorId m = 0; m < cat.morphism_count(); ++m) {
    if (cat.identity(cat.src(m)) == m) continue;
    out += "  \"" + dot_escape(c.objects[cat.src(m)]) + "\" -> \"" +
           dot_escape(c.objects[cat.tgt(m)]) + "\" [label=\"" + dot_escape(c.morphisms[m]) +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

// Vertices as nodes, nondegenerate edges as arrows (initial to final vertex).
std::string dot_of_sset(const formats::NamedSSet& s) {
  const auto& set = s.sset;
  std::string out = "digraph twarrow {\n";
  for (sset::Cell v = 0; v < set.count(0); ++v)
    out += "  \"" + dot_escape(s.names[0][v]) + "\";\n";
  if (set.trunc() >= 1)
    for (sset::Cell e : set.nondegenerate(1))
      out += "  \"" + dot_escape(s.names[0][set.face(1, 1, e)]) + "\" -> \"" +
             dot_escape(s.names[0][set.face(1, 0, e)]) + "\" [label=\"" +
             dot_escape(s.names[1][e]) + "\"];\n";
  out += "}\n";
  return out;
}

// Names the homotopy category of a built space: its objects are the level-0
// objects, which both recipe kinds take verbatim from the input category.
formats::NamedCategory named_ho(const formats::SpaceRecipe& recipe,
                                const gss::GroupoidSimplicialSpace& w) {
  const auto ho = gss::ho_category(w);
  if (ho.category.object_count() == recipe.category.objects.size())
    return formats::name_category_with(ho.category, recipe.category.objects);
  return formats::name_category(ho.category);
}

// --- tw ------------------------------------------------------------------

int cmd_tw(const std::string& input_path, const std::string& out_path) {
  const auto text = read_file(input_path);
  const auto kind = formats::sniff_kind(text);
  if (kind == formats::DocKind::category) {
    const auto named = formats::parse_category(text);
    const auto tw = fincat::tw_cat(named.category);
    const auto named_tw = formats::name_category_with(tw.category, named.morphisms);
    std::string out = formats::serialize_category(named_tw);
    const auto n = named.category.object_count();
    out += "# projection to the (source, target) pair of the input:\n";
    for (fincat::ObjId g = 0; g < tw.category.object_count(); ++g) {
      const auto pr = tw.projection.object_map[g];
      out += "# object " + named_tw.objects[g] + " -> (" + named.objects[pr / n] + ", " +
             named.objects[pr % n] + ")\n";
    }
    for (fincat::MorId m = 0; m < tw.category.morphism_count(); ++m)
      out += "# morphism " + named_tw.morphisms[m] + " -> (" +
             named.morphisms[tw.mor_pair[m].first] + ", " +
             named.morphisms[tw.mor_pair[m].second] + ")\n";
    write_output(out_path, out);
    return 0;
  }
  if (kind == formats::DocKind::sset) {
    const auto named = formats::parse_sset(text);
    const int trunc = named.sset.trunc();
    const auto presentation = bisset::tw_presentation(bisset::cell_presentation(named.sset));
    const auto evaluated = bisset::evaluate(presentation, 2 * trunc + 1, 0);
    const auto twisted = bisset::underlying_sset(evaluated.bisset);
    write_output(out_path, formats::serialize_sset(formats::name_sset(twisted)));
    return 0;
  }
  throw Error("tw expects a category or simplicial-set file");
}

// --- check ---------------------------------------------------------------

struct CheckArgs {
  std::string suite;
  std::string input;
  std::string out;
  std::string format = "text";
  int n_max = 4;
  int k_max = 9;
  int trunc = 7;
  bool trunc_given = false;
  bool timings = false;
};

std::string check_echo(const CheckArgs& a, const std::optional<formats::SpaceRecipe>& recipe) {
  std::string echo = "check " + a.suite + " --n-max " + std::to_string(a.n_max) + " --k-max " +
                     std::to_string(a.k_max);
  if (recipe) echo += " --trunc " + std::to_string(recipe->trunc);
  if (!a.input.empty()) echo += " " + a.input;
  return echo;
}

std::string text_report(const suites::SuiteReport& report, const std::string& echo,
                        long long ms) {
  std::string out = std::string("twarrow ") + kVersion + "\n";
  out += "command: " + echo + "\n";
  out += "suite: " + report.suite + "\n";
  for (const auto& c : report.checks) {
    out += "check: " + c.name + " -- " + (c.pass ? "pass" : "FAIL");
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += "\n";
    if (!c.witness.empty()) out += "  witness: " + c.witness + "\n";
  }
  if (ms >= 0) out += "time: " + std::to_string(ms) + " ms\n";
  out += std::string("result: ") + (report.pass ? "pass" : "FAIL") + "\n";
  return out;
}

std::string json_report_of(const suites::SuiteReport& report, const std::string& echo,
                           long long ms) {
  ordered_json doc;
  doc["tool"] = "twarrow";
  doc["version"] = kVersion;
  doc["command"] = echo;
  doc["suite"] = report.suite;
  doc["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json check;
    check["name"] = c.name;
    check["pass"] = c.pass;
    if (!c.detail.empty()) check["detail"] = c.detail;
    if (!c.witness.empty()) check["witness"] = c.witness;
    doc["checks"].push_back(check);
  }
  if (ms >= 0) doc["time_ms"] = ms;
  doc["pass"] = report.pass;
  return doc.dump(2) + "\n";
}

int cmd_check(const CheckArgs& a) {
  const bool needs_space = suites::suite_needs_space(a.suite);
  std::optional<formats::SpaceRecipe> recipe;
  if (needs_space) {
    if (a.input.empty()) throw Error("suite '" + a.suite + "' needs an input file");
    const auto text = read_file(a.input);
    if (formats::sniff_kind(text) != formats::DocKind::space)
      throw Error("suite '" + a.suite + "' needs a space recipe (a gss file)");
    recipe = formats::parse_space(text);
    if (a.trunc_given) recipe->trunc = a.trunc;
  } else if (!a.input.empty()) {
    throw Error("suite '" + a.suite + "' takes no input file");
  }

  const auto start = std::chrono::steady_clock::now();
  const auto report =
      suites::run_suite(a.suite, recipe ? &*recipe : nullptr, {a.n_max, a.k_max});
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  const auto echo = check_echo(a, recipe);
  const long long shown_ms = a.timings ? static_cast<long long>(ms) : -1;
  write_output(a.out, a.format == "json" ? json_report_of(report, echo, shown_ms)
                                         : text_report(report, echo, shown_ms));
  return report.pass ? 0 : 1;
}

// --- export --------------------------------------------------------------

int cmd_export(const std::string& input_path, const std::string& out_path,
               const std::string& format) {
  const auto text = read_file(input_path);
  const auto kind = formats::sniff_kind(text);
  if (format == "dot") {
    if (kind == formats::DocKind::category) {
      write_output(out_path, dot_of_category(formats::parse_category(text)));
    } else if (kind == formats::DocKind::sset) {
      write_output(out_path, dot_of_sset(formats::parse_sset(text)));
    } else {
      const auto recipe = formats::parse_space(text);
      write_output(out_path, dot_of_category(named_ho(recipe, formats::build_space(recipe))));
    }
    return 0;
  }
  // json-report: a structural summary of the parsed object
  ordered_json doc;
  doc["tool"] = "twarrow";
  doc["version"] = kVersion;
  if (kind == formats::DocKind::category) {
    const auto named = formats::parse_category(text);
    doc["kind"] = "category";
    doc["objects"] = named.category.object_count();
    doc["morphisms"] = named.category.morphism_count();
    doc["thin"] = named.category.is_thin();
  } else if (kind == formats::DocKind::sset) {
    const auto named = formats::parse_sset(text);
    doc["kind"] = "sset";
    doc["trunc"] = named.sset.trunc();
    auto cells = ordered_json::array();
    auto nondeg = ordered_json::array();
    for (int n = 0; n <= named.sset.trunc(); ++n) {
      cells.push_back(named.sset.count(n));
      nondeg.push_back(named.sset.nondegenerate(n).size());
    }
    doc["cells"] = cells;
    doc["nondegenerate"] = nondeg;
  } else {
    const auto recipe = formats::parse_space(text);
    const auto space = formats::build_space(recipe);
    doc["kind"] = "space";
    doc["recipe"] = recipe.kind == formats::SpaceRecipe::Kind::classifying_diagram
                        ? "classifying-diagram"
                        : "discrete-nerve";
    doc["trunc"] = recipe.trunc;
    doc["category-objects"] = recipe.category.category.object_count();
    auto objects = ordered_json::array();
    auto morphisms = ordered_json::array();
    for (int n = 0; n <= space.trunc(); ++n) {
      objects.push_back(space.level(n).object_count());
      morphisms.push_back(space.level(n).morphism_count());
    }
    doc["level-objects"] = objects;
    doc["level-morphisms"] = morphisms;
  }
  write_output(out_path, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted arrow constructions for finite categories, simplicial sets, and "
               "groupoid-valued spaces"};
  app.require_subcommand(1);

  std::string tw_input, tw_out;
  auto* tw = app.add_subcommand("tw", "Twist a category or simplicial-set file");
  tw->add_option("input", tw_input, "category or sset file")->required();
  tw->add_option("--out", tw_out, "output file (stdout when omitted)");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Run a named check suite");
  check->add_option("suite", check_args.suite, "one of: boundary-mono, corner-mono, segal, "
                    "complete, hoequiv-pullback, fw-equiv, left-fib, fiber-slice")
      ->required();
  check->add_option("input", check_args.input, "space recipe file (gss) for the space suites");
  check->add_option("--n-max,--n", check_args.n_max, "largest degree under test")
      ->capture_default_str();
  check->add_option("--k-max,--k", check_args.k_max, "largest level swept by embedding suites")
      ->capture_default_str();
  auto* trunc_opt =
      check->add_option("--trunc", check_args.trunc,
                        "override the truncation of the input recipe")
          ->capture_default_str();
  check->add_option("--format", check_args.format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  check->add_option("--out", check_args.out, "output file (stdout when omitted)");
  check->add_flag("--timings", check_args.timings, "include wall time in the report");

  std::string export_input, export_out, export_format = "dot";
  auto* exp = app.add_subcommand("export", "Render a file as a graph or summary");
  exp->add_option("input", export_input, "category, sset, or gss file")->required();
  exp->add_option("--format", export_format, "export format")
      ->check(CLI::IsMember({"dot", "json-report"}))
      ->capture_default_str();
  exp->add_option("--out", export_out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (tw->parsed()) return cmd_tw(tw_input, tw_out);
    if (check->parsed()) {
      check_args.trunc_given = trunc_opt->count() > 0;
      return cmd_check(check_args);
    }
    return cmd_export(export_input, export_out, export_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
