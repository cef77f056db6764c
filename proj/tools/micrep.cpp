#include "micrep/closure.hpp"
#include "micrep/error.hpp"
#include "micrep/hilbert.hpp"
#include "micrep/lift.hpp"
#include "micrep/oracle.hpp"
#include "micrep/project.hpp"
#include "micrep/system_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace micrep;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitDisagreement = 4;

struct Common {
  std::string rounds = "auto";
  std::size_t max_auto_rounds = 3;
  std::size_t max_subset = 12;
  std::string subsets = "independent";
  std::string box = "-3,3";
  unsigned long denominator = 2;
  std::string witness_bound = "50";
  std::string output;
};

std::pair<Rational, Rational> parse_box(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("--box: expected 'a,b'", 0);
  Rational lo = parse_rational(text.substr(0, comma));
  Rational hi = parse_rational(text.substr(comma + 1));
  if (lo > hi) throw ParseError("--box: lower end exceeds upper end", comma);
  return {lo, hi};
}

ClosureOptions closure_options(const Common& c) {
  ClosureOptions o;
  if (c.rounds != "auto") {
    Rational r = parse_rational(c.rounds);
    if (!is_integer(r) || r < 0) throw ParseError("--rounds: expected a count or 'auto'", 0);
    o.rounds = static_cast<std::size_t>(r.get_num().get_ui());
  }
  o.max_auto_rounds = c.max_auto_rounds;
  o.tdi.max_subset_rows = c.max_subset;
  if (c.subsets == "all") o.tdi.mode = SubsetMode::All;
  else if (c.subsets != "independent") throw ParseError("--subsets: 'independent' or 'all'", 0);
  auto [lo, hi] = parse_box(c.box);
  o.grid.lower = lo;
  o.grid.upper = hi;
  o.grid.denominator = c.denominator;
  o.witness_bound = Integer(c.witness_bound);
  return o;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw Error("cannot write '" + c.output + "'");
  out << text;
}

SystemFile load(const std::string& path, FileFormat expected, const char* what) {
  SystemFile file = read_system_file(path);
  if (file.format != expected) throw ParseError(path, 1, std::string("expected a ") + what + " file");
  return file;
}

Assignment parse_point(const std::string& text) {
  Assignment point;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("--point: expected name=value", 0);
    point[Var(item.substr(0, eq))] = parse_rational(item.substr(eq + 1));
  }
  return point;
}

std::vector<Var> parse_names(const std::string& text) {
  std::vector<Var> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.emplace_back(item);
  return out;
}

std::string function_listing(const FeasibilityFunctions& f) {
  std::string out = "format mic\n";
  out += "# rounds " + std::to_string(f.rounds_used);
  out += f.validated ? "; validated on " + f.validation + "\n" : "; not validated\n";
  for (const Var& b : f.parameters) out += "var " + b.name() + " int\n";
  for (const auto& g : f.functions) out += "chv " + format_tree(g) + " <= 0\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conversions between mixed-integer Chvatal and MILP representations"};
  app.require_subcommand(1);
  Common common;
  auto add_closure_flags = [&](CLI::App* sub) {
    sub->add_option("--rounds", common.rounds, "closure rounds: a count or 'auto'");
    sub->add_option("--max-auto-rounds", common.max_auto_rounds, "escalation limit in auto mode");
    sub->add_option("--max-subset", common.max_subset, "row cap for --subsets all");
    sub->add_option("--subsets", common.subsets, "row subsets for aggregation: independent|all");
    sub->add_option("--box", common.box, "validation grid range 'a,b'");
    sub->add_option("--denominator", common.denominator, "grid denominator");
    sub->add_option("--witness-bound", common.witness_bound, "integer witness bound");
  };

  std::string input, second, var, order, tree_text, point_text;
  bool minimal = false;

  auto* lift = app.add_subcommand("lift", "MIC system to MILP");
  lift->add_option("input", input, "mic file")->required();
  lift->add_option("-o,--output", common.output);

  auto* project = app.add_subcommand("project", "MILP projection to a MIC system");
  project->add_option("input", input, "milp file")->required();
  project->add_option("-o,--output", common.output);
  add_closure_flags(project);

  auto* eliminate = app.add_subcommand("eliminate", "project variables out of a MIC system");
  eliminate->add_option("input", input, "mic file")->required();
  auto* var_opt = eliminate->add_option("--var", var, "variable to eliminate");
  eliminate->add_option("--order", order, "comma separated elimination order")->excludes(var_opt);
  eliminate->add_option("-o,--output", common.output);
  add_closure_flags(eliminate);

  auto* closure = app.add_subcommand("closure", "symbolic Chvatal closure of C z >= b");
  closure->add_option("input", input, "matrix file")->required();
  closure->add_option("-o,--output", common.output);
  add_closure_flags(closure);

  auto* hilbert = app.add_subcommand("hilbert", "generating set of a cone");
  hilbert->add_option("input", input, "cone file")->required();
  hilbert->add_flag("--minimal-hilbert", minimal, "drop reducible vectors (pointed cones)");
  hilbert->add_option("-o,--output", common.output);

  auto* monoid = app.add_subcommand("monoid", "Chvatal description of an integral monoid");
  monoid->add_option("input", input, "monoid file")->required();
  monoid->add_option("-o,--output", common.output);
  add_closure_flags(monoid);

  auto* check = app.add_subcommand("check", "compare a MIC system with a projection");
  check->add_option("lhs", input, "mic file")->required();
  check->add_option("rhs", second, "mic or milp file over more variables")->required();
  std::string check_box = "-6,6";
  check->add_option("--box", check_box, "grid range 'a,b'")->capture_default_str();
  check->add_option("--denominator", common.denominator, "grid denominator");
  check->add_option("--witness-bound", common.witness_bound, "auxiliary search bound");

  auto* eval = app.add_subcommand("eval", "evaluate a Chvatal tree");
  eval->add_option("tree", tree_text, "tree text, or a file holding one")->required();
  eval->add_option("--point", point_text, "name=value,... assignments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*lift) {
      SystemFile f = load(input, FileFormat::Mic, "mic");
      emit(common, format_milp(lift_to_milp(f.mic).milp));
    } else if (*project) {
      SystemFile f = load(input, FileFormat::Milp, "milp");
      emit(common, format_mic(project_to_mic(f.milp, closure_options(common))));
    } else if (*eliminate) {
      SystemFile f = load(input, FileFormat::Mic, "mic");
      std::vector<Var> vars = var.empty() ? parse_names(order) : std::vector<Var>{Var(var)};
      if (vars.empty()) vars = f.mic.variables();
      emit(common, format_mic(eliminate_variables(f.mic, vars, closure_options(common))));
    } else if (*closure) {
      SystemFile f = load(input, FileFormat::Matrix, "matrix");
      ClosureOptions o = closure_options(common);
      std::size_t rounds = o.rounds.value_or(1);
      SymbolicClosure state = closure_rounds(f.matrix, f.rhs, rounds, o.tdi);
      std::string out = "# " + std::to_string(state.rows.rows()) + " rows after " +
                        std::to_string(rounds) + " rounds\n";
      for (std::size_t r = 0; r < state.rows.rows(); ++r) {
        out += "row";
        for (const Rational& x : state.rows.row(r)) out += " " + to_string(x);
        out += " >= " + format_tree(state.rhs[r]) + "\n";
      }
      for (const auto& t : state.conditions) out += "cond " + format_tree(t) + " <= 0\n";
      emit(common, out);
    } else if (*hilbert) {
      SystemFile f = load(input, FileFormat::Cone, "cone");
      HilbertOptions o;
      o.minimalize = minimal;
      GeneratingSet set = hilbert_generating_set(Cone{f.generators}, o);
      std::string out;
      for (const auto& v : set.vectors) {
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + to_string(v[i]);
        out += "\n";
      }
      emit(common, out);
    } else if (*monoid) {
      SystemFile f = load(input, FileFormat::Monoid, "monoid");
      emit(common, function_listing(monoid_representation(monoid_matrix(f.generators),
                                                          closure_options(common))));
    } else if (*check) {
      SystemFile lhs = load(input, FileFormat::Mic, "mic");
      SystemFile rhs = read_system_file(second);
      auto [lo, hi] = parse_box(check_box);
      Box box = Box::for_system(lhs.mic, lo, hi, common.denominator);
      const Rational w(Integer(common.witness_bound));
      ProjectionReport report;
      if (rhs.format == FileFormat::Milp) {
        Box witness;
        for (const Var& v : rhs.milp.continuous_aux_vars) witness.add(v, -w, w, common.denominator);
        for (const Var& v : rhs.milp.integer_aux_vars) witness.add(v, -w, w, 1);
        report = check_projection_equality(lhs.mic, rhs.milp, box, witness);
      } else if (rhs.format == FileFormat::Mic) {
        Box witness;
        for (const Var& v : rhs.mic.variables()) {
          if (!lhs.mic.declares(v)) witness.add(v, -w, w, common.denominator);
        }
        report = check_projection_equality(lhs.mic, rhs.mic, box, witness);
      } else {
        throw ParseError(second, 1, "expected a mic or milp file");
      }
      std::cerr << "box: " << report.box << "; witnesses within [-" << common.witness_bound
                << "," << common.witness_bound << "]; " << report.points_checked
                << " points, " << report.disagreements.size() << " disagreements\n";
      std::cout << format_report(report);
      return report.agrees() ? 0 : kExitDisagreement;
    } else if (*eval) {
      std::string text = tree_text;
      if (std::filesystem::is_regular_file(text)) {
        std::ifstream in(text);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
      }
      ChvatalTree tree = parse_tree(text);
      Assignment point = point_text.empty() ? Assignment{} : parse_point(point_text);
      std::cout << to_string(evaluate(tree, point)) << "\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "micrep: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapExceeded& e) {
    std::cerr << "micrep: cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    std::cerr << "micrep: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
