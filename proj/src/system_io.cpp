#include "micrep/system_io.hpp"

#include "micrep/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace micrep {

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::string source) : source_(std::move(source)) {}

  SystemFile run(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_;
      std::string_view line = text.substr(start, end - start);
      auto hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (!line.empty()) statement(line);
      start = end + 1;
    }
    finish();
    return std::move(file_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(source_, line_, message);
  }

  Rational rational(const std::string& word) const {
    try {
      return parse_rational(word);
    } catch (const ParseError&) {
      fail("bad rational literal '" + word + "'");
    }
  }

  void statement(std::string_view line) {
    auto space = line.find_first_of(" \t");
    std::string keyword(line.substr(0, space));
    std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
    if (keyword == "format") {
      if (seen_statement_) fail("'format' must come first");
      format_line(rest);
    } else if (keyword == "var") {
      if (constraints_) fail("variables must be declared before constraints");
      var_line(rest);
    } else if (keyword == "row") {
      constraints_ = true;
      row_line(rest);
    } else if (keyword == "chv") {
      constraints_ = true;
      chv_line(rest);
    } else if (keyword == "gen") {
      constraints_ = true;
      gen_line(rest);
    } else {
      fail("unknown statement '" + keyword + "'");
    }
    seen_statement_ = true;
  }

  void format_line(std::string_view rest) {
    auto words = split_words(rest);
    if (words.size() != 1) fail("expected 'format mic|milp|monoid|cone|matrix'");
    const std::string& f = words[0];
    if (f == "mic") file_.format = FileFormat::Mic;
    else if (f == "milp") file_.format = FileFormat::Milp;
    else if (f == "monoid") file_.format = FileFormat::Monoid;
    else if (f == "cone") file_.format = FileFormat::Cone;
    else if (f == "matrix") file_.format = FileFormat::Matrix;
    else fail("unknown format '" + f + "'");
  }

  void var_line(std::string_view rest) {
    auto words = split_words(rest);
    if (words.size() < 2 || words.size() > 3) fail("expected 'var <name> cont|int [aux]'");
    if (!is_identifier(words[0])) fail("bad variable name '" + words[0] + "'");
    Var v(words[0]);
    if (!names_.insert(v).second) fail("variable '" + words[0] + "' declared twice");
    VarKind kind;
    if (words[1] == "cont") kind = VarKind::Continuous;
    else if (words[1] == "int") kind = VarKind::Integer;
    else fail("variable kind must be 'cont' or 'int'");
    bool aux = false;
    if (words.size() == 3) {
      if (words[2] != "aux") fail("expected 'aux' after the kind");
      if (file_.format != FileFormat::Milp) fail("'aux' is only meaningful in milp files");
      aux = true;
    }
    if (file_.format == FileFormat::Matrix && kind != VarKind::Integer) {
      fail("matrix files declare integer variables only");
    }
    columns_.push_back(Column{v, kind, aux});
  }

  void row_line(std::string_view rest) {
    auto words = split_words(rest);
    const std::size_t n = columns_.size();
    if (words.size() != n + 2) {
      fail("row needs " + std::to_string(n) + " coefficients, a relation and a right-hand side");
    }
    RationalVector coeffs;
    for (std::size_t j = 0; j < n; ++j) coeffs.push_back(rational(words[j]));
    const std::string& rel = words[n];
    if (rel != ">=" && rel != "<=" && rel != "=") fail("relation must be >=, <= or =");
    const std::string& rhs_word = words[n + 1];

    if (file_.format == FileFormat::Matrix) {
      ChvatalTree rhs;
      bool symbolic = is_identifier(rhs_word);
      rhs = symbolic ? ChvatalTree::leaf(AffineForm::variable(Var(rhs_word)))
                     : ChvatalTree::leaf(AffineForm(rational(rhs_word)));
      if (rel != ">=") fail("matrix rows use '>='");
      matrix_rows_.push_back(std::move(coeffs));
      file_.rhs.push_back(std::move(rhs));
      return;
    }
    Rational rhs = rational(rhs_word);
    if (file_.format == FileFormat::Mic) {
      std::vector<Var> vars;
      for (const Column& c : columns_) vars.push_back(c.var);
      if (rel == ">=" || rel == "=") {
        file_.mic.inequalities.push_back(affine_at_least(vars, coeffs, rhs));
      }
      if (rel == "<=" || rel == "=") {
        AffineForm form;
        for (std::size_t j = 0; j < n; ++j) form.add_term(vars[j], coeffs[j]);
        file_.mic.inequalities.push_back({ChvatalTree::leaf(std::move(form)), rhs});
      }
    } else if (file_.format == FileFormat::Milp) {
      if (rel == ">=" || rel == "=") milp_rows_.push_back({coeffs, rhs});
      if (rel == "<=" || rel == "=") {
        for (Rational& c : coeffs) c = -c;
        milp_rows_.push_back({coeffs, -rhs});
      }
    } else {
      fail("'row' is not allowed in this format");
    }
  }

  void chv_line(std::string_view rest) {
    if (file_.format != FileFormat::Mic) fail("'chv' is only allowed in mic files");
    auto at = rest.rfind("<=");
    if (at == std::string_view::npos) fail("expected '<tree> <= <rational>'");
    ChvatalTree tree;
    try {
      tree = parse_tree(rest.substr(0, at));
    } catch (const ParseError& e) {
      fail(std::string("bad tree: ") + e.what());
    }
    auto words = split_words(rest.substr(at + 2));
    if (words.size() != 1) fail("expected one rational after '<='");
    for (const Var& v : variables(tree)) {
      if (!names_.count(v)) fail("undeclared variable '" + v.name() + "'");
    }
    file_.mic.inequalities.push_back({std::move(tree), rational(words[0])});
  }

  void gen_line(std::string_view rest) {
    if (file_.format != FileFormat::Monoid && file_.format != FileFormat::Cone) {
      fail("'gen' is only allowed in monoid and cone files");
    }
    auto words = split_words(rest);
    if (words.empty()) fail("empty generator");
    RationalVector g;
    for (const auto& w : words) {
      Rational x = rational(w);
      if (!is_integer(x)) fail("generators must be integral");
      g.push_back(x);
    }
    if (!file_.generators.empty() && g.size() != file_.generators.front().size()) {
      fail("generators differ in length");
    }
    file_.generators.push_back(std::move(g));
  }

  void finish() {
    switch (file_.format) {
      case FileFormat::Mic:
        for (const Column& c : columns_) {
          (c.kind == VarKind::Integer ? file_.mic.integer_vars : file_.mic.continuous_vars)
              .push_back(c.var);
        }
        break;
      case FileFormat::Milp: {
        std::vector<std::size_t> order[3];
        for (std::size_t j = 0; j < columns_.size(); ++j) {
          const Column& c = columns_[j];
          if (!c.aux) {
            file_.milp.target_vars.push_back(c.var);
            file_.milp.target_kinds.push_back(c.kind);
            order[0].push_back(j);
          } else if (c.kind == VarKind::Continuous) {
            file_.milp.continuous_aux_vars.push_back(c.var);
            order[1].push_back(j);
          } else {
            file_.milp.integer_aux_vars.push_back(c.var);
            order[2].push_back(j);
          }
        }
        const std::size_t m = milp_rows_.size();
        Matrix* blocks[3] = {&file_.milp.A, &file_.milp.B, &file_.milp.C};
        for (int k = 0; k < 3; ++k) {
          *blocks[k] = Matrix(m, order[k].size());
          for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t t = 0; t < order[k].size(); ++t) {
              (*blocks[k])(r, t) = milp_rows_[r].first[order[k][t]];
            }
          }
        }
        for (const auto& row : milp_rows_) file_.milp.d.push_back(row.second);
        break;
      }
      case FileFormat::Matrix:
        file_.matrix = Matrix(matrix_rows_, columns_.size());
        break;
      case FileFormat::Monoid:
      case FileFormat::Cone:
        if (!columns_.empty()) fail("monoid and cone files take no variables");
        break;
    }
  }

  struct Column {
    Var var;
    VarKind kind;
    bool aux;
  };

  std::string source_;
  std::size_t line_ = 0;
  bool seen_statement_ = false;
  bool constraints_ = false;
  SystemFile file_;
  std::vector<Column> columns_;
  std::set<Var> names_;
  std::vector<std::pair<RationalVector, Rational>> milp_rows_;
  std::vector<RationalVector> matrix_rows_;
};

}  // namespace

SystemFile parse_system(std::string_view text, const std::string& source) {
  return Parser(source).run(text);
}

SystemFile read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system(buffer.str(), path);
}

std::string format_mic(const MicSystem& sys) {
  std::string out = "format mic\n";
  for (const Var& v : sys.continuous_vars) out += "var " + v.name() + " cont\n";
  for (const Var& v : sys.integer_vars) out += "var " + v.name() + " int\n";
  for (const auto& ineq : sys.inequalities) {
    out += "chv " + format_tree(ineq.lhs) + " <= " + to_string(ineq.rhs) + "\n";
  }
  return out;
}

std::string format_milp(const MilpSystem& sys) {
  sys.validate();
  std::string out = "format milp\n";
  for (std::size_t j = 0; j < sys.target_vars.size(); ++j) {
    out += "var " + sys.target_vars[j].name() +
           (sys.target_kinds[j] == VarKind::Integer ? " int\n" : " cont\n");
  }
  for (const Var& v : sys.continuous_aux_vars) out += "var " + v.name() + " cont aux\n";
  for (const Var& v : sys.integer_aux_vars) out += "var " + v.name() + " int aux\n";
  for (std::size_t r = 0; r < sys.row_count(); ++r) {
    out += "row";
    for (const Matrix* block : {&sys.A, &sys.B, &sys.C}) {
      for (const Rational& x : block->row(r)) out += " " + to_string(x);
    }
    out += " >= " + to_string(sys.d[r]) + "\n";
  }
  return out;
}

Matrix monoid_matrix(const std::vector<RationalVector>& generators) {
  const std::size_t m = generators.empty() ? 0 : generators.front().size();
  Matrix a(m, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    for (std::size_t i = 0; i < m; ++i) a(i, j) = generators[j][i];
  }
  return a;
}

}  // namespace micrep
