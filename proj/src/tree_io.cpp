#include "micrep/error.hpp"
#include "micrep/tree.hpp"

#include <cctype>
#include <sstream>

namespace micrep {

std::string format_affine(const AffineForm& form) {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const Rational& value, const std::string* var) {
    Rational magnitude = abs(value);
    if (first) {
      if (value < 0) out << '-';
    } else {
      out << (value < 0 ? " - " : " + ");
    }
    out << to_string(magnitude);
    if (var) out << '*' << *var;
    first = false;
  };
  for (const auto& [v, c] : form.coefficients()) emit(c, &v.name());
  if (form.constant() != 0 || first) emit(form.constant(), nullptr);
  return out.str();
}

std::string format_tree(const ChvatalTree& tree) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, LeafNode>) {
          return "(aff " + format_affine(n.form) + ")";
        } else if constexpr (std::is_same_v<N, CeilNode>) {
          return "(ceil " + format_tree(n.child) + ")";
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          return "(scale " + to_string(n.weight) + " " + format_tree(n.child) + ")";
        } else {
          return "(sum " + to_string(n.left_weight) + " " + format_tree(n.left) + " " +
                 to_string(n.right_weight) + " " + format_tree(n.right) + ")";
        }
      },
      tree.node());
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  ChvatalTree parse_all() {
    ChvatalTree tree = parse_tree();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return tree;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Rational unsigned_rational() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected rational literal");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t den_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (den_start == pos_) fail("expected denominator");
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      pos_ = start;
      fail("invalid rational literal");
    }
  }

  Rational weight() {
    skip_space();
    std::size_t start = pos_;
    if (peek('-')) {
      ++pos_;
      Rational magnitude = unsigned_rational();
      if (magnitude != 0) {
        pos_ = start;
        fail("negative weight");
      }
      return magnitude;
    }
    return unsigned_rational();
  }

  ChvatalTree parse_tree() {
    expect('(');
    std::size_t keyword_pos = pos_;
    std::string keyword = identifier();
    ChvatalTree result;
    if (keyword == "aff") {
      result = ChvatalTree::leaf(affine_body());
    } else if (keyword == "ceil") {
      result = ChvatalTree::ceil(parse_tree());
    } else if (keyword == "scale") {
      Rational w = weight();
      result = ChvatalTree::scale(std::move(w), parse_tree());
    } else if (keyword == "sum") {
      Rational a = weight();
      ChvatalTree left = parse_tree();
      Rational b = weight();
      ChvatalTree right = parse_tree();
      result = ChvatalTree::sum(std::move(a), std::move(left), std::move(b), std::move(right));
    } else {
      pos_ = keyword_pos;
      fail("unknown node '" + keyword + "'");
    }
    expect(')');
    return result;
  }

  AffineForm affine_body() {
    AffineForm form;
    bool first = true;
    while (!peek(')')) {
      if (pos_ >= text_.size()) fail("unterminated affine form");
      int sign = 1;
      bool saw_sign = false;
      while (peek('+') || peek('-')) {
        if (text_[pos_] == '-') sign = -sign;
        ++pos_;
        saw_sign = true;
      }
      if (!first && !saw_sign) fail("expected '+' or '-' between affine terms");
      Rational coefficient(1);
      bool has_coefficient = false;
      if (at_digit()) {
        coefficient = unsigned_rational();
        has_coefficient = true;
      }
      if (peek('*') || !has_coefficient) {
        if (has_coefficient) ++pos_;
        form.add_term(Var(identifier()), sign * coefficient);
      } else {
        form.add_constant(sign * coefficient);
      }
      first = false;
    }
    return form;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ChvatalTree parse_tree(std::string_view text) { return TreeParser(text).parse_all(); }

}  // namespace micrep
