#include "chainviz/state_expr.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include <fmt/format.h>

namespace chainviz {

bool Sum::operator==(const Sum& other) const { return terms == other.terms; }
bool Product::operator==(const Product& other) const { return factors == other.factors; }

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error(fmt::format("at position {}: {}", position, message)),
      position_(position) {}

namespace {

enum class Kind { state, op };

struct Parsed {
  StateExpr expr;
  Kind kind;
  std::size_t position;
};

class Parser {
 public:
  Parser(std::string_view src, int n_sites) : src_(src), n_sites_(n_sites) {}

  StateExpr parse() {
    skip_ws();
    if (at_end()) throw ParseError(0, "empty expression");
    Parsed top = parse_expr();
    skip_ws();
    if (!at_end()) fail(fmt::format("unexpected '{}'", src_[pos_]));
    if (top.kind != Kind::state) {
      throw ParseError(top.position, "operator chain is not applied to 'vac'");
    }
    return std::move(top.expr);
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }

  static bool is_ident_char(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
  static bool is_number_start(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.';
  }

  // Identifier at the cursor without consuming it.
  std::string_view peek_ident() const {
    std::size_t end = pos_;
    while (end < src_.size() && is_ident_char(src_[end])) ++end;
    return src_.substr(pos_, end - pos_);
  }

  Parsed parse_expr() {
    skip_ws();
    const std::size_t start = pos_;
    std::vector<SignedTerm> terms;
    std::optional<Kind> kind;
    bool negated = false;
    if (peek() == '+' || peek() == '-') {
      negated = peek() == '-';
      ++pos_;
    }
    while (true) {
      Parsed term = parse_term();
      if (kind && *kind != term.kind) {
        throw ParseError(term.position, "cannot add a state and an operator");
      }
      kind = term.kind;
      terms.push_back({negated, std::move(term.expr)});
      skip_ws();
      if (peek() != '+' && peek() != '-') break;
      negated = peek() == '-';
      ++pos_;
    }
    if (terms.size() == 1 && !terms.front().negated) {
      return {std::move(terms.front().expr), *kind, start};
    }
    return {StateExpr{Sum{std::move(terms)}}, *kind, start};
  }

  Parsed parse_term() {
    skip_ws();
    const std::size_t start = pos_;
    std::vector<Parsed> factors;
    if (auto scalar = try_scalar()) factors.push_back(std::move(*scalar));
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == '(' || (is_ident_char(c) && peek_ident() != "i")) {
        factors.push_back(parse_factor());
      } else {
        break;
      }
    }
    if (factors.empty()) fail("expected a term");
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
      if (factors[i].kind == Kind::state) {
        throw ParseError(factors[i].position, "a state must be the rightmost factor");
      }
    }
    const Kind kind = factors.back().kind;
    if (factors.size() == 1) return {std::move(factors.front().expr), kind, start};
    Product product;
    for (auto& f : factors) product.factors.push_back(std::move(f.expr));
    return {StateExpr{std::move(product)}, kind, start};
  }

  std::optional<Parsed> try_scalar() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek_ident() == "i") {
      ++pos_;
      return Parsed{StateExpr{Scalar{{0.0, 1.0}}}, Kind::op, start};
    }
    if (!is_number_start(peek())) return std::nullopt;

    std::size_t end = pos_;
    auto digits = [&] {
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    };
    digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      digits();
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp_end = end + 1;
      if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
      if (exp_end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp_end]))) {
        end = exp_end;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + end, value);
    if (ec != std::errc() || ptr != src_.data() + end) fail("malformed number");
    pos_ = end;

    skip_ws();
    if (peek_ident() == "i") {
      ++pos_;
      return Parsed{StateExpr{Scalar{{0.0, value}}}, Kind::op, start};
    }
    return Parsed{StateExpr{Scalar{{value, 0.0}}}, Kind::op, start};
  }

  Parsed parse_factor() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '(') {
      ++pos_;
      Parsed inner = parse_expr();
      expect(')');
      inner.position = start;
      return inner;
    }
    const std::string_view ident = peek_ident();
    if (ident == "vac") {
      pos_ += ident.size();
      return {StateExpr{Vacuum{}}, Kind::state, start};
    }
    if (ident == "a" || ident == "b") {
      pos_ += ident.size();
      expect('[');
      skip_ws();
      const std::size_t index_pos = pos_;
      const int index = parse_int();
      expect(']');
      if (ident == "a") {
        const int half = (n_sites_ - 1) / 2;
        if (index < -half || index > half) {
          throw ParseError(index_pos, fmt::format("mode index {} outside [{}, {}] for N = {}",
                                                  index, -half, half, n_sites_));
        }
        return {StateExpr{Create{index}}, Kind::op, start};
      }
      if (index < 1 || index > n_sites_) {
        throw ParseError(index_pos, fmt::format("site index {} outside [1, {}]", index, n_sites_));
      }
      return {StateExpr{CreateLocal{index}}, Kind::op, start};
    }
    fail(fmt::format("unknown name '{}'", ident));
  }

  int parse_int() {
    std::size_t end = pos_;
    if (end < src_.size() && (src_[end] == '-' || src_[end] == '+')) ++end;
    const std::size_t digits_begin = end;
    while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    if (end == digits_begin) fail("expected an integer index");
    const char* first = src_.data() + pos_ + (src_[pos_] == '+' ? 1 : 0);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(first, src_.data() + end, value);
    if (ec != std::errc() || ptr != src_.data() + end) fail("index out of integer range");
    pos_ = end;
    return value;
  }

  std::string_view src_;
  int n_sites_;
  std::size_t pos_ = 0;
};

std::string scalar_text(std::complex<double> v) {
  if (v.imag() == 0.0) return fmt::format("{}", v.real());
  if (v.real() == 0.0) return v.imag() == 1.0 ? "i" : fmt::format("{}i", v.imag());
  return fmt::format("({} + {}i)", v.real(), v.imag());
}

struct Printer {
  std::string operator()(const Vacuum&) const { return "vac"; }
  std::string operator()(const Create& c) const { return fmt::format("a[{}]", c.mode); }
  std::string operator()(const CreateLocal& c) const { return fmt::format("b[{}]", c.site); }
  std::string operator()(const Scalar& s) const { return scalar_text(s.value); }

  std::string operator()(const Sum& sum) const {
    std::string out;
    for (std::size_t i = 0; i < sum.terms.size(); ++i) {
      const auto& term = sum.terms[i];
      if (i == 0) {
        out += term.negated ? "-" : "";
      } else {
        out += term.negated ? " - " : " + ";
      }
      const bool nested = std::holds_alternative<Sum>(term.expr.node);
      out += nested ? "(" + to_string(term.expr) + ")" : to_string(term.expr);
    }
    return out;
  }

  std::string operator()(const Product& product) const {
    std::string out;
    for (std::size_t i = 0; i < product.factors.size(); ++i) {
      const auto& f = product.factors[i];
      const bool compound = std::holds_alternative<Sum>(f.node) ||
                            std::holds_alternative<Product>(f.node) ||
                            (i > 0 && std::holds_alternative<Scalar>(f.node));
      if (i > 0) out += ' ';
      out += compound ? "(" + to_string(f) + ")" : to_string(f);
    }
    return out;
  }
};

class Evaluator {
 public:
  explicit Evaluator(const ModeBasis& basis) : basis_(basis) {}

  FockState state(const StateExpr& e) const {
    if (std::holds_alternative<Vacuum>(e.node)) return vacuum(basis_.params());
    if (const auto* product = std::get_if<Product>(&e.node)) {
      const auto& f = product->factors;
      FockState s = state(f.back());
      for (std::size_t i = f.size() - 1; i-- > 0;) s = apply(f[i], s);
      return s;
    }
    if (const auto* sum = std::get_if<Sum>(&e.node)) {
      std::vector<std::pair<Amplitude, FockState>> parts;
      for (const auto& t : sum->terms) parts.emplace_back(t.negated ? -1.0 : 1.0, state(t.expr));
      return linear_combine(parts);
    }
    throw std::invalid_argument("expression '" + to_string(e) + "' is an operator, not a state");
  }

  FockState apply(const StateExpr& e, const FockState& s) const {
    if (const auto* c = std::get_if<Create>(&e.node)) return apply_create(s, ModeIndex{c->mode});
    if (const auto* c = std::get_if<CreateLocal>(&e.node)) {
      return apply_create_local(s, basis_, SiteIndex{c->site});
    }
    if (const auto* c = std::get_if<Scalar>(&e.node)) return scale(s, c->value);
    if (const auto* product = std::get_if<Product>(&e.node)) {
      FockState out = s;
      for (auto it = product->factors.rbegin(); it != product->factors.rend(); ++it) {
        out = apply(*it, out);
      }
      return out;
    }
    if (const auto* sum = std::get_if<Sum>(&e.node)) {
      std::vector<std::pair<Amplitude, FockState>> parts;
      for (const auto& t : sum->terms) parts.emplace_back(t.negated ? -1.0 : 1.0, apply(t.expr, s));
      return linear_combine(parts);
    }
    throw std::invalid_argument("'vac' cannot act as an operator");
  }

 private:
  const ModeBasis& basis_;
};

}  // namespace

StateExpr parse_state_expr(std::string_view src, int n_sites) {
  return Parser(src, n_sites).parse();
}

std::string to_string(const StateExpr& expr) { return std::visit(Printer{}, expr.node); }

bool is_state(const StateExpr& expr) {
  if (std::holds_alternative<Vacuum>(expr.node)) return true;
  if (const auto* product = std::get_if<Product>(&expr.node)) {
    return !product->factors.empty() && is_state(product->factors.back());
  }
  if (const auto* sum = std::get_if<Sum>(&expr.node)) {
    return !sum->terms.empty() && is_state(sum->terms.front().expr);
  }
  return false;
}

FockState evaluate_state_expr(const StateExpr& expr, const ModeBasis& basis) {
  return Evaluator(basis).state(expr);
}

}  // namespace chainviz
