#include "tunclock/dimparse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <sstream>

namespace tunclock::dimparse {

using units::DimensionVector;
using units::Quantity;
using units::Rational;

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : Error(ErrorKind::parse,
            "at offset " + std::to_string(offset) + ": expected " + expected + ", found " + found,
            Span{offset, offset}),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

// --- lexer -----------------------------------------------------------------

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, lbracket, rbracket, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

bool is_ident_start(char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; }
bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }
bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v'; }

std::string describe_char(char ch) {
  auto u = static_cast<unsigned char>(ch);
  if (u >= 0x20 && u < 0x7f) return std::string("'") + ch + "'";
  std::ostringstream os;
  os << "byte 0x" << std::hex << static_cast<int>(u);
  return os.str();
}

std::vector<Token> lex(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < in.size() && is_space(in[i])) ++i;
    if (i >= in.size()) {
      out.push_back({Tok::end, {}, in.size()});
      return out;
    }
    const std::size_t start = i;
    const char ch = in[i];
    if (is_digit(ch) || (ch == '.' && i + 1 < in.size() && is_digit(in[i + 1]))) {
      while (i < in.size() && is_digit(in[i])) ++i;
      if (i < in.size() && in[i] == '.') {
        ++i;
        while (i < in.size() && is_digit(in[i])) ++i;
      }
      if (i < in.size() && (in[i] == 'e' || in[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < in.size() && (in[j] == '+' || in[j] == '-')) ++j;
        if (j < in.size() && is_digit(in[j])) {
          while (j < in.size() && is_digit(in[j])) ++j;
          i = j;
        } else {
          throw ParseError(j, "digits in exponent of number", j < in.size() ? describe_char(in[j]) : "end of input");
        }
      }
      out.push_back({Tok::number, in.substr(start, i - start), start});
      continue;
    }
    if (is_ident_start(ch)) {
      while (i < in.size() && (is_ident_start(in[i]) || is_digit(in[i]))) ++i;
      out.push_back({Tok::ident, in.substr(start, i - start), start});
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      default: throw ParseError(start, "operator, number or identifier", describe_char(ch));
    }
    out.push_back({kind, in.substr(start, 1), start});
    ++i;
  }
}

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + std::string(t.text) + "'";
}

// --- numeric helpers -------------------------------------------------------

/// Exact rational value of a decimal literal, if it fits in 64-bit integers.
std::optional<Rational> literal_to_rational(std::string_view text) {
  std::int64_t digits = 0;
  int scale = 0;  // value = digits * 10^scale
  bool after_point = false;
  std::size_t i = 0;
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 10;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    if (text[i] == '.') {
      after_point = true;
      continue;
    }
    if (digits > kLimit) return std::nullopt;
    digits = digits * 10 + (text[i] - '0');
    if (after_point) --scale;
  }
  if (i < text.size()) {
    int e = 0;
    auto res = std::from_chars(text.data() + i + 1 + (text[i + 1] == '+' ? 1 : 0), text.data() + text.size(), e);
    if (res.ec != std::errc{}) return std::nullopt;
    scale += e;
  }
  if (digits == 0) return Rational(0);
  if (scale > 18 || scale < -18) return std::nullopt;
  std::int64_t p10 = 1;
  for (int k = 0; k < std::abs(scale); ++k) p10 *= 10;
  try {
    if (scale >= 0) return Rational(digits) * Rational(p10);
    return Rational(digits, p10);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Rational rational_power(Rational base, const Rational& exponent) {
  if (!exponent.is_integer()) throw DomainError("non-integer power inside exponent");
  std::int64_t n = exponent.num();
  if (n < -64 || n > 64) throw RangeError("exponent power too large");
  bool invert = n < 0;
  Rational out(1);
  for (std::int64_t k = 0; k < (invert ? -n : n); ++k) out = out * base;
  return invert ? Rational(1) / out : out;
}

// --- parser ----------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view input, const ParseOptions& options)
      : input_(input), tokens_(lex(input)), max_depth_(options.max_depth) {}

  NodePtr parse_all() {
    NodePtr n = parse_expr();
    if (peek().kind != Tok::end) throw ParseError(peek().offset, "operator or end of input", describe(peek()));
    return n;
  }

  Unit parse_unit_only() {
    Unit u = parse_uexpr();
    if (peek().kind != Tok::end) throw ParseError(peek().offset, "unit operator or end of input", describe(peek()));
    u.text = strip(input_);
    return u;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw ParseError(peek().offset, what, describe(peek()));
    return advance();
  }

  NodePtr make(Span span, decltype(Node::kind) kind) {
    auto node = std::make_unique<Node>();
    node->span = span;
    std::size_t child = 0;
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Binary>) {
            child = std::max(k.lhs->depth, k.rhs->depth);
          } else if constexpr (std::is_same_v<T, Call> || std::is_same_v<T, Negate>) {
            child = k.arg->depth;
          }
        },
        kind);
    node->depth = child + 1;
    node->kind = std::move(kind);
    if (node->depth > max_depth_) {
      throw ParseError(span.begin, "expression nested at most " + std::to_string(max_depth_) + " levels deep",
                       "deeper nesting");
    }
    return node;
  }

  struct Nest {
    explicit Nest(Parser& p) : p_(p) {
      if (++p_.nesting_ > p_.max_depth_) {
        throw ParseError(p_.peek().offset,
                         "expression nested at most " + std::to_string(p_.max_depth_) + " levels deep",
                         "deeper nesting");
      }
    }
    ~Nest() { --p_.nesting_; }
    Nest(const Nest&) = delete;
    Nest& operator=(const Nest&) = delete;
    Parser& p_;
  };

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      BinaryOp op = advance().kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
      NodePtr rhs = parse_term();
      Span span{lhs->span.begin, rhs->span.end};
      lhs = make(span, Binary{op, std::move(lhs), std::move(rhs), {}});
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      BinaryOp op = advance().kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
      NodePtr rhs = parse_unary();
      Span span{lhs->span.begin, rhs->span.end};
      lhs = make(span, Binary{op, std::move(lhs), std::move(rhs), {}});
    }
    return lhs;
  }

  NodePtr parse_unary() {
    Nest nest(*this);
    if (peek().kind == Tok::minus) {
      std::size_t begin = advance().offset;
      NodePtr arg = parse_unary();
      Span span{begin, arg->span.end};
      return make(span, Negate{std::move(arg)});
    }
    return parse_factor();
  }

  NodePtr parse_factor() {
    NodePtr base = parse_base();
    if (peek().kind != Tok::caret) return base;
    advance();
    NodePtr exponent = parse_unary();
    Rational folded = fold_exponent(*exponent);
    Span span{base->span.begin, exponent->span.end};
    return make(span, Binary{BinaryOp::pow, std::move(base), std::move(exponent), folded});
  }

  NodePtr parse_base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        advance();
        double v = std::strtod(std::string(t.text).c_str(), nullptr);
        if (!std::isfinite(v)) throw ParseError(t.offset, "finite number", describe(t));
        Number num{v, std::nullopt};
        std::size_t end = t.offset + t.text.size();
        if (peek().kind == Tok::lbracket) {
          std::size_t open = advance().offset;
          Unit u = parse_uexpr();
          const Token& close = expect(Tok::rbracket, "']' closing unit");
          u.text = strip(input_.substr(open + 1, close.offset - open - 1));
          num.unit = std::move(u);
          end = close.offset + 1;
        }
        return make(Span{t.offset, end}, std::move(num));
      }
      case Tok::ident: {
        advance();
        if (peek().kind == Tok::lparen) {
          Function fn;
          if (t.text == "sqrt") {
            fn = Function::sqrt;
          } else if (t.text == "exp") {
            fn = Function::exp;
          } else if (t.text == "ln") {
            fn = Function::ln;
          } else if (t.text == "abs") {
            fn = Function::abs;
          } else {
            throw ParseError(t.offset, "function name (sqrt, exp, ln, abs)", describe(t));
          }
          advance();
          NodePtr arg = parse_expr();
          const Token& close = expect(Tok::rparen, "')'");
          return make(Span{t.offset, close.offset + 1}, Call{fn, std::move(arg)});
        }
        return make(Span{t.offset, t.offset + t.text.size()}, Const{std::string(t.text)});
      }
      case Tok::lparen: {
        Nest nest(*this);
        advance();
        NodePtr inner = parse_expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      default:
        throw ParseError(t.offset, "factor", describe(t));
    }
  }

  Rational fold_exponent(const Node& n) {
    try {
      return fold(n);
    } catch (const ParseError&) {
      throw;
    } catch (const Error&) {
      throw ParseError(n.span.begin, "representable rational exponent", "'" + std::string(slice(n.span)) + "'");
    }
  }

  Rational fold(const Node& n) {
    auto reject = [&] {
      return ParseError(n.span.begin, "dimensionless rational constant exponent",
                        "'" + std::string(slice(n.span)) + "'");
    };
    if (const auto* num = std::get_if<Number>(&n.kind)) {
      if (num->unit) throw reject();
      auto r = literal_to_rational(slice(n.span));
      if (!r) throw reject();
      return *r;
    }
    if (const auto* neg = std::get_if<Negate>(&n.kind)) return -fold(*neg->arg);
    if (const auto* bin = std::get_if<Binary>(&n.kind)) {
      switch (bin->op) {
        case BinaryOp::add: return fold(*bin->lhs) + fold(*bin->rhs);
        case BinaryOp::sub: return fold(*bin->lhs) - fold(*bin->rhs);
        case BinaryOp::mul: return fold(*bin->lhs) * fold(*bin->rhs);
        case BinaryOp::div: return fold(*bin->lhs) / fold(*bin->rhs);
        case BinaryOp::pow: return rational_power(fold(*bin->lhs), bin->exponent);
      }
    }
    throw reject();
  }

  std::string_view slice(Span s) const { return input_.substr(s.begin, s.end - s.begin); }

  // --- units ---

  Unit parse_uexpr() {
    Unit lhs = parse_uterm();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      bool mul = advance().kind == Tok::star;
      Unit rhs = parse_uterm();
      if (mul) {
        lhs.scale *= rhs.scale;
        lhs.dim = lhs.dim + rhs.dim;
      } else {
        lhs.scale /= rhs.scale;
        lhs.dim = lhs.dim - rhs.dim;
      }
    }
    return lhs;
  }

  Unit parse_uterm() {
    Nest nest(*this);
    Unit u = parse_uatom();
    if (peek().kind == Tok::caret) {
      advance();
      Rational p = parse_uexp();
      u.scale = std::pow(u.scale, p.to_double());
      u.dim = u.dim * p;
    }
    return u;
  }

  Unit parse_uatom() {
    const Token& t = peek();
    if (t.kind == Tok::lparen) {
      advance();
      Unit u = parse_uexpr();
      expect(Tok::rparen, "')'");
      return u;
    }
    if (t.kind == Tok::number && t.text == "1") {
      advance();
      return Unit{"", 1.0, {}};
    }
    if (t.kind == Tok::ident) {
      using units::BaseDim;
      using units::DimensionVector;
      static const std::pair<std::string_view, BaseDim> kBase[] = {
          {"m", BaseDim::length},        {"kg", BaseDim::mass},      {"s", BaseDim::time},
          {"A", BaseDim::current},       {"K", BaseDim::temperature}, {"mol", BaseDim::amount},
          {"cd", BaseDim::luminosity},
      };
      for (const auto& [sym, dim] : kBase) {
        if (t.text == sym) {
          advance();
          return Unit{"", 1.0, DimensionVector::base(dim)};
        }
      }
      if (t.text == "eV") {
        advance();
        return Unit{"", si::eV, units::dims::energy()};
      }
    }
    throw ParseError(t.offset, "unit symbol (m, kg, s, A, K, mol, cd, eV)", describe(t));
  }

  Rational parse_uexp() {
    auto integer = [&]() -> std::int64_t {
      const Token& t = peek();
      std::int64_t v = 0;
      if (t.kind != Tok::number) throw ParseError(t.offset, "integer unit exponent", describe(t));
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size() || v > 1000) {
        throw ParseError(t.offset, "integer unit exponent", describe(t));
      }
      advance();
      return v;
    };
    auto signed_integer = [&]() -> std::int64_t {
      bool neg = false;
      if (peek().kind == Tok::minus) {
        advance();
        neg = true;
      }
      std::int64_t v = integer();
      return neg ? -v : v;
    };
    if (peek().kind == Tok::lparen) {
      advance();
      std::int64_t num = signed_integer();
      std::int64_t den = 1;
      if (peek().kind == Tok::slash) {
        advance();
        std::size_t at = peek().offset;
        den = integer();
        if (den == 0) throw ParseError(at, "non-zero denominator", "0");
      }
      expect(Tok::rparen, "')'");
      return Rational(num, den);
    }
    return Rational(signed_integer());
  }

  static std::string strip(std::string_view s) {
    std::string out;
    for (char ch : s) {
      if (!is_space(ch)) out += ch;
    }
    return out;
  }

  std::string_view input_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t max_depth_;
  std::size_t nesting_ = 0;
};

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::pow: return "^";
  }
  return "?";
}

const char* fn_text(Function fn) {
  switch (fn) {
    case Function::sqrt: return "sqrt";
    case Function::exp: return "exp";
    case Function::ln: return "ln";
    case Function::abs: return "abs";
  }
  return "?";
}

}  // namespace

Unit parse_unit(std::string_view text) {
  Parser p(text, ParseOptions{});
  return p.parse_unit_only();
}

NodePtr parse(std::string_view input, const ParseOptions& options) {
  Parser p(input, options);
  return p.parse_all();
}

std::string print(const Node& node) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Number>) {
          std::string s = format_double(k.value);
          if (k.unit) s += " [" + k.unit->text + "]";
          return s;
        } else if constexpr (std::is_same_v<T, Const>) {
          return k.name;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + print(*k.lhs) + " " + op_text(k.op) + " " + print(*k.rhs) + ")";
        } else if constexpr (std::is_same_v<T, Call>) {
          return std::string(fn_text(k.fn)) + "(" + print(*k.arg) + ")";
        } else {
          return "(-" + print(*k.arg) + ")";
        }
      },
      node.kind);
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind.index() != b.kind.index()) return false;
  return std::visit(
      [&](const auto& ka) -> bool {
        using T = std::decay_t<decltype(ka)>;
        const auto& kb = std::get<T>(b.kind);
        if constexpr (std::is_same_v<T, Number>) {
          if (ka.value != kb.value || ka.unit.has_value() != kb.unit.has_value()) return false;
          return !ka.unit || (ka.unit->text == kb.unit->text && ka.unit->dim == kb.unit->dim);
        } else if constexpr (std::is_same_v<T, Const>) {
          return ka.name == kb.name;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return ka.op == kb.op && ka.exponent == kb.exponent && structurally_equal(*ka.lhs, *kb.lhs) &&
                 structurally_equal(*ka.rhs, *kb.rhs);
        } else if constexpr (std::is_same_v<T, Call>) {
          return ka.fn == kb.fn && structurally_equal(*ka.arg, *kb.arg);
        } else {
          return structurally_equal(*ka.arg, *kb.arg);
        }
      },
      a.kind);
}

namespace {

Quantity lookup(const Const& k, const Node& node, const ConstantsRegistry& registry) {
  if (auto q = registry.find(k.name)) return *q;
  throw Error(ErrorKind::unknown_identifier, "unknown identifier '" + k.name + "'", node.span);
}

Quantity with_span(const Node& node, auto&& fn) {
  try {
    return fn();
  } catch (const units::DimensionError& e) {
    if (e.span()) throw;
    throw units::DimensionError(e.what(), e.lhs(), e.rhs(), node.span);
  } catch (const DomainError& e) {
    if (e.span()) throw;
    throw DomainError(e.what(), node.span);
  }
}

}  // namespace

Quantity evaluate(const Node& node, const ConstantsRegistry& registry) {
  return std::visit(
      [&](const auto& k) -> Quantity {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Number>) {
          if (!k.unit) return Quantity(k.value);
          return Quantity(k.value * k.unit->scale, k.unit->dim);
        } else if constexpr (std::is_same_v<T, Const>) {
          return lookup(k, node, registry);
        } else if constexpr (std::is_same_v<T, Binary>) {
          Quantity lhs = evaluate(*k.lhs, registry);
          if (k.op == BinaryOp::pow) {
            return with_span(node, [&] { return units::q_pow(lhs, k.exponent); });
          }
          Quantity rhs = evaluate(*k.rhs, registry);
          if ((k.op == BinaryOp::add || k.op == BinaryOp::sub) && lhs.dim() != rhs.dim()) {
            throw units::DimensionError(
                std::string("operands of '") + op_text(k.op) + "' have different dimensions", lhs.dim(),
                rhs.dim(), node.span);
          }
          switch (k.op) {
            case BinaryOp::add: return lhs + rhs;
            case BinaryOp::sub: return lhs - rhs;
            case BinaryOp::mul: return lhs * rhs;
            default: {
              if (rhs.value() == 0.0) throw DomainError("division by zero", node.span);
              return lhs / rhs;
            }
          }
        } else if constexpr (std::is_same_v<T, Call>) {
          Quantity arg = evaluate(*k.arg, registry);
          switch (k.fn) {
            case Function::sqrt:
              if (arg.value() < 0.0) throw DomainError("sqrt of negative value", node.span);
              return units::q_pow(arg, Rational(1, 2));
            case Function::abs:
              return Quantity(std::abs(arg.value()), arg.dim());
            case Function::exp:
            case Function::ln:
              if (!arg.dim().is_dimensionless()) {
                throw units::DimensionError(std::string(fn_text(k.fn)) + " requires a dimensionless argument",
                                            arg.dim(), DimensionVector{}, node.span);
              }
              if (k.fn == Function::exp) return Quantity(std::exp(arg.value()));
              if (arg.value() <= 0.0) throw DomainError("ln of non-positive value", node.span);
              return Quantity(std::log(arg.value()));
          }
          throw DomainError("unknown function", node.span);
        } else {
          return units::q_neg(evaluate(*k.arg, registry));
        }
      },
      node.kind);
}

DimensionVector fold_dimension(const Node& node, const ConstantsRegistry& registry) {
  return std::visit(
      [&](const auto& k) -> DimensionVector {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Number>) {
          return k.unit ? k.unit->dim : DimensionVector{};
        } else if constexpr (std::is_same_v<T, Const>) {
          return lookup(k, node, registry).dim();
        } else if constexpr (std::is_same_v<T, Binary>) {
          DimensionVector lhs = fold_dimension(*k.lhs, registry);
          if (k.op == BinaryOp::pow) return lhs * k.exponent;
          DimensionVector rhs = fold_dimension(*k.rhs, registry);
          switch (k.op) {
            case BinaryOp::mul: return lhs + rhs;
            case BinaryOp::div: return lhs - rhs;
            default:
              if (lhs != rhs) {
                throw units::DimensionError(
                    std::string("operands of '") + op_text(k.op) + "' have different dimensions", lhs, rhs,
                    node.span);
              }
              return lhs;
          }
        } else if constexpr (std::is_same_v<T, Call>) {
          DimensionVector arg = fold_dimension(*k.arg, registry);
          if (k.fn == Function::sqrt) return arg * Rational(1, 2);
          if (k.fn == Function::abs) return arg;
          if (!arg.is_dimensionless()) {
            throw units::DimensionError(std::string(fn_text(k.fn)) + " requires a dimensionless argument", arg,
                                        DimensionVector{}, node.span);
          }
          return arg;
        } else {
          return fold_dimension(*k.arg, registry);
        }
      },
      node.kind);
}

DimensionReport check_dimension(const Node& node, const DimensionVector& expected, const ConstantsRegistry& registry) {
  DimensionVector computed = fold_dimension(node, registry);
  return DimensionReport{computed == expected, computed, expected};
}

// --- audit -----------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return is_ident_start(ch) || is_digit(ch); });
}

}  // namespace

std::vector<AuditRow> audit(std::istream& in, const ConstantsRegistry& registry) {
  std::vector<AuditRow> rows;
  ConstantsRegistry env = registry;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    AuditRow row;
    row.expression = std::string(text);
    try {
      std::optional<std::string> bind;
      std::string_view expr = text;
      if (expr.starts_with("let") && expr.size() > 3 && is_space(expr[3])) {
        auto eq = expr.find('=');
        if (eq == std::string_view::npos) throw ParseError(0, "'let NAME = EXPR'", "no '='");
        std::string_view name = trim(expr.substr(3, eq - 3));
        if (!valid_name(name)) throw ParseError(0, "identifier after 'let'", "'" + std::string(name) + "'");
        bind = std::string(name);
        expr = expr.substr(eq + 1);
      }
      std::optional<DimensionVector> expected;
      if (auto arrow = expr.find("=>"); arrow != std::string_view::npos) {
        expected = parse_unit(trim(expr.substr(arrow + 2))).dim;
        expr = expr.substr(0, arrow);
      }
      NodePtr tree = parse(expr);
      Quantity q = evaluate(*tree, env);
      row.value = q.value();
      row.si_dimension = q.dim().to_string();
      row.status = "ok";
      if (expected && *expected != q.dim()) {
        row.status = "dimension-mismatch";
        row.error = "expected " + expected->to_string() + ", computed " + q.dim().to_string();
      }
      if (bind) env = env.with(*bind, q);
    } catch (const Error& e) {
      row.status = std::string(status_name(e.kind()));
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool audit_passed(const std::vector<AuditRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const AuditRow& r) { return r.status == "ok"; });
}

}  // namespace tunclock::dimparse
