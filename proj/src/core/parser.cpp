#include "parser.hpp"

#include <charconv>
#include <vector>

#include "lexical.hpp"

namespace qprot {
namespace {

enum class Tok { Int, Ident, LParen, RParen, Bang, Bar, Colon, Question, Dot, Comma, Amp, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Int:
      return "integer '" + t.text + "'";
    case Tok::Ident:
      return is_keyword(t.text) ? "keyword '" + t.text + "'" : "identifier '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceSpan span{line, col};
    if (c >= '0' && c <= '9') {
      std::size_t j = i;
      while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '!': k = Tok::Bang; break;
      case '|': k = Tok::Bar; break;
      case ':': k = Tok::Colon; break;
      case '?': k = Tok::Question; break;
      case '.': k = Tok::Dot; break;
      case ',': k = Tok::Comma; break;
      case '&': k = Tok::Amp; break;
      default:
        throw ParseError(span, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), span});
    advance(1);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ProcessPtr parse_all() {
    auto p = parse_par();
    if (peek().kind != Tok::End) fail("expected '|' or end of input");
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().span, expected + ", found " + describe(peek()));
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    take();
  }
  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == kw;
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'");
    take();
  }
  std::string identifier(const char* what) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail(std::string("expected ") + what);
    return take().text;
  }

  ProcessPtr parse_par() {
    auto left = parse_unary();
    while (peek().kind == Tok::Bar) {
      take();
      left = par(left, parse_unary());
    }
    return left;
  }

  ProcessPtr parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
        if (peek(1).kind == Tok::Colon) return parse_action();
        if (t.text == "0") {
          take();
          return nil();
        }
        take();
        fail("expected ':' after label");
      case Tok::LParen:
        if (at_keyword("new", 1)) {
          take();
          take();
          Name n(identifier("channel name"));
          expect(Tok::RParen, "')'");
          return restrict_(std::move(n), parse_unary());
        } else {
          take();
          auto p = parse_par();
          expect(Tok::RParen, "')'");
          return p;
        }
      case Tok::Bang:
        take();
        return repl(parse_unary());
      default:
        fail("expected a process");
    }
  }

  LabelId parse_label() {
    Token t = take();
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError(t.span, "label '" + t.text + "' out of range");
    return LabelId(v);
  }

  ProcessPtr parse_action() {
    LabelId l = parse_label();
    expect(Tok::Colon, "':'");
    if (at_keyword("case")) {
      take();
      InVarId x(identifier("input variable"));
      expect_keyword("of");
      expect_keyword("some");
      expect(Tok::LParen, "'('");
      TermVarId y(identifier("term variable"));
      expect(Tok::RParen, "')'");
      expect(Tok::Colon, "':'");
      yscope_.push_back(y.value());
      auto then_b = parse_par();
      yscope_.pop_back();
      expect_keyword("else");
      auto else_b = parse_par();
      expect_keyword("end");
      return case_(l, std::move(x), std::move(y), std::move(then_b), std::move(else_b));
    }
    if (peek().kind == Tok::Amp) {
      Binder b = parse_binder();
      expect(Tok::Dot, "'.'");
      return bind(l, std::move(b), parse_unary());
    }
    std::string ch = identifier("channel name, 'case' or '&'");
    if (peek().kind == Tok::Question) {
      take();
      std::string x = identifier("input variable");
      expect(Tok::Dot, "'.'");
      return bind(l, input(std::move(ch), std::move(x)), parse_unary());
    }
    if (peek().kind == Tok::Bang) {
      take();
      std::string t = identifier("payload name or term variable");
      Term payload = in_yscope(t) ? var_term(t) : const_term(t);
      expect(Tok::Dot, "'.'");
      return output(l, Name(std::move(ch)), std::move(payload), parse_unary());
    }
    fail("expected '?' or '!'");
  }

  Binder parse_binder() {
    if (peek().kind == Tok::Amp) {
      take();
      Guard g;
      if (at_keyword("forall")) {
        g = Guard::Forall;
      } else if (at_keyword("exists")) {
        g = Guard::Exists;
      } else {
        fail("expected 'forall' or 'exists'");
      }
      take();
      expect(Tok::LParen, "'('");
      std::vector<Binder> subs;
      subs.push_back(parse_binder());
      while (peek().kind == Tok::Comma) {
        take();
        subs.push_back(parse_binder());
      }
      expect(Tok::RParen, "',' or ')'");
      return quality(g, std::move(subs));
    }
    std::string ch = identifier("channel name or '&'");
    expect(Tok::Question, "'?'");
    std::string x = identifier("input variable");
    return input(std::move(ch), std::move(x));
  }

  bool in_yscope(const std::string& s) const {
    for (const auto& y : yscope_)
      if (y == s) return true;
    return false;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> yscope_;
};

void print(const Process& p, std::string& out);

void print_unary(const Process& p, std::string& out) {
  if (std::holds_alternative<ParProc>(p.node)) {
    out += '(';
    print(p, out);
    out += ')';
  } else {
    print(p, out);
  }
}

void print_binder(const Binder& b, std::string& out) {
  if (auto* in = std::get_if<InputBinder>(&b.node)) {
    out += in->channel.value() + "?" + in->var.value();
    return;
  }
  const auto& q = std::get<QualityBinder>(b.node);
  out += q.guard == Guard::Forall ? "&forall(" : "&exists(";
  for (std::size_t i = 0; i < q.subs.size(); ++i) {
    if (i) out += ", ";
    print_binder(q.subs[i], out);
  }
  out += ')';
}

void print(const Process& p, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NilProc>) {
          out += '0';
        } else if constexpr (std::is_same_v<T, RestrictProc>) {
          out += "(new " + n.name.value() + ") ";
          print_unary(*n.body, out);
        } else if constexpr (std::is_same_v<T, ParProc>) {
          print(*n.left, out);
          out += " | ";
          print_unary(*n.right, out);
        } else if constexpr (std::is_same_v<T, ReplProc>) {
          out += '!';
          print_unary(*n.body, out);
        } else if constexpr (std::is_same_v<T, BindProc>) {
          out += std::to_string(n.label.value()) + ": ";
          print_binder(n.binder, out);
          out += " . ";
          print_unary(*n.body, out);
        } else if constexpr (std::is_same_v<T, OutputProc>) {
          out += std::to_string(n.label.value()) + ": " + n.channel.value() + "!" + n.payload.text() + " . ";
          print_unary(*n.body, out);
        } else {
          out += std::to_string(n.label.value()) + ": case " + n.scrutinee.value() + " of some(" + n.yvar.value() +
                 "): ";
          print(*n.then_branch, out);
          out += " else ";
          print(*n.else_branch, out);
          out += " end";
        }
      },
      p.node);
}

}  // namespace

ProcessPtr parse_process_unchecked(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

ProcessPtr parse_process(std::string_view text) {
  auto p = parse_process_unchecked(text);
  auto report = validate(*p);
  if (!report.ok()) throw Error(ErrorKind::Validation, report.violations.front().message);
  return p;
}

std::string pretty(const Process& p) {
  std::string out;
  print(p, out);
  return out;
}

std::string pretty(const Binder& b) {
  std::string out;
  print_binder(b, out);
  return out;
}

}  // namespace qprot
