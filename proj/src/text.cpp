#include "taggedunify/text.hpp"

#include <cctype>
#include <sstream>

#include "taggedunify/errors.hpp"

namespace taggedunify {

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

/// Tokenizes one line. `line` is 1-based; columns are 1-based.
std::vector<Token> tokenize(std::string_view src, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    std::size_t col = i + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      while (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    if (c == '~' && i + 1 < src.size() && src[i + 1] == '?') {
      out.push_back({Tok::Sym, "~?", line, col});
      i += 2;
      continue;
    }
    static constexpr std::string_view kSyms = "[](),+{}/@:;-";
    if (kSyms.find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), line, col});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", line, src.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool at_sym(std::string_view s) const {
    return peek().kind == Tok::Sym && peek().text == s;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " (found " + found + ")", t.line, t.column);
  }

  void expect(std::string_view s) {
    if (!at_sym(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }

  Term term() {
    std::vector<Term> items;
    items.push_back(primary());
    while (at_sym("+")) {
      ++pos_;
      items.push_back(primary());
    }
    if (items.size() == 1) return items.front();
    return Term::xor_of(std::move(items));
  }

  Token next() { return toks_[pos_++]; }

 private:
  std::vector<Term> arguments() {
    expect("(");
    std::vector<Term> args;
    if (at_sym(")")) {
      ++pos_;
      return args;
    }
    args.push_back(term());
    while (at_sym(",")) {
      ++pos_;
      args.push_back(term());
    }
    expect(")");
    return args;
  }

  Term number(const Token& tok) {
    if (tok.text == "0") return Term::zero();
    std::vector<unsigned> path;
    std::size_t start = 0;
    while (start <= tok.text.size()) {
      std::size_t dot = tok.text.find('.', start);
      std::string part = tok.text.substr(start, dot == std::string::npos ? std::string::npos
                                                                          : dot - start);
      if (part.empty() || part[0] == '0' || part.size() > 9)
        throw ParseError("tag components must be positive integers without leading zeros",
                         tok.line, tok.column);
      path.push_back(static_cast<unsigned>(std::stoul(part)));
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    return Term::tag(std::move(path));
  }

  Term primary() {
    const Token tok = peek();
    if (tok.kind == Tok::Number) {
      ++pos_;
      return number(tok);
    }
    if (tok.kind == Tok::Ident) {
      ++pos_;
      if (!at_sym("(")) {
        if (std::isupper(static_cast<unsigned char>(tok.text[0])) || tok.text[0] == '_')
          return Term::var(tok.text);
        return Term::constant(tok.text);
      }
      const std::string& op = tok.text;
      std::vector<Term> args = arguments();
      auto arity = [&](std::size_t n) {
        if (args.size() != n)
          throw ParseError(op + " expects " + std::to_string(n) + " argument(s), got " +
                               std::to_string(args.size()),
                           tok.line, tok.column);
      };
      if (op == "penc") {
        arity(2);
        return Term::penc(args[0], args[1]);
      }
      if (op == "senc") {
        arity(2);
        return Term::senc(args[0], args[1]);
      }
      if (op == "sh") {
        arity(2);
        return Term::sh(args[0], args[1]);
      }
      if (op == "pk") {
        arity(1);
        return Term::pk(args[0]);
      }
      if (op == "xor") {
        if (args.size() < 2)
          throw ParseError("xor expects at least 2 arguments", tok.line, tok.column);
        return Term::xor_of(std::move(args));
      }
      throw ParseError("unknown operator '" + op + "'", tok.line, tok.column);
    }
    if (at_sym("[")) {
      ++pos_;
      std::vector<Term> items;
      if (at_sym("]")) fail("empty sequence");
      items.push_back(term());
      while (at_sym(",")) {
        ++pos_;
        items.push_back(term());
      }
      expect("]");
      return Term::seq(std::move(items));
    }
    if (at_sym("(")) {
      ++pos_;
      Term t = term();
      expect(")");
      return t;
    }
    fail("expected a term");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Splits text into lines, keeping 1-based line numbers.
std::vector<std::string_view> split_lines(std::string_view src) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= src.size()) {
    std::size_t nl = src.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(src.substr(start));
      break;
    }
    lines.push_back(src.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

Parser parser_for_multiline(std::string_view src) {
  std::vector<Token> all;
  std::size_t line = 1;
  for (auto l : split_lines(src)) {
    auto toks = tokenize(l, line++);
    toks.pop_back();
    all.insert(all.end(), toks.begin(), toks.end());
  }
  all.push_back({Tok::End, "", line - 1, 1});
  return Parser(std::move(all));
}

void render_into(const Term& t, std::ostringstream& os) {
  auto list = [&](std::span<const Term> args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) os << ", ";
      render_into(args[i], os);
    }
  };
  switch (t.kind()) {
    case Kind::Var:
    case Kind::Const: os << t.name(); return;
    case Kind::Tag:
      for (std::size_t i = 0; i < t.path().size(); ++i) {
        if (i) os << '.';
        os << t.path()[i];
      }
      return;
    case Kind::Zero: os << '0'; return;
    case Kind::Seq:
      os << '[';
      list(t.args());
      os << ']';
      return;
    case Kind::Penc: os << "penc("; break;
    case Kind::Senc: os << "senc("; break;
    case Kind::Pk: os << "pk("; break;
    case Kind::Sh: os << "sh("; break;
    case Kind::Xor: os << "xor("; break;
  }
  list(t.args());
  os << ')';
}

}  // namespace

Term parse_term(std::string_view src) {
  Parser p = parser_for_multiline(src);
  Term t = p.term();
  if (!p.at_end()) p.fail("trailing input after term");
  return t;
}

std::string render_term(const Term& t) {
  std::ostringstream os;
  render_into(t, os);
  return os.str();
}

std::string render_problem(const Problem& p) {
  return render_term(p.lhs) + " ~? " + render_term(p.rhs);
}

std::string render_substitution(const Substitution& s) {
  if (s.empty()) return "{ }";
  std::string out = "{ ";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += render_term(t) + "/" + v;
  }
  return out + " }";
}

Substitution parse_substitution(std::string_view src) {
  Parser p = parser_for_multiline(src);
  p.expect("{");
  Substitution s;
  auto binding = [&] {
    Term value = p.term();
    p.expect("/");
    Token v = p.peek();
    if (v.kind != Tok::Ident || !(std::isupper(static_cast<unsigned char>(v.text[0])) ||
                                  v.text[0] == '_'))
      p.fail("expected a variable after '/'");
    p.next();
    if (s.binds(v.text)) throw ParseError("variable bound twice", v.line, v.column);
    s.bind(v.text, value);
  };
  if (!p.at_sym("}")) {
    binding();
    while (p.at_sym(",")) {
      p.next();
      binding();
    }
  }
  p.expect("}");
  if (!p.at_end()) p.fail("trailing input after substitution");
  return s;
}

ProblemSet ProblemFile::problems() const {
  ProblemSet out;
  for (const auto& e : entries) out.push_back(e.problem);
  return out;
}

namespace {

/// Reads a theory name such as `combined` or `free-xor`.
Theory theory_after(Parser& p) {
  Token name = p.next();
  if (name.kind != Tok::Ident) throw ParseError("expected a theory name", name.line, name.column);
  std::string text = name.text;
  while (p.at_sym("-")) {
    p.next();
    text += "-" + p.next().text;
  }
  auto th = parse_theory_name(text);
  if (!th) throw ParseError("unknown theory '" + text + "'", name.line, name.column);
  return *th;
}

/// Consumes set items up to the end of the line; returns true when the block closed.
bool set_items(Parser& p, NamedTermSet& set) {
  while (!p.at_end()) {
    if (p.at_sym("}")) {
      p.next();
      if (!p.at_end()) p.fail("trailing input after '}'");
      return true;
    }
    if (p.at_sym(";")) {
      p.next();
      continue;
    }
    set.terms.push_back(p.term());
    if (!p.at_end() && !p.at_sym(";") && !p.at_sym("}")) p.fail("expected ';' or '}'");
  }
  return false;
}

}  // namespace

ProblemFile parse_problem_file(std::string_view src) {
  ProblemFile file;
  std::optional<NamedTermSet> open_set;
  std::size_t line_no = 0;
  // Entries are resolved against the header once the whole file is read.
  std::vector<std::optional<Theory>> explicit_theory;

  for (auto line : split_lines(src)) {
    ++line_no;
    auto toks = tokenize(line, line_no);
    Parser p(toks);
    if (p.at_end()) continue;

    if (open_set) {
      if (set_items(p, *open_set)) {
        file.sets.push_back(std::move(*open_set));
        open_set.reset();
      }
      continue;
    }

    const Token first = p.peek();
    const bool keyword_line = first.kind == Tok::Ident && toks.size() > 2 &&
                              toks[1].kind != Tok::Sym;
    if (first.kind == Tok::Ident && first.text == "theory" && toks[1].text == ":") {
      p.next();
      p.next();
      Theory th = theory_after(p);
      if (file.default_theory)
        throw ParseError("duplicate theory header", first.line, first.column);
      file.default_theory = th;
      if (!p.at_end()) p.fail("trailing input after theory header");
      continue;
    }
    if (keyword_line && first.text == "set" && toks[1].kind == Tok::Ident &&
        toks[2].text == "{") {
      p.next();
      open_set = NamedTermSet{p.next().text, {}};
      p.next();
      if (set_items(p, *open_set)) {
        file.sets.push_back(std::move(*open_set));
        open_set.reset();
      }
      continue;
    }

    Term lhs = p.term();
    p.expect("~?");
    Term rhs = p.term();
    std::optional<Theory> th;
    if (p.at_sym("@")) {
      p.next();
      th = theory_after(p);
    }
    if (!p.at_end()) p.fail("trailing input after problem");
    file.entries.push_back({Problem{lhs, rhs}, kFallbackTheory});
    explicit_theory.push_back(th);
  }
  if (open_set)
    throw ParseError("unterminated set block '" + open_set->name + "'", line_no, 1);

  for (std::size_t i = 0; i < file.entries.size(); ++i) {
    file.entries[i].theory =
        explicit_theory[i].value_or(file.default_theory.value_or(kFallbackTheory));
  }
  return file;
}

std::string render_problem_file(const ProblemFile& file) {
  std::string out;
  if (file.default_theory)
    out += "theory: " + std::string(theory_name(*file.default_theory)) + "\n";
  for (const auto& e : file.entries) {
    out += render_problem(e.problem) + " @" + std::string(theory_name(e.theory)) + "\n";
  }
  for (const auto& s : file.sets) {
    out += "set " + s.name + " {\n";
    for (const auto& t : s.terms) out += "  " + render_term(t) + "\n";
    out += "}\n";
  }
  return out;
}

}  // namespace taggedunify
