#include "dlw/io.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "dlw/errors.hpp"

namespace dlw {

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  Dot,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line, int column_base)
      : text_(text), line_(line), column_base_(column_base) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      int col = column();
      if (pos_ >= text_.size() || text_[pos_] == '#') {
        out.push_back({Tok::End, "", line_, col});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '\'')) {
          ++pos_;
        }
        std::string word(text_.substr(start, pos_ - start));
        if (word == "true")
          out.push_back({Tok::True, word, line_, col});
        else if (word == "false")
          out.push_back({Tok::False, word, line_, col});
        else
          out.push_back({Tok::Ident, word, line_, col});
        continue;
      }
      switch (c) {
        case '!':
          ++pos_;
          out.push_back({Tok::Not, "!", line_, col});
          break;
        case '&':
          ++pos_;
          out.push_back({Tok::And, "&", line_, col});
          break;
        case '|':
          ++pos_;
          out.push_back({Tok::Or, "|", line_, col});
          break;
        case '(':
          ++pos_;
          out.push_back({Tok::LParen, "(", line_, col});
          break;
        case ')':
          ++pos_;
          out.push_back({Tok::RParen, ")", line_, col});
          break;
        case '.':
          ++pos_;
          out.push_back({Tok::Dot, ".", line_, col});
          break;
        case '-':
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            pos_ += 2;
            out.push_back({Tok::Implies, "->", line_, col});
            break;
          }
          throw ParseError("unknown token '-'", line_, col);
        case '<':
          if (text_.substr(pos_, 3) == "<->") {
            pos_ += 3;
            out.push_back({Tok::Iff, "<->", line_, col});
            break;
          }
          throw ParseError("unknown token '<'", line_, col);
        default:
          throw ParseError(std::string("unknown token '") + c + "'", line_, col);
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
        column_base_ = 1;
      }
      ++pos_;
    }
  }
  int column() const { return column_base_ + static_cast<int>(pos_ - line_start_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_;
  int column_base_;
};

// Recursive descent over the token stream; `->` and `<->` associate to the
// right, `&` and `|` to the left.
class FormulaParser {
 public:
  explicit FormulaParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    expect(Tok::End, "end of formula");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token advance() { return tokens_[pos_++]; }

  void expect(Tok kind, const std::string& what) {
    if (peek().kind != kind)
      throw ParseError("expected " + what, peek().line, peek().column);
    advance();
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (peek().kind == Tok::Iff) {
      advance();
      return Formula::biconditional(lhs, parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      advance();
      return Formula::implication(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (peek().kind == Tok::Or) {
      advance();
      acc = Formula::disjunction(acc, parse_and());
    }
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_unary();
    while (peek().kind == Tok::And) {
      advance();
      acc = Formula::conjunction(acc, parse_unary());
    }
    return acc;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        advance();
        return Formula::negation(parse_unary());
      case Tok::True:
        advance();
        return Formula::constant(true);
      case Tok::False:
        advance();
        return Formula::constant(false);
      case Tok::Ident: {
        Token tok = advance();
        return Formula::var(Atom{tok.text});
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw ParseError("expected a formula", t.line, t.column);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Formula parse_formula_at(std::string_view text, int line, int column_base) {
  return FormulaParser(Lexer(text, line, column_base).run()).parse_all();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

Formula parse_formula(const std::string& text) { return parse_formula_at(text, 1, 1); }

namespace {

struct RawLine {
  std::string_view text;
  int number;
};

std::vector<RawLine> split_lines(const std::string& text) {
  std::vector<RawLine> out;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    out.push_back({line, number});
    if (end == text.size()) break;
    start = end + 1;
    ++number;
  }
  return out;
}

bool starts_with_keyword(std::string_view line, std::string_view keyword) {
  std::string_view t = trim(line);
  if (t.substr(0, keyword.size()) != keyword) return false;
  if (t.size() == keyword.size()) return true;
  char next = t[keyword.size()];
  return std::isspace(static_cast<unsigned char>(next));
}

}  // namespace

TheoryDocument parse_theory(const std::string& text) {
  FormulaSet background;
  std::vector<Default> defaults;
  std::optional<AtomSet> declared;
  std::vector<int> background_lines;
  std::vector<int> default_lines;
  int declared_line = 0;
  int last_w_line = 0;

  for (const RawLine& raw : split_lines(text)) {
    if (is_blank(raw.text)) continue;
    std::string_view line = raw.text;
    int base_col = 1;

    if (starts_with_keyword(line, "vars")) {
      if (declared)
        throw ParseError("duplicate vars line", raw.number, base_col);
      AtomSet atoms;
      std::istringstream words{std::string(trim(line).substr(4))};
      std::string word;
      while (words >> word) {
        if (!is_valid_atom_name(word))
          throw ParseError("invalid atom name '" + word + "' in vars line", raw.number, base_col);
        atoms.insert(Atom{word});
      }
      declared = std::move(atoms);
      declared_line = raw.number;
      continue;
    }

    if (starts_with_keyword(line, "w")) {
      std::string_view rest = trim(line);
      rest.remove_prefix(1);
      int col = static_cast<int>(line.find('w')) + 2;
      background.push_back(parse_formula_at(rest, raw.number, col));
      background_lines.push_back(raw.number);
      last_w_line = raw.number;
      continue;
    }

    // Default line: [<label>:] <prec?> : <just?> / <cons>
    std::vector<std::pair<std::string_view, std::size_t>> colon_parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ':') {
        colon_parts.emplace_back(line.substr(start, i - start), start);
        start = i + 1;
      }
    }
    if (colon_parts.size() != 2 && colon_parts.size() != 3)
      throw ParseError("expected a default line '<label>: <prec> : <just> / <cons>'", raw.number,
                       1);

    std::optional<std::string> label;
    std::size_t prec_index = 0;
    if (colon_parts.size() == 3) {
      std::string_view name = trim(colon_parts[0].first);
      if (!is_valid_atom_name(name))
        throw ParseError("invalid default label '" + std::string(name) + "'", raw.number, 1);
      label = std::string(name);
      prec_index = 1;
    }

    auto [prec_text, prec_off] = colon_parts[prec_index];
    auto [tail_text, tail_off] = colon_parts[prec_index + 1];
    std::size_t slash = tail_text.find('/');
    if (slash == std::string_view::npos)
      throw ParseError("default line is missing '/' before the consequence", raw.number,
                       static_cast<int>(tail_off) + 1);
    std::string_view just_text = tail_text.substr(0, slash);
    std::string_view cons_text = tail_text.substr(slash + 1);
    if (cons_text.find('/') != std::string_view::npos)
      throw ParseError("default line has more than one '/'", raw.number,
                       static_cast<int>(tail_off + slash) + 2);

    Formula prec = is_blank(prec_text)
                       ? Formula::constant(true)
                       : parse_formula_at(prec_text, raw.number, static_cast<int>(prec_off) + 1);
    Formula just = is_blank(just_text)
                       ? Formula::constant(true)
                       : parse_formula_at(just_text, raw.number, static_cast<int>(tail_off) + 1);
    if (is_blank(cons_text))
      throw ParseError("default line is missing the consequence", raw.number,
                       static_cast<int>(tail_off + slash) + 2);
    Formula cons =
        parse_formula_at(cons_text, raw.number, static_cast<int>(tail_off + slash) + 2);
    defaults.push_back(Default{prec, just, cons, std::move(label)});
    default_lines.push_back(raw.number);
  }

  if (!is_consistent(background))
    throw ParseError("inconsistent background theory", last_w_line == 0 ? 1 : last_w_line, 1);

  try {
    DefaultTheory theory(std::move(defaults), std::move(background), std::move(declared));
    return TheoryDocument{text, std::move(theory), std::move(background_lines),
                          std::move(default_lines)};
  } catch (const ContractError& e) {
    throw ParseError(e.what(), declared_line == 0 ? 1 : declared_line, 1);
  }
}

Qbf2 parse_qbf(const std::string& text) {
  std::string flat;
  for (const RawLine& raw : split_lines(text)) {
    flat.append(raw.text);
    flat.push_back('\n');
  }

  Lexer lexer(flat, 1, 1);
  std::vector<Token> tokens = lexer.run();

  AtomSet x_vars, y_vars, z_vars;
  bool seen_x = false, seen_y = false, seen_z = false;
  std::size_t pos = 0;
  auto block_of = [&](const std::string& word) -> AtomSet* {
    if (word == "exists") {
      if (seen_x) return nullptr;
      seen_x = true;
      return &x_vars;
    }
    if (word == "forall") {
      if (seen_y) return nullptr;
      seen_y = true;
      return &y_vars;
    }
    if (word == "free") {
      if (seen_z) return nullptr;
      seen_z = true;
      return &z_vars;
    }
    return nullptr;
  };

  while (tokens[pos].kind == Tok::Ident &&
         (tokens[pos].text == "exists" || tokens[pos].text == "forall" ||
          tokens[pos].text == "free")) {
    // A quantifier word is only a block header when a dot follows its atoms.
    std::size_t probe = pos + 1;
    while (tokens[probe].kind == Tok::Ident && tokens[probe].text != "exists" &&
           tokens[probe].text != "forall" && tokens[probe].text != "free") {
      ++probe;
    }
    if (tokens[probe].kind != Tok::Dot) break;

    AtomSet* block = block_of(tokens[pos].text);
    if (block == nullptr)
      throw ParseError("duplicate '" + tokens[pos].text + "' block", tokens[pos].line,
                       tokens[pos].column);
    if (probe == pos + 1)
      throw ParseError("empty quantifier block", tokens[pos].line, tokens[pos].column);
    for (std::size_t i = pos + 1; i < probe; ++i) {
      Atom atom{tokens[i].text};
      if (x_vars.count(atom) || y_vars.count(atom) || z_vars.count(atom))
        throw ParseError("variable '" + atom.name + "' is declared twice", tokens[i].line,
                         tokens[i].column);
      block->insert(std::move(atom));
    }
    pos = probe + 1;
  }

  Formula matrix =
      FormulaParser(std::vector<Token>(tokens.begin() + pos, tokens.end())).parse_all();
  for (const Atom& atom : matrix.vars()) {
    if (!x_vars.count(atom) && !y_vars.count(atom) && !z_vars.count(atom))
      throw ParseError("matrix variable '" + atom.name + "' is not in any block", 1, 1);
  }
  return Qbf2{std::move(x_vars), std::move(y_vars), std::move(z_vars), matrix};
}

namespace {

enum Level : int { kIff = 1, kImplies, kOr, kAnd, kUnary };

int level_of(Formula f) {
  switch (f.kind()) {
    case Formula::Kind::Iff:
      return kIff;
    case Formula::Kind::Implies:
      return kImplies;
    case Formula::Kind::Or:
      return kOr;
    case Formula::Kind::And:
      return kAnd;
    default:
      return kUnary;
  }
}

void render(Formula f, int min_level, std::string& out) {
  int my_level = level_of(f);
  bool parens = my_level < min_level;
  if (parens) out.push_back('(');
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      break;
    case Formula::Kind::False:
      out += "false";
      break;
    case Formula::Kind::Var:
      out += f.atom().name;
      break;
    case Formula::Kind::Not:
      out.push_back('!');
      render(f.lhs(), kUnary, out);
      break;
    case Formula::Kind::And:
      render(f.lhs(), kAnd, out);
      out += " & ";
      render(f.rhs(), kAnd + 1, out);
      break;
    case Formula::Kind::Or:
      render(f.lhs(), kOr, out);
      out += " | ";
      render(f.rhs(), kOr + 1, out);
      break;
    case Formula::Kind::Implies:
      render(f.lhs(), kImplies + 1, out);
      out += " -> ";
      render(f.rhs(), kImplies, out);
      break;
    case Formula::Kind::Iff:
      render(f.lhs(), kIff + 1, out);
      out += " <-> ";
      render(f.rhs(), kIff, out);
      break;
  }
  if (parens) out.push_back(')');
}

}  // namespace

std::string render_formula(Formula f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::string render_theory(const DefaultTheory& theory) {
  std::string out;
  if (theory.vars() != theory.occurring_vars()) {
    out += "vars";
    for (const Atom& atom : theory.vars()) {
      out.push_back(' ');
      out += atom.name;
    }
    out.push_back('\n');
  }
  for (Formula w : theory.background()) {
    out += "w ";
    out += render_formula(w);
    out.push_back('\n');
  }
  for (const Default& d : theory.defaults()) {
    if (d.label) {
      out += *d.label;
      out += ": ";
    }
    out += render_formula(d.prec);
    out += " : ";
    out += render_formula(d.just);
    out += " / ";
    out += render_formula(d.cons);
    out.push_back('\n');
  }
  return out;
}

}  // namespace dlw
