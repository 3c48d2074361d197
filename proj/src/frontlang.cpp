#include "engel/frontlang.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <set>

#include "engel/error.hpp"
#include "engel/format.hpp"

namespace engel {

namespace {

constexpr int kMaxHarmonic = 64;

enum class Tok { Ident, Number, LBrace, RBrace, LParen, RParen, Colon, Semi, Plus, Equals, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  int line = 1;
  int column = 1;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool ident_char(char c) { return ident_start(c) || digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
      t.kind = Tok::Ident;
    } else if (digit(c) || c == '.' || ((c == '-' || c == '+') && number_follows(pos_ + 1))) {
      if (c == '-' || c == '+') advance();
      while (pos_ < text_.size() && digit(text_[pos_])) advance();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        advance();
        while (pos_ < text_.size() && digit(text_[pos_])) advance();
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
        if (look < text_.size() && digit(text_[look])) {
          while (pos_ < look) advance();
          while (pos_ < text_.size() && digit(text_[pos_])) advance();
        }
      }
      t.kind = Tok::Number;
    } else {
      advance();
      switch (c) {
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case ':': t.kind = Tok::Colon; break;
        case ';': t.kind = Tok::Semi; break;
        case '+': t.kind = Tok::Plus; break;
        case '=': t.kind = Tok::Equals; break;
        default: t.kind = Tok::Bad;
      }
    }
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

 private:
  bool number_follows(std::size_t i) const {
    if (i >= text_.size()) return false;
    if (digit(text_[i])) return true;
    return text_[i] == '.' && i + 1 < text_.size() && digit(text_[i + 1]);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  std::string out = "'";
  for (char c : t.text) {
    if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f) {
      out += "\\x";
      const char* hex = "0123456789abcdef";
      out += hex[static_cast<unsigned char>(c) >> 4];
      out += hex[static_cast<unsigned char>(c) & 15];
    } else {
      out += c;
    }
  }
  return out + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { cur_ = lexer_.next(); }

  Document document() {
    Document doc;
    while (cur_.kind != Tok::End) {
      if (is_word("generator")) {
        bump();
        const Token name = name_token();
        declare(name);
        doc.generators.push_back({std::string(name.text), generator_body()});
      } else if (is_word("script")) {
        bump();
        const Token name = name_token();
        declare(name);
        doc.scripts.push_back({std::string(name.text), script_body()});
      } else {
        fail("'generator' or 'script'");
      }
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(cur_.line, cur_.column, expected, describe(cur_));
  }

  bool is_word(std::string_view w) const { return cur_.kind == Tok::Ident && cur_.text == w; }

  Token bump() {
    Token t = cur_;
    cur_ = lexer_.next();
    return t;
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(what);
    bump();
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("'" + std::string(w) + "'");
    bump();
  }

  Token name_token() {
    if (cur_.kind != Tok::Ident) fail("a name");
    return bump();
  }

  void declare(const Token& name) {
    if (!names_.insert(std::string(name.text)).second) {
      throw Error(ErrorCode::DuplicateName, std::to_string(name.line) + ":" +
                                                std::to_string(name.column) + ": '" +
                                                std::string(name.text) + "' is already declared");
    }
  }

  double number() {
    if (cur_.kind != Tok::Number) fail("a number");
    const auto text = cur_.text;
    std::size_t skip = !text.empty() && text.front() == '+' ? 1 : 0;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data() + skip, text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
      fail("a finite number");
    }
    bump();
    return v;
  }

  int harmonic() {
    const auto text = cur_.text;
    int k = 0;
    if (cur_.kind == Tok::Number) {
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
      if (ec == std::errc() && end == text.data() + text.size() && k >= 1 && k <= kMaxHarmonic) {
        bump();
        return k;
      }
    }
    fail("a harmonic in 1.." + std::to_string(kMaxHarmonic));
  }

  SeriesTerm term() {
    SeriesTerm t;
    t.coeff = 1.0;
    bool has_number = false;
    if (cur_.kind == Tok::Number) {
      t.coeff = number();
      has_number = true;
    }
    if (is_word("cos") || is_word("sin")) {
      t.kind = cur_.text == "cos" ? SeriesTerm::Kind::Cos : SeriesTerm::Kind::Sin;
      bump();
      expect(Tok::LParen, "'('");
      t.harmonic = harmonic();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (!has_number) fail("a number, 'cos' or 'sin'");
    t.kind = SeriesTerm::Kind::Constant;
    return t;
  }

  Series series() {
    Series s{term()};
    while (cur_.kind == Tok::Plus) {
      bump();
      s.push_back(term());
    }
    if (cur_.kind != Tok::Semi) fail("'+' or ';'");
    bump();
    return s;
  }

  SeriesDescription generator_body() {
    SeriesDescription d;
    expect(Tok::LBrace, "'{'");
    expect_word("x");
    expect(Tok::Colon, "':'");
    d.x = series();
    expect_word("y");
    expect(Tok::Colon, "':'");
    d.y = series();
    expect(Tok::RBrace, "'}'");
    return d;
  }

  MoveScript script_body() {
    MoveScript moves;
    expect(Tok::LBrace, "'{'");
    while (cur_.kind != Tok::RBrace) {
      if (cur_.kind != Tok::Ident) fail("a move or '}'");
      Move m;
      try {
        m.kind = move_kind_from_string(std::string(cur_.text));
      } catch (const Error&) {
        throw Error(ErrorCode::UnknownMoveKind, std::to_string(cur_.line) + ":" +
                                                    std::to_string(cur_.column) +
                                                    ": unknown move '" + std::string(cur_.text) + "'");
      }
      bump();
      std::set<std::string, std::less<>> seen;
      while (cur_.kind == Tok::Ident) {
        const Token key = bump();
        if (!seen.insert(std::string(key.text)).second) {
          throw Error(ErrorCode::DuplicateName, std::to_string(key.line) + ":" +
                                                    std::to_string(key.column) + ": parameter '" +
                                                    std::string(key.text) + "' repeated");
        }
        expect(Tok::Equals, "'='");
        m.params.emplace_back(std::string(key.text), number());
      }
      if (cur_.kind != Tok::Semi) fail("a parameter or ';'");
      bump();
      moves.push_back(std::move(m));
    }
    bump();
    return moves;
  }

  Lexer lexer_;
  Token cur_;
  std::set<std::string, std::less<>> names_;
};

void emit_series(std::string& out, const Series& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& t = series[i];
    if (i > 0) out += " + ";
    if (t.kind == SeriesTerm::Kind::Constant) {
      out += format_double(t.coeff);
      continue;
    }
    if (t.coeff != 1.0) out += format_double(t.coeff) + " ";
    out += t.kind == SeriesTerm::Kind::Cos ? "cos(" : "sin(";
    out += std::to_string(t.harmonic) + ")";
  }
}

}  // namespace

const SeriesDescription& Document::generator(std::string_view name) const {
  for (const auto& g : generators) {
    if (g.name == name) return g.description;
  }
  throw Error(ErrorCode::UnknownName, "no generator named '" + std::string(name) + "'");
}

const MoveScript& Document::script(std::string_view name) const {
  for (const auto& s : scripts) {
    if (s.name == name) return s.moves;
  }
  throw Error(ErrorCode::UnknownName, "no script named '" + std::string(name) + "'");
}

Document parse(std::string_view text) { return Parser(text).document(); }

std::string emit(const Document& doc) {
  std::string out;
  for (const auto& g : doc.generators) {
    if (!out.empty()) out += "\n";
    out += "generator " + g.name + " {\n  x: ";
    emit_series(out, g.description.x);
    out += ";\n  y: ";
    emit_series(out, g.description.y);
    out += ";\n}\n";
  }
  for (const auto& s : doc.scripts) {
    if (!out.empty()) out += "\n";
    out += "script " + s.name + " {\n";
    for (const auto& m : s.moves) {
      out += "  " + to_string(m.kind);
      for (const auto& [key, value] : m.params) out += " " + key + "=" + format_double(value);
      out += ";\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace engel
