#include "rankprover/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace rankprover {
namespace {

enum class TokKind { Ident, Int, Colon, Le, Ge, End };

struct Token {
  TokKind kind;
  std::string text;
  int value = 0;
  int line = 1;
};

bool is_keyword(std::string_view s) {
  return s == "dimension" || s == "points" || s == "hypotheses" || s == "conclusion";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    // End-of-input errors point at the last line with content, not past it.
    if (pos_ >= text_.size()) return {TokKind::End, "", 0, content_line_};
    const int line = content_line_ = line_;
    char c = text_[pos_];
    if (c == ':') {
      ++pos_;
      return {TokKind::Colon, ":", 0, line};
    }
    if (c == '<' || c == '>') {
      if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '=') {
        throw ParseError(line, std::string("expected '") + c + "=', got lone '" + c + "'");
      }
      pos_ += 2;
      return {c == '<' ? TokKind::Le : TokKind::Ge, c == '<' ? "<=" : ">=", 0, line};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string t(text_.substr(start, pos_ - start));
      if (t.size() > 6) throw ParseError(line, "number too large: " + t);
      return {TokKind::Int, t, std::stoi(t), line};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
      return {TokKind::Ident, std::string(text_.substr(start, pos_ - start)), 0, line};
    }
    throw ParseError(line, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int content_line_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, int fallback_dimension, int max_points)
      : lex_(text), fallback_dimension_(fallback_dimension), max_points_(max_points) {
    cur_ = lex_.next();
  }

  ParsedStatement run() {
    ParsedStatement out;
    Statement& stmt = out.statement;

    if (at_ident("dimension")) {
      advance();
      Token v = expect(TokKind::Int, "dimension value");
      if (v.value < kMinDimension || v.value > kMaxDimension) {
        throw ParseError(v.line, "dimension must be between " +
                                     std::to_string(kMinDimension) + " and " +
                                     std::to_string(kMaxDimension) + ", got " + v.text);
      }
      stmt.universe.dimension = v.value;
      out.dimension_declared = true;
    } else {
      stmt.universe.dimension = fallback_dimension_;
    }

    expect_ident("points");
    while (cur_.kind == TokKind::Ident && !is_keyword(cur_.text)) {
      if (stmt.universe.index_of(cur_.text)) {
        throw ParseError(cur_.line, "duplicate point name: " + cur_.text);
      }
      stmt.universe.names.push_back(cur_.text);
      advance();
    }
    if (stmt.universe.names.empty()) {
      throw ParseError(cur_.line, "no points declared");
    }
    if (static_cast<int>(stmt.universe.names.size()) > max_points_) {
      throw ParseError(cur_.line,
                       "too many points: " + std::to_string(stmt.universe.names.size()) +
                           " declared, limit is " + std::to_string(max_points_));
    }

    // The hypotheses section is optional; "points A conclusion A : 1" is valid.
    if (at_ident("hypotheses")) {
      advance();
      while (cur_.kind == TokKind::Ident && !is_keyword(cur_.text)) {
        stmt.hypotheses.push_back(parse_constraint(stmt.universe));
      }
    }

    expect_ident("conclusion");
    while (cur_.kind == TokKind::Ident && !is_keyword(cur_.text)) {
      stmt.conclusions.push_back(parse_constraint(stmt.universe));
    }
    if (cur_.kind != TokKind::End) {
      throw ParseError(cur_.line, "unexpected trailing input: '" + cur_.text + "'");
    }
    if (stmt.conclusions.empty()) {
      throw ParseError(cur_.line, "no conclusion given");
    }

    try {
      validate_statement(stmt, max_points_);
    } catch (const std::invalid_argument& e) {
      throw ParseError(1, e.what());
    }
    return out;
  }

 private:
  RankConstraint parse_constraint(const PointUniverse& u) {
    RankConstraint c;
    int first_line = cur_.line;
    while (cur_.kind == TokKind::Ident) {
      if (is_keyword(cur_.text)) {
        throw ParseError(cur_.line, "'" + cur_.text + "' is a keyword, not a point");
      }
      auto idx = u.index_of(cur_.text);
      if (!idx) throw ParseError(cur_.line, "unknown point: " + cur_.text);
      if (c.set.contains(*idx)) {
        throw ParseError(cur_.line, "point repeated in constraint: " + cur_.text);
      }
      c.set.add(*idx);
      advance();
    }
    switch (cur_.kind) {
      case TokKind::Colon: c.relation = Relation::Eq; break;
      case TokKind::Le: c.relation = Relation::Le; break;
      case TokKind::Ge: c.relation = Relation::Ge; break;
      default:
        throw ParseError(cur_.line, "expected ':', '<=' or '>=' in constraint starting at line " +
                                        std::to_string(first_line));
    }
    advance();
    Token v = expect(TokKind::Int, "rank value");
    if (v.value > u.rank_cap()) {
      throw ParseError(v.line, "rank value " + v.text + " exceeds dimension + 1 = " +
                                   std::to_string(u.rank_cap()));
    }
    c.value = v.value;
    return c;
  }

  bool at_ident(std::string_view word) const {
    return cur_.kind == TokKind::Ident && cur_.text == word;
  }

  void expect_ident(std::string_view word) {
    if (!at_ident(word)) {
      throw ParseError(cur_.line, "expected '" + std::string(word) + "'" +
                                      (cur_.kind == TokKind::End ? ", got end of input"
                                                                 : ", got '" + cur_.text + "'"));
    }
    advance();
  }

  Token expect(TokKind kind, const char* what) {
    if (cur_.kind != kind) {
      throw ParseError(cur_.line, std::string("expected ") + what +
                                      (cur_.kind == TokKind::End ? ", got end of input"
                                                                 : ", got '" + cur_.text + "'"));
    }
    Token t = cur_;
    advance();
    return t;
  }

  void advance() { cur_ = lex_.next(); }

  Lexer lex_;
  Token cur_;
  int fallback_dimension_;
  int max_points_;
};

} // namespace

ParsedStatement parse_statement(std::string_view text, int fallback_dimension, int max_points) {
  return Parser(text, fallback_dimension, max_points).run();
}

ParsedStatement parse_statement_file(const std::string& path, int fallback_dimension,
                                     int max_points) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open statement file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_statement(buf.str(), fallback_dimension, max_points);
}

std::string print_constraint(const PointUniverse& u, const RankConstraint& c) {
  std::string out = u.set_name(c.set);
  out += ' ';
  out += relation_symbol(c.relation);
  out += ' ';
  out += std::to_string(c.value);
  return out;
}

std::string print_statement(const Statement& stmt) {
  std::string out = "dimension " + std::to_string(stmt.universe.dimension) + "\n";
  out += "points";
  for (const auto& n : stmt.universe.names) {
    out += ' ';
    out += n;
  }
  out += "\nhypotheses\n";
  for (const auto& h : stmt.hypotheses) {
    out += "  " + print_constraint(stmt.universe, h) + "\n";
  }
  out += "conclusion\n";
  for (const auto& c : stmt.conclusions) {
    out += "  " + print_constraint(stmt.universe, c) + "\n";
  }
  return out;
}

} // namespace rankprover
