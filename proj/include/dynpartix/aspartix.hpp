#pragma once

// Reader and writer for the ASPARTIX fact format:
//
//   arg(a). arg(b).
//   att(a,b).   % comment
//
// Identifiers start with a letter or underscore, followed by letters, digits
// or underscores. Whitespace is allowed between any two tokens.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynpartix/af.hpp"

namespace dynpartix {

struct ParseDiagnostic {
  enum class Kind { syntax, semantic };

  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
  std::string message;
  Kind kind = Kind::syntax;

  [[nodiscard]] std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           (kind == Kind::syntax ? "syntax error: " : "error: ") + message;
  }
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostic d) : std::runtime_error(d.to_string()), diagnostic_(std::move(d)) {}

  [[nodiscard]] const ParseDiagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  ParseDiagnostic diagnostic_;
};

namespace detail {

class AspartixReader {
 public:
  explicit AspartixReader(std::string_view text) : text_(text) {}

  ArgumentationFramework read() {
    std::set<std::string> args;
    std::vector<std::pair<std::string, std::string>> attacks;
    // first occurrence of every attack endpoint, for error reporting
    std::unordered_map<std::string, Position> endpoint_pos;

    for (skip_blank(); !at_end(); skip_blank()) {
      const Position fact_pos = pos_;
      const std::string predicate = identifier("predicate");
      if (predicate != "arg" && predicate != "att") {
        fail(fact_pos, "unknown predicate '" + predicate + "', expected 'arg' or 'att'");
      }
      expect('(');
      skip_blank();
      const Position first_pos = pos_;
      std::string first = identifier("argument identifier");
      if (predicate == "arg") {
        expect(')');
        expect('.');
        args.insert(std::move(first));
        continue;
      }
      expect(',');
      skip_blank();
      const Position second_pos = pos_;
      std::string second = identifier("argument identifier");
      expect(')');
      expect('.');
      endpoint_pos.try_emplace(first, first_pos);
      endpoint_pos.try_emplace(second, second_pos);
      attacks.emplace_back(std::move(first), std::move(second));
    }

    const Position* worst = nullptr;
    std::string undeclared;
    for (const auto& [name, p] : endpoint_pos) {
      if (args.count(name) != 0) continue;
      if (worst == nullptr || p.offset < worst->offset) {
        worst = &p;
        undeclared = name;
      }
    }
    if (worst != nullptr) {
      throw ParseError({worst->line, worst->column,
                        "argument '" + undeclared + "' used in att/2 but never declared with arg/1",
                        ParseDiagnostic::Kind::semantic});
    }
    return ArgumentationFramework(std::vector<std::string>(args.begin(), args.end()), attacks);
  }

 private:
  struct Position {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
  };

  [[nodiscard]] bool at_end() const { return pos_.offset >= text_.size(); }
  [[nodiscard]] char peek() const { return text_[pos_.offset]; }

  void advance() {
    if (peek() == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++pos_.offset;
  }

  void skip_blank() {
    while (!at_end()) {
      const char c = peek();
      if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] static void fail(const Position& p, std::string message) {
    throw ParseError({p.line, p.column, std::move(message), ParseDiagnostic::Kind::syntax});
  }

  [[nodiscard]] std::string describe_current() const {
    if (at_end()) return "end of input";
    return std::string("'") + peek() + "'";
  }

  std::string identifier(const char* what) {
    auto is_first = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; };
    auto is_rest = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; };
    if (at_end() || !is_first(peek())) {
      fail(pos_, std::string("expected ") + what + ", found " + describe_current());
    }
    const std::size_t start = pos_.offset;
    while (!at_end() && is_rest(peek())) advance();
    return std::string(text_.substr(start, pos_.offset - start));
  }

  void expect(char c) {
    skip_blank();
    if (at_end() || peek() != c) {
      fail(pos_, std::string("expected '") + c + "', found " + describe_current());
    }
    advance();
  }

  std::string_view text_;
  Position pos_;
};

}  // namespace detail

/// Parses ASPARTIX text. Throws ParseError with a position on failure.
inline ArgumentationFramework parse_aspartix(std::string_view text) {
  return detail::AspartixReader(text).read();
}

inline ArgumentationFramework parse_aspartix(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_aspartix(std::string_view(text));
}

inline ArgumentationFramework parse_aspartix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_aspartix(in);
}

/// One fact per line: all arg/1 facts in name order, then att/2 facts in
/// (attacker, target) order.
inline void serialize_aspartix(const ArgumentationFramework& af, std::ostream& out) {
  for (const auto& n : af.arguments()) out << "arg(" << n << ").\n";
  for (const auto& [a, b] : af.attacks()) out << "att(" << af.name(a) << ',' << af.name(b) << ").\n";
}

inline std::string serialize_aspartix(const ArgumentationFramework& af) {
  std::ostringstream out;
  serialize_aspartix(af, out);
  return out.str();
}

}  // namespace dynpartix
