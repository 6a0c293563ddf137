#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "simnet/error.hpp"
#include "simnet/model.hpp"

namespace simnet {

/// A triple whose terms are held in canonical N-Triples form
/// (`<iri>`, `_:label`, `"text"`, `"text"^^<datatype>` or `"text"@lang`).
/// Ordering the tokens lexicographically gives the canonical export order.
struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

inline bool is_unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
         c == '_' || c == '~';
}

inline std::string percent_encode(std::string_view raw) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    if (is_unreserved(c)) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

inline std::optional<std::string> percent_decode(std::string_view encoded) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::string out;
  out.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (encoded[i] != '%') {
      out.push_back(encoded[i]);
      continue;
    }
    if (i + 2 >= encoded.size()) return std::nullopt;
    int hi = nibble(encoded[i + 1]);
    int lo = nibble(encoded[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string escape_iri(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`' || c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", c);
      out += buf;
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

}  // namespace detail

inline std::string iri_token(std::string_view iri) { return "<" + detail::escape_iri(iri) + ">"; }

inline std::string string_literal(std::string_view value) { return "\"" + detail::escape_string(value) + "\""; }

inline std::string typed_literal(std::string_view value, std::string_view datatype) {
  return string_literal(value) + "^^" + iri_token(datatype);
}

inline constexpr std::string_view kXsdPrefix = "http://www.w3.org/2001/XMLSchema#";

inline std::string integer_literal(std::int64_t v) {
  return typed_literal(std::to_string(v), std::string(kXsdPrefix) + "integer");
}
inline std::string integer_literal(std::uint64_t v) {
  return typed_literal(std::to_string(v), std::string(kXsdPrefix) + "integer");
}

/// Shortest fixed-notation text that round-trips the double.
inline std::string decimal_text(double v) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc{}) return std::to_string(v);
  std::string s(buf, ptr);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

inline std::string decimal_literal(double v) { return typed_literal(decimal_text(v), std::string(kXsdPrefix) + "decimal"); }

inline std::string bool_literal(bool v) { return typed_literal(v ? "true" : "false", std::string(kXsdPrefix) + "boolean"); }

inline std::string datetime_literal(Timestamp ts) {
  return typed_literal(format_timestamp(ts), std::string(kXsdPrefix) + "dateTime");
}

struct Literal {
  std::string value;
  std::string datatype;  // empty for plain literals
  std::string lang;
};

namespace detail {

// Cursor over one N-Triples line.
class LineReader {
 public:
  LineReader(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, what + " at column " + std::to_string(pos_ + 1));
  }

  std::string read_iri() {
    if (peek() != '<') fail("expected '<'");
    ++pos_;
    std::string value;
    while (pos_ < s_.size() && s_[pos_] != '>') {
      char c = s_[pos_];
      if (c == ' ' || c == '<' || c == '"') fail("illegal character in IRI");
      if (c == '\\') {
        value += read_escape(false);
      } else {
        value.push_back(c);
        ++pos_;
      }
    }
    if (pos_ >= s_.size()) fail("unterminated IRI");
    ++pos_;
    if (value.empty()) fail("empty IRI");
    return iri_token(value);
  }

  std::string read_blank() {
    if (s_.substr(pos_, 2) != "_:") fail("expected blank node");
    std::size_t start = pos_;
    pos_ += 2;
    while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '.') ++pos_;
    if (pos_ == start + 2) fail("empty blank node label");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string read_subject() { return peek() == '_' ? read_blank() : read_iri(); }

  std::string read_object() {
    if (peek() == '<') return read_iri();
    if (peek() == '_') return read_blank();
    if (peek() != '"') fail("expected object term");
    ++pos_;
    std::string value;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') {
        value += read_escape(true);
      } else {
        value.push_back(s_[pos_++]);
      }
    }
    if (pos_ >= s_.size()) fail("unterminated literal");
    ++pos_;
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      return string_literal(value) + "^^" + read_iri();
    }
    if (peek() == '@') {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      if (pos_ == start + 1) fail("empty language tag");
      return string_literal(value) + std::string(s_.substr(start, pos_ - start));
    }
    return string_literal(value);
  }

  void expect_dot() {
    skip_ws();
    if (peek() != '.') fail("expected '.'");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing characters");
  }

 private:
  std::string read_escape(bool in_literal) {
    ++pos_;  // backslash
    if (pos_ >= s_.size()) fail("dangling escape");
    char c = s_[pos_++];
    auto read_hex = [&](int digits) {
      if (pos_ + digits > s_.size()) fail("short unicode escape");
      std::uint32_t cp = 0;
      auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + pos_ + digits, cp, 16);
      if (ec != std::errc{} || p != s_.data() + pos_ + digits) fail("bad unicode escape");
      pos_ += digits;
      std::string out;
      append_utf8(out, cp);
      return out;
    };
    if (c == 'u') return read_hex(4);
    if (c == 'U') return read_hex(8);
    if (!in_literal) fail("illegal escape in IRI");
    switch (c) {
      case 't': return "\t";
      case 'b': return "\b";
      case 'n': return "\n";
      case 'r': return "\r";
      case 'f': return "\f";
      case '"': return "\"";
      case '\'': return "'";
      case '\\': return "\\";
      default: fail("unknown escape");
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

}  // namespace detail

/// Parses one line; nullopt for blank and comment lines.
inline std::optional<Triple> parse_ntriples_line(std::string_view text, std::size_t line) {
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  detail::LineReader r(text, line);
  r.skip_ws();
  if (r.at_end() || r.peek() == '#') return std::nullopt;
  Triple t;
  t.subject = r.read_subject();
  r.skip_ws();
  t.predicate = r.read_iri();
  r.skip_ws();
  t.object = r.read_object();
  r.expect_dot();
  return t;
}

/// IRI inside an `<...>` token.
inline std::optional<std::string> iri_value(std::string_view token) {
  if (token.size() < 2 || token.front() != '<' || token.back() != '>') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < token.size(); ++i) {
    if (token[i] == '\\' && i + 5 < token.size() && token[i + 1] == 'u') {
      std::uint32_t cp = 0;
      std::from_chars(token.data() + i + 2, token.data() + i + 6, cp, 16);
      detail::append_utf8(out, cp);
      i += 5;
    } else {
      out.push_back(token[i]);
    }
  }
  return out;
}

inline std::optional<Literal> parse_literal(std::string_view token) {
  if (token.empty() || token.front() != '"') return std::nullopt;
  Literal lit;
  std::size_t i = 1;
  for (; i < token.size() && token[i] != '"'; ++i) {
    if (token[i] == '\\' && i + 1 < token.size()) {
      ++i;
      switch (token[i]) {
        case 'n': lit.value.push_back('\n'); break;
        case 'r': lit.value.push_back('\r'); break;
        case 't': lit.value.push_back('\t'); break;
        default: lit.value.push_back(token[i]);
      }
    } else {
      lit.value.push_back(token[i]);
    }
  }
  if (i >= token.size()) return std::nullopt;
  std::string_view rest = token.substr(i + 1);
  if (rest.substr(0, 2) == "^^") {
    auto dt = iri_value(rest.substr(2));
    if (!dt) return std::nullopt;
    lit.datatype = *dt;
  } else if (!rest.empty() && rest.front() == '@') {
    lit.lang = std::string(rest.substr(1));
  }
  return lit;
}

}  // namespace simnet
