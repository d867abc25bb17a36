#pragma once

// Just enough TOML for flat config files: `key = value` lines with strings,
// integers, booleans, and (nested) arrays. '#' starts a comment. Arrays may
// span lines.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tomlmini {

struct Value {
  enum class Kind { str, integer, boolean, array };
  Kind kind = Kind::str;
  std::string s;
  long long i = 0;
  bool b = false;
  std::vector<Value> arr;
};

class Parser {
 public:
  explicit Parser(std::string text) : t_(std::move(text)) {}

  std::map<std::string, Value> parse() {
    std::map<std::string, Value> out;
    for (;;) {
      skip_filler();
      if (pos_ >= t_.size()) break;
      std::string key = read_key();
      skip_inline();
      expect('=');
      skip_inline();
      out[key] = read_value();
      skip_inline();
      if (pos_ < t_.size() && t_[pos_] == '#') skip_to_eol();
      if (pos_ < t_.size() && t_[pos_] != '\n')
        fail("trailing characters after value for key '" + key + "'");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    size_t line = 1;
    for (size_t i = 0; i < pos_ && i < t_.size(); ++i)
      if (t_[i] == '\n') ++line;
    throw std::runtime_error("config line " + std::to_string(line) + ": " + msg);
  }

  void skip_inline() {
    while (pos_ < t_.size() && (t_[pos_] == ' ' || t_[pos_] == '\t' || t_[pos_] == '\r'))
      ++pos_;
  }

  void skip_to_eol() {
    while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
  }

  // whitespace, newlines and comments between statements
  void skip_filler() {
    for (;;) {
      skip_inline();
      if (pos_ < t_.size() && t_[pos_] == '#') {
        skip_to_eol();
        continue;
      }
      if (pos_ < t_.size() && t_[pos_] == '\n') {
        ++pos_;
        continue;
      }
      return;
    }
  }

  void expect(char c) {
    if (pos_ >= t_.size() || t_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_key() {
    size_t start = pos_;
    while (pos_ < t_.size() &&
           (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_' ||
            t_[pos_] == '-'))
      ++pos_;
    if (pos_ == start) fail("expected a key");
    return t_.substr(start, pos_ - start);
  }

  Value read_value() {
    if (pos_ >= t_.size()) fail("expected a value");
    char c = t_[pos_];
    if (c == '"') return read_string();
    if (c == '[') return read_array();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+')
      return read_int();
    if (t_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      Value v;
      v.kind = Value::Kind::boolean;
      v.b = true;
      return v;
    }
    if (t_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      Value v;
      v.kind = Value::Kind::boolean;
      v.b = false;
      return v;
    }
    fail("unrecognized value");
  }

  Value read_string() {
    expect('"');
    std::string s;
    while (pos_ < t_.size() && t_[pos_] != '"') {
      if (t_[pos_] == '\n') fail("newline in string");
      if (t_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= t_.size()) fail("dangling escape");
        char e = t_[pos_];
        if (e == 'n') s += '\n';
        else if (e == 't') s += '\t';
        else if (e == '"' || e == '\\') s += e;
        else fail("unsupported escape");
      } else {
        s += t_[pos_];
      }
      ++pos_;
    }
    expect('"');
    Value v;
    v.kind = Value::Kind::str;
    v.s = std::move(s);
    return v;
  }

  Value read_int() {
    size_t start = pos_;
    if (t_[pos_] == '-' || t_[pos_] == '+') ++pos_;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(t_[start]))))
      fail("bad integer");
    Value v;
    v.kind = Value::Kind::integer;
    v.i = std::stoll(t_.substr(start, pos_ - start));
    return v;
  }

  Value read_array() {
    expect('[');
    Value v;
    v.kind = Value::Kind::array;
    for (;;) {
      skip_filler();
      if (pos_ >= t_.size()) fail("unterminated array");
      if (t_[pos_] == ']') {
        ++pos_;
        return v;
      }
      v.arr.push_back(read_value());
      skip_filler();
      if (pos_ < t_.size() && t_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < t_.size() && t_[pos_] == ']') {
        ++pos_;
        return v;
      }
      fail("expected ',' or ']' in array");
    }
  }

  std::string t_;
  size_t pos_ = 0;
};

inline std::map<std::string, Value> parse(const std::string& text) {
  return Parser(text).parse();
}

inline std::map<std::string, Value> parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace tomlmini
