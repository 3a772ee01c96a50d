#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecosim/error.hpp"

namespace ecosim {

// Key-value configuration document.
//
// Syntax:
//   # comment (also allowed after a value)
//   dotted.key = v1 v2 v3 ...        values are whitespace/comma separated
//       v4 v5                        indented lines continue the previous key
//
// Keys are dotted lowercase identifiers. Duplicate keys are an error.
class ConfigDoc {
 public:
  struct Entry {
    std::vector<std::string> tokens;
    int line = 0;
  };

  ConfigDoc() = default;

  static ConfigDoc parse(std::istream& in, const std::string& origin = "<stream>") {
    ConfigDoc doc;
    doc.origin_ = origin;
    std::string raw;
    int line_no = 0;
    std::string open_key;  // key accepting continuation lines
    while (std::getline(in, raw)) {
      ++line_no;
      bool continuation = !raw.empty() && (raw[0] == ' ' || raw[0] == '\t');
      std::string line = strip_comment(raw);
      std::string trimmed = trim(line);
      if (trimmed.empty()) {
        open_key.clear();
        continue;
      }
      if (continuation) {
        if (open_key.empty()) {
          throw ParseError(origin + ":" + std::to_string(line_no) +
                           ": continuation line without a preceding key");
        }
        append_tokens(doc.entries_[open_key].tokens, trimmed);
        continue;
      }
      auto eq = trimmed.find('=');
      if (eq == std::string::npos) {
        throw ParseError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
      }
      std::string key = trim(trimmed.substr(0, eq));
      if (key.empty() || !valid_key(key)) {
        throw ParseError(origin + ":" + std::to_string(line_no) + ": bad key '" + key + "'");
      }
      if (doc.entries_.count(key)) {
        throw ParseError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                         "' (first defined at line " +
                         std::to_string(doc.entries_[key].line) + ")");
      }
      Entry e;
      e.line = line_no;
      append_tokens(e.tokens, trim(trimmed.substr(eq + 1)));
      doc.entries_.emplace(key, std::move(e));
      open_key = key;
    }
    return doc;
  }

  static ConfigDoc load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open config file: " + path.string());
    }
    return parse(in, path.string());
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  /// Replaces the value of an existing key (CLI --set overrides).
  void set(const std::string& key, const std::string& value) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ParseError(origin_ + ": override names unknown key '" + key + "'");
    }
    it->second.tokens.clear();
    append_tokens(it->second.tokens, value);
    if (it->second.tokens.empty()) {
      throw ParseError(origin_ + ": override for '" + key + "' has no value");
    }
  }

  double get_double(const std::string& key) const {
    const Entry& e = single(key);
    return to_double(e.tokens[0], key, e.line);
  }

  double get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : (touch(key), fallback);
  }

  int get_int(const std::string& key) const {
    const Entry& e = single(key);
    double d = to_double(e.tokens[0], key, e.line);
    int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) {
      throw ParseError(where(key, e.line) + ": expected integer, got '" + e.tokens[0] + "'");
    }
    return i;
  }

  int get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : (touch(key), fallback);
  }

  std::string get_string(const std::string& key) const {
    const Entry& e = single(key);
    return e.tokens[0];
  }

  std::string get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : (touch(key), fallback);
  }

  std::vector<double> get_list(const std::string& key) const {
    const Entry& e = entry(key);
    std::vector<double> out;
    out.reserve(e.tokens.size());
    for (const std::string& t : e.tokens) out.push_back(to_double(t, key, e.line));
    return out;
  }

  int line_of(const std::string& key) const { return entry(key).line; }

  /// Keys never read by any getter: catches typos in config files.
  std::vector<std::string> unread_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, e] : entries_) {
      if (!read_.count(key)) out.push_back(key);
    }
    return out;
  }

  void require_all_read() const {
    auto unread = unread_keys();
    if (!unread.empty()) {
      throw ParseError(origin_ + ": unknown key '" + unread.front() + "' at line " +
                       std::to_string(entries_.at(unread.front()).line));
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  const Entry& entry(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ParseError(origin_ + ": missing required key '" + key + "'");
    }
    read_.insert(key);
    return it->second;
  }

  const Entry& single(const std::string& key) const {
    const Entry& e = entry(key);
    if (e.tokens.size() != 1) {
      throw ParseError(where(key, e.line) + ": expected a single value, got " +
                       std::to_string(e.tokens.size()));
    }
    return e;
  }

  void touch(const std::string& key) const { read_.insert(key); }

  std::string where(const std::string& key, int line) const {
    return origin_ + ":" + std::to_string(line) + ": key '" + key + "'";
  }

  double to_double(const std::string& tok, const std::string& key, int line) const {
    double value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
      throw ParseError(where(key, line) + ": expected number, got '" + tok + "'");
    }
    return value;
  }

  static bool valid_key(const std::string& key) {
    for (char c : key) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
    }
    return true;
  }

  static std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
  }

  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  static void append_tokens(std::vector<std::string>& tokens, const std::string& text) {
    std::string cur;
    for (char c : text) {
      if (c == ',' || c == ' ' || c == '\t') {
        if (!cur.empty()) tokens.push_back(std::exchange(cur, {}));
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens.push_back(cur);
  }

  std::string origin_;
  std::map<std::string, Entry> entries_;
  mutable std::set<std::string> read_;
};

}  // namespace ecosim
