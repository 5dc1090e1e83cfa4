#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "hesslab/atlas.hpp"

namespace hesslab {

/// Built-in defaults; a key=value file and HESSLAB_PRECISION_BITS override them, flags override both.
struct Config {
  long bound = 50;
  unsigned precision_bits = 4096;
  long fallback_bound = 1000;
  GridRange window{-20, 20, -20, 20};
  Range3 window4{-15, 15};
  Palette palette;
  std::string format = "text";
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  std::string t = s.substr(b, e - b + 1);
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
  return t;
}

inline long to_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw PreconditionError("config key '" + key + "': not an integer: " + v);
  return x;
}

// "lo:hi"
inline std::pair<long, long> parse_span(const std::string& s) {
  auto c = s.find(':');
  if (c == std::string::npos) throw PreconditionError("range must be lo:hi, got '" + s + "'");
  long lo = to_long("range", trim(s.substr(0, c))), hi = to_long("range", trim(s.substr(c + 1)));
  if (lo > hi) throw PreconditionError("empty range '" + s + "'");
  return {lo, hi};
}

}  // namespace detail

/// "-20:20,-20:20"
inline GridRange parse_grid_range(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw PreconditionError("grid range must be lo:hi,lo:hi");
  auto a = detail::parse_span(s.substr(0, comma)), b = detail::parse_span(s.substr(comma + 1));
  return {a.first, a.second, b.first, b.second};
}

inline Range3 parse_range3(const std::string& s) {
  auto a = detail::parse_span(s);
  return {a.first, a.second};
}

inline void apply_config_entry(Config& c, const std::string& key, const std::string& value) {
  auto gray = [&](int& slot) {
    long g = detail::to_long(key, value);
    if (g < 0 || g > 255) throw PreconditionError("config key '" + key + "': gray level out of 0..255");
    slot = static_cast<int>(g);
  };
  if (key == "bound") c.bound = detail::to_long(key, value);
  else if (key == "precision_bits") c.precision_bits = static_cast<unsigned>(detail::to_long(key, value));
  else if (key == "fallback_bound") c.fallback_bound = detail::to_long(key, value);
  else if (key == "window") c.window = parse_grid_range(value);
  else if (key == "window4") c.window4 = parse_range3(value);
  else if (key == "format") {
    if (value != "text" && value != "json") throw PreconditionError("config key 'format' must be text or json");
    c.format = value;
  } else if (key == "palette.reducible") gray(c.palette.reducible);
  else if (key == "palette.rs") gray(c.palette.rs);
  else if (key == "palette.nonreduced") gray(c.palette.nonreduced);
  else if (key == "palette.reduced") gray(c.palette.reduced);
  else if (key == "palette.unknown") gray(c.palette.unknown);
  else if (key == "palette.four_real") gray(c.palette.four_real);
  else if (key == "palette.two_two") gray(c.palette.two_two);
  else if (key == "palette.four_complex") gray(c.palette.four_complex);
  else throw PreconditionError("unknown config key '" + key + "'");
}

/// key = value lines; '#' starts a comment, [section] headers prefix keys with "section.".
inline void load_config_text(Config& c, const std::string& text) {
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    apply_config_entry(c, key, detail::trim(line.substr(eq + 1)));
  }
}

inline void load_config_file(Config& c, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  load_config_text(c, ss.str());
}

inline std::string config_to_text(const Config& c) {
  std::ostringstream os;
  os << "bound = " << c.bound << "\n";
  os << "precision_bits = " << c.precision_bits << "\n";
  os << "fallback_bound = " << c.fallback_bound << "\n";
  os << "window = " << c.window.lo0 << ":" << c.window.hi0 << "," << c.window.lo1 << ":" << c.window.hi1 << "\n";
  os << "window4 = " << c.window4.lo << ":" << c.window4.hi << "\n";
  os << "format = " << c.format << "\n";
  os << "[palette]\n";
  os << "reducible = " << c.palette.reducible << "\n";
  os << "rs = " << c.palette.rs << "\n";
  os << "nonreduced = " << c.palette.nonreduced << "\n";
  os << "reduced = " << c.palette.reduced << "\n";
  os << "unknown = " << c.palette.unknown << "\n";
  os << "four_real = " << c.palette.four_real << "\n";
  os << "two_two = " << c.palette.two_two << "\n";
  os << "four_complex = " << c.palette.four_complex << "\n";
  return os.str();
}

inline void apply_env(Config& c) {
  if (const char* p = std::getenv("HESSLAB_PRECISION_BITS"); p && *p)
    c.precision_bits = static_cast<unsigned>(detail::to_long("HESSLAB_PRECISION_BITS", p));
}

/// Built-ins, then the file (explicit path, else ./hessenberg-lab.toml if present), then the environment.
inline Config resolve_config(const std::optional<std::string>& path) {
  Config c;
  if (path) {
    load_config_file(c, *path);
  } else if (std::ifstream probe("hessenberg-lab.toml"); probe) {
    load_config_file(c, "hessenberg-lab.toml");
  }
  apply_env(c);
  return c;
}

}  // namespace hesslab
