#include "peierls/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "peierls/errors.hpp"
#include "peierls/io.hpp"

namespace peierls {

namespace {

std::string prefix(std::string_view where, int column) {
  if (where.empty()) return {};
  std::string p(where);
  if (column > 0) p += ":" + std::to_string(column);
  return p + ": ";
}

double parse_double(std::string_view key, std::string_view text, std::string_view where, int column) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigError(prefix(where, column) + std::string(key) + ": expected a finite decimal number, got '" +
                      std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text, std::string_view where, int column) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(prefix(where, column) + std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text, std::string_view where, int column) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(prefix(where, column) + std::string(key) + ": expected true or false, got '" + std::string(text) +
                    "'");
}

struct Key {
  std::function<void(RunConfig&, std::string_view, std::string_view, int)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Key number_key(std::string_view name, T RunConfig::*member) {
  std::string n(name);
  Key k;
  k.set = [n, member](RunConfig& c, std::string_view v, std::string_view where, int col) {
    if constexpr (std::is_same_v<T, int>) c.*member = parse_int(n, v, where, col);
    else c.*member = parse_double(n, v, where, col);
  };
  k.get = [member](const RunConfig& c) {
    if constexpr (std::is_same_v<T, int>) return std::to_string(c.*member);
    else return format_number(c.*member);
  };
  return k;
}

template <typename T>
Key model_key(std::string_view name, T ModelParams::*member) {
  std::string n(name);
  Key k;
  k.set = [n, member](RunConfig& c, std::string_view v, std::string_view where, int col) {
    if constexpr (std::is_same_v<T, int>) c.model.*member = parse_int(n, v, where, col);
    else c.model.*member = parse_double(n, v, where, col);
  };
  k.get = [member](const RunConfig& c) {
    if constexpr (std::is_same_v<T, int>) return std::to_string(c.model.*member);
    else return format_number(c.model.*member);
  };
  return k;
}

Key bool_key(std::string_view name, bool RunConfig::*member) {
  std::string n(name);
  return {[n, member](RunConfig& c, std::string_view v, std::string_view where, int col) {
            c.*member = parse_bool(n, v, where, col);
          },
          [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

const std::map<std::string, Key, std::less<>>& key_table() {
  static const std::map<std::string, Key, std::less<>> table = [] {
    std::map<std::string, Key, std::less<>> t;
    t["t"] = model_key("t", &ModelParams::t);
    t["zeta"] = model_key("zeta", &ModelParams::zeta);
    t["kappa"] = model_key("kappa", &ModelParams::kappa);
    t["q"] = model_key("q", &ModelParams::q);
    t["w"] = model_key("w", &ModelParams::w);
    t["big_l"] = model_key("big_l", &ModelParams::big_l);
    t["phonon_norm"] = {[](RunConfig& c, std::string_view v, std::string_view where, int col) {
                          try {
                            c.phonon_norm = parse_phonon_norm(v);
                          } catch (const std::exception& e) {
                            throw ConfigError(prefix(where, col) + e.what());
                          }
                        },
                        [](const RunConfig& c) { return std::string(to_string(c.phonon_norm)); }};
    t["unit_weights"] = bool_key("unit_weights", &RunConfig::unit_weights);
    t["re_min"] = number_key("re_min", &RunConfig::re_min);
    t["re_max"] = number_key("re_max", &RunConfig::re_max);
    t["im_min"] = number_key("im_min", &RunConfig::im_min);
    t["im_max"] = number_key("im_max", &RunConfig::im_max);
    t["resolution"] = number_key("resolution", &RunConfig::resolution);
    t["seeds_per_axis"] = number_key("seeds_per_axis", &RunConfig::seeds_per_axis);
    t["tol"] = number_key("tol", &RunConfig::tol);
    t["max_iter"] = number_key("max_iter", &RunConfig::max_iter);
    t["x0"] = number_key("x0", &RunConfig::x0);
    t["v0"] = number_key("v0", &RunConfig::v0);
    t["dt"] = number_key("dt", &RunConfig::dt);
    t["steps"] = number_key("steps", &RunConfig::steps);
    t["z_re"] = number_key("z_re", &RunConfig::z_re);
    t["z_im"] = number_key("z_im", &RunConfig::z_im);
    t["n_sites"] = number_key("n_sites", &RunConfig::n_sites);
    t["kink_n"] = number_key("kink_n", &RunConfig::kink_n);
    t["kink_dt"] = number_key("kink_dt", &RunConfig::kink_dt);
    t["kink_steps"] = number_key("kink_steps", &RunConfig::kink_steps);
    t["kink_record_every"] = number_key("kink_record_every", &RunConfig::kink_record_every);
    t["hysteresis"] = number_key("hysteresis", &RunConfig::hysteresis);
    t["wall_tilt"] = number_key("wall_tilt", &RunConfig::wall_tilt);
    t["freeze_z"] = bool_key("freeze_z", &RunConfig::freeze_z);
    t["kink_form"] = {[](RunConfig& c, std::string_view v, std::string_view where, int col) {
                        try {
                          c.kink_form = parse_kink_form(v);
                        } catch (const std::exception& e) {
                          throw ConfigError(prefix(where, col) + e.what());
                        }
                      },
                      [](const RunConfig& c) { return std::string(to_string(c.kink_form)); }};
    t["out"] = {[](RunConfig& c, std::string_view v, std::string_view, int) { c.out = std::string(v); },
                [](const RunConfig& c) { return c.out; }};
    t["workers"] = number_key("workers", &RunConfig::workers);
    t["corrupt_xi"] = number_key("corrupt_xi", &RunConfig::corrupt_xi);
    return t;
  }();
  return table;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

unsigned RunConfig::worker_count() const {
  if (workers > 0) return static_cast<unsigned>(workers);
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [name, key] : key_table()) keys.push_back(name);
  return keys;
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value, std::string_view where,
                      int column) {
  const auto it = key_table().find(key);
  if (it == key_table().end()) throw ConfigError(prefix(where, 0) + "unknown key '" + std::string(key) + "'");
  it->second.set(config, value, where, column);
}

void load_config_text(RunConfig& config, std::string_view text, std::string_view source) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      const auto col = static_cast<int>(line.size() - trim(line).size() + 1);
      throw ConfigError(where + ":" + std::to_string(col) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view rest = line.substr(eq + 1);
    const std::string_view value = trim(rest);
    const auto leading = rest.find_first_not_of(" \t");
    const int value_col = static_cast<int>(eq + 2 + (leading == std::string_view::npos ? 0 : leading));
    if (key.empty()) throw ConfigError(where + ":1: missing key");
    set_config_value(config, key, value, where, value_col);
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_config_text(config, buf.str(), path);
}

void apply_environment(RunConfig& config) {
  for (const auto& name : config_keys()) {
    std::string var = "PEIERLS_" + name;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (const char* value = std::getenv(var.c_str())) set_config_value(config, name, trim(value), var, 1);
  }
}

void apply_assignment(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("--set " + std::string(assignment) + ": expected key=value");
  set_config_value(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)),
                   "--set " + std::string(assignment), static_cast<int>(eq + 2));
}

void validate(const RunConfig& c) {
  validate(c.model);
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(c.re_min <= c.re_max, "re_min must not exceed re_max");
  require(c.im_min <= c.im_max, "im_min must not exceed im_max");
  require(c.resolution >= 1, "resolution must be >= 1");
  require(c.seeds_per_axis >= 1, "seeds_per_axis must be >= 1");
  require(c.tol > 0.0, "tol must be > 0");
  require(c.max_iter >= 1, "max_iter must be >= 1");
  require(c.dt > 0.0, "dt must be > 0");
  require(c.steps >= 0, "steps must be >= 0");
  require(c.n_sites >= 6 && c.n_sites % 2 == 0, "n_sites must be even and >= 6");
  require(c.kink_n >= 0 && c.kink_n <= c.n_sites - 3, "kink_n must lie in [0, n_sites - 3]");
  require(c.kink_dt > 0.0, "kink_dt must be > 0");
  require(c.kink_steps >= 0, "kink_steps must be >= 0");
  require(c.kink_record_every >= 1, "kink_record_every must be >= 1");
  require(c.hysteresis >= 0.0 && c.hysteresis < 1.0, "hysteresis must lie in [0, 1)");
  require(c.workers >= 0, "workers must be >= 0");
  require(c.corrupt_xi > 0.0, "corrupt_xi must be > 0");
  require(!c.out.empty(), "out must not be empty");
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config, bool embedded) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, key] : key_table()) {
    if (embedded && (name == "out" || name == "workers")) continue;
    out.emplace_back(name, key.get(config));
  }
  return out;
}

}  // namespace peierls
