#include "fluidfluid/config.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <type_traits>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

namespace {

using Value = std::variant<long long, double, bool, std::string, std::vector<long long>>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Drops a '#' comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

bool parse_int(const std::string& s, long long& out) {
  std::string t;
  for (char c : s)
    if (c != '_') t += c;
  std::size_t off = (!t.empty() && t[0] == '+') ? 1 : 0;
  const char* b = t.data() + off;
  const char* e = t.data() + t.size();
  const auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e && b != e;
}

bool parse_float(const std::string& s, double& out) {
  std::string t;
  for (char c : s)
    if (c != '_') t += c;
  std::size_t off = (!t.empty() && t[0] == '+') ? 1 : 0;
  const char* b = t.data() + off;
  const char* e = t.data() + t.size();
  const auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e && b != e;
}

Value parse_value(const std::string& key, const std::string& raw) {
  if (raw.empty()) throw ConfigError("missing value for key '" + key + "'");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') throw ConfigError("unterminated string for key '" + key + "'");
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size()) {
        const char c = raw[++i];
        out += c == 'n' ? '\n' : c == 't' ? '\t' : c;
      } else {
        out += raw[i];
      }
    }
    return out;
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.front() == '[') {
    if (raw.back() != ']') throw ConfigError("unterminated array for key '" + key + "'");
    std::vector<long long> items;
    std::stringstream ss(raw.substr(1, raw.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;  // trailing comma
      long long v = 0;
      if (!parse_int(item, v)) throw ConfigError("array for key '" + key + "' must hold integers");
      items.push_back(v);
    }
    return items;
  }
  long long i = 0;
  if (parse_int(raw, i)) return i;
  double d = 0.0;
  if (parse_float(raw, d)) return d;
  throw ConfigError("cannot parse value for key '" + key + "': " + raw);
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Value> v) : values_(std::move(v)) {}

  template <class T>
  T take(const std::string& key, T fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    Value v = std::move(it->second);
    values_.erase(it);
    if constexpr (std::is_same_v<T, double>) {
      if (const auto* d = std::get_if<double>(&v)) return *d;
      if (const auto* i = std::get_if<long long>(&v)) return static_cast<double>(*i);
      throw ConfigError("key '" + key + "' must be a number");
    } else if constexpr (std::is_same_v<T, int>) {
      const auto* i = std::get_if<long long>(&v);
      if (!i) throw ConfigError("key '" + key + "' must be an integer");
      if (*i < std::numeric_limits<int>::min() || *i > std::numeric_limits<int>::max())
        throw ConfigError("key '" + key + "' is out of range");
      return static_cast<int>(*i);
    } else if constexpr (std::is_same_v<T, bool>) {
      const auto* b = std::get_if<bool>(&v);
      if (!b) throw ConfigError("key '" + key + "' must be a boolean");
      return *b;
    } else if constexpr (std::is_same_v<T, std::string>) {
      const auto* s = std::get_if<std::string>(&v);
      if (!s) throw ConfigError("key '" + key + "' must be a string");
      return *s;
    } else {
      const auto* a = std::get_if<std::vector<long long>>(&v);
      if (!a) throw ConfigError("key '" + key + "' must be an array of integers");
      std::vector<int> out;
      for (auto x : *a) {
        if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
          throw ConfigError("key '" + key + "' has an out-of-range entry");
        out.push_back(static_cast<int>(x));
      }
      return out;
    }
  }

  void reject_leftovers() const {
    if (values_.empty()) return;
    std::string keys;
    for (const auto& [k, v] : values_) keys += (keys.empty() ? "" : ", ") + k;
    throw ConfigError("unknown configuration key(s): " + keys);
  }

 private:
  std::map<std::string, Value> values_;
};

}  // namespace

void RunConfig::validate() const {
  if (nx < 1) throw ValidationError("mesh.nx must be >= 1, got " + std::to_string(nx));
  if (ny_half < 1) throw ValidationError("mesh.ny_half must be >= 1, got " + std::to_string(ny_half));
  params.validate();
  if (solve_data != "zero") (void)parse_mms_kind(solve_data);
  if (mms_levels.size() < 2) throw ValidationError("mms.levels needs at least two entries");
  for (int l : mms_levels)
    if (l < 2 || l % 2 != 0) throw ValidationError("mms.levels entries must be even and >= 2");
  if (!(t > 0.0)) throw ValidationError("time.t must be > 0");
  if (n < 1) throw ValidationError("time.n must be >= 1");
  if (snapshots < 0) throw ValidationError("time.snapshots must be >= 0");
  if (infsup_levels.empty()) throw ValidationError("infsup.levels must not be empty");
  for (int l : infsup_levels)
    if (l < 1) throw ValidationError("infsup.levels entries must be >= 1");
  if (output_dir.empty()) throw ValidationError("output.dir must not be empty");
}

RunConfig parse_config(const std::string& text) {
  static const std::map<std::string, std::vector<std::string>> known{
      {"mesh", {"nx", "ny_half"}},
      {"params", {"lambda", "nu", "lame_lambda"}},
      {"flow", {"preset"}},
      {"solve", {"data"}},
      {"mms", {"case", "levels"}},
      {"time", {"t", "n", "project_initial", "initial", "snapshots"}},
      {"infsup", {"levels"}},
      {"output", {"dir"}},
  };

  std::map<std::string, Value> values;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!known.count(section)) throw ConfigError("unknown configuration section: [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (section.empty()) throw ConfigError("unknown configuration key: " + key + " (outside any section)");
    const std::string full = section + "." + key;
    const auto& allowed = known.at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown configuration key: " + full);
    if (values.count(full)) throw ConfigError("duplicate configuration key: " + full);
    values.emplace(full, parse_value(full, trim(s.substr(eq + 1))));
  }

  Reader r(std::move(values));
  RunConfig c;
  c.nx = r.take("mesh.nx", c.nx);
  c.ny_half = r.take("mesh.ny_half", c.ny_half);
  c.params.lambda_res = r.take("params.lambda", c.params.lambda_res);
  c.params.nu = r.take("params.nu", c.params.nu);
  c.params.lame_lambda = r.take("params.lame_lambda", c.params.lame_lambda);
  c.flow = parse_flow_preset(r.take<std::string>("flow.preset", to_string(c.flow)));
  c.solve_data = r.take<std::string>("solve.data", c.solve_data);
  c.mms_case = parse_mms_kind(r.take<std::string>("mms.case", to_string(c.mms_case)));
  c.mms_levels = r.take("mms.levels", c.mms_levels);
  c.t = r.take("time.t", c.t);
  c.n = r.take("time.n", c.n);
  c.project_initial = r.take("time.project_initial", c.project_initial);
  c.initial = parse_mms_kind(r.take<std::string>("time.initial", to_string(c.initial)));
  c.snapshots = r.take("time.snapshots", c.snapshots);
  c.infsup_levels = r.take("infsup.levels", c.infsup_levels);
  c.output_dir = r.take("output.dir", c.output_dir);
  r.reject_leftovers();
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read configuration file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fluidfluid
