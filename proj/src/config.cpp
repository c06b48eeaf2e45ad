#include "erw/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace erw {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

int64_t parse_int_value(const std::string& key, const std::string& v) {
  int64_t out = 0;
  const char* b = v.data();
  const char* e = v.data() + v.size();
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || p != e)
    throw ConfigError("key '" + key + "': expected integer, got '" + v + "'");
  return out;
}

double parse_real_value(const std::string& key, const std::string& v) {
  double out = 0;
  const char* b = v.data();
  const char* e = v.data() + v.size();
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || p != e)
    throw ConfigError("key '" + key + "': expected real, got '" + v + "'");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<double> parse_real_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const std::string& item : split(v, ',')) {
    std::string t = trim(item);
    if (t.empty()) throw ConfigError("key '" + key + "': empty list entry in '" + v + "'");
    out.push_back(parse_real_value(key, t));
  }
  return out;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

Config Config::parse_text(const std::string& text) {
  Config cfg;
  cfg.text_ = text;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError("line " + std::to_string(lineno) + ": bad key '" + key + "'");
    if (cfg.kv_.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.kv_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

const std::string* Config::find(const std::string& key) {
  auto it = kv_.find(key);
  if (it == kv_.end()) return nullptr;
  consumed_[key] = true;
  return &it->second;
}

std::string Config::get_str(const std::string& key) {
  const std::string* v = find(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  return *v;
}

std::string Config::get_str(const std::string& key, const std::string& fallback) {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

int64_t Config::get_int(const std::string& key) { return parse_int_value(key, get_str(key)); }

int64_t Config::get_int(const std::string& key, int64_t fallback) {
  const std::string* v = find(key);
  return v ? parse_int_value(key, *v) : fallback;
}

double Config::get_real(const std::string& key) { return parse_real_value(key, get_str(key)); }

double Config::get_real(const std::string& key, double fallback) {
  const std::string* v = find(key);
  return v ? parse_real_value(key, *v) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) {
  const std::string* v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + *v + "'");
}

std::vector<int64_t> Config::get_int_list(const std::string& key, std::vector<int64_t> fallback) {
  const std::string* v = find(key);
  if (!v) return fallback;
  std::vector<int64_t> out;
  for (const std::string& item : split(*v, ',')) {
    std::string t = trim(item);
    if (t.empty()) throw ConfigError("key '" + key + "': empty list entry in '" + *v + "'");
    out.push_back(parse_int_value(key, t));
  }
  return out;
}

StackModel Config::parse_model() {
  std::string kind = get_str("model");
  StackModel m;
  if (kind == "placebo") {
    m = HomogeneousModel{{}};
  } else if (kind == "homogeneous") {
    if (has("model.prefix")) {
      m = HomogeneousModel{parse_real_list("model.prefix", get_str("model.prefix"))};
    } else {
      double p = get_real("model.p");
      int64_t cnt = get_int("model.m");
      if (cnt < 0) throw ConfigError("key 'model.m': must be >= 0");
      m = homog_pm(p, (int)cnt);
    }
  } else if (kind == "bw") {
    m = BWModel{(int)get_int("model.d", 1), get_real("model.p")};
  } else if (kind == "bounded_iid") {
    std::string spec = get_str("model.atoms");
    BoundedIIDModel iid;
    for (const std::string& part : split(spec, '|')) {
      std::string atom = trim(part);
      size_t colon = atom.find(':');
      if (colon == std::string::npos)
        throw ConfigError("key 'model.atoms': expected 'weight:p1,p2,...' atoms");
      double w = parse_real_value("model.atoms", trim(atom.substr(0, colon)));
      std::string rest = trim(atom.substr(colon + 1));
      if (rest.empty()) throw ConfigError("key 'model.atoms': atom with no cookie list");
      iid.atoms.push_back({w, parse_real_list("model.atoms", rest)});
    }
    m = std::move(iid);
  } else if (kind == "trapping") {
    m = TrappingModel{get_real("model.eps"), get_real("model.mix", 1.0)};
  } else if (kind == "have_your_cookie") {
    std::string spec = get_str("model.atoms");
    HaveYourCookieModel hyc;
    for (const std::string& part : split(spec, '|')) {
      std::string atom = trim(part);
      size_t colon = atom.find(':');
      if (colon == std::string::npos)
        throw ConfigError("key 'model.atoms': expected 'weight:q' atoms");
      double w = parse_real_value("model.atoms", trim(atom.substr(0, colon)));
      std::string rest = trim(atom.substr(colon + 1));
      if (rest.empty()) throw ConfigError("key 'model.atoms': atom with no q value");
      hyc.atoms.push_back({w, parse_real_value("model.atoms", rest)});
    }
    m = std::move(hyc);
  } else if (kind == "perturbed_extrema") {
    m = PerturbedExtremaModel{get_real("model.p"), get_real("model.q")};
  } else {
    throw ConfigError("unknown model '" + kind + "'");
  }
  try {
    validate_model(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid model parameters: ") + e.what());
  }
  return m;
}

void Config::check_all_consumed() const {
  for (const auto& [key, value] : kv_) {
    auto it = consumed_.find(key);
    if (it == consumed_.end() || !it->second)
      throw ConfigError("unknown key '" + key + "'");
  }
}

uint64_t config_hash(const std::string& text) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= (uint64_t)c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace erw
