#pragma once
// Flat key = value experiment configs. Grammar:
//   - one "key = value" pair per line
//   - '#' starts a comment (full line or trailing)
//   - keys are [a-z0-9_.]+, values are free text (trimmed)
//   - duplicate keys are an error; unknown keys are an error (typo guard)
// Typed accessors mark keys as consumed; parse_model() builds the StackModel
// from the model.* keys. See README for the full key reference.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "erw/env.hpp"

namespace erw {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const;

  std::string get_str(const std::string& key);
  std::string get_str(const std::string& key, const std::string& fallback);
  int64_t get_int(const std::string& key);
  int64_t get_int(const std::string& key, int64_t fallback);
  double get_real(const std::string& key);
  double get_real(const std::string& key, double fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<int64_t> get_int_list(const std::string& key, std::vector<int64_t> fallback);

  // model = bw | homogeneous | bounded_iid | trapping | have_your_cookie |
  //         perturbed_extrema | placebo   (+ per-model keys, see README)
  StackModel parse_model();

  // throws ConfigError naming the first key that was never consumed
  void check_all_consumed() const;

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::map<std::string, std::string> kv_;
  std::map<std::string, bool> consumed_;

  const std::string* find(const std::string& key);
};

// FNV-1a over the raw config text; stable across runs for the manifest
uint64_t config_hash(const std::string& text);

}  // namespace erw
