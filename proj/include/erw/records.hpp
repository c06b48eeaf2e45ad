#pragma once
// Line-oriented record files with a versioned header, plus deterministic
// number formatting shared by every writer (byte-identical re-runs).

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace erw {

inline constexpr const char* kRecordsVersion = "erw-records v1";
inline constexpr const char* kCodeVersion = "erw 0.1.0";

std::string format_real(double x);  // shortest round-trip decimal

class RecordWriter {
 public:
  // columns are the CSV header row; meta lines go into '#' header comments
  RecordWriter(const std::string& path, const std::string& suite, const std::string& model,
               uint64_t seed, const std::vector<std::string>& columns);

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::ofstream out_;
  size_t n_columns_;
};

// write a pre-serialized JSON document (summary / manifest)
void write_text_file(const std::string& path, const std::string& text);

// (value, ecdf) pairs for external plotting
void write_ecdf_table(const std::string& path, const std::string& label,
                      std::vector<double> samples);

}  // namespace erw
