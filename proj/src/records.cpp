#include "erw/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace erw {

std::string format_real(double x) {
  if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::stod(buf) == x) break;
  }
  return buf;
}

RecordWriter::RecordWriter(const std::string& path, const std::string& suite,
                           const std::string& model, uint64_t seed,
                           const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
  if (!out_.good()) throw std::runtime_error("cannot open record file: " + path);
  out_ << "# " << kRecordsVersion << "\n";
  out_ << "# code " << kCodeVersion << "\n";
  out_ << "# suite " << suite << "\n";
  out_ << "# model " << model << "\n";
  out_ << "# seed " << seed << "\n";
  for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

void RecordWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != n_columns_)
    throw std::invalid_argument("record row has " + std::to_string(fields.size()) +
                                " fields, expected " + std::to_string(n_columns_));
  for (size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
  out_ << "\n";
}

void RecordWriter::close() {
  if (out_.is_open()) out_.close();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

void write_ecdf_table(const std::string& path, const std::string& label,
                      std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw std::runtime_error("cannot write file: " + path);
  out << "# " << kRecordsVersion << "\n";
  out << "# code " << kCodeVersion << "\n";
  out << "# label " << label << "\n";
  out << "value,ecdf\n";
  double n = (double)samples.size();
  for (size_t i = 0; i < samples.size(); ++i)
    out << format_real(samples[i]) << "," << format_real((double)(i + 1) / n) << "\n";
}

}  // namespace erw
