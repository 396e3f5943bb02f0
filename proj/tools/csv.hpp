#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace condlab_cli {

// RFC-4180 quoting: quote fields containing commas, quotes, or newlines.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file " + path);
      out_ = &file_;
    } else {
      out_ = &std::cout;
    }
  }

  void row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) *out_ << ',';
      *out_ << csv_field(fields[i]);
    }
    *out_ << '\n';
  }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline std::string fstr(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace condlab_cli
