#include "trunctail/sample.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trunctail {

std::vector<double> TruncatedSample::xs() const {
  std::vector<double> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(p.first);
  return v;
}

std::vector<double> TruncatedSample::ys() const {
  std::vector<double> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(p.second);
  return v;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& field, double& out) {
  const std::string f = strip(field);
  if (f.empty()) return false;
  try {
    std::size_t pos = 0;
    out = std::stod(f, &pos);
    return pos == f.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_row(const std::string& line, double& a, double& b) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  return parse_double(line.substr(0, comma), a) &&
         parse_double(line.substr(comma + 1), b);
}

}  // namespace

std::vector<std::pair<double, double>> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);

  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    double a, b;
    if (!parse_row(line, a, b)) {
      if (first_data_row) {  // header row, auto-detected
        first_data_row = false;
        continue;
      }
      std::ostringstream os;
      os << path << ":" << lineno << ": cannot parse row \"" << line << "\"";
      throw std::invalid_argument(os.str());
    }
    first_data_row = false;
    rows.emplace_back(a, b);
  }
  if (rows.empty()) throw std::invalid_argument("no data rows in " + path);
  return rows;
}

TruncatedSample load_sample(const std::string& path) {
  auto rows = load_records(path);
  std::ostringstream bad;
  std::size_t n_bad = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].first <= rows[i].second)) {
      if (n_bad++) bad << ", ";
      bad << (i + 1);
    }
  }
  if (n_bad > 0) {
    throw std::invalid_argument(path + ": rows violate x <= y (data row " +
                                bad.str() + ")");
  }
  TruncatedSample s;
  s.pairs = std::move(rows);
  return s;
}

}  // namespace trunctail
