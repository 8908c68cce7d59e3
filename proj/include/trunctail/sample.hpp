#ifndef TRUNCTAIL_SAMPLE_HPP
#define TRUNCTAIL_SAMPLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trunctail {

/// Observed randomly right-truncated pairs (x_i, y_i), x_i <= y_i.
/// n_drawn is the pre-truncation draw count N (0 when ingested from a file).
struct TruncatedSample {
  std::vector<std::pair<double, double>> pairs;
  std::size_t n_drawn = 0;
  std::optional<std::uint64_t> seed;

  std::size_t size() const { return pairs.size(); }
  std::vector<double> xs() const;
  std::vector<double> ys() const;
};

/// Parse a two-column delimited text file into a sample. Delimiter is a comma
/// (whitespace around fields tolerated); a non-numeric first row is treated as
/// a header. Rows violating x <= y are reported by line number.
TruncatedSample load_sample(const std::string& path);

/// Parse two-column records without the truncation-order validation
/// (used for (m, t) inputs that are transformed downstream).
std::vector<std::pair<double, double>> load_records(const std::string& path);

}  // namespace trunctail

#endif
