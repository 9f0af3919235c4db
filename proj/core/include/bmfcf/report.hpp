#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bmfcf {

enum class Method { all, svd, bmf, bmf_filtered };

std::string_view to_string(Method m);
/// Accepts all, svd, bmf, bmf-filtered. Throws ContractViolation otherwise.
Method parse_method(std::string_view name);

/// One measurement. Dimensions that do not apply to a row are left empty
/// (the threshold for svd/all rows, the neighbor count for factor counts).
struct ReportRow {
  Method method = Method::all;
  double coverage_pct = 100.0;
  std::optional<int> scaling_threshold;
  std::optional<std::size_t> k_neighbors;
  std::string metric;
  double value = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct EvalReport {
  std::vector<ReportRow> rows;

  void append(const EvalReport& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }

  /// First row matching every given dimension, or nullptr.
  const ReportRow* find(Method method, std::string_view metric, std::optional<double> coverage_pct = std::nullopt,
                        std::optional<std::size_t> k = std::nullopt,
                        std::optional<int> scaling = std::nullopt) const;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

inline constexpr std::string_view kCsvHeader = "method,coverage_pct,scaling_threshold,k_neighbors,metric,value";

/// CSV with kCsvHeader, LF line endings, shortest round-trip numbers.
void write_csv(std::ostream& out, const EvalReport& report);
/// Inverse of write_csv. Throws DataError with the line number on bad input.
EvalReport read_csv(std::istream& in);

/// Human-readable aligned table.
void print_table(std::ostream& out, const EvalReport& report);

}  // namespace bmfcf
