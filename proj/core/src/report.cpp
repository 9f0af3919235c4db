#include "bmfcf/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "bmfcf/errors.hpp"

namespace bmfcf {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::all: return "all";
    case Method::svd: return "svd";
    case Method::bmf: return "bmf";
    case Method::bmf_filtered: return "bmf-filtered";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::all, Method::svd, Method::bmf, Method::bmf_filtered})
    if (to_string(m) == name) return m;
  throw ContractViolation("unknown method '" + std::string(name) + "' (expected all, svd, bmf or bmf-filtered)");
}

const ReportRow* EvalReport::find(Method method, std::string_view metric, std::optional<double> coverage_pct,
                                  std::optional<std::size_t> k, std::optional<int> scaling) const {
  for (const auto& r : rows) {
    if (r.method != method || r.metric != metric) continue;
    if (coverage_pct && std::abs(r.coverage_pct - *coverage_pct) > 1e-9) continue;
    if (k && r.k_neighbors != k) continue;
    if (scaling && r.scaling_threshold != scaling) continue;
    return &r;
  }
  return nullptr;
}

namespace {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

template <class T>
T parse_field(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw DataError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line);
  return value;
}

std::vector<std::string> cells(const ReportRow& r) {
  return {std::string(to_string(r.method)),
          format_double(r.coverage_pct),
          r.scaling_threshold ? std::to_string(*r.scaling_threshold) : std::string(),
          r.k_neighbors ? std::to_string(*r.k_neighbors) : std::string(),
          r.metric,
          format_double(r.value)};
}

}  // namespace

void write_csv(std::ostream& out, const EvalReport& report) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    const auto c = cells(r);
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << '\n';
  }
}

EvalReport read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw DataError("empty report", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw DataError("unexpected report header", 1);

  EvalReport report;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 6) throw DataError("expected 6 fields", lineno);
    ReportRow r;
    try {
      r.method = parse_method(f[0]);
    } catch (const ContractViolation& e) {
      throw DataError(e.what(), lineno);
    }
    r.coverage_pct = parse_field<double>(f[1], lineno, "coverage");
    if (!f[2].empty()) r.scaling_threshold = parse_field<int>(f[2], lineno, "threshold");
    if (!f[3].empty()) r.k_neighbors = parse_field<std::size_t>(f[3], lineno, "neighbor count");
    r.metric = std::string(f[4]);
    r.value = parse_field<double>(f[5], lineno, "value");
    report.rows.push_back(std::move(r));
  }
  return report;
}

void print_table(std::ostream& out, const EvalReport& report) {
  const std::array<std::string, 6> head{"method", "coverage%", "t", "K", "metric", "value"};
  std::vector<std::vector<std::string>> body;
  std::array<std::size_t, 6> width{};
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
  for (const auto& r : report.rows) {
    auto c = cells(r);
    char buf[32];
    const bool count = r.metric == "factors" || r.metric == "skipped_users";
    std::snprintf(buf, sizeof buf, count ? "%.0f" : "%.4f", r.value);
    c[5] = buf;
    for (std::size_t i = 0; i < c.size(); ++i) width[i] = std::max(width[i], c[i].size());
    body.push_back(std::move(c));
  }
  auto emit = [&](const auto& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& s = row[i];
      const bool right = i == 1 || i == 2 || i == 3 || i == 5;
      const std::string pad(width[i] - s.size(), ' ');
      out << (i ? "  " : "") << (right ? pad + s : s + pad);
    }
    out << '\n';
  };
  emit(head);
  for (const auto& row : body) emit(row);
}

}  // namespace bmfcf
