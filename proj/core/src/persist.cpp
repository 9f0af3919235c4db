#include "bmfcf/persist.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bmfcf/errors.hpp"

namespace bmfcf {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) throw DataError(std::string("unexpected end of input, expected ") + what, lineno_ + 1);
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::size_t line() const noexcept { return lineno_; }

  void expect_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line != "\r") throw DataError("trailing content after last record", lineno_);
    }
  }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos == line.size()) break;
    const std::size_t end = line.find(' ', pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    pos = end == std::string_view::npos ? line.size() : end;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw DataError("invalid number '" + std::string(tok) + "'", line);
  return value;
}

std::vector<std::size_t> parse_header(const std::string& line, std::string_view tag, std::size_t fields,
                                      std::size_t lineno) {
  const auto tok = tokens(line);
  if (tok.size() != fields + 1 || tok[0] != tag)
    throw DataError("expected header '" + std::string(tag) + "' with " + std::to_string(fields) + " sizes", lineno);
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < tok.size(); ++i) out.push_back(parse_number<std::size_t>(tok[i], lineno));
  return out;
}

template <class Set>
Set parse_index_line(const std::string& line, std::size_t universe, std::size_t lineno) {
  Bitset bits(universe);
  std::size_t prev = 0;
  bool first = true;
  for (auto tok : tokens(line)) {
    const auto idx = parse_number<std::size_t>(tok, lineno);
    if (idx >= universe) throw DataError("index " + std::to_string(idx) + " out of range", lineno);
    if (!first && idx <= prev) throw DataError("indices must be strictly ascending", lineno);
    bits.set(idx);
    prev = idx;
    first = false;
  }
  return Set(std::move(bits));
}

void write_indices(std::ostream& out, const Bitset& bits) {
  bool first = true;
  bits.for_each_set([&](std::size_t i) {
    if (!first) out << ' ';
    out << i;
    first = false;
  });
  out << '\n';
}

template <class F>
void with_output(const std::filesystem::path& path, F&& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  f(out);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

void save_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  out << "dense " << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.9g", m(i, j));
      if (j > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Eigen::MatrixXd load_matrix(std::istream& in) {
  LineReader reader(in);
  const auto dims = parse_header(reader.next("matrix header"), "dense", 2, 1);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
  for (std::size_t i = 0; i < dims[0]; ++i) {
    const std::string line = reader.next("matrix row");
    const auto tok = tokens(line);
    if (tok.size() != dims[1])
      throw DataError("expected " + std::to_string(dims[1]) + " values, found " + std::to_string(tok.size()),
                      reader.line());
    for (std::size_t j = 0; j < dims[1]; ++j) {
      // from_chars for double is missing from older standard libraries.
      const std::string s(tok[j]);
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size()) throw DataError("invalid number '" + s + "'", reader.line());
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  reader.expect_end();
  return m;
}

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  with_output(path, [&](std::ostream& out) { save_matrix(out, m); });
}

Eigen::MatrixXd load_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_matrix(in);
}

void save_model(std::ostream& out, const FactorModel& model) {
  out << "bmf " << model.n_objects() << ' ' << model.n_attributes() << ' ' << model.size() << '\n';
  for (const auto& f : model.factors()) {
    write_indices(out, f.extent.bits());
    write_indices(out, f.intent.bits());
  }
}

FactorModel load_model(std::istream& in) {
  LineReader reader(in);
  const auto dims = parse_header(reader.next("model header"), "bmf", 3, 1);
  std::vector<Factor> factors;
  factors.reserve(dims[2]);
  for (std::size_t l = 0; l < dims[2]; ++l) {
    Factor f;
    const std::string extent = reader.next("extent line");
    f.extent = parse_index_line<ObjectSet>(extent, dims[0], reader.line());
    const std::string intent = reader.next("intent line");
    f.intent = parse_index_line<AttributeSet>(intent, dims[1], reader.line());
    factors.push_back(std::move(f));
  }
  reader.expect_end();
  try {
    return FactorModel(dims[0], dims[1], std::move(factors));
  } catch (const ContractViolation& e) {
    throw DataError(std::string("inconsistent model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const FactorModel& model) {
  with_output(path, [&](std::ostream& out) { save_model(out, model); });
}

FactorModel load_model(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_model(in);
}

void save_ratings(std::ostream& out, const RatingsMatrix& ratings) {
  for (std::size_t u = 0; u < ratings.n_users(); ++u)
    for (const auto& r : ratings.user_ratings(u))
      out << ratings.users().external(u) << '\t' << ratings.items().external(r.item) << '\t' << r.value << "\t0\n";
}

void save_ratings(const std::filesystem::path& path, const RatingsMatrix& ratings) {
  with_output(path, [&](std::ostream& out) { save_ratings(out, ratings); });
}

}  // namespace bmfcf
