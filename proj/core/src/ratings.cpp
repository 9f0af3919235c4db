#include "bmfcf/ratings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <string_view>

#include "bmfcf/errors.hpp"

namespace bmfcf {

IdMap::IdMap(std::vector<ExternalId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
}

std::optional<std::size_t> IdMap::find(ExternalId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RatingsMatrix::RatingsMatrix(IdMap users, IdMap items, std::vector<RatingEntry> entries)
    : users_(std::move(users)), items_(std::move(items)), by_user_(users_.size()), count_(entries.size()) {
  for (const auto& e : entries) {
    if (e.user >= users_.size() || e.item >= items_.size())
      throw ContractViolation("rating entry index out of range");
    if (e.value < kMinRating || e.value > kMaxRating)
      throw ContractViolation("rating " + std::to_string(e.value) + " outside [1, 5]");
    by_user_[e.user].push_back({e.item, e.value});
  }
  for (auto& row : by_user_) {
    std::sort(row.begin(), row.end(), [](const ItemRating& a, const ItemRating& b) { return a.item < b.item; });
    auto dup = std::adjacent_find(row.begin(), row.end(),
                                  [](const ItemRating& a, const ItemRating& b) { return a.item == b.item; });
    if (dup != row.end()) throw ContractViolation("duplicate (user, item) pair in ratings");
  }
}

std::optional<Rating> RatingsMatrix::rating(std::size_t user, std::size_t item) const {
  const auto& row = by_user_[user];
  auto it = std::lower_bound(row.begin(), row.end(), item,
                             [](const ItemRating& r, std::size_t i) { return r.item < i; });
  if (it == row.end() || it->item != item) return std::nullopt;
  return it->value;
}

std::vector<RatingEntry> RatingsMatrix::entries() const {
  std::vector<RatingEntry> out;
  out.reserve(count_);
  for (std::size_t u = 0; u < by_user_.size(); ++u)
    for (const auto& r : by_user_[u]) out.push_back({u, r.item, r.value});
  return out;
}

std::optional<double> RatingsMatrix::user_mean(std::size_t user) const {
  const auto& row = by_user_[user];
  if (row.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& r : row) sum += r.value;
  return sum / static_cast<double>(row.size());
}

std::optional<double> RatingsMatrix::global_mean() const {
  if (count_ == 0) return std::nullopt;
  double sum = 0.0;
  for (const auto& row : by_user_)
    for (const auto& r : row) sum += r.value;
  return sum / static_cast<double>(count_);
}

ScalingThreshold::ScalingThreshold(int t) : t_(t) {
  if (t < 0 || t > 3) throw ContractViolation("scaling threshold must be 0, 1, 2 or 3, got " + std::to_string(t));
}

namespace {

struct RawRating {
  ExternalId user;
  ExternalId item;
  Rating value;
};

template <class T>
bool parse_field(std::string_view field, T& out) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<RawRating> read_raw(const std::filesystem::path& path, LoadStats& stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open ratings file '" + path.string() + "'");

  std::vector<RawRating> raw;
  std::unordered_map<ExternalId, std::unordered_map<ExternalId, std::size_t>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view rest(line);
    std::string_view fields[4];
    std::size_t nfields = 0;
    while (nfields < 4) {
      const auto tab = rest.find('\t');
      fields[nfields++] = rest.substr(0, tab);
      if (tab == std::string_view::npos) {
        rest = {};
        break;
      }
      rest.remove_prefix(tab + 1);
    }
    if (nfields != 4 || !rest.empty())
      throw DataError("expected 4 tab-separated fields in '" + path.string() + "'", lineno);

    RawRating r{};
    std::int64_t timestamp = 0;
    if (!parse_field(fields[0], r.user) || !parse_field(fields[1], r.item) || !parse_field(fields[2], r.value) ||
        !parse_field(fields[3], timestamp))
      throw DataError("malformed rating line in '" + path.string() + "'", lineno);
    if (r.value < kMinRating || r.value > kMaxRating)
      throw DataError("rating " + std::to_string(r.value) + " outside 1..5 in '" + path.string() + "'", lineno);

    auto [it, inserted] = seen[r.user].emplace(r.item, raw.size());
    if (inserted) {
      raw.push_back(r);
    } else {
      raw[it->second].value = r.value;
      ++stats.duplicates;
    }
  }
  stats.lines = lineno;
  return raw;
}

IdMap user_map(const std::vector<RawRating>& a, const std::vector<RawRating>& b = {}) {
  std::vector<ExternalId> ids;
  ids.reserve(a.size() + b.size());
  for (const auto& r : a) ids.push_back(r.user);
  for (const auto& r : b) ids.push_back(r.user);
  return IdMap(std::move(ids));
}

IdMap item_map(const std::vector<RawRating>& a, const std::vector<RawRating>& b = {}) {
  std::vector<ExternalId> ids;
  ids.reserve(a.size() + b.size());
  for (const auto& r : a) ids.push_back(r.item);
  for (const auto& r : b) ids.push_back(r.item);
  return IdMap(std::move(ids));
}

RatingsMatrix assemble(const IdMap& users, const IdMap& items, const std::vector<RawRating>& raw) {
  std::vector<RatingEntry> entries;
  entries.reserve(raw.size());
  for (const auto& r : raw) entries.push_back({*users.find(r.user), *items.find(r.item), r.value});
  return RatingsMatrix(users, items, std::move(entries));
}

}  // namespace

RatingsMatrix load_movielens(const std::filesystem::path& path, LoadStats* stats) {
  LoadStats local;
  auto raw = read_raw(path, local);
  if (stats) *stats = local;
  return assemble(user_map(raw), item_map(raw), raw);
}

std::pair<RatingsMatrix, RatingsMatrix> load_split_files(const std::filesystem::path& train_path,
                                                         const std::filesystem::path& test_path) {
  LoadStats s1, s2;
  auto train = read_raw(train_path, s1);
  auto test = read_raw(test_path, s2);
  const IdMap users = user_map(train, test);
  const IdMap items = item_map(train, test);
  RatingsMatrix train_m = assemble(users, items, train);
  RatingsMatrix test_m = assemble(users, items, test);

  std::size_t overlap = 0;
  for (std::size_t u = 0; u < test_m.n_users(); ++u)
    for (const auto& r : test_m.user_ratings(u))
      if (train_m.has(u, r.item)) ++overlap;
  if (overlap > 0)
    throw DataError(std::to_string(overlap) + " (user, item) pairs appear in both '" + train_path.string() +
                    "' and '" + test_path.string() + "'");
  return {std::move(train_m), std::move(test_m)};
}

BooleanContext scale(const RatingsMatrix& ratings, ScalingThreshold t) {
  BooleanMatrix incidence(ratings.n_users(), ratings.n_items());
  for (std::size_t u = 0; u < ratings.n_users(); ++u)
    for (const auto& r : ratings.user_ratings(u))
      if (r.value > t.value()) incidence.set(u, r.item);
  return BooleanContext(std::move(incidence));
}

std::pair<RatingsMatrix, RatingsMatrix> split(const RatingsMatrix& ratings, const SplitOptions& options) {
  if (!(options.test_fraction > 0.0 && options.test_fraction < 1.0))
    throw ContractViolation("test fraction must lie in (0, 1)");

  std::vector<RatingEntry> kept;
  kept.reserve(ratings.size());
  for (std::size_t u = 0; u < ratings.n_users(); ++u) {
    const auto row = ratings.user_ratings(u);
    if (row.size() <= options.min_user_ratings_exclusive) continue;
    for (const auto& r : row) kept.push_back({u, r.item, r.value});
  }

  std::mt19937_64 rng(options.seed);
  std::shuffle(kept.begin(), kept.end(), rng);
  const auto n_test = static_cast<std::size_t>(std::llround(options.test_fraction * static_cast<double>(kept.size())));

  std::vector<RatingEntry> test(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::vector<RatingEntry> train(kept.begin() + static_cast<std::ptrdiff_t>(n_test), kept.end());
  return {ratings.with_entries(std::move(train)), ratings.with_entries(std::move(test))};
}

std::vector<double> dense_ratings_row_major(const RatingsMatrix& ratings) {
  std::vector<double> out(ratings.n_users() * ratings.n_items(), 0.0);
  for (std::size_t u = 0; u < ratings.n_users(); ++u)
    for (const auto& r : ratings.user_ratings(u)) out[u * ratings.n_items() + r.item] = r.value;
  return out;
}

}  // namespace bmfcf
