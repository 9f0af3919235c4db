#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "bmfcf/bitset.hpp"
#include "bmfcf/errors.hpp"

namespace bmfcf {

/// A subset of a dense 0-based index universe. The tag keeps object sets
/// and attribute sets from being mixed up.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(Bitset bits) : bits_(std::move(bits)) {}

  static IndexSet empty(std::size_t universe) { return IndexSet(Bitset(universe)); }
  static IndexSet full(std::size_t universe) { return IndexSet(Bitset(universe, true)); }

  /// Throws ContractViolation if any index is >= universe.
  static IndexSet of(std::size_t universe, std::span<const std::size_t> indices) {
    for (std::size_t i : indices)
      if (i >= universe)
        throw ContractViolation("index " + std::to_string(i) + " out of range for universe of " +
                                std::to_string(universe));
    return IndexSet(Bitset::from_indices(universe, indices));
  }
  static IndexSet of(std::size_t universe, std::initializer_list<std::size_t> indices) {
    return of(universe, std::span<const std::size_t>(indices.begin(), indices.size()));
  }

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(std::size_t i) const noexcept { return i < bits_.size() && bits_.test(i); }
  bool is_subset_of(const IndexSet& other) const noexcept { return bits_.is_subset_of(other.bits_); }
  std::vector<std::size_t> indices() const { return bits_.indices(); }

  const Bitset& bits() const noexcept { return bits_; }
  Bitset& bits() noexcept { return bits_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  Bitset bits_;
};

struct ObjectTag;
struct AttributeTag;
using ObjectSet = IndexSet<ObjectTag>;
using AttributeSet = IndexSet<AttributeTag>;

/// Dense binary matrix stored as one bitset per row.
class BooleanMatrix {
 public:
  BooleanMatrix() = default;
  BooleanMatrix(std::size_t rows, std::size_t cols);
  /// Every row must have exactly `cols` bits.
  BooleanMatrix(std::size_t cols, std::vector<Bitset> rows);

  /// Entries must be 0 or 1 and rows of equal length.
  static BooleanMatrix from_dense(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const Bitset& row(std::size_t i) const { return rows_[i]; }
  Bitset& row(std::size_t i) { return rows_[i]; }
  bool get(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j, bool value = true);
  std::size_t count() const noexcept;

  /// Entrywise a <= b.
  bool is_below(const BooleanMatrix& other) const;

  friend bool operator==(const BooleanMatrix&, const BooleanMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Bitset> rows_;
};

/// Formal context (G, M, I): objects are rows, attributes are columns.
/// Immutable after construction; keeps both row and column orientations.
class BooleanContext {
 public:
  BooleanContext() = default;
  explicit BooleanContext(BooleanMatrix incidence);

  static BooleanContext from_dense(const std::vector<std::vector<int>>& rows) {
    return BooleanContext(BooleanMatrix::from_dense(rows));
  }

  std::size_t n_objects() const noexcept { return rows_.rows(); }
  std::size_t n_attributes() const noexcept { return rows_.cols(); }
  std::size_t ones_count() const noexcept { return ones_; }

  bool incidence(std::size_t object, std::size_t attribute) const { return rows_.get(object, attribute); }
  /// Attributes of one object.
  const Bitset& row(std::size_t object) const { return rows_.row(object); }
  /// Objects having one attribute.
  const Bitset& column(std::size_t attribute) const { return columns_.row(attribute); }
  const BooleanMatrix& matrix() const noexcept { return rows_; }

  ObjectSet all_objects() const { return ObjectSet::full(n_objects()); }
  AttributeSet all_attributes() const { return AttributeSet::full(n_attributes()); }

  friend bool operator==(const BooleanContext& a, const BooleanContext& b) { return a.rows_ == b.rows_; }

 private:
  BooleanMatrix rows_;
  BooleanMatrix columns_;
  std::size_t ones_ = 0;
};

/// P is n_objects x k, Q is k x n_attributes.
struct BooleanMatrixPair {
  BooleanMatrix p;
  BooleanMatrix q;
};

/// A' : attributes shared by every object of A. The empty set maps to all attributes.
AttributeSet derive_attributes(const ObjectSet& objects, const BooleanContext& ctx);

/// B' : objects having every attribute of B. The empty set maps to all objects.
ObjectSet derive_objects(const AttributeSet& attributes, const BooleanContext& ctx);

/// A' == B and B' == A.
bool is_formal_concept(const ObjectSet& extent, const AttributeSet& intent, const BooleanContext& ctx);

/// (P o Q)_ij = OR_l (P_il AND Q_lj).
BooleanContext bool_product(const BooleanMatrixPair& pq);

}  // namespace bmfcf
