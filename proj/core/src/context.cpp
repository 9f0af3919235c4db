#include "bmfcf/context.hpp"

#include <string>

namespace bmfcf {

BooleanMatrix::BooleanMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Bitset(cols)) {}

BooleanMatrix::BooleanMatrix(std::size_t cols, std::vector<Bitset> rows) : cols_(cols), rows_(std::move(rows)) {
  for (const auto& r : rows_)
    if (r.size() != cols_) throw ContractViolation("row width does not match column count");
}

BooleanMatrix BooleanMatrix::from_dense(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BooleanMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ContractViolation("ragged rows in dense boolean matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) throw ContractViolation("boolean matrix entries must be 0 or 1");
      if (v == 1) out.rows_[i].set(j);
    }
  }
  return out;
}

void BooleanMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (value)
    rows_[i].set(j);
  else
    rows_[i].reset(j);
}

std::size_t BooleanMatrix::count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.count();
  return n;
}

bool BooleanMatrix::is_below(const BooleanMatrix& other) const {
  if (rows() != other.rows() || cols() != other.cols()) throw ContractViolation("dimension mismatch");
  for (std::size_t i = 0; i < rows(); ++i)
    if (!rows_[i].is_subset_of(other.rows_[i])) return false;
  return true;
}

BooleanContext::BooleanContext(BooleanMatrix incidence)
    : rows_(std::move(incidence)), columns_(rows_.cols(), rows_.rows()) {
  for (std::size_t i = 0; i < rows_.rows(); ++i) {
    rows_.row(i).for_each_set([&](std::size_t j) { columns_.set(j, i); });
    ones_ += rows_.row(i).count();
  }
}

AttributeSet derive_attributes(const ObjectSet& objects, const BooleanContext& ctx) {
  if (objects.universe() != ctx.n_objects())
    throw ContractViolation("object set universe " + std::to_string(objects.universe()) +
                            " does not match context with " + std::to_string(ctx.n_objects()) + " objects");
  Bitset out(ctx.n_attributes(), true);
  objects.bits().for_each_set([&](std::size_t g) { out &= ctx.row(g); });
  return AttributeSet(std::move(out));
}

ObjectSet derive_objects(const AttributeSet& attributes, const BooleanContext& ctx) {
  if (attributes.universe() != ctx.n_attributes())
    throw ContractViolation("attribute set universe " + std::to_string(attributes.universe()) +
                            " does not match context with " + std::to_string(ctx.n_attributes()) +
                            " attributes");
  Bitset out(ctx.n_objects(), true);
  attributes.bits().for_each_set([&](std::size_t m) { out &= ctx.column(m); });
  return ObjectSet(std::move(out));
}

bool is_formal_concept(const ObjectSet& extent, const AttributeSet& intent, const BooleanContext& ctx) {
  return derive_attributes(extent, ctx) == intent && derive_objects(intent, ctx) == extent;
}

BooleanContext bool_product(const BooleanMatrixPair& pq) {
  const BooleanMatrix& p = pq.p;
  const BooleanMatrix& q = pq.q;
  if (p.cols() != q.rows())
    throw ContractViolation("inner dimensions differ: P has " + std::to_string(p.cols()) + " columns, Q has " +
                            std::to_string(q.rows()) + " rows");
  BooleanMatrix out(p.rows(), q.cols());
  for (std::size_t i = 0; i < p.rows(); ++i) p.row(i).for_each_set([&](std::size_t l) { out.row(i) |= q.row(l); });
  return BooleanContext(std::move(out));
}

}  // namespace bmfcf
