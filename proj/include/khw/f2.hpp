#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace khw {

// A row over GF(2), stored sparsely as 64-bit blocks: (block index, bits)
// pairs sorted by block index with no zero blocks.
class F2Row {
 public:
  F2Row() = default;
  // Bits listed more than once cancel in pairs.
  explicit F2Row(const std::vector<uint32_t>& cols);

  bool empty() const { return blocks_.empty(); }
  // Smallest set column; row must be non-empty.
  uint32_t low() const;
  bool test(uint32_t col) const;
  void toggle(uint32_t col);
  F2Row& operator^=(const F2Row& o);
  std::vector<uint32_t> columns() const;
  bool operator==(const F2Row&) const = default;

 private:
  std::vector<std::pair<uint32_t, uint64_t>> blocks_;
};

// Matrix over GF(2) as a list of sparse rows.
class F2Matrix {
 public:
  F2Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}
  size_t rows() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  F2Row& row(size_t i) { return rows_[i]; }
  const F2Row& row(size_t i) const { return rows_[i]; }
  void toggle(size_t r, uint32_t c) { rows_[r].toggle(c); }

  // Column-pivot Gaussian elimination on a copy.
  size_t rank() const;

 private:
  std::vector<F2Row> rows_;
  size_t cols_;
};

}  // namespace khw
