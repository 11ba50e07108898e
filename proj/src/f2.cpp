#include "khw/f2.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace khw {

F2Row::F2Row(const std::vector<uint32_t>& cols) {
  for (uint32_t c : cols) toggle(c);
}

uint32_t F2Row::low() const {
  const auto& [w, bits] = blocks_.front();
  return w * 64 + static_cast<uint32_t>(std::countr_zero(bits));
}

bool F2Row::test(uint32_t col) const {
  const uint32_t w = col / 64;
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), w,
                             [](const auto& b, uint32_t v) { return b.first < v; });
  return it != blocks_.end() && it->first == w && ((it->second >> (col % 64)) & 1u);
}

void F2Row::toggle(uint32_t col) {
  const uint32_t w = col / 64;
  const uint64_t bit = uint64_t{1} << (col % 64);
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), w,
                             [](const auto& b, uint32_t v) { return b.first < v; });
  if (it != blocks_.end() && it->first == w) {
    it->second ^= bit;
    if (it->second == 0) blocks_.erase(it);
  } else {
    blocks_.insert(it, {w, bit});
  }
}

F2Row& F2Row::operator^=(const F2Row& o) {
  std::vector<std::pair<uint32_t, uint64_t>> out;
  out.reserve(blocks_.size() + o.blocks_.size());
  size_t i = 0, j = 0;
  while (i < blocks_.size() || j < o.blocks_.size()) {
    if (j == o.blocks_.size() || (i < blocks_.size() && blocks_[i].first < o.blocks_[j].first)) {
      out.push_back(blocks_[i++]);
    } else if (i == blocks_.size() || o.blocks_[j].first < blocks_[i].first) {
      out.push_back(o.blocks_[j++]);
    } else {
      uint64_t b = blocks_[i].second ^ o.blocks_[j].second;
      if (b) out.emplace_back(blocks_[i].first, b);
      ++i;
      ++j;
    }
  }
  blocks_ = std::move(out);
  return *this;
}

std::vector<uint32_t> F2Row::columns() const {
  std::vector<uint32_t> out;
  for (auto [w, bits] : blocks_)
    for (uint64_t b = bits; b; b &= b - 1)
      out.push_back(w * 64 + static_cast<uint32_t>(std::countr_zero(b)));
  return out;
}

size_t F2Matrix::rank() const {
  std::unordered_map<uint32_t, F2Row> pivots;
  pivots.reserve(rows_.size());
  size_t r = 0;
  for (const auto& src : rows_) {
    if (src.empty()) continue;
    F2Row row = src;
    while (!row.empty()) {
      auto it = pivots.find(row.low());
      if (it == pivots.end()) {
        pivots.emplace(row.low(), std::move(row));
        ++r;
        break;
      }
      row ^= it->second;
    }
  }
  return r;
}

}  // namespace khw
