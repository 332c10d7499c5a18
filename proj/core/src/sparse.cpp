#include "fauxgraph/sparse.hpp"

#include <algorithm>
#include <tuple>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

namespace {

bool coordinate_less(const SparseEntry& a, const SparseEntry& b) {
  return std::tie(a.row, a.col) < std::tie(b.row, b.col);
}

}  // namespace

SparseAdjacency SparseAdjacency::canonical(std::size_t dim, std::vector<SparseEntry> entries) {
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw DimensionError("sparse entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                           ") outside dimension " + std::to_string(dim));
    }
  }
  std::stable_sort(entries.begin(), entries.end(), coordinate_less);
  std::vector<SparseEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const SparseEntry& e) { return e.value == 0.0; });
  return SparseAdjacency{dim, std::move(merged)};
}

bool SparseAdjacency::is_canonical() const {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].row >= dim || entries[k].col >= dim) return false;
    if (k > 0 && !coordinate_less(entries[k - 1], entries[k])) return false;
  }
  return true;
}

bool SparseAdjacency::is_symmetric() const { return transposed() == *this; }

SparseAdjacency SparseAdjacency::transposed() const {
  std::vector<SparseEntry> t;
  t.reserve(entries.size());
  for (const auto& e : entries) t.push_back({e.col, e.row, e.value});
  std::sort(t.begin(), t.end(), coordinate_less);
  return SparseAdjacency{dim, std::move(t)};
}

std::vector<double> SparseAdjacency::to_dense() const {
  std::vector<double> dense(dim * dim, 0.0);
  for (const auto& e : entries) dense[e.row * dim + e.col] += e.value;
  return dense;
}

}  // namespace fauxgraph
