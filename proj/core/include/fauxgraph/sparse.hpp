#pragma once

#include <cstddef>
#include <vector>

namespace fauxgraph {

struct SparseEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Square sparse matrix in canonical coordinate form: entries sorted
/// row-major, no duplicate coordinates, all indices < dim.
struct SparseAdjacency {
  std::size_t dim = 0;
  std::vector<SparseEntry> entries;

  /// Sorts, merges duplicate coordinates (values summed) and drops zeros.
  static SparseAdjacency canonical(std::size_t dim, std::vector<SparseEntry> entries);

  [[nodiscard]] bool is_canonical() const;
  [[nodiscard]] bool is_symmetric() const;
  [[nodiscard]] SparseAdjacency transposed() const;
  /// Row-major dense copy, dim * dim values.
  [[nodiscard]] std::vector<double> to_dense() const;

  friend bool operator==(const SparseAdjacency&, const SparseAdjacency&) = default;
};

}  // namespace fauxgraph
