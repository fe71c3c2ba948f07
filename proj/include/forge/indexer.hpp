#pragma once

#include <cstdint>
#include <vector>

#include "forge/shape.hpp"

namespace forge {

// Precomputed offset tables for addressing amplitudes by (subset index,
// complement index) pairs: linear = row_offset[r] + col_offset[c] where r
// runs over the mixed-radix indices of the subset parties and c over the
// complement. Party order inside each group is ascending, matching the
// big-endian convention.
class BipartitionIndexer {
public:
    BipartitionIndexer(const Shape& shape, const PartySubset& subset);

    std::uint64_t row_dim() const { return static_cast<std::uint64_t>(row_offsets_.size()); }
    std::uint64_t col_dim() const { return static_cast<std::uint64_t>(col_offsets_.size()); }
    std::uint64_t offset(std::uint64_t row, std::uint64_t col) const {
        return row_offsets_[row] + col_offsets_[col];
    }
    const std::vector<std::uint64_t>& row_offsets() const { return row_offsets_; }
    const std::vector<std::uint64_t>& col_offsets() const { return col_offsets_; }

private:
    std::vector<std::uint64_t> row_offsets_;
    std::vector<std::uint64_t> col_offsets_;
};

// Offsets of every mixed-radix index over the given parties, holding all
// other parties at zero.
std::vector<std::uint64_t> group_offsets(const Shape& shape, const std::vector<int>& parties);

}  // namespace forge
