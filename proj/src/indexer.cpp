#include "forge/indexer.hpp"

#include "forge/errors.hpp"

namespace forge {

std::vector<std::uint64_t> group_offsets(const Shape& shape, const std::vector<int>& parties) {
    std::uint64_t count = 1;
    for (int p : parties) count *= static_cast<std::uint64_t>(shape.dim(p));
    std::vector<std::uint64_t> offsets(count);
    std::vector<int> digits(parties.size(), 0);
    std::uint64_t offset = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        offsets[i] = offset;
        // increment mixed-radix counter, least significant digit last
        for (int k = static_cast<int>(parties.size()) - 1; k >= 0; --k) {
            const int party = parties[k];
            offset += shape.stride(party);
            if (++digits[k] < shape.dim(party)) break;
            digits[k] = 0;
            offset -= static_cast<std::uint64_t>(shape.dim(party)) * shape.stride(party);
        }
    }
    return offsets;
}

BipartitionIndexer::BipartitionIndexer(const Shape& shape, const PartySubset& subset) {
    subset.validate_against(shape);
    if (subset.size() == 0 || subset.size() == shape.num_parties())
        throw ValidationError("bipartition requires a proper non-empty subset, got " +
                              subset.to_string());
    row_offsets_ = group_offsets(shape, subset.parties());
    col_offsets_ = group_offsets(shape, subset.complement(shape).parties());
}

}  // namespace forge
