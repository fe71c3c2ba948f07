#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace forge {

// Local dimensions of a heterogeneous multipartite system.
//
// Index convention used throughout: big-endian mixed radix, party 0 most
// significant. stride(k) = product of dims after k, stride(n-1) = 1,
// so a linear index is sum_k multi[k] * stride(k).
class Shape {
public:
    explicit Shape(std::vector<int> dims);

    int num_parties() const { return static_cast<int>(dims_.size()); }
    int dim(int party) const;
    const std::vector<int>& dims() const { return dims_; }
    std::uint64_t total_dim() const { return total_; }
    std::uint64_t stride(int party) const;

    std::uint64_t linear_index(std::span<const int> multi) const;
    void multi_index(std::uint64_t index, std::span<int> out) const;
    std::vector<int> multi_index(std::uint64_t index) const;

    bool operator==(const Shape& other) const { return dims_ == other.dims_; }
    bool operator!=(const Shape& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    std::vector<int> dims_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t total_;
};

// Sorted list of distinct party indices identifying a reduction target.
class PartySubset {
public:
    explicit PartySubset(std::vector<int> parties);

    const std::vector<int>& parties() const { return parties_; }
    int size() const { return static_cast<int>(parties_.size()); }
    bool contains(int party) const;

    // Requires every index to lie in [0, shape.num_parties()).
    void validate_against(const Shape& shape) const;
    PartySubset complement(const Shape& shape) const;
    std::uint64_t dim_product(const Shape& shape) const;

    std::string to_string() const;

private:
    std::vector<int> parties_;
};

// All size-r subsets of [0, n) in lexicographic order.
std::vector<PartySubset> all_subsets(int n, int r);

}  // namespace forge
