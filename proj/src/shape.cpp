#include "forge/shape.hpp"

#include <algorithm>
#include <sstream>

#include "forge/capacity.hpp"
#include "forge/errors.hpp"

namespace forge {

Shape::Shape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ValidationError("Shape: at least one party required");
    for (int d : dims_) {
        if (d < 2) throw ValidationError("Shape: every local dimension must be >= 2");
    }
    strides_.assign(dims_.size(), 1);
    total_ = 1;
    for (int k = static_cast<int>(dims_.size()) - 1; k >= 0; --k) {
        strides_[k] = total_;
        const std::uint64_t next = total_ * static_cast<std::uint64_t>(dims_[k]);
        if (next / static_cast<std::uint64_t>(dims_[k]) != total_)
            throw CapacityError("Shape: total dimension overflows 64 bits");
        total_ = next;
    }
    check_capacity(total_, "Shape");
}

int Shape::dim(int party) const {
    if (party < 0 || party >= num_parties())
        throw IndexError("Shape::dim: party " + std::to_string(party) + " out of range");
    return dims_[party];
}

std::uint64_t Shape::stride(int party) const {
    if (party < 0 || party >= num_parties())
        throw IndexError("Shape::stride: party " + std::to_string(party) + " out of range");
    return strides_[party];
}

std::uint64_t Shape::linear_index(std::span<const int> multi) const {
    if (multi.size() != dims_.size())
        throw ValidationError("linear_index: component count does not match shape");
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (multi[k] < 0 || multi[k] >= dims_[k])
            throw IndexError("linear_index: component " + std::to_string(k) + " = " +
                             std::to_string(multi[k]) + " outside [0, " +
                             std::to_string(dims_[k]) + ")");
        index += static_cast<std::uint64_t>(multi[k]) * strides_[k];
    }
    return index;
}

void Shape::multi_index(std::uint64_t index, std::span<int> out) const {
    if (index >= total_)
        throw IndexError("multi_index: linear index " + std::to_string(index) +
                         " outside [0, " + std::to_string(total_) + ")");
    if (out.size() != dims_.size())
        throw ValidationError("multi_index: output span does not match shape");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        out[k] = static_cast<int>(index / strides_[k]);
        index %= strides_[k];
    }
}

std::vector<int> Shape::multi_index(std::uint64_t index) const {
    std::vector<int> out(dims_.size());
    multi_index(index, out);
    return out;
}

std::string Shape::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? "," : "") << dims_[k];
    os << ')';
    return os.str();
}

PartySubset::PartySubset(std::vector<int> parties) : parties_(std::move(parties)) {
    std::sort(parties_.begin(), parties_.end());
    for (std::size_t k = 0; k < parties_.size(); ++k) {
        if (parties_[k] < 0)
            throw ValidationError("PartySubset: negative party index");
        if (k > 0 && parties_[k] == parties_[k - 1])
            throw ValidationError("PartySubset: duplicate party index " +
                                  std::to_string(parties_[k]));
    }
}

bool PartySubset::contains(int party) const {
    return std::binary_search(parties_.begin(), parties_.end(), party);
}

void PartySubset::validate_against(const Shape& shape) const {
    if (!parties_.empty() && parties_.back() >= shape.num_parties())
        throw ValidationError("PartySubset: party " + std::to_string(parties_.back()) +
                              " outside shape " + shape.to_string());
}

PartySubset PartySubset::complement(const Shape& shape) const {
    validate_against(shape);
    std::vector<int> rest;
    rest.reserve(shape.num_parties() - size());
    for (int p = 0; p < shape.num_parties(); ++p) {
        if (!contains(p)) rest.push_back(p);
    }
    return PartySubset(std::move(rest));
}

std::uint64_t PartySubset::dim_product(const Shape& shape) const {
    validate_against(shape);
    std::uint64_t prod = 1;
    for (int p : parties_) prod *= static_cast<std::uint64_t>(shape.dim(p));
    return prod;
}

std::string PartySubset::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < parties_.size(); ++k) os << (k ? "," : "") << parties_[k];
    os << '}';
    return os.str();
}

std::vector<PartySubset> all_subsets(int n, int r) {
    if (r < 0 || r > n) throw ValidationError("all_subsets: r outside [0, n]");
    std::vector<PartySubset> out;
    std::vector<int> pick(r);
    for (int k = 0; k < r; ++k) pick[k] = k;
    while (true) {
        out.emplace_back(pick);
        int k = r - 1;
        while (k >= 0 && pick[k] == n - r + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int j = k + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

}  // namespace forge
