#pragma once

#include <cstdint>
#include <vector>

namespace mwo {

/// Van der Corput radical inverse of `index` in `base`: the base-b digits of
/// the index mirrored about the radix point. Index 0 maps to 0.
double radical_inverse(std::uint64_t index, unsigned base);

/// First `count` primes (2, 3, 5, ...).
std::vector<unsigned> first_primes(std::size_t count);

/// Multidimensional Halton point: dimension d uses the d-th prime base.
class HaltonSequence {
public:
    explicit HaltonSequence(std::size_t dimensions);

    std::size_t dimensions() const { return bases_.size(); }

    /// Point with the given index, each coordinate in [0, 1).
    std::vector<double> point(std::uint64_t index) const;

private:
    std::vector<unsigned> bases_;
};

} // namespace mwo
