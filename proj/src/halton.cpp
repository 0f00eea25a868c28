#include "mwo/halton.hpp"

#include <cmath>
#include <stdexcept>

namespace mwo {

double radical_inverse(std::uint64_t index, unsigned base)
{
    if (base < 2)
        throw std::invalid_argument("radical inverse base must be at least 2");
    const double inv_base = 1.0 / base;
    double scale = inv_base;
    double value = 0.0;
    while (index > 0) {
        value += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inv_base;
    }
    return value;
}

std::vector<unsigned> first_primes(std::size_t count)
{
    std::vector<unsigned> primes;
    primes.reserve(count);
    for (unsigned n = 2; primes.size() < count; ++n) {
        bool prime = true;
        for (unsigned p : primes) {
            if (p * p > n)
                break;
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime)
            primes.push_back(n);
    }
    return primes;
}

HaltonSequence::HaltonSequence(std::size_t dimensions) : bases_(first_primes(dimensions)) {}

std::vector<double> HaltonSequence::point(std::uint64_t index) const
{
    std::vector<double> out(bases_.size());
    for (std::size_t d = 0; d < bases_.size(); ++d)
        out[d] = radical_inverse(index, bases_[d]);
    return out;
}

} // namespace mwo
