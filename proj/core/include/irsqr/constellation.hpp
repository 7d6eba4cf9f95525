#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace irsqr {

/// Gray-labeled M-PSK constellation, x_m = exp(j 2 pi m / M). Point index m
/// carries the binary-reflected Gray code of m, so phase-adjacent points
/// differ in exactly one bit. All points are unit modulus, matching the
/// per-element reflection magnitude bound.
class Constellation {
public:
    explicit Constellation(int order);

    int order() const { return order_; }
    int bits_per_symbol() const { return bits_; }

    std::complex<double> point(int index) const { return points_[index]; }

    /// Bits carried by point `index`, MSB first in the low `bits_per_symbol()`
    /// bits of the result.
    int label(int index) const { return index ^ (index >> 1); }

    /// Point index carrying the given bit pattern.
    int index_of_label(int label) const { return label_to_index_[label]; }

    /// Maximum-likelihood decision: nearest constellation point, ties broken
    /// toward the smaller index.
    int nearest_index(std::complex<double> y) const;

private:
    int order_;
    int bits_;
    std::vector<std::complex<double>> points_;
    std::vector<int> label_to_index_;
};

/// Gray-maps groups of log2(M) bits (MSB first) to constellation points.
/// Throws when the bit count is not divisible by log2(M).
std::vector<std::complex<double>> bits_to_symbols(std::span<const uint8_t> bits,
                                                  const Constellation& c);

/// Inverse of bits_to_symbols on point indices.
std::vector<uint8_t> symbols_to_bits(std::span<const int> indices, const Constellation& c);

}  // namespace irsqr
