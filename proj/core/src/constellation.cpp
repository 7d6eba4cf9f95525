#include "irsqr/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsqr {

Constellation::Constellation(int order) : order_(order) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw std::invalid_argument("Constellation: order must be a power of 2, >= 2");
    bits_ = 0;
    while ((1 << bits_) < order) ++bits_;

    points_.resize(order);
    label_to_index_.resize(order);
    for (int m = 0; m < order; ++m) {
        points_[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / order);
        label_to_index_[label(m)] = m;
    }
}

int Constellation::nearest_index(std::complex<double> y) const {
    int best = 0;
    double best_d = std::norm(y - points_[0]);
    for (int m = 1; m < order_; ++m) {
        const double d = std::norm(y - points_[m]);
        if (d < best_d) {
            best_d = d;
            best = m;
        }
    }
    return best;
}

std::vector<std::complex<double>> bits_to_symbols(std::span<const uint8_t> bits,
                                                  const Constellation& c) {
    const int k = c.bits_per_symbol();
    if (bits.size() % k != 0)
        throw std::invalid_argument("bits_to_symbols: bit count not divisible by log2(M)");
    std::vector<std::complex<double>> out;
    out.reserve(bits.size() / k);
    for (size_t i = 0; i < bits.size(); i += k) {
        int label = 0;
        for (int b = 0; b < k; ++b) label = (label << 1) | (bits[i + b] & 1);
        out.push_back(c.point(c.index_of_label(label)));
    }
    return out;
}

std::vector<uint8_t> symbols_to_bits(std::span<const int> indices, const Constellation& c) {
    const int k = c.bits_per_symbol();
    std::vector<uint8_t> bits;
    bits.reserve(indices.size() * k);
    for (int m : indices) {
        if (m < 0 || m >= c.order())
            throw std::invalid_argument("symbols_to_bits: index out of range");
        const int label = c.label(m);
        for (int b = k - 1; b >= 0; --b) bits.push_back(static_cast<uint8_t>((label >> b) & 1));
    }
    return bits;
}

}  // namespace irsqr
