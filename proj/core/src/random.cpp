#include "irsqr/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsqr {

namespace {

constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kSubstreamSalt = 0xD1B54A32D192ED03ULL;

// SplitMix64 finalizer
uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(uint64_t seed) : key_(mix64(seed + kGamma)) {}

RandomStream::RandomStream(uint64_t key, int) : key_(key) {}

RandomStream RandomStream::substream(uint64_t index) const {
    uint64_t child = mix64(key_ ^ mix64(index * kGamma + kSubstreamSalt));
    return RandomStream(child, 0);
}

uint64_t RandomStream::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
}

double RandomStream::next_uniform_pos() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-53;
}

double RandomStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::complex<double> RandomStream::next_complex_gaussian(double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("complex gaussian: variance must be > 0");
    const double u1 = next_uniform_pos();
    const double u2 = next_uniform();
    const double r = std::sqrt(-variance * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

std::vector<std::complex<double>> sample_complex_gaussian(RandomStream& stream, size_t n,
                                                          double variance) {
    if (!(variance > 0.0))
        throw std::invalid_argument("sample_complex_gaussian: variance must be > 0");
    std::vector<std::complex<double>> out(n);
    for (auto& z : out) z = stream.next_complex_gaussian(variance);
    return out;
}

}  // namespace irsqr
