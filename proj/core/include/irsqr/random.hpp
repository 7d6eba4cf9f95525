#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace irsqr {

/// Counter-based deterministic random stream.
///
/// Every draw is a pure function of (key, counter), so a stream can be
/// replayed bit-exactly from its seed, and substreams derived by index are
/// reproducible no matter in which order they are created or consumed. One
/// stream is owned by exactly one Monte-Carlo trial.
class RandomStream {
public:
    explicit RandomStream(uint64_t seed);

    /// Derives an independent child stream. Pure function of (key, index):
    /// does not advance and does not depend on this stream's counter.
    RandomStream substream(uint64_t index) const;

    uint64_t next_u64();

    /// Uniform on (0, 1].
    double next_uniform_pos();

    /// Uniform on [0, 1).
    double next_uniform();

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    /// Consumes exactly two uniforms.
    std::complex<double> next_complex_gaussian(double variance);

private:
    RandomStream(uint64_t key, int);  // key already mixed

    uint64_t key_;
    uint64_t counter_ = 0;
};

/// n i.i.d. CN(0, variance) draws. Throws if variance <= 0.
std::vector<std::complex<double>> sample_complex_gaussian(RandomStream& stream, size_t n,
                                                          double variance);

}  // namespace irsqr
