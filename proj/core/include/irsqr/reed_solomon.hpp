#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace irsqr {

/// Reed-Solomon parity over GF(256): the remainder of data(x) * x^ec_count
/// modulo the generator with roots alpha^0 .. alpha^{ec_count-1}.
/// data[0] is the highest-degree coefficient.
std::vector<uint8_t> rs_encode(std::span<const uint8_t> data, int ec_count);

struct RsDecoded {
    std::vector<uint8_t> data;  // received minus parity, errors corrected
    int corrected = 0;
};

/// Syndrome / Berlekamp-Massey / Chien / Forney decoder. Corrects up to
/// floor(ec_count / 2) byte errors; returns nullopt when the word is
/// undecodable (never silently corrupts: corrections are re-checked against
/// the syndromes).
std::optional<RsDecoded> rs_decode(std::span<const uint8_t> received, int ec_count);

}  // namespace irsqr
