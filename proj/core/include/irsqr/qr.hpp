#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "irsqr/mapping.hpp"

namespace irsqr {

enum class EcLevel { L, M, Q, H };

/// Byte-mode QR symbol description, versions 1-6.
///
/// `border` pads the symbol with light modules on the bottom and right edges
/// only, reconciling the 4*version+17 symbol side with the element grid it
/// is shown on (e.g. a version-5 symbol plus border 1 fills a 38x38 grid).
struct QrSpec {
    int version = 1;
    EcLevel ec = EcLevel::M;
    int mask = -1;  // -1: pick by penalty score
    int border = 0;
};

int qr_side(int version);  // 4 * version + 17
int byte_mode_capacity(int version, EcLevel ec);

/// 15-bit format word (BCH(15,5) plus the fixed XOR mask), MSB = bit 14.
int format_info_bits(EcLevel ec, int mask);

/// Zigzag placement order of the non-function cells, as (row, col) pairs.
/// Codeword bit i of the interleaved stream lands on the i-th entry.
std::vector<std::pair<int, int>> data_module_order(int version);

/// Penalty score of a full symbol (no border).
long mask_penalty(const ModuleMatrix& symbol);

/// Encodes payload into a module grid of side qr_side(version) + border.
/// Throws when the payload exceeds capacity or the spec is invalid.
ModuleMatrix qr_encode(std::span<const uint8_t> payload, const QrSpec& spec);

/// Grid-aligned decode: strips the border, reads both format-info copies
/// (taking the one closer to a valid codeword, correcting up to 3 bit
/// errors), unmasks, de-interleaves and Reed-Solomon-decodes every block.
/// Returns nullopt when the format info is unrecoverable or any block fails.
std::optional<std::vector<uint8_t>> qr_decode(const ModuleMatrix& m, int border);

}  // namespace irsqr
