#include "irsqr/qr.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "irsqr/reed_solomon.hpp"

namespace irsqr {

namespace {

constexpr int kMinVersion = 1;
constexpr int kMaxVersion = 6;

constexpr int kTotalCodewords[kMaxVersion + 1] = {0, 26, 44, 70, 100, 134, 172};

// Indexed [ec][version]
constexpr int kEcPerBlock[4][kMaxVersion + 1] = {
    {0, 7, 10, 15, 20, 26, 18},   // L
    {0, 10, 16, 26, 18, 24, 16},  // M
    {0, 13, 22, 18, 26, 18, 24},  // Q
    {0, 17, 28, 22, 16, 22, 28},  // H
};
constexpr int kNumBlocks[4][kMaxVersion + 1] = {
    {0, 1, 1, 1, 1, 1, 2},  // L
    {0, 1, 1, 1, 2, 2, 4},  // M
    {0, 1, 1, 2, 2, 4, 4},  // Q
    {0, 1, 1, 2, 4, 4, 4},  // H
};

void check_version(int version) {
    if (version < kMinVersion || version > kMaxVersion)
        throw std::invalid_argument("qr: version must be in [1, 6]");
}

int ec_index(EcLevel ec) { return static_cast<int>(ec); }

int data_codewords(int version, EcLevel ec) {
    return kTotalCodewords[version] -
           kEcPerBlock[ec_index(ec)][version] * kNumBlocks[ec_index(ec)][version];
}

int format_ec_bits(EcLevel ec) {
    switch (ec) {
        case EcLevel::L: return 1;
        case EcLevel::M: return 0;
        case EcLevel::Q: return 3;
        case EcLevel::H: return 2;
    }
    throw std::invalid_argument("qr: bad error correction level");
}

struct SymbolGrid {
    int side = 0;
    std::vector<uint8_t> dark;         // 1 = dark
    std::vector<uint8_t> is_function;  // function patterns + reserved format cells

    explicit SymbolGrid(int s)
        : side(s),
          dark(static_cast<size_t>(s) * s, 0),
          is_function(static_cast<size_t>(s) * s, 0) {}

    void set_function(int r, int c, bool v) {
        if (r < 0 || r >= side || c < 0 || c >= side) return;
        dark[static_cast<size_t>(r) * side + c] = v ? 1 : 0;
        is_function[static_cast<size_t>(r) * side + c] = 1;
    }
    bool function_at(int r, int c) const {
        return is_function[static_cast<size_t>(r) * side + c] != 0;
    }
    uint8_t& at(int r, int c) { return dark[static_cast<size_t>(r) * side + c]; }
    uint8_t at(int r, int c) const { return dark[static_cast<size_t>(r) * side + c]; }
};

void draw_finder(SymbolGrid& g, int row, int col) {
    for (int dr = -4; dr <= 4; ++dr)
        for (int dc = -4; dc <= 4; ++dc) {
            const int dist = std::max(std::abs(dr), std::abs(dc));
            g.set_function(row + dr, col + dc, dist != 2 && dist != 4);
        }
}

void draw_alignment(SymbolGrid& g, int row, int col) {
    for (int dr = -2; dr <= 2; ++dr)
        for (int dc = -2; dc <= 2; ++dc)
            g.set_function(row + dr, col + dc, std::max(std::abs(dr), std::abs(dc)) != 1);
}

// Writes the 15 format bits (or just reserves the cells when value < 0).
void place_format_bits(SymbolGrid& g, int value) {
    const int s = g.side;
    auto bit = [&](int i) { return value >= 0 && ((value >> i) & 1) != 0; };
    // first copy, around the top-left finder
    for (int i = 0; i <= 5; ++i) g.set_function(i, 8, bit(i));
    g.set_function(7, 8, bit(6));
    g.set_function(8, 8, bit(7));
    g.set_function(8, 7, bit(8));
    for (int i = 9; i < 15; ++i) g.set_function(8, 14 - i, bit(i));
    // second copy, split between the other two finders
    for (int i = 0; i <= 7; ++i) g.set_function(8, s - 1 - i, bit(i));
    for (int i = 8; i < 15; ++i) g.set_function(s - 15 + i, 8, bit(i));
    g.set_function(s - 8, 8, true);  // dark module
}

SymbolGrid function_patterns(int version) {
    const int s = qr_side(version);
    SymbolGrid g(s);
    for (int i = 0; i < s; ++i) {
        g.set_function(6, i, i % 2 == 0);
        g.set_function(i, 6, i % 2 == 0);
    }
    draw_finder(g, 3, 3);
    draw_finder(g, 3, s - 4);
    draw_finder(g, s - 4, 3);
    if (version >= 2) draw_alignment(g, s - 7, s - 7);
    place_format_bits(g, -1);  // reserve
    return g;
}

bool mask_bit(int mask, int r, int c) {
    switch (mask) {
        case 0: return (r + c) % 2 == 0;
        case 1: return r % 2 == 0;
        case 2: return c % 3 == 0;
        case 3: return (r + c) % 3 == 0;
        case 4: return (c / 3 + r / 2) % 2 == 0;
        case 5: return c * r % 2 + c * r % 3 == 0;
        case 6: return (c * r % 2 + c * r % 3) % 2 == 0;
        case 7: return ((c + r) % 2 + c * r % 3) % 2 == 0;
    }
    throw std::invalid_argument("qr: mask must be in [0, 7]");
}

void apply_mask(SymbolGrid& g, int mask) {
    for (int r = 0; r < g.side; ++r)
        for (int c = 0; c < g.side; ++c)
            if (!g.function_at(r, c) && mask_bit(mask, r, c)) g.at(r, c) ^= 1;
}

std::vector<uint8_t> build_data_codewords(std::span<const uint8_t> payload, int version,
                                          EcLevel ec) {
    const int capacity_bytes = data_codewords(version, ec);
    std::vector<uint8_t> bits;
    bits.reserve(static_cast<size_t>(capacity_bytes) * 8);
    auto push_bits = [&](int value, int count) {
        for (int i = count - 1; i >= 0; --i) bits.push_back(static_cast<uint8_t>((value >> i) & 1));
    };
    push_bits(0x4, 4);  // byte mode
    push_bits(static_cast<int>(payload.size()), 8);
    for (uint8_t b : payload) push_bits(b, 8);

    const size_t cap_bits = static_cast<size_t>(capacity_bytes) * 8;
    const size_t term = std::min<size_t>(4, cap_bits - bits.size());
    for (size_t i = 0; i < term; ++i) bits.push_back(0);
    while (bits.size() % 8 != 0) bits.push_back(0);

    std::vector<uint8_t> out;
    out.reserve(capacity_bytes);
    for (size_t i = 0; i < bits.size(); i += 8) {
        uint8_t b = 0;
        for (int j = 0; j < 8; ++j) b = static_cast<uint8_t>((b << 1) | bits[i + j]);
        out.push_back(b);
    }
    for (uint8_t pad = 0xEC; static_cast<int>(out.size()) < capacity_bytes;
         pad = (pad == 0xEC) ? 0x11 : 0xEC)
        out.push_back(pad);
    return out;
}

struct BlockShape {
    int num_blocks;
    int ec_per_block;
    std::vector<int> data_lens;  // per block, short blocks first
};

BlockShape block_shape(int version, EcLevel ec) {
    BlockShape s;
    s.num_blocks = kNumBlocks[ec_index(ec)][version];
    s.ec_per_block = kEcPerBlock[ec_index(ec)][version];
    const int raw = kTotalCodewords[version];
    const int short_total = raw / s.num_blocks;
    const int num_long = raw % s.num_blocks;
    const int short_data = short_total - s.ec_per_block;
    for (int b = 0; b < s.num_blocks; ++b)
        s.data_lens.push_back(short_data + (b >= s.num_blocks - num_long ? 1 : 0));
    return s;
}

std::vector<uint8_t> interleave(std::span<const uint8_t> data, int version, EcLevel ec) {
    const BlockShape shape = block_shape(version, ec);
    std::vector<std::vector<uint8_t>> blocks;
    size_t pos = 0;
    for (int b = 0; b < shape.num_blocks; ++b) {
        blocks.emplace_back(data.begin() + pos, data.begin() + pos + shape.data_lens[b]);
        pos += shape.data_lens[b];
    }
    std::vector<std::vector<uint8_t>> ecs;
    for (const auto& blk : blocks) ecs.push_back(rs_encode(blk, shape.ec_per_block));

    std::vector<uint8_t> out;
    out.reserve(static_cast<size_t>(kTotalCodewords[version]));
    const int max_data = *std::max_element(shape.data_lens.begin(), shape.data_lens.end());
    for (int i = 0; i < max_data; ++i)
        for (int b = 0; b < shape.num_blocks; ++b)
            if (i < static_cast<int>(blocks[b].size())) out.push_back(blocks[b][i]);
    for (int i = 0; i < shape.ec_per_block; ++i)
        for (int b = 0; b < shape.num_blocks; ++b) out.push_back(ecs[b][i]);
    return out;
}

// Inverse of interleave's byte order, returning per-block (data || ec) words.
std::vector<std::vector<uint8_t>> deinterleave(std::span<const uint8_t> stream, int version,
                                               EcLevel ec) {
    const BlockShape shape = block_shape(version, ec);
    std::vector<std::vector<uint8_t>> words(shape.num_blocks);
    size_t pos = 0;
    const int max_data = *std::max_element(shape.data_lens.begin(), shape.data_lens.end());
    for (int i = 0; i < max_data; ++i)
        for (int b = 0; b < shape.num_blocks; ++b)
            if (i < shape.data_lens[b]) words[b].push_back(stream[pos++]);
    for (int i = 0; i < shape.ec_per_block; ++i)
        for (int b = 0; b < shape.num_blocks; ++b) words[b].push_back(stream[pos++]);
    return words;
}

}  // namespace

int qr_side(int version) {
    check_version(version);
    return 4 * version + 17;
}

int byte_mode_capacity(int version, EcLevel ec) {
    check_version(version);
    return (data_codewords(version, ec) * 8 - 12) / 8;  // mode nibble + 8-bit count
}

int format_info_bits(EcLevel ec, int mask) {
    if (mask < 0 || mask > 7) throw std::invalid_argument("qr: mask must be in [0, 7]");
    const int data = format_ec_bits(ec) << 3 | mask;
    int rem = data;
    for (int i = 0; i < 10; ++i) rem = (rem << 1) ^ ((rem >> 9) * 0x537);
    return (data << 10 | rem) ^ 0x5412;
}

std::vector<std::pair<int, int>> data_module_order(int version) {
    const SymbolGrid g = function_patterns(version);
    const int s = g.side;
    std::vector<std::pair<int, int>> order;
    for (int right = s - 1; right >= 1; right -= 2) {
        if (right == 6) right = 5;
        for (int vert = 0; vert < s; ++vert) {
            for (int j = 0; j < 2; ++j) {
                const int c = right - j;
                const bool upward = ((right + 1) & 2) == 0;
                const int r = upward ? s - 1 - vert : vert;
                if (!g.function_at(r, c)) order.emplace_back(r, c);
            }
        }
    }
    return order;
}

long mask_penalty(const ModuleMatrix& symbol) {
    const int s = symbol.side;
    long result = 0;

    // runs of same color, rows then columns
    for (int pass = 0; pass < 2; ++pass)
        for (int a = 0; a < s; ++a) {
            int run = 0;
            uint8_t color = 2;
            for (int b = 0; b < s; ++b) {
                const uint8_t v = pass == 0 ? symbol.at(a, b) : symbol.at(b, a);
                if (v == color) {
                    ++run;
                    if (run == 5) result += 3;
                    else if (run > 5) ++result;
                } else {
                    color = v;
                    run = 1;
                }
            }
        }

    // 2x2 same-color blocks
    for (int r = 0; r + 1 < s; ++r)
        for (int c = 0; c + 1 < s; ++c) {
            const uint8_t v = symbol.at(r, c);
            if (v == symbol.at(r + 1, c) && v == symbol.at(r, c + 1) &&
                v == symbol.at(r + 1, c + 1))
                result += 3;
        }

    // finder-like 1:1:3:1:1 with a 4-light margin, both orientations
    for (int pass = 0; pass < 2; ++pass)
        for (int a = 0; a < s; ++a) {
            int window = 0;
            for (int b = 0; b < s; ++b) {
                const uint8_t v = pass == 0 ? symbol.at(a, b) : symbol.at(b, a);
                window = ((window << 1) & 0x7FF) | v;
                if (b >= 10 && (window == 0x05D || window == 0x5D0)) result += 40;
            }
        }

    // dark-module balance
    long dark = 0;
    for (uint8_t v : symbol.cells) dark += v;
    const long total = static_cast<long>(s) * s;
    const long k = (std::abs(dark * 20 - total * 10) + total - 1) / total - 1;
    return result + k * 10;
}

ModuleMatrix qr_encode(std::span<const uint8_t> payload, const QrSpec& spec) {
    check_version(spec.version);
    if (spec.mask < -1 || spec.mask > 7)
        throw std::invalid_argument("qr_encode: mask must be -1 (auto) or in [0, 7]");
    if (spec.border < 0) throw std::invalid_argument("qr_encode: border must be >= 0");
    if (static_cast<int>(payload.size()) > byte_mode_capacity(spec.version, spec.ec))
        throw std::invalid_argument(
            "qr_encode: payload of " + std::to_string(payload.size()) +
            " bytes exceeds capacity " +
            std::to_string(byte_mode_capacity(spec.version, spec.ec)));

    const std::vector<uint8_t> codewords =
        interleave(build_data_codewords(payload, spec.version, spec.ec), spec.version, spec.ec);

    SymbolGrid g = function_patterns(spec.version);
    const auto order = data_module_order(spec.version);
    for (size_t i = 0; i < order.size(); ++i) {
        const bool bit = i < codewords.size() * 8 &&
                         ((codewords[i >> 3] >> (7 - (i & 7))) & 1) != 0;
        g.at(order[i].first, order[i].second) = bit ? 1 : 0;
    }

    auto masked_symbol = [&](int mask) {
        SymbolGrid tmp = g;
        place_format_bits(tmp, format_info_bits(spec.ec, mask));
        apply_mask(tmp, mask);
        ModuleMatrix sym(tmp.side);
        sym.cells = tmp.dark;
        return sym;
    };

    int mask = spec.mask;
    if (mask < 0) {
        long best = -1;
        for (int m = 0; m < 8; ++m) {
            const long p = mask_penalty(masked_symbol(m));
            if (best < 0 || p < best) {
                best = p;
                mask = m;
            }
        }
    }
    const ModuleMatrix sym = masked_symbol(mask);

    ModuleMatrix out(sym.side + spec.border);
    for (int r = 0; r < sym.side; ++r)
        for (int c = 0; c < sym.side; ++c) out.at(r, c) = sym.at(r, c);
    return out;
}

namespace {

// Best (ec, mask) within Hamming distance 3 of a received format word.
std::optional<std::pair<EcLevel, int>> match_format(int received, int& best_dist) {
    std::optional<std::pair<EcLevel, int>> best;
    best_dist = 4;
    for (int e = 0; e < 4; ++e)
        for (int m = 0; m < 8; ++m) {
            const int valid = format_info_bits(static_cast<EcLevel>(e), m);
            const int dist = std::popcount(static_cast<unsigned>(valid ^ received));
            if (dist < best_dist) {
                best_dist = dist;
                best = std::make_pair(static_cast<EcLevel>(e), m);
            }
        }
    return best;
}

}  // namespace

std::optional<std::vector<uint8_t>> qr_decode(const ModuleMatrix& m, int border) {
    if (border < 0 || m.side - border < qr_side(kMinVersion)) return std::nullopt;
    const int s = m.side - border;
    if ((s - 17) % 4 != 0) return std::nullopt;
    const int version = (s - 17) / 4;
    if (version > kMaxVersion) return std::nullopt;

    auto cell = [&](int r, int c) { return m.at(r, c); };

    int copy1 = 0, copy2 = 0;
    for (int i = 0; i <= 5; ++i) copy1 |= cell(i, 8) << i;
    copy1 |= cell(7, 8) << 6;
    copy1 |= cell(8, 8) << 7;
    copy1 |= cell(8, 7) << 8;
    for (int i = 9; i < 15; ++i) copy1 |= cell(8, 14 - i) << i;
    for (int i = 0; i <= 7; ++i) copy2 |= cell(8, s - 1 - i) << i;
    for (int i = 8; i < 15; ++i) copy2 |= cell(s - 15 + i, 8) << i;

    int d1 = 4, d2 = 4;
    const auto m1 = match_format(copy1, d1);
    const auto m2 = match_format(copy2, d2);
    EcLevel ec;
    int mask;
    if (d1 <= d2 && d1 <= 3 && m1) {
        ec = m1->first;
        mask = m1->second;
    } else if (d2 <= 3 && m2) {
        ec = m2->first;
        mask = m2->second;
    } else {
        return std::nullopt;
    }

    const auto order = data_module_order(version);
    const int n_codewords = kTotalCodewords[version];
    std::vector<uint8_t> stream(n_codewords, 0);
    for (int i = 0; i < n_codewords * 8; ++i) {
        const auto [r, c] = order[i];
        const uint8_t bit = cell(r, c) ^ (mask_bit(mask, r, c) ? 1 : 0);
        stream[i >> 3] = static_cast<uint8_t>((stream[i >> 3] << 1) | bit);
    }

    std::vector<uint8_t> data;
    for (const auto& word : deinterleave(stream, version, ec)) {
        const auto decoded = rs_decode(word, kEcPerBlock[ec_index(ec)][version]);
        if (!decoded) return std::nullopt;
        data.insert(data.end(), decoded->data.begin(), decoded->data.end());
    }

    // byte-mode header: 0100 | 8-bit count | payload
    if (data.size() < 2 || (data[0] >> 4) != 0x4) return std::nullopt;
    const int count = (data[0] & 0x0F) << 4 | data[1] >> 4;
    if (static_cast<size_t>(count) + 2 > data.size()) return std::nullopt;
    std::vector<uint8_t> payload(count);
    for (int i = 0; i < count; ++i)
        payload[i] = static_cast<uint8_t>((data[1 + i] & 0x0F) << 4 | data[2 + i] >> 4);
    return payload;
}

}  // namespace irsqr
