#include <doctest.h>

#include <string>

#include "irsqr/qr.hpp"
#include "irsqr/random.hpp"
#include "oracles.hpp"

using namespace irsqr;

namespace {

std::vector<uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::vector<uint8_t> random_payload(RandomStream& s, int len) {
    std::vector<uint8_t> p(len);
    for (auto& b : p) b = static_cast<uint8_t>(s.next_u64());
    return p;
}

constexpr EcLevel kLevels[] = {EcLevel::L, EcLevel::M, EcLevel::Q, EcLevel::H};

}  // namespace

TEST_CASE("symbol sides follow 4v + 17") {
    CHECK(qr_side(1) == 21);
    CHECK(qr_side(5) == 37);
    CHECK(qr_side(6) == 41);
    CHECK_THROWS_AS(qr_side(7), std::invalid_argument);
    CHECK_THROWS_AS(qr_side(0), std::invalid_argument);
}

TEST_CASE("format word for (M, mask 0)") {
    CHECK(format_info_bits(EcLevel::M, 0) == 0b101010000010010);
}

TEST_CASE("format words match the bitwise BCH oracle for all 32 combinations") {
    const int ec_bits[] = {1, 0, 3, 2};  // L, M, Q, H
    for (int e = 0; e < 4; ++e)
        for (int m = 0; m < 8; ++m)
            CHECK(format_info_bits(kLevels[e], m) == oracle::format_word_bitwise(ec_bits[e], m));
}

TEST_CASE("encode/decode round-trip across all versions and levels") {
    RandomStream s(80);
    for (int v = 1; v <= 6; ++v)
        for (EcLevel ec : kLevels) {
            const int cap = byte_mode_capacity(v, ec);
            REQUIRE(cap > 0);
            for (int rep = 0; rep < 50; ++rep) {
                const int len = static_cast<int>(s.next_u64() % (cap + 1));
                const auto payload = random_payload(s, len);
                const QrSpec spec{.version = v, .ec = ec};
                const ModuleMatrix m = qr_encode(payload, spec);
                CHECK(m.side == qr_side(v));
                const auto back = qr_decode(m, 0);
                REQUIRE(back.has_value());
                CHECK(*back == payload);
            }
        }
}

TEST_CASE("capacity limits are enforced") {
    CHECK(byte_mode_capacity(1, EcLevel::H) == 7);
    CHECK(byte_mode_capacity(5, EcLevel::H) == 44);
    RandomStream s(81);
    const auto too_big = random_payload(s, 8);
    CHECK_THROWS_AS(qr_encode(too_big, QrSpec{.version = 1, .ec = EcLevel::H}),
                    std::invalid_argument);
}

TEST_CASE("border pads bottom and right with light modules") {
    const QrSpec spec{.version = 5, .ec = EcLevel::H, .border = 1};
    const ModuleMatrix m = qr_encode(bytes_of("PADDED"), spec);
    CHECK(m.side == 38);
    for (int i = 0; i < 38; ++i) {
        CHECK(m.at(37, i) == 0);
        CHECK(m.at(i, 37) == 0);
    }
    const auto back = qr_decode(m, 1);
    REQUIRE(back.has_value());
    CHECK(*back == bytes_of("PADDED"));
}

TEST_CASE("every forced mask decodes") {
    for (int mask = 0; mask < 8; ++mask) {
        const QrSpec spec{.version = 2, .ec = EcLevel::Q, .mask = mask};
        const auto back = qr_decode(qr_encode(bytes_of("MASKS"), spec), 0);
        REQUIRE(back.has_value());
        CHECK(*back == bytes_of("MASKS"));
    }
}

TEST_CASE("auto mask minimizes the penalty score") {
    RandomStream s(82);
    for (int rep = 0; rep < 10; ++rep) {
        const auto payload = random_payload(s, 10);
        long best_forced = -1;
        for (int mask = 0; mask < 8; ++mask) {
            const QrSpec spec{.version = 3, .ec = EcLevel::M, .mask = mask};
            const long p = mask_penalty(qr_encode(payload, spec));
            if (best_forced < 0 || p < best_forced) best_forced = p;
        }
        const QrSpec autospec{.version = 3, .ec = EcLevel::M, .mask = -1};
        CHECK(mask_penalty(qr_encode(payload, autospec)) == best_forced);
    }
}

TEST_CASE("format info survives up to 3 bit errors") {
    const QrSpec spec{.version = 1, .ec = EcLevel::Q};
    const ModuleMatrix clean = qr_encode(bytes_of("FMT"), spec);
    // first copy lives in row/column 8 around the top-left finder
    ModuleMatrix m = clean;
    m.at(0, 8) ^= 1;
    m.at(2, 8) ^= 1;
    m.at(8, 7) ^= 1;
    const auto back = qr_decode(m, 0);
    REQUIRE(back.has_value());
    CHECK(*back == bytes_of("FMT"));
}

TEST_CASE("flipping t data modules of one block still decodes") {
    // version 2-H: a single block with ec 28, so t = 14
    const QrSpec spec{.version = 2, .ec = EcLevel::H};
    const ModuleMatrix clean = qr_encode(bytes_of("DAMAGE"), spec);
    const auto order = data_module_order(2);
    REQUIRE(order.size() >= 44 * 8);

    RandomStream s(83);
    for (int rep = 0; rep < 20; ++rep) {
        ModuleMatrix m = clean;
        // one flipped module per codeword byte, 14 distinct bytes
        std::vector<int> bytes;
        while (static_cast<int>(bytes.size()) < 14) {
            const int b = static_cast<int>(s.next_u64() % 44);
            bool dup = false;
            for (int q : bytes) dup |= (q == b);
            if (!dup) bytes.push_back(b);
        }
        for (int b : bytes) {
            const int bit = b * 8 + static_cast<int>(s.next_u64() % 8);
            m.at(order[bit].first, order[bit].second) ^= 1;
        }
        const auto back = qr_decode(m, 0);
        REQUIRE(back.has_value());
        CHECK(*back == bytes_of("DAMAGE"));
    }
}

TEST_CASE("corner obstruction: decodes when small, fails when large") {
    const QrSpec spec{.version = 5, .ec = EcLevel::H, .border = 1};
    const ModuleMatrix clean = qr_encode(bytes_of("OBSTRUCTION TEST"), spec);

    auto blocked = [&](int d) {
        ModuleMatrix m = clean;
        for (int r = m.side - d; r < m.side; ++r)
            for (int c = m.side - d; c < m.side; ++c) m.at(r, c) = 0;
        return qr_decode(m, 1).has_value();
    };

    CHECK(blocked(5));
    CHECK_FALSE(blocked(24));
}

TEST_CASE("decode rejects junk") {
    ModuleMatrix junk(21);
    for (size_t i = 0; i < junk.cells.size(); i += 3) junk.cells[i] = 1;
    CHECK_FALSE(qr_decode(junk, 0).has_value());
    CHECK_FALSE(qr_decode(ModuleMatrix(20), 0).has_value());  // not a symbol side
}
