#include "irsqr/gf256.hpp"

#include <array>
#include <stdexcept>

namespace irsqr::gf256 {

namespace {

struct Tables {
    std::array<uint8_t, 256> exp_{};
    std::array<int, 256> log_{};

    Tables() {
        int x = 1;
        for (int i = 0; i < 255; ++i) {
            exp_[i] = static_cast<uint8_t>(x);
            log_[x] = i;
            x <<= 1;
            if (x & 0x100) x ^= 0x11D;
        }
        exp_[255] = exp_[0];
        log_[0] = -1;
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

uint8_t mul(uint8_t a, uint8_t b) {
    if (a == 0 || b == 0) return 0;
    const Tables& t = tables();
    return t.exp_[(t.log_[a] + t.log_[b]) % 255];
}

uint8_t inverse(uint8_t a) {
    if (a == 0) throw std::domain_error("gf256: zero has no inverse");
    const Tables& t = tables();
    return t.exp_[(255 - t.log_[a]) % 255];
}

uint8_t pow_alpha(int e) {
    int r = e % 255;
    if (r < 0) r += 255;
    return tables().exp_[r];
}

uint8_t div(uint8_t a, uint8_t b) { return mul(a, inverse(b)); }

}  // namespace irsqr::gf256
