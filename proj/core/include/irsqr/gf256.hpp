#pragma once

#include <cstdint>

namespace irsqr::gf256 {

// GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D),
// generator alpha = 0x02. Addition is XOR.

uint8_t mul(uint8_t a, uint8_t b);
uint8_t inverse(uint8_t a);          // throws on 0
uint8_t pow_alpha(int e);            // alpha^e, any integer e
uint8_t div(uint8_t a, uint8_t b);   // a * b^-1

}  // namespace irsqr::gf256
