#include "irsqr/reed_solomon.hpp"

#include <stdexcept>

#include "irsqr/gf256.hpp"

namespace irsqr {

namespace gf = gf256;

namespace {

// Generator with roots alpha^0 .. alpha^{ec-1}; g[0] = 1 (leading term).
std::vector<uint8_t> rs_generator(int ec_count) {
    std::vector<uint8_t> g{1};
    for (int i = 0; i < ec_count; ++i) {
        std::vector<uint8_t> next(g.size() + 1, 0);
        const uint8_t root = gf::pow_alpha(i);
        for (size_t j = 0; j < g.size(); ++j) {
            next[j] ^= g[j];  // x * g
            next[j + 1] ^= gf::mul(g[j], root);
        }
        g = std::move(next);
    }
    return g;
}

std::vector<uint8_t> syndromes(std::span<const uint8_t> received, int ec_count) {
    std::vector<uint8_t> s(ec_count, 0);
    for (int j = 0; j < ec_count; ++j) {
        const uint8_t a = gf::pow_alpha(j);
        uint8_t v = 0;
        for (uint8_t byte : received) v = static_cast<uint8_t>(gf::mul(v, a) ^ byte);
        s[j] = v;
    }
    return s;
}

uint8_t poly_eval(std::span<const uint8_t> poly_low_first, uint8_t x) {
    // poly[i] is the coefficient of x^i
    uint8_t v = 0;
    for (size_t i = poly_low_first.size(); i-- > 0;)
        v = static_cast<uint8_t>(gf::mul(v, x) ^ poly_low_first[i]);
    return v;
}

}  // namespace

std::vector<uint8_t> rs_encode(std::span<const uint8_t> data, int ec_count) {
    if (ec_count < 1 || ec_count > 254)
        throw std::invalid_argument("rs_encode: ec_count must be in [1, 254]");
    const std::vector<uint8_t> gen = rs_generator(ec_count);
    std::vector<uint8_t> rem(ec_count, 0);
    for (uint8_t b : data) {
        const uint8_t factor = static_cast<uint8_t>(b ^ rem[0]);
        rem.erase(rem.begin());
        rem.push_back(0);
        for (int j = 0; j < ec_count; ++j)
            rem[j] = static_cast<uint8_t>(rem[j] ^ gf::mul(gen[j + 1], factor));
    }
    return rem;
}

std::optional<RsDecoded> rs_decode(std::span<const uint8_t> received, int ec_count) {
    const int n = static_cast<int>(received.size());
    if (ec_count < 1 || n < ec_count + 1 || n > 255)
        throw std::invalid_argument("rs_decode: need ec_count+1 <= length <= 255");

    std::vector<uint8_t> word(received.begin(), received.end());
    std::vector<uint8_t> synd = syndromes(word, ec_count);
    bool clean = true;
    for (uint8_t s : synd)
        if (s != 0) clean = false;
    if (clean) return RsDecoded{{word.begin(), word.end() - ec_count}, 0};

    // Berlekamp-Massey: error locator Lambda (coefficients low-order first).
    std::vector<uint8_t> lambda{1}, prev{1};
    int l = 0, m = 1;
    uint8_t b = 1;
    for (int it = 0; it < ec_count; ++it) {
        uint8_t delta = synd[it];
        for (int i = 1; i <= l && i < static_cast<int>(lambda.size()); ++i)
            delta ^= gf::mul(lambda[i], synd[it - i]);
        if (delta == 0) {
            ++m;
            continue;
        }
        const std::vector<uint8_t> saved = lambda;
        const uint8_t coef = gf::div(delta, b);
        if (lambda.size() < prev.size() + m) lambda.resize(prev.size() + m, 0);
        for (size_t i = 0; i < prev.size(); ++i)
            lambda[i + m] ^= gf::mul(coef, prev[i]);
        if (2 * l <= it) {
            l = it + 1 - l;
            prev = saved;
            b = delta;
            m = 1;
        } else {
            ++m;
        }
    }

    const int t = ec_count / 2;
    int degree = 0;
    for (size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] != 0) degree = static_cast<int>(i);
    if (l > t || degree != l) return std::nullopt;

    // Chien search over degree positions 0 .. n-1.
    std::vector<int> error_degrees;
    for (int p = 0; p < n; ++p)
        if (poly_eval(lambda, gf::pow_alpha(-p)) == 0) error_degrees.push_back(p);
    if (static_cast<int>(error_degrees.size()) != l) return std::nullopt;

    // Omega = S(x) Lambda(x) mod x^ec
    std::vector<uint8_t> omega(ec_count, 0);
    for (int i = 0; i < ec_count; ++i)
        for (size_t j = 0; j < lambda.size() && j <= static_cast<size_t>(i); ++j)
            omega[i] ^= gf::mul(synd[i - j], lambda[j]);

    // Forney with first generator root alpha^0: e = X * Omega(X^-1) / Lambda'(X^-1)
    for (int p : error_degrees) {
        const uint8_t x_inv = gf::pow_alpha(-p);
        uint8_t dlam = 0;  // Lambda'(X^-1); only odd-degree terms survive in char 2
        for (size_t i = 1; i < lambda.size(); i += 2)
            dlam ^= gf::mul(lambda[i], gf::pow_alpha(-p * static_cast<int>(i - 1)));
        if (dlam == 0) return std::nullopt;
        const uint8_t num = gf::mul(gf::pow_alpha(p), poly_eval(omega, x_inv));
        word[n - 1 - p] ^= gf::div(num, dlam);
    }

    // Never hand back silently corrupted data.
    for (uint8_t s : syndromes(word, ec_count))
        if (s != 0) return std::nullopt;

    return RsDecoded{{word.begin(), word.end() - ec_count}, l};
}

}  // namespace irsqr
