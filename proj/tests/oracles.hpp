// Test-only reference computations, implemented independently of the library
// code paths they check.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

// --- Gaussian tail by adaptive Simpson on the density (the library uses
// erfc; this route is quadrature). Relative refinement so small tails keep
// relative accuracy.
namespace detail {

inline double normal_pdf(double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

inline double simpson_rec(double lo, double hi, double flo, double fmid, double fhi, double whole,
                          double rel_tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double flm = normal_pdf(0.5 * (lo + mid));
    const double frm = normal_pdf(0.5 * (mid + hi));
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * rel_tol * std::abs(left + right))
        return left + right + delta / 15.0;
    return simpson_rec(lo, mid, flo, flm, fmid, left, rel_tol, depth - 1) +
           simpson_rec(mid, hi, fmid, frm, fhi, right, rel_tol, depth - 1);
}

}  // namespace detail

inline double gaussian_tail(double x) {
    if (x < 0.0) return 1.0 - gaussian_tail(-x);
    // mass beyond x + 46/max(1,x) is negligible at double precision
    const double hi = x + 46.0 / std::max(1.0, x);
    const double flo = detail::normal_pdf(x);
    const double fhi = detail::normal_pdf(hi);
    const double fmid = detail::normal_pdf(0.5 * (x + hi));
    const double whole = (hi - x) / 6.0 * (flo + 4.0 * fmid + fhi);
    return detail::simpson_rec(x, hi, flo, fmid, fhi, whole, 1e-14, 60);
}

// --- Full eigenvalue set of a Hermitian matrix by cyclic complex Jacobi.
inline std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a, int n) {
    using cd = std::complex<double>;
    auto at = [&](int r, int c) -> cd& { return a[static_cast<size_t>(r) * n + c]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(at(p, q));
        if (off < 1e-28) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double g = std::abs(at(p, q));
                if (g < 1e-300) continue;
                const cd phase = at(p, q) / g;  // A_pq = g * phase
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U restricted to (p,q): [[c, s*phase], [-s*conj(phase), c]]
                for (int k = 0; k < n; ++k) {
                    const cd akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * std::conj(phase) * akq;
                    at(k, q) = s * phase * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cd apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * phase * aqk;
                    at(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i).real();
    return eig;
}

// --- GF(256) product by direct shift-and-reduce (library uses log tables).
inline uint8_t gf_mul_shift_reduce(uint8_t a, uint8_t b) {
    int acc = 0;
    int aa = a;
    for (int i = 0; i < 8; ++i) {
        if (b & (1 << i)) acc ^= aa << i;
    }
    for (int bit = 15; bit >= 8; --bit)
        if (acc & (1 << bit)) acc ^= 0x11D << (bit - 8);
    return static_cast<uint8_t>(acc);
}

// --- Reed-Solomon parity by solving the syndrome equations (matrix form)
// over GF(256) instead of polynomial long division.
inline std::vector<uint8_t> rs_parity_linear_solve(const std::vector<uint8_t>& data,
                                                   int ec_count) {
    auto mul = gf_mul_shift_reduce;
    auto gf_pow = [&](uint8_t base, int e) {
        uint8_t r = 1;
        for (int i = 0; i < e; ++i) r = mul(r, base);
        return r;
    };
    auto gf_inv = [&](uint8_t v) {
        if (v == 0) throw std::domain_error("oracle: inverse of zero");
        return gf_pow(v, 254);
    };

    const int k = static_cast<int>(data.size());
    const int n = k + ec_count;
    // S_i = evaluation of the data part of the codeword at alpha^i
    std::vector<uint8_t> rhs(ec_count, 0);
    for (int i = 0; i < ec_count; ++i) {
        const uint8_t ai = gf_pow(2, i);
        for (int j = 0; j < k; ++j) rhs[i] ^= mul(data[j], gf_pow(ai, n - 1 - j));
    }
    // M[i][j] = alpha^{i (ec-1-j)}; parity must satisfy M p = rhs
    std::vector<std::vector<uint8_t>> m(ec_count, std::vector<uint8_t>(ec_count));
    for (int i = 0; i < ec_count; ++i)
        for (int j = 0; j < ec_count; ++j) m[i][j] = gf_pow(gf_pow(2, i), ec_count - 1 - j);

    // Gaussian elimination
    std::vector<uint8_t> p(ec_count, 0);
    for (int col = 0; col < ec_count; ++col) {
        int pivot = -1;
        for (int r = col; r < ec_count; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::runtime_error("oracle: singular RS system");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        const uint8_t inv = gf_inv(m[col][col]);
        for (int c = col; c < ec_count; ++c) m[col][c] = mul(m[col][c], inv);
        rhs[col] = mul(rhs[col], inv);
        for (int r = 0; r < ec_count; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const uint8_t f = m[r][col];
            for (int c = col; c < ec_count; ++c) m[r][c] ^= mul(f, m[col][c]);
            rhs[r] ^= mul(f, rhs[col]);
        }
    }
    for (int i = 0; i < ec_count; ++i) p[i] = rhs[i];
    return p;
}

// --- BCH(15,5) format word by explicit bit-array polynomial division.
inline int format_word_bitwise(int ec_bits2, int mask3) {
    const int data = (ec_bits2 << 3) | mask3;
    bool poly[15] = {};
    for (int i = 0; i < 5; ++i) poly[14 - i] = ((data >> (4 - i)) & 1) != 0;
    // generator x^10 + x^8 + x^5 + x^4 + x^2 + x + 1, gen[j] = coeff of x^j
    const bool gen[11] = {true, true, true, false, true, true, false, false, true, false, true};
    bool rem[15];
    for (int i = 0; i < 15; ++i) rem[i] = poly[i];
    for (int i = 14; i >= 10; --i) {
        if (!rem[i]) continue;
        for (int j = 0; j < 11; ++j) rem[i - 10 + j] ^= gen[j];
    }
    int word = data << 10;
    for (int i = 0; i < 10; ++i)
        if (rem[i]) word |= 1 << i;
    return word ^ 0x5412;
}

}  // namespace oracle
