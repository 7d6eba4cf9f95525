#include "irsqr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "irsqr/random.hpp"

namespace irsqr {

double q_function(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("q_function: x must be finite");
    return 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0);
}

namespace {

// Largest-magnitude entry made real-positive (ties to the smallest index).
void fix_phase(std::vector<cxd>& v) {
    size_t best = 0;
    double best_mag = -1.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag <= 0.0) return;
    const cxd rot = std::conj(v[best]) / best_mag;
    for (auto& e : v) e *= rot;
    v[best] = {std::abs(v[best]), 0.0};
}

}  // namespace

EigenPair principal_eigenvector(const ComplexMatrix& a) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("principal_eigenvector: matrix not square");

    const double scale = std::max(1.0, max_abs_entry(a));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (std::abs(a.at(i, j) - std::conj(a.at(j, i))) > 1e-10 * scale)
                throw std::invalid_argument("principal_eigenvector: matrix not Hermitian");

    RandomStream start(0x0E16E5ULL);
    std::vector<cxd> v(n);
    for (auto& e : v) e = start.next_complex_gaussian(1.0);
    double vn = norm2(v);
    for (auto& e : v) e /= vn;

    constexpr int kMaxIterations = 10000;
    for (int it = 0; it < kMaxIterations; ++it) {
        std::vector<cxd> w = multiply(a, v);
        // Rayleigh quotient; real for Hermitian input
        double lambda = 0.0;
        for (int i = 0; i < n; ++i) lambda += (std::conj(v[i]) * w[i]).real();
        if (lambda < -1e-10 * scale)
            throw std::invalid_argument("principal_eigenvector: matrix not positive semidefinite");
        lambda = std::max(lambda, 0.0);

        double resid = 0.0;
        for (int i = 0; i < n; ++i) resid += std::norm(w[i] - lambda * v[i]);
        resid = std::sqrt(resid);
        if (resid <= 1e-8 * std::max(lambda, 1e-300)) {
            fix_phase(v);
            return {std::move(v), lambda};
        }

        const double wn = norm2(w);
        if (wn == 0.0) {  // v is in the null space; for PSD that means lambda = 0
            fix_phase(v);
            return {std::move(v), 0.0};
        }
        for (auto& e : w) e /= wn;
        v = std::move(w);
    }
    throw ConvergenceError("principal_eigenvector: power iteration did not converge");
}

namespace {

// Hot kernels for the factorization. Unrolled with independent accumulators
// so the FMA chains pipeline; std::complex guarantees array-of-(re,im)
// layout, which the double views rely on.

// conj(a) . b
cxd cdot(const cxd* a, const cxd* b, int n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double sr0 = 0, si0 = 0, sr1 = 0, si1 = 0;
    int i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        sr0 += pa[i] * pb[i] + pa[i + 1] * pb[i + 1];
        si0 += pa[i] * pb[i + 1] - pa[i + 1] * pb[i];
        sr1 += pa[i + 2] * pb[i + 2] + pa[i + 3] * pb[i + 3];
        si1 += pa[i + 2] * pb[i + 3] - pa[i + 3] * pb[i + 2];
    }
    if (i < 2 * n) {
        sr0 += pa[i] * pb[i] + pa[i + 1] * pb[i + 1];
        si0 += pa[i] * pb[i + 1] - pa[i + 1] * pb[i];
    }
    return {sr0 + sr1, si0 + si1};
}

// a . b (no conjugation)
cxd cdotu(const cxd* a, const cxd* b, int n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double sr0 = 0, si0 = 0, sr1 = 0, si1 = 0;
    int i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        sr0 += pa[i] * pb[i] - pa[i + 1] * pb[i + 1];
        si0 += pa[i] * pb[i + 1] + pa[i + 1] * pb[i];
        sr1 += pa[i + 2] * pb[i + 2] - pa[i + 3] * pb[i + 3];
        si1 += pa[i + 2] * pb[i + 3] + pa[i + 3] * pb[i + 2];
    }
    if (i < 2 * n) {
        sr0 += pa[i] * pb[i] - pa[i + 1] * pb[i + 1];
        si0 += pa[i] * pb[i + 1] + pa[i + 1] * pb[i];
    }
    return {sr0 + sr1, si0 + si1};
}

// b -= s * a
void caxpy_sub(cxd* b, const cxd* a, cxd s, int n) {
    double* pb = reinterpret_cast<double*>(b);
    const double* pa = reinterpret_cast<const double*>(a);
    const double sr = s.real(), si = s.imag();
    for (int i = 0; i + 2 <= 2 * n; i += 2) {
        const double ar = pa[i], ai = pa[i + 1];
        pb[i] -= sr * ar - si * ai;
        pb[i + 1] -= sr * ai + si * ar;
    }
}

}  // namespace

LeastSquaresFactor::LeastSquaresFactor(const ComplexMatrix& v)
    : rows_(v.rows()), cols_(v.cols()) {
    if (rows_ < cols_)
        throw std::invalid_argument("LeastSquaresFactor: need rows >= cols");

    const int m = rows_, n = cols_;
    a_.resize(static_cast<size_t>(m) * n);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) a_[static_cast<size_t>(c) * m + r] = v.at(r, c);
    rdiag_.resize(n);
    beta_.resize(n);

    for (int k = 0; k < n; ++k) {
        cxd* col = a_.data() + static_cast<size_t>(k) * m;
        double xn = 0.0;
        for (int i = k; i < m; ++i) xn += std::norm(col[i]);
        xn = std::sqrt(xn);
        if (xn == 0.0) throw SingularMatrixError("left_pseudo_inverse: zero column");

        const cxd x0 = col[k];
        const double x0m = std::abs(x0);
        const cxd alpha = (x0m > 0.0) ? cxd(-xn) * (x0 / x0m) : cxd(-xn);
        rdiag_[k] = alpha;

        // reflector v = x - alpha e1, stored in place of the column
        col[k] -= alpha;
        double vn2 = 0.0;
        for (int i = k; i < m; ++i) vn2 += std::norm(col[i]);
        beta_[k] = (vn2 > 0.0) ? 2.0 / vn2 : 0.0;

        const int len = m - k;
        for (int j = k + 1; j < n; ++j) {
            cxd* cj = a_.data() + static_cast<size_t>(j) * m + k;
            const cxd s = cdot(col + k, cj, len) * beta_[k];
            caxpy_sub(cj, col + k, s, len);
        }
    }

    // row-major copy of R for cache-friendly back substitution
    r_rows_.assign(static_cast<size_t>(n) * n, cxd{});
    for (int i = 0; i < n; ++i) {
        r_rows_[static_cast<size_t>(i) * n + i] = rdiag_[i];
        for (int j = i + 1; j < n; ++j)
            r_rows_[static_cast<size_t>(i) * n + j] = a_[static_cast<size_t>(j) * m + i];
    }

    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (const cxd& d : rdiag_) {
        const double m_ = std::abs(d);
        dmax = std::max(dmax, m_);
        dmin = std::min(dmin, m_);
    }
    if (dmin == 0.0 || dmax / dmin > 1e12)
        throw SingularMatrixError("left_pseudo_inverse: matrix is rank deficient");
}

std::vector<cxd> LeastSquaresFactor::solve(std::span<const cxd> y) const {
    const int m = rows_, n = cols_;
    if (static_cast<int>(y.size()) != m)
        throw std::invalid_argument("solve: vector length does not match rows");
    std::vector<cxd> t(y.begin(), y.end());

    for (int k = 0; k < n; ++k) {
        const cxd* col = a_.data() + static_cast<size_t>(k) * m + k;
        const int len = m - k;
        const cxd s = cdot(col, t.data() + k, len) * beta_[k];
        caxpy_sub(t.data() + k, col, s, len);
    }

    std::vector<cxd> x(n);
    for (int i = n - 1; i >= 0; --i) {
        const cxd* row = r_rows_.data() + static_cast<size_t>(i) * n;
        const cxd acc = t[i] - cdotu(row + i + 1, x.data() + i + 1, n - 1 - i);
        x[i] = acc / rdiag_[i];
    }
    return x;
}

ComplexMatrix LeastSquaresFactor::pseudo_inverse() const {
    const int m = rows_, n = cols_;
    ComplexMatrix u(n, m);
    std::vector<cxd> e(m);
    for (int j = 0; j < m; ++j) {
        std::fill(e.begin(), e.end(), cxd{});
        e[j] = 1.0;
        std::vector<cxd> col = solve(e);
        for (int i = 0; i < n; ++i) u.at(i, j) = col[i];
    }
    return u;
}

std::vector<double> LeastSquaresFactor::equalizer_row_power() const {
    // U U^H = R^-1 R^-H, so row l of R^-1 carries [U U^H]_{ll}.
    const int n = cols_;
    std::vector<double> g(n, 0.0);
    std::vector<cxd> w(n);
    for (int c = 0; c < n; ++c) {
        // column c of R^-1 by back substitution (nonzero only for rows <= c)
        w[c] = cxd(1.0) / rdiag_[c];
        for (int i = c - 1; i >= 0; --i) {
            const cxd* row = r_rows_.data() + static_cast<size_t>(i) * n;
            const cxd acc = -cdotu(row + i + 1, w.data() + i + 1, c - i);
            w[i] = acc / rdiag_[i];
        }
        for (int i = 0; i <= c; ++i) g[i] += std::norm(w[i]);
    }
    return g;
}

ComplexMatrix left_pseudo_inverse(const ComplexMatrix& v) {
    return LeastSquaresFactor(v).pseudo_inverse();
}

namespace {

double psk_integrand(double a, double phi) {
    const double s = std::sin(phi);
    return std::exp(-a / (s * s));
}

double adaptive_simpson(double a_coef, double lo, double hi, double flo, double fmid, double fhi,
                        double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flm = psk_integrand(a_coef, lmid);
    const double frm = psk_integrand(a_coef, rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(a_coef, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(a_coef, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

}  // namespace

double mpsk_sep_exact(double snr, int order) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw std::invalid_argument("mpsk_sep_exact: order must be a power of 2, >= 2");
    if (!(snr > 0.0)) throw std::invalid_argument("mpsk_sep_exact: snr must be > 0");

    const double pi = std::numbers::pi;
    const double sm = std::sin(pi / order);
    const double a = snr * sm * sm;
    const double hi = pi * (order - 1) / order;

    const double flo = 0.0;  // integrand vanishes as phi -> 0+
    const double fhi = psk_integrand(a, hi);
    const double fmid = psk_integrand(a, 0.5 * hi);
    const double whole = hi / 6.0 * (flo + 4.0 * fmid + fhi);
    const double integral = adaptive_simpson(a, 0.0, hi, flo, fmid, fhi, whole, 1e-12, 48);
    return std::clamp(integral / pi, 0.0, 1.0);
}

}  // namespace irsqr
