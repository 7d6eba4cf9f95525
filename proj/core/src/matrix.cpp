#include "irsqr/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace irsqr {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cxd> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    if (entries_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const cxd& e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

ComplexMatrix conjugate_transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) t.at(c, r) = std::conj(a.at(r, c));
    return t;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    const int n = b.cols();
    for (int i = 0; i < a.rows(); ++i) {
        cxd* crow = c.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            const cxd aik = a.at(i, k);
            if (aik == cxd{}) continue;
            const cxd* brow = b.row(k);
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

std::vector<cxd> multiply(const ComplexMatrix& a, std::span<const cxd> x) {
    if (a.cols() != static_cast<int>(x.size()))
        throw std::invalid_argument("multiply: vector length does not match columns");
    std::vector<cxd> y(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        const cxd* arow = a.row(i);
        cxd acc{};
        for (int j = 0; j < a.cols(); ++j) acc += arow[j] * x[j];
        y[i] = acc;
    }
    return y;
}

ComplexMatrix gram(const ComplexMatrix& a) {
    const int n = a.cols();
    ComplexMatrix g(n, n);
    for (int k = 0; k < a.rows(); ++k) {
        const cxd* arow = a.row(k);
        for (int i = 0; i < n; ++i) {
            const cxd ci = std::conj(arow[i]);
            cxd* grow = g.row(i);
            for (int j = i; j < n; ++j) grow[j] += ci * arow[j];
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) g.at(i, j) = std::conj(g.at(j, i));
    return g;
}

double max_abs_entry(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cxd& e : a.entries()) m = std::max(m, std::abs(e));
    return m;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_difference: shape mismatch");
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
    return m;
}

double norm2(std::span<const cxd> x) {
    double s = 0.0;
    for (const cxd& e : x) s += std::norm(e);
    return std::sqrt(s);
}

}  // namespace irsqr
