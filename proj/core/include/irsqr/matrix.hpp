#pragma once

#include <complex>
#include <span>
#include <vector>

namespace irsqr {

using cxd = std::complex<double>;

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    ComplexMatrix(int rows, int cols, std::vector<cxd> entries);

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cxd& at(int r, int c) { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    const cxd& at(int r, int c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }

    cxd* row(int r) { return entries_.data() + static_cast<size_t>(r) * cols_; }
    const cxd* row(int r) const { return entries_.data() + static_cast<size_t>(r) * cols_; }

    std::span<const cxd> entries() const { return entries_; }
    std::span<cxd> entries() { return entries_; }

    bool is_finite() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cxd> entries_;
};

ComplexMatrix conjugate_transpose(const ComplexMatrix& a);

// c = a * b
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

// y = a * x
std::vector<cxd> multiply(const ComplexMatrix& a, std::span<const cxd> x);

// a^H * a, exploiting Hermitian symmetry of the result
ComplexMatrix gram(const ComplexMatrix& a);

double max_abs_entry(const ComplexMatrix& a);

// max |a - b| entrywise; shapes must match
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(std::span<const cxd> x);

}  // namespace irsqr
