#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "irsqr/matrix.hpp"

namespace irsqr {

/// Gaussian tail function Q(x) = P(N(0,1) > x).
double q_function(double x);

struct EigenPair {
    std::vector<cxd> vector;  // unit norm, largest-magnitude entry real-positive
    double value = 0.0;
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dominant eigenpair of a Hermitian PSD matrix by power iteration.
/// Guarantees ||A v - lambda v||_2 <= 1e-8 * lambda on return; throws
/// ConvergenceError after 1e4 iterations, std::invalid_argument when the
/// input is not Hermitian within 1e-10 (relative to the largest entry).
EigenPair principal_eigenvector(const ComplexMatrix& a);

/// Householder QR factorization of a tall matrix V (rows >= cols, full
/// column rank), kept in factored form so the zero-forcing equalizer
/// U = (V^H V)^-1 V^H can be applied without ever forming an inverse.
class LeastSquaresFactor {
public:
    explicit LeastSquaresFactor(const ComplexMatrix& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    /// x = U y, i.e. the least-squares solution of V x ~= y.
    std::vector<cxd> solve(std::span<const cxd> y) const;

    /// Materializes U (cols x rows).
    ComplexMatrix pseudo_inverse() const;

    /// diag(U U^H): per-row squared norms of R^-1.
    std::vector<double> equalizer_row_power() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cxd> a_;       // column-major; reflectors below diagonal, R above
    std::vector<cxd> rdiag_;   // diagonal of R
    std::vector<double> beta_; // reflector scales
    std::vector<cxd> r_rows_;  // row-major copy of R for back substitution
};

/// U with U V = I (max-norm residual <= 1e-9 for well-conditioned V).
/// Throws SingularMatrixError when V is (numerically) rank deficient.
ComplexMatrix left_pseudo_inverse(const ComplexMatrix& v);

/// Exact M-PSK symbol error probability at the given post-equalization SNR,
/// via the single-integral form
///   SEP = (1/pi) * Int_0^{pi(M-1)/M} exp(-snr sin^2(pi/M) / sin^2 phi) dphi
/// evaluated by adaptive quadrature (absolute error <= 1e-10).
double mpsk_sep_exact(double snr, int order);

}  // namespace irsqr
