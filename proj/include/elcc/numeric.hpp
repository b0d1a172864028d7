#pragma once

#include <cstddef>
#include <vector>

namespace elcc {

/// Small dense real matrix, row major. Only what the spectral checks need.
class DenseMatrix {
 public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<double> apply(const std::vector<double>& x) const;

    /// Numerical rank via row elimination with partial pivoting;
    /// pivots below `tolerance` (relative to the largest entry) count as zero.
    std::size_t rank(double tolerance = 1e-9) const;

 private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Eigen decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues ascending; eigenvectors[i] matches eigenvalues[i].
struct SymmetricEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};
SymmetricEigen jacobi_eigen(const DenseMatrix& symmetric, double tolerance = 1e-12);

}  // namespace elcc
