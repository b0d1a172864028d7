#include "elcc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elcc {

std::vector<double> DenseMatrix::apply(const std::vector<double>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("DenseMatrix::apply: size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        const double* row = &data_[r * cols_];
        for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
    return y;
}

std::size_t DenseMatrix::rank(double tolerance) const {
    std::vector<double> work = data_;
    double max_entry = 0.0;
    for (double v : work) max_entry = std::max(max_entry, std::fabs(v));
    if (max_entry == 0.0) return 0;
    const double threshold = tolerance * max_entry;

    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < rows_; ++r)
            if (std::fabs(work[r * cols_ + col]) > std::fabs(work[best * cols_ + col])) best = r;
        if (std::fabs(work[best * cols_ + col]) <= threshold) continue;
        if (best != row)
            for (std::size_t c = 0; c < cols_; ++c) std::swap(work[row * cols_ + c], work[best * cols_ + c]);
        const double pivot = work[row * cols_ + col];
        for (std::size_t r = row + 1; r < rows_; ++r) {
            const double factor = work[r * cols_ + col] / pivot;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < cols_; ++c) work[r * cols_ + c] -= factor * work[row * cols_ + c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

SymmetricEigen jacobi_eigen(const DenseMatrix& symmetric, double tolerance) {
    const std::size_t n = symmetric.rows();
    if (symmetric.cols() != n) throw std::invalid_argument("jacobi_eigen: matrix must be square");
    std::vector<double> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = symmetric.at(r, c);
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto off_diag = [&]() {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) s += a[r * n + c] * a[r * n + c];
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 200 && off_diag() > tolerance; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-300) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = a[order[i] * n + order[i]];
        for (std::size_t k = 0; k < n; ++k) out.vectors[i][k] = v[k * n + order[i]];
    }
    return out;
}

}  // namespace elcc
