#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fracwell {

/// Dense square matrix, row-major.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t order() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    std::span<const double> data() const noexcept { return data_; }

    /// Leading m x m principal submatrix.
    DenseMatrix leading_block(std::size_t m) const
    {
        DenseMatrix out(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * n_), m,
                        out.data_.begin() + static_cast<std::ptrdiff_t>(i * m));
        }
        return out;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    double max_asymmetry() const
    {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
        }
        return m;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

} // namespace fracwell
