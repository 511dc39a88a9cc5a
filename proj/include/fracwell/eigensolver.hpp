#pragma once

// Dense symmetric eigensolver: Householder reduction to tridiagonal form,
// then implicit-shift QL. The lowest-m variant skips forming Q and recovers
// eigenvectors by inverse iteration on the tridiagonal matrix.

#include "fracwell/errors.hpp"
#include "fracwell/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace fracwell {

/// Eigenpairs in ascending order. Vector j is paired with eigenvalue j; in
/// each vector the entry of largest magnitude (lowest index on ties) is positive.
struct EigenDecomposition {
    std::size_t order = 0;
    std::vector<double> eigenvalues;
    std::vector<double> vector_data;  // count() vectors of length `order`, contiguous

    std::size_t count() const { return eigenvalues.size(); }

    std::span<const double> vector(std::size_t j) const { return {vector_data.data() + j * order, order}; }
    std::span<double> vector(std::size_t j) { return {vector_data.data() + j * order, order}; }
};

namespace detail {

/// Householder tridiagonalization in place. Reflector j acts on indices
/// j+1..n-1 with H = I - tau v v^T, v[0] = 1.
struct Tridiagonal {
    std::vector<double> diagonal;
    std::vector<double> offdiagonal;  // offdiagonal[i] couples i and i+1; last entry 0
    std::vector<std::vector<double>> reflectors;
    std::vector<double> taus;
};

inline Tridiagonal tridiagonalize(DenseMatrix a)
{
    const std::size_t n = a.order();
    Tridiagonal t;
    t.diagonal.assign(n, 0.0);
    t.offdiagonal.assign(n, 0.0);
    if (n == 0) return t;

    std::vector<double> p(n), w(n);
    for (std::size_t j = 0; j + 2 < n; ++j) {
        const std::size_t m = n - j - 1;
        std::vector<double> v(a.row(j).begin() + static_cast<std::ptrdiff_t>(j + 1), a.row(j).end());
        const double alpha = v[0];
        double sigma = 0.0;
        for (std::size_t i = 1; i < m; ++i) sigma += v[i] * v[i];

        double tau = 0.0;
        double beta = alpha;
        if (sigma > 0.0) {
            const double norm = std::sqrt(alpha * alpha + sigma);
            beta = alpha <= 0.0 ? norm : -norm;
            tau = (beta - alpha) / beta;
            const double scale = 1.0 / (alpha - beta);
            for (std::size_t i = 1; i < m; ++i) v[i] *= scale;
        }
        v[0] = 1.0;
        t.offdiagonal[j] = beta;

        if (tau != 0.0) {
            // p = tau A22 v; w = p - (tau/2)(p.v) v; A22 -= v w^T + w v^T
            for (std::size_t r = 0; r < m; ++r) {
                const auto row = a.row(j + 1 + r);
                double sum = 0.0;
                for (std::size_t c = 0; c < m; ++c) sum += row[j + 1 + c] * v[c];
                p[r] = tau * sum;
            }
            double pv = 0.0;
            for (std::size_t r = 0; r < m; ++r) pv += p[r] * v[r];
            const double k = 0.5 * tau * pv;
            for (std::size_t r = 0; r < m; ++r) w[r] = p[r] - k * v[r];
            for (std::size_t r = 0; r < m; ++r) {
                auto row = a.row(j + 1 + r);
                const double vr = v[r];
                const double wr = w[r];
                for (std::size_t c = 0; c < m; ++c) row[j + 1 + c] -= vr * w[c] + wr * v[c];
            }
        }
        t.reflectors.push_back(std::move(v));
        t.taus.push_back(tau);
    }
    for (std::size_t i = 0; i < n; ++i) t.diagonal[i] = a(i, i);
    if (n >= 2) t.offdiagonal[n - 2] = a(n - 1, n - 2);
    t.offdiagonal[n - 1] = 0.0;
    return t;
}

/// Applies Q = H_0 H_1 ... H_{n-3} to a vector.
inline void apply_q(const Tridiagonal& t, std::span<double> y)
{
    for (std::size_t jj = t.reflectors.size(); jj-- > 0;) {
        const auto& v = t.reflectors[jj];
        const double tau = t.taus[jj];
        if (tau == 0.0) continue;
        double dotv = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dotv += v[i] * y[jj + 1 + i];
        const double f = tau * dotv;
        for (std::size_t i = 0; i < v.size(); ++i) y[jj + 1 + i] -= f * v[i];
    }
}

/// Rows of the returned matrix are the columns of Q.
inline DenseMatrix q_transposed(const Tridiagonal& t, std::size_t n)
{
    DenseMatrix q = DenseMatrix::identity(n);
    std::vector<double> u(n);
    // Backward accumulation: Q = H_0 (H_1 (... H_{n-3})) on the trailing block.
    for (std::size_t jj = t.reflectors.size(); jj-- > 0;) {
        const auto& v = t.reflectors[jj];
        const double tau = t.taus[jj];
        if (tau == 0.0) continue;
        const std::size_t off = jj + 1;
        std::fill(u.begin(), u.end(), 0.0);
        for (std::size_t r = 0; r < v.size(); ++r) {
            const auto row = q.row(off + r);
            for (std::size_t c = off; c < n; ++c) u[c] += v[r] * row[c];
        }
        for (std::size_t r = 0; r < v.size(); ++r) {
            auto row = q.row(off + r);
            const double f = tau * v[r];
            for (std::size_t c = off; c < n; ++c) row[c] -= f * u[c];
        }
    }
    DenseMatrix qt(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) qt(j, i) = q(i, j);
    }
    return qt;
}

/// Implicit QL on (d, e). If `vectors` is non-null its rows are rotated
/// alongside (row i tracks eigenvalue i).
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, DenseMatrix* vectors)
{
    const std::size_t n = d.size();
    const std::size_t max_iterations = 50 * std::max<std::size_t>(n, 1);
    std::size_t iterations = 0;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iterations > max_iterations) {
                throw NumericalError("tridiagonal QL did not converge in " + std::to_string(max_iterations) +
                                     " iterations");
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (vectors != nullptr) {
                    auto lower = vectors->row(i);
                    auto upper = vectors->row(i + 1);
                    for (std::size_t k = 0; k < lower.size(); ++k) {
                        const double fk = upper[k];
                        upper[k] = s * lower[k] + c * fk;
                        lower[k] = c * lower[k] - s * fk;
                    }
                }
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

inline void apply_sign_convention(std::span<double> v)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    if (!v.empty() && v[best] < 0.0) {
        for (double& x : v) x = -x;
    }
}

/// Symmetrized copy; rejects input farther than 1e-8 (relative) from symmetric.
inline DenseMatrix symmetrized(const DenseMatrix& a)
{
    const double scale = std::max(1.0, a.max_abs());
    if (a.max_asymmetry() > 1e-8 * scale) {
        throw DomainError("eigh requires a symmetric matrix (asymmetry " + std::to_string(a.max_asymmetry()) + ")");
    }
    DenseMatrix s = a;
    const std::size_t n = a.order();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (a(i, j) + a(j, i));
            s(i, j) = avg;
            s(j, i) = avg;
        }
    }
    return s;
}

inline std::vector<std::size_t> ascending_order(const std::vector<double>& values)
{
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    return idx;
}

/// Solves (T - shift I) x = rhs by Gaussian elimination with partial pivoting
/// on the tridiagonal matrix; tiny pivots are replaced by `floor`.
inline void tridiagonal_shifted_solve(const std::vector<double>& d, const std::vector<double>& e, double shift,
                                      double floor, std::vector<double>& x)
{
    const std::size_t n = d.size();
    // Band storage after pivoting: up to two superdiagonals.
    std::vector<double> diag(n), sup1(n, 0.0), sup2(n, 0.0), sub(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = d[i] - shift;
        if (i + 1 < n) {
            sup1[i] = e[i];
            sub[i] = e[i];
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(diag[i])) {
            std::swap(x[i], x[i + 1]);
            const double a0 = diag[i], a1 = sup1[i], a2 = sup2[i];
            diag[i] = sub[i];
            sup1[i] = diag[i + 1];
            sup2[i] = sup1[i + 1];
            diag[i + 1] = a1;
            sup1[i + 1] = a2;
            sub[i] = a0;
        }
        if (std::abs(diag[i]) < floor) diag[i] = std::copysign(floor, diag[i] == 0.0 ? 1.0 : diag[i]);
        const double f = sub[i] / diag[i];
        diag[i + 1] -= f * sup1[i];
        if (i + 2 < n) sup1[i + 1] -= f * sup2[i];
        x[i + 1] -= f * x[i];
    }
    if (std::abs(diag[n - 1]) < floor) diag[n - 1] = std::copysign(floor, diag[n - 1] == 0.0 ? 1.0 : diag[n - 1]);
    for (std::size_t i = n; i-- > 0;) {
        double v = x[i];
        if (i + 1 < n) v -= sup1[i] * x[i + 1];
        if (i + 2 < n) v -= sup2[i] * x[i + 2];
        x[i] = v / diag[i];
    }
}

inline void normalize(std::vector<double>& v)
{
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
}

} // namespace detail

/// Full eigendecomposition of a symmetric matrix.
inline EigenDecomposition eigh(const DenseMatrix& input)
{
    const DenseMatrix a = detail::symmetrized(input);
    const std::size_t n = a.order();
    auto t = detail::tridiagonalize(a);
    DenseMatrix z = detail::q_transposed(t, n);
    detail::tridiagonal_ql(t.diagonal, t.offdiagonal, &z);

    const auto idx = detail::ascending_order(t.diagonal);
    EigenDecomposition out;
    out.order = n;
    out.eigenvalues.resize(n);
    out.vector_data.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = t.diagonal[idx[j]];
        const auto src = z.row(idx[j]);
        auto dst = out.vector(j);
        std::copy(src.begin(), src.end(), dst.begin());
        detail::apply_sign_convention(dst);
    }
    return out;
}

/// The m lowest eigenpairs. Eigenvalues come from the same tridiagonal QL as
/// eigh; eigenvectors from inverse iteration, back-transformed by Q.
inline EigenDecomposition eigh_lowest(const DenseMatrix& input, std::size_t m)
{
    const std::size_t n = input.order();
    if (m < 1 || m > n) throw DomainError("eigh_lowest requires 1 <= m <= n");
    const DenseMatrix a = detail::symmetrized(input);
    const auto t = detail::tridiagonalize(a);
    std::vector<double> d = t.diagonal;
    std::vector<double> e = t.offdiagonal;
    detail::tridiagonal_ql(d, e, nullptr);
    std::sort(d.begin(), d.end());

    double tnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tnorm = std::max(tnorm, std::abs(t.diagonal[i]) + std::abs(t.offdiagonal[i]) +
                                    (i > 0 ? std::abs(t.offdiagonal[i - 1]) : 0.0));
    }
    const double floor = std::numeric_limits<double>::epsilon() * std::max(tnorm, 1e-300);
    const double cluster = 1e-3 * std::max(tnorm, 1e-300);

    EigenDecomposition out;
    out.order = n;
    out.eigenvalues.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m));
    out.vector_data.resize(n * m);

    std::vector<std::vector<double>> tri_vectors;
    for (std::size_t j = 0; j < m; ++j) {
        const double lambda = d[j];
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.001 * static_cast<double>((i * 7919 + j * 104729) % 1000);
        detail::normalize(x);
        for (int iter = 0; iter < 4; ++iter) {
            detail::tridiagonal_shifted_solve(t.diagonal, t.offdiagonal, lambda, floor, x);
            // Orthogonalize against earlier vectors of the same cluster.
            for (std::size_t p = 0; p < j; ++p) {
                if (std::abs(d[p] - lambda) > cluster) continue;
                double proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += tri_vectors[p][i] * x[i];
                for (std::size_t i = 0; i < n; ++i) x[i] -= proj * tri_vectors[p][i];
            }
            detail::normalize(x);
        }
        tri_vectors.push_back(x);
        detail::apply_q(t, x);
        auto dst = out.vector(j);
        std::copy(x.begin(), x.end(), dst.begin());
        detail::apply_sign_convention(dst);
    }
    return out;
}

} // namespace fracwell
