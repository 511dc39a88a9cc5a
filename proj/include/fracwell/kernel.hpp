#pragma once

// The fractional Laplacian with zero exterior condition applied to the
// trigonometric basis of [-1, 1]:
//
//   f_k(x) = |Delta|^{mu/2} cos(lambda_k x),  lambda_k = pi (2k + 1) / 2,  k >= 0
//   g_k(x) = |Delta|^{mu/2} sin(b_k x),       b_k = k pi,                 k >= 1
//
// For 0 < mu < 2 both reduce (after integrating the hypersingular integral by
// parts; the boundary terms cancel because the basis vanishes at the walls) to
//
//   f_k = -c { sin(L x) C(L(1-x), L(1+x)) - cos(L x) [S(L(1-x)) + S(L(1+x))] }
//   g_k = +c { cos(L x) C(L(1-x), L(1+x)) + sin(L x) [S(L(1-x)) + S(L(1+x))] }
//
// with c = A_mu L^mu / mu, S = frac_sin_integral, and C the oriented
// frac_cos_integral. mu = 0, 1, 2 use closed forms.

#include "fracwell/errors.hpp"
#include "fracwell/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fracwell {

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Parity-tagged basis label: Even k >= 0 is cos(lambda_k x), Odd k >= 1 is sin(k pi x).
class BasisIndex {
public:
    BasisIndex(Parity parity, int k) : parity_(parity), k_(k)
    {
        if (parity == Parity::Even ? k < 0 : k < 1) {
            throw DomainError(std::string("invalid ") + to_string(parity) + " basis index " + std::to_string(k));
        }
    }

    static BasisIndex even(int k) { return {Parity::Even, k}; }
    static BasisIndex odd(int k) { return {Parity::Odd, k}; }

    Parity parity() const noexcept { return parity_; }
    int k() const noexcept { return k_; }

    /// lambda_k for even, b_k for odd.
    double wavenumber() const noexcept
    {
        return parity_ == Parity::Even ? std::numbers::pi * (2 * k_ + 1) / 2.0 : std::numbers::pi * k_;
    }

private:
    Parity parity_;
    int k_;
};

/// A point of the closed interval [-1, 1] that also remembers its distances
/// to both walls exactly. Quadrature near a wall builds points from the wall
/// distance, so 1 - x is not recomputed from a rounded x.
class EvalPoint {
public:
    explicit EvalPoint(double x) : x_(x), to_right_(1.0 - x), to_left_(1.0 + x)
    {
        if (!(std::abs(x) <= 1.0)) throw DomainError("evaluation point outside [-1, 1]: " + std::to_string(x));
    }

    /// The point 1 - s (s = distance to the right wall), s in [0, 2].
    static EvalPoint from_right_wall(double s)
    {
        EvalPoint p(1.0 - s);
        p.to_right_ = s;
        return p;
    }

    /// The point -1 + t (t = distance to the left wall), t in [0, 2].
    static EvalPoint from_left_wall(double t)
    {
        EvalPoint p(-1.0 + t);
        p.to_left_ = t;
        return p;
    }

    double x() const noexcept { return x_; }
    double one_minus_x() const noexcept { return to_right_; }
    double one_plus_x() const noexcept { return to_left_; }
    bool interior() const noexcept { return to_right_ > 0.0 && to_left_ > 0.0; }

private:
    double x_;
    double to_right_;
    double to_left_;
};

namespace detail {

struct Trig {
    double sin;
    double cos;
};

/// sin and cos of w x for a basis wavenumber w. In the outer half of the
/// interval they are evaluated through the distance d to the nearer wall:
/// with w = pi m / 2 (m = 2k+1 or 2k), w x = +-(w - w d), so the basis
/// zeros at the walls come out exact.
inline Trig basis_phase(const BasisIndex& b, const EvalPoint& p)
{
    const double w = b.wavenumber();
    if (std::abs(p.x()) <= 0.5) return {std::sin(w * p.x()), std::cos(w * p.x())};
    const bool right = p.x() >= 0.0;
    const double d = right ? p.one_minus_x() : p.one_plus_x();
    const double sd = std::sin(w * d);
    const double cd = std::cos(w * d);
    // sin(w) and cos(w) are exactly 0 or +-1.
    const int k = b.k();
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double sw, cw;
    if (b.parity() == Parity::Even) {
        sw = sign;  // sin(pi (2k+1)/2) = (-1)^k
        cw = 0.0;
    } else {
        sw = 0.0;
        cw = sign;  // cos(k pi) = (-1)^k
    }
    // right: w x = w - w d;  left: w x = -(w - w d)
    const double s = sw * cd - cw * sd;
    const double c = cw * cd + sw * sd;
    return right ? Trig{s, c} : Trig{-s, c};
}

inline void require_interior(const EvalPoint& p)
{
    if (!p.interior()) {
        throw DomainError("kernel diverges at the walls; |x| < 1 required, got x = " + std::to_string(p.x()));
    }
}

/// Oriented int_{L(1-x)}^{L(1+x)} u^-mu cos u du.
inline double oriented_cos_integral(LevyIndex mu, double lower, double upper)
{
    if (lower <= upper) return frac_cos_integral(mu, lower, upper);
    return -frac_cos_integral(mu, upper, lower);
}

} // namespace detail

/// Basis function value: cos(lambda_k x) or sin(k pi x). Unit L2 norm on [-1, 1].
inline double basis_eval(const BasisIndex& b, const EvalPoint& p)
{
    const auto t = detail::basis_phase(b, p);
    return b.parity() == Parity::Even ? t.cos : t.sin;
}

inline double basis_eval(const BasisIndex& b, double x) { return basis_eval(b, EvalPoint(x)); }

/// Derivative of the basis function at x.
inline double basis_derivative(const BasisIndex& b, double x)
{
    const auto t = detail::basis_phase(b, EvalPoint(x));
    const double w = b.wavenumber();
    return b.parity() == Parity::Even ? -w * t.sin : w * t.cos;
}

/// The operator applied to one basis function, evaluated at an interior point.
inline double apply_to_basis(const BasisIndex& b, LevyIndex mu, const EvalPoint& p)
{
    detail::require_interior(p);
    const auto t = detail::basis_phase(b, p);
    const double w = b.wavenumber();
    const bool even = b.parity() == Parity::Even;
    const double m = mu.value();

    if (mu.is_zero_limit()) return even ? t.cos : t.sin;
    if (mu.is_laplacian()) return w * w * (even ? t.cos : t.sin);

    const double lower = w * p.one_minus_x();
    const double upper = w * p.one_plus_x();

    if (mu.is_cauchy()) {
        const auto lo = sici(lower);
        const auto hi = sici(upper);
        const double scale = w / std::numbers::pi;
        const double ci_diff = lo.ci - hi.ci;
        const double si_sum = lo.si + hi.si;
        if (even) return scale * (t.sin * ci_diff + t.cos * si_sum);
        return scale * (t.sin * si_sum - t.cos * ci_diff);
    }

    // A_mu / mu = Gamma(mu) sin(pi mu / 2) / pi
    const double scale = std::tgamma(m) * detail::sin_half_pi(m) / std::numbers::pi * std::pow(w, m);
    const double c_term = detail::oriented_cos_integral(mu, lower, upper);
    const double s_sum = frac_sin_integral(mu, lower) + frac_sin_integral(mu, upper);
    if (even) return -scale * (t.sin * c_term - t.cos * s_sum);
    return scale * (t.cos * c_term + t.sin * s_sum);
}

/// f_k(x) for an even basis label.
inline double f_even(const BasisIndex& k, LevyIndex mu, const EvalPoint& p)
{
    if (k.parity() != Parity::Even) throw DomainError("f_even requires an even basis index");
    return apply_to_basis(k, mu, p);
}

/// g_k(x) for an odd basis label.
inline double g_odd(const BasisIndex& k, LevyIndex mu, const EvalPoint& p)
{
    if (k.parity() != Parity::Odd) throw DomainError("g_odd requires an odd basis index");
    return apply_to_basis(k, mu, p);
}

} // namespace fracwell
