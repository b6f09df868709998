#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace owcsa {

using Complex = std::complex<double>;

/// Gauss-Legendre rule on [-1, 1]. Rules for 1..64 nodes are built once and shared.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    static const GaussLegendre& get(int n);

    template <class F>
    double integrate(F&& f, double a, double b) const
    {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            s += weights[i] * f(c + h * nodes[i]);
        return s * h;
    }

private:
    explicit GaussLegendre(int n);
};

/// Composite Gauss-Legendre over [a, b] with panels uniform in log(x); a > 0.
template <class F>
double integrate_log_panels(F&& f, double a, double b, int panels, int order = 8)
{
    if (!(b > a))
        return 0.0;
    const auto& gl = GaussLegendre::get(order);
    const double la = std::log(a), lb = std::log(b);
    const double step = (lb - la) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double u0 = la + step * p, u1 = p + 1 == panels ? lb : u0 + step;
        s += gl.integrate([&](double u) { const double x = std::exp(u); return f(x) * x; }, u0, u1);
    }
    return s;
}

/// Piecewise polynomial (degree <= 7 per panel) on contiguous breakpoints,
/// with exact Fourier integrals of each panel (Filon-type quadrature when
/// the polynomial interpolates a smooth density).
class PolynomialPanels {
public:
    static constexpr int kDegree = 7;
    using Coeffs = std::array<double, kDegree + 1>;

    PolynomialPanels() = default;

    /// Degree-7 interpolation of `f` at Chebyshev points of every panel.
    static PolynomialPanels interpolate(const std::function<double(double)>& f,
                                        std::vector<double> breakpoints);

    /// Appends a panel [breakpoints.back(), x1] given local monomial coefficients
    /// in u = (x - c) / h, c the panel centre and h its half-width.
    void add_panel(double x1, const Coeffs& local);
    void set_start(double x0);

    double operator()(double x) const;
    /// Sum over panels of \int p(x) dx.
    double integral() const;
    /// \int p(x) exp(j t (x - origin)) dx, exact up to rounding.
    Complex fourier(double t, double origin) const;

    /// \int |f - p| estimated by 16-point Gauss-Legendre per panel.
    double l1_error(const std::function<double(double)>& f) const;

    std::span<const double> breakpoints() const { return x_; }
    std::size_t panels() const { return coeffs_.size(); }

private:
    std::vector<double> x_;
    std::vector<Coeffs> coeffs_;
};

/// Local cubic on [x0, x1] with prescribed values/derivatives at both ends,
/// returned as monomial coefficients in u = (x - c) / h.
PolynomialPanels::Coeffs hermite_cubic(double x0, double x1, double v0, double d0, double v1, double d1);

/// Moments \int_{-1}^{1} u^k e^{j theta u} du for k = 0..7.
std::array<Complex, PolynomialPanels::kDegree + 1> oscillatory_moments(double theta);

} // namespace owcsa
