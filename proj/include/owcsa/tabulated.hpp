#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace owcsa {

/// Geometrically spaced abscissae lo = x_0 < ... < x_{n-1} = hi.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Trapezoidal integral of `values` over `grid`.
double trapezoid(std::span<const double> grid, std::span<const double> values);

/// Numeric density/distribution of a scalar RV on a bounded, ordered grid.
/// Queries outside [support_lo, support_hi] see pdf 0 and cdf 0 or 1.
struct TabulatedDistribution {
    double support_lo = 0.0;
    double support_hi = 0.0;
    std::vector<double> grid;
    std::vector<double> pdf_values;
    std::vector<double> cdf_values;

    /// Builds cdf_values by cumulative trapezoid of `pdf`.
    static TabulatedDistribution from_pdf(std::vector<double> grid, std::vector<double> pdf);

    double pdf(double x) const;
    double cdf(double x) const;
    double mass() const { return cdf_values.empty() ? 0.0 : cdf_values.back(); }
    double peak() const;
    double mean() const;

    /// Divide pdf and cdf by the current mass.
    void normalize();

    /// Throws NumericalError naming the first violated invariant.
    void check_invariants(double mass_tol = 1e-3) const;

private:
    double interpolate(const std::vector<double>& values, double x) const;
    bool log_uniform_ = false;
    double log_lo_ = 0.0, log_step_ = 0.0;
    void detect_spacing();
};

/// sup_x |F_a(x) - F_b(x)| over the union of both grids.
double cdf_sup_distance(const TabulatedDistribution& a, const TabulatedDistribution& b);

} // namespace owcsa
