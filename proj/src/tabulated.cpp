#include "owcsa/tabulated.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "owcsa/errors.hpp"

namespace owcsa {

std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
    if (!(lo > 0.0 && hi > lo) || n < 2)
        throw DomainError("log_grid needs 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::exp(step * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

double trapezoid(std::span<const double> grid, std::span<const double> values)
{
    double s = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        s += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    return s;
}

TabulatedDistribution TabulatedDistribution::from_pdf(std::vector<double> grid, std::vector<double> pdf)
{
    if (grid.size() < 2 || grid.size() != pdf.size())
        throw DomainError("tabulation needs matching grid and pdf of size >= 2");
    TabulatedDistribution d;
    d.support_lo = grid.front();
    d.support_hi = grid.back();
    d.cdf_values.assign(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i)
        d.cdf_values[i] = d.cdf_values[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * (grid[i] - grid[i - 1]);
    d.grid = std::move(grid);
    d.pdf_values = std::move(pdf);
    d.detect_spacing();
    return d;
}

void TabulatedDistribution::detect_spacing()
{
    log_uniform_ = false;
    const std::size_t n = grid.size();
    if (n < 3 || !(grid.front() > 0.0))
        return;
    const double step = std::log(grid.back() / grid.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; i += std::max<std::size_t>(1, n / 16)) {
        const double expect = grid.front() * std::exp(step * static_cast<double>(i));
        if (std::abs(grid[i] - expect) > 1e-9 * expect)
            return;
    }
    log_uniform_ = true;
    log_lo_ = std::log(grid.front());
    log_step_ = step;
}

double TabulatedDistribution::interpolate(const std::vector<double>& values, double x) const
{
    const std::size_t n = grid.size();
    std::size_t i;
    if (log_uniform_) {
        const double pos = (std::log(x) - log_lo_) / log_step_;
        i = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(n - 2)));
        // guard against rounding at cell edges
        if (i + 1 < n - 1 && x >= grid[i + 1])
            ++i;
        else if (i > 0 && x < grid[i])
            --i;
    } else {
        auto it = std::upper_bound(grid.begin(), grid.end(), x);
        i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - grid.begin() - 1, 0,
                                                                 static_cast<std::ptrdiff_t>(n - 2)));
    }
    const double w = (x - grid[i]) / (grid[i + 1] - grid[i]);
    return values[i] + w * (values[i + 1] - values[i]);
}

double TabulatedDistribution::pdf(double x) const
{
    if (grid.empty() || x < support_lo || x > support_hi)
        return 0.0;
    return interpolate(pdf_values, x);
}

double TabulatedDistribution::cdf(double x) const
{
    if (grid.empty() || x < support_lo)
        return 0.0;
    if (x > support_hi)
        return 1.0;
    if (x == support_hi)
        return mass();
    return interpolate(cdf_values, x);
}

double TabulatedDistribution::peak() const
{
    return pdf_values.empty() ? 0.0 : *std::max_element(pdf_values.begin(), pdf_values.end());
}

double TabulatedDistribution::mean() const
{
    std::vector<double> xf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        xf[i] = grid[i] * pdf_values[i];
    return trapezoid(grid, xf) / mass();
}

void TabulatedDistribution::normalize()
{
    const double m = mass();
    if (!(m > 0.0))
        throw NumericalError("cannot normalize a distribution with zero mass", m);
    for (double& v : pdf_values)
        v /= m;
    for (double& v : cdf_values)
        v /= m;
    cdf_values.back() = 1.0;
}

void TabulatedDistribution::check_invariants(double mass_tol) const
{
    const auto fail = [](const std::string& what, double est) { throw NumericalError("tabulated distribution: " + what, est); };
    if (grid.size() < 2 || pdf_values.size() != grid.size() || cdf_values.size() != grid.size())
        fail("size mismatch", 0.0);
    if (grid.front() != support_lo || grid.back() != support_hi)
        fail("grid does not cover the support", 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(pdf_values[i] >= 0.0) || !std::isfinite(pdf_values[i]))
            fail("negative or non-finite density at index " + std::to_string(i), pdf_values[i]);
        if (i > 0 && !(grid[i] > grid[i - 1]))
            fail("grid not strictly increasing at index " + std::to_string(i), 0.0);
        if (i > 0 && cdf_values[i] < cdf_values[i - 1])
            fail("cdf decreasing at index " + std::to_string(i), cdf_values[i - 1] - cdf_values[i]);
    }
    if (cdf_values.front() < 0.0)
        fail("cdf starts below 0", cdf_values.front());
    if (std::abs(cdf_values.back() - 1.0) > mass_tol)
        fail("total mass outside 1 +/- tolerance", cdf_values.back() - 1.0);
    const double t = trapezoid(grid, pdf_values);
    if (std::abs(t - cdf_values.back()) > 1e-6)
        fail("trapezoid of pdf disagrees with final cdf", t - cdf_values.back());
}

double cdf_sup_distance(const TabulatedDistribution& a, const TabulatedDistribution& b)
{
    double d = 0.0;
    for (double x : a.grid)
        d = std::max(d, std::abs(a.cdf(x) - b.cdf(x)));
    for (double x : b.grid)
        d = std::max(d, std::abs(a.cdf(x) - b.cdf(x)));
    return d;
}

} // namespace owcsa
