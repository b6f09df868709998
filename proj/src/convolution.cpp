#include <algorithm>
#include <cmath>
#include <string>

#include "owcsa/errors.hpp"
#include "owcsa/sinr.hpp"

namespace owcsa {

namespace {

// log-width of one Gauss-Legendre panel in the convolution integrals
constexpr double kLogPanel = 0.05;
constexpr double kMassTol = 1e-3;

template <class F>
double integrate_log(F&& f, double lo, double hi)
{
    if (!(hi > lo))
        return 0.0;
    const int panels = std::max(2, static_cast<int>(std::ceil(std::log(hi / lo) / kLogPanel)));
    return integrate_log_panels(f, lo, hi, panels);
}

} // namespace

TabulatedDistribution tabulate_snr(const SystemModel& model, const QuadratureSpec& spec)
{
    auto grid = log_grid(model.snr_min(), model.snr_max(), static_cast<std::size_t>(spec.grid_points));
    std::vector<double> pdf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        pdf[i] = snr_pdf(model, grid[i]);
    return TabulatedDistribution::from_pdf(std::move(grid), std::move(pdf));
}

TabulatedDistribution convolve_with_snr(const SystemModel& model, const TabulatedDistribution& k_fold,
                                        int k, const QuadratureSpec& spec)
{
    const double a = model.snr_min(), b = model.snr_max();
    const auto f1 = [&](double g) { return snr_pdf(model, g); };
    // the one-term operand is evaluated analytically, not from its tabulation
    const auto fk = [&](double y) { return k == 1 ? snr_pdf(model, y) : k_fold.pdf(y); };

    auto grid = log_grid((k + 1) * a, (k + 1) * b, static_cast<std::size_t>(spec.grid_points));
    std::vector<double> pdf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid[i];
        // y: the k-fold term, g = z - y: the new term. Bounds are taken in each
        // variable directly, z - (z - a) loses a when a << z.
        const double y_lo = std::max(k * a, z - b), y_hi = std::min(k * b, z - a);
        const double g_lo = std::max(a, z - k * b);
        if (!(y_hi > y_lo))
            continue;
        const double y_mid = 0.5 * (y_lo + y_hi);
        // left half in log(y), right half in log(g): each resolves the
        // power-law head of the factor that peaks at its end
        const double left = integrate_log([&](double y) { return fk(y) * f1(z - y); }, y_lo, y_mid);
        const double right = integrate_log([&](double g) { return fk(z - g) * f1(g); }, g_lo, z - y_mid);
        pdf[i] = left + right;
    }
    auto d = TabulatedDistribution::from_pdf(std::move(grid), std::move(pdf));
    const double defect = std::abs(1.0 - d.mass());
    if (defect > kMassTol)
        throw NumericalError("grid convolution: mass defect " + std::to_string(defect)
                                 + " too large; increase grid_points",
                             defect);
    d.normalize();
    return d;
}

TabulatedDistribution interference_pdf_convolution(const SystemModel& model, int n_interferers,
                                                   const QuadratureSpec& spec)
{
    if (n_interferers < 1)
        throw DomainError("interference density needs at least one interferer");
    spec.validate();
    if (!model.fov_covers_cell())
        throw DomainError("closed-form SNR statistics need the whole cell inside the receiver FOV");
    TabulatedDistribution d = tabulate_snr(model, spec);
    for (int k = 1; k < n_interferers; ++k)
        d = convolve_with_snr(model, d, k, spec);
    return d;
}

} // namespace owcsa
