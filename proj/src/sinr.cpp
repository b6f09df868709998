#include <algorithm>
#include <cmath>
#include <string>

#include "owcsa/errors.hpp"
#include "owcsa/sinr.hpp"

namespace owcsa {

InterferenceModel::InterferenceModel(const SystemModel& model, const QuadratureSpec& spec)
    : model_(model), spec_(spec)
{
    spec_.validate();
    if (!model_.fov_covers_cell())
        throw DomainError("closed-form SNR statistics need the whole cell inside the receiver FOV");
}

std::shared_ptr<const TabulatedDistribution> InterferenceModel::by_convolution(int n)
{
    if (series_.empty())
        series_.push_back(tabulate_snr(model_, spec_));
    while (static_cast<int>(series_.size()) < n)
        series_.push_back(convolve_with_snr(model_, series_.back(), static_cast<int>(series_.size()), spec_));
    used_[n] = InterferencePath::convolution;
    return std::make_shared<const TabulatedDistribution>(series_[static_cast<std::size_t>(n) - 1]);
}

std::shared_ptr<const TabulatedDistribution> InterferenceModel::density(int n)
{
    if (n < 1)
        throw DomainError("interference density needs at least one interferer");
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(n); it != memo_.end())
        return it->second;

    std::shared_ptr<const TabulatedDistribution> d;
    const auto path = spec_.interference_path;
    if (path == InterferencePath::convolution) {
        d = by_convolution(n);
    } else {
        try {
            if (!cf_ && !cf_failed_) {
                try {
                    cf_.emplace(model_, spec_);
                } catch (const NumericalError&) {
                    cf_failed_ = true;
                    throw;
                }
            }
            if (cf_failed_)
                throw NumericalError("characteristic function unavailable for this model", 0.0);
            QuadratureSpec budget = spec_;
            if (path == InterferencePath::automatic)
                budget.inversion_nodes = std::min(budget.inversion_nodes, kAutomaticInversionNodes);
            d = std::make_shared<const TabulatedDistribution>(invert_interference(model_, n, budget, *cf_).density);
            used_[n] = InterferencePath::inversion;
        } catch (const NumericalError&) {
            if (path == InterferencePath::inversion)
                throw;
            d = by_convolution(n);
        }
    }
    memo_.emplace(n, d);
    return d;
}

std::optional<InterferencePath> InterferenceModel::path_used(int n) const
{
    std::lock_guard lock(mu_);
    if (auto it = used_.find(n); it != used_.end())
        return it->second;
    return std::nullopt;
}

double sinr_floor(const SystemModel& model, int n_active)
{
    return model.snr_min() / (1.0 + (n_active - 1) * model.snr_max());
}

double sinr_ceiling(const SystemModel& model, int n_active)
{
    return model.snr_max() / (1.0 + (n_active - 1) * model.snr_min());
}

namespace {

// Outer integral over the interference g = lambda - 1 on [lo, hi], composite
// Gauss-Legendre in log(g). Working in g rather than lambda keeps the
// power-law head of the interference density resolved when g << 1.
template <class F>
double integrate_interference(F&& f, double lo, double hi, int nodes)
{
    if (!(hi > lo))
        return 0.0;
    const int panels = std::max(1, nodes / 8);
    return integrate_log_panels(f, lo, hi, panels, 8);
}

} // namespace

TabulatedDistribution conditional_sinr_pdf(InterferenceModel& interference, int n_active)
{
    if (n_active < 1)
        throw DomainError("n_active must be >= 1");
    const SystemModel& model = interference.model();
    const QuadratureSpec& spec = interference.spec();
    if (n_active == 1)
        return tabulate_snr(model, spec);

    const auto fi = interference.density(n_active - 1);
    const double a = model.snr_min(), b = model.snr_max();

    auto grid = log_grid(sinr_floor(model, n_active), sinr_ceiling(model, n_active),
                         static_cast<std::size_t>(spec.grid_points));
    std::vector<double> pdf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        // f(x) = \int lambda f_ref(x lambda) f_I(lambda - 1) dlambda with lambda = 1 + g
        const double lo = std::max(fi->support_lo, a / x - 1.0), hi = std::min(fi->support_hi, b / x - 1.0);
        pdf[i] = integrate_interference(
            [&](double g) { return (1.0 + g) * snr_pdf(model, x * (1.0 + g)) * fi->pdf(g); }, lo, hi,
            spec.lambda_nodes);
    }
    auto d = TabulatedDistribution::from_pdf(std::move(grid), std::move(pdf));
    d.check_invariants();
    d.normalize();
    return d;
}

TabulatedDistribution conditional_sinr_pdf(const SystemModel& model, int n_active, const QuadratureSpec& spec)
{
    InterferenceModel im(model, spec);
    return conditional_sinr_pdf(im, n_active);
}

double conditional_sinr_cdf(InterferenceModel& interference, int n_active, double threshold)
{
    if (n_active < 1)
        throw DomainError("n_active must be >= 1");
    if (!(threshold > 0.0))
        throw DomainError("SINR threshold must be > 0");
    const SystemModel& model = interference.model();
    const double a = model.snr_min(), b = model.snr_max();
    if (threshold <= sinr_floor(model, n_active))
        return 0.0;
    if (threshold >= sinr_ceiling(model, n_active))
        return 1.0;

    if (n_active == 1) {
        // direct quadrature of the one-user density
        const auto f = [&](double g) { return snr_pdf(model, g); };
        return std::clamp(integrate_log_panels(f, a, std::min(threshold, b), 32, 16), 0.0, 1.0);
    }

    // Swapping the order of the x- and lambda-integrals of the ratio density:
    // F(x) = \int F_ref(x (1 + g)) f_I(g) dg.
    const auto fi = interference.density(n_active - 1);
    const int nodes = interference.spec().lambda_nodes;
    const double x = threshold;
    const double lo = std::max(fi->support_lo, a / x - 1.0), hi = std::min(fi->support_hi, b / x - 1.0);
    double p = integrate_interference(
        [&](double g) { return snr_cdf_closed_form(model, x * (1.0 + g)) * fi->pdf(g); }, lo, hi, nodes);
    // F_ref = 1 beyond b / x - 1
    const double cut = std::max(fi->support_lo, b / x - 1.0);
    if (cut < fi->support_hi)
        p += fi->mass() - fi->cdf(cut);
    return std::clamp(p, 0.0, 1.0);
}

double conditional_sinr_cdf(const SystemModel& model, int n_active, double threshold, const QuadratureSpec& spec)
{
    InterferenceModel im(model, spec);
    return conditional_sinr_cdf(im, n_active, threshold);
}

} // namespace owcsa
