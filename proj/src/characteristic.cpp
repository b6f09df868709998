#include <cmath>
#include <string>

#include "owcsa/errors.hpp"
#include "owcsa/sinr.hpp"

namespace owcsa {

const char* to_string(InterferencePath p)
{
    switch (p) {
    case InterferencePath::automatic: return "auto";
    case InterferencePath::inversion: return "inversion";
    case InterferencePath::convolution: return "convolution";
    }
    return "?";
}

void QuadratureSpec::validate() const
{
    const auto count = [](int v, const char* name) {
        if (v < 16)
            throw DomainError(std::string(name) + " must be >= 16");
    };
    count(cf_nodes, "cf_nodes");
    count(inversion_nodes, "inversion_nodes");
    count(lambda_nodes, "lambda_nodes");
    count(grid_points, "grid_points");
    if (!(inversion_t_max > 0.0) || !std::isfinite(inversion_t_max))
        throw DomainError("inversion_t_max must be > 0");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
        throw DomainError("rel_tol must lie in (0, 1e-2]");
}

CharacteristicFunction::CharacteristicFunction(const SystemModel& model, const QuadratureSpec& spec)
{
    spec.validate();
    if (!model.fov_covers_cell())
        throw DomainError("closed-form SNR statistics need the whole cell inside the receiver FOV");
    const double a = model.snr_min(), b = model.snr_max();
    const double coef = model.pdf_coefficient(), expo = model.pdf_exponent();
    const auto f = [coef, expo](double x) { return coef * std::pow(x, -expo); };
    center_ = 0.5 * (a + b);

    constexpr int kNodesPerPanel = PolynomialPanels::kDegree + 1;
    for (int panels = 2;; panels *= 2) {
        if (panels * kNodesPerPanel > spec.cf_nodes && panels > 2)
            throw NumericalError("CF quadrature exhausted cf_nodes before reaching rel_tol (L1 bound "
                                     + std::to_string(error_) + ")",
                                 error_);
        panels_ = PolynomialPanels::interpolate(f, log_grid(a, b, static_cast<std::size_t>(panels) + 1));
        error_ = panels_.l1_error(f);
        if (error_ <= spec.rel_tol)
            break;
    }
}

Complex single_interferer_cf(const SystemModel& model, double t, const QuadratureSpec& spec)
{
    return CharacteristicFunction(model, spec)(t);
}

Complex interference_cf(const SystemModel& model, double t, int n_interferers, const QuadratureSpec& spec)
{
    if (n_interferers < 0)
        throw DomainError("number of interferers must be >= 0");
    if (n_interferers == 0)
        return {1.0, 0.0};
    const Complex phi = single_interferer_cf(model, t, spec);
    Complex r(1.0, 0.0);
    for (int i = 0; i < n_interferers; ++i)
        r *= phi;
    return r;
}

} // namespace owcsa
