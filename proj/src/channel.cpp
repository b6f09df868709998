#include "owcsa/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "owcsa/errors.hpp"

namespace owcsa {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be finite and > 0");
}

} // namespace

double lambertian_order(double semi_angle)
{
    if (!(semi_angle > 0.0 && semi_angle < kPi / 2))
        throw DomainError("semi-angle must lie in (0, pi/2) rad");
    return -std::log(2.0) / std::log(std::cos(semi_angle));
}

double PhotoDetector::concentrator_gain(double incidence) const
{
    if (incidence < 0.0 || incidence > field_of_view)
        return 0.0;
    const double s = std::sin(field_of_view);
    return lens_refractive_index * lens_refractive_index / (s * s);
}

SystemModel::SystemModel(const LedTransmitter& led, const PhotoDetector& pd,
                         const CellGeometry& cell, const PowerNoiseParams& power)
    : led_(led), pd_(pd), cell_(cell), power_(power)
{
    m_ = owcsa::lambertian_order(led.semi_angle_half_power);
    require_positive(pd.area, "photodetector area");
    require_positive(pd.responsivity, "responsivity");
    require_positive(pd.filter_gain, "filter gain");
    require_positive(pd.lens_refractive_index, "lens refractive index");
    if (!(pd.field_of_view > 0.0 && pd.field_of_view <= kPi / 2))
        throw DomainError("field of view must lie in (0, pi/2] rad");
    require_positive(cell.radius, "cell radius");
    require_positive(cell.height, "cell height");
    require_positive(power.tx_optical_power, "transmit optical power");
    require_positive(power.oe_conversion, "conversion coefficient");
    require_positive(power.noise_psd, "noise PSD");
    require_positive(power.bandwidth, "bandwidth");

    const double L = cell.height;
    const double R = cell.radius;
    const double g = pd.concentrator_gain(0.0);
    x_ = pd.area * (m_ + 1.0) * pd.responsivity / (2.0 * kPi) * pd.filter_gain * g
         * std::pow(L, m_ + 1.0);
    gain_max_ = x_ / std::pow(L, m_ + 3.0);
    gain_min_ = x_ / std::pow(R * R + L * L, (m_ + 3.0) / 2.0);
    const double mu = power.snr_scale();
    snr_min_ = mu * gain_min_ * gain_min_;
    snr_max_ = mu * gain_max_ * gain_max_;
    if (!(x_ > 0.0 && gain_min_ > 0.0 && gain_min_ < gain_max_ && std::isfinite(snr_max_)))
        throw DomainError("degenerate model: gain support collapsed or overflowed");

    pdf_exp_ = (m_ + 4.0) / (m_ + 3.0);
    pdf_coef_ = std::pow(mu * x_ * x_, 1.0 / (m_ + 3.0)) / (R * R * (m_ + 3.0));
}

SystemModel SystemModel::reference()
{
    return SystemModel(LedTransmitter{}, PhotoDetector{}, CellGeometry{}, PowerNoiseParams{});
}

SystemModel SystemModel::with_radius(double radius) const
{
    CellGeometry c = cell_;
    c.radius = radius;
    return SystemModel(led_, pd_, c, power_);
}

SystemModel SystemModel::with_height(double height) const
{
    CellGeometry c = cell_;
    c.height = height;
    return SystemModel(led_, pd_, c, power_);
}

SystemModel SystemModel::with_semi_angle(double semi_angle) const
{
    return SystemModel(LedTransmitter{semi_angle}, pd_, cell_, power_);
}

SystemModel SystemModel::with_tx_power(double watts) const
{
    PowerNoiseParams p = power_;
    p.tx_optical_power = watts;
    return SystemModel(led_, pd_, cell_, p);
}

SystemModel SystemModel::with_noise_psd(double psd) const
{
    PowerNoiseParams p = power_;
    p.noise_psd = psd;
    return SystemModel(led_, pd_, cell_, p);
}

bool SystemModel::fov_covers_cell() const
{
    return std::atan2(cell_.radius, cell_.height) <= pd_.field_of_view;
}

double channel_gain(const SystemModel& model, double radial_distance)
{
    const double r = radial_distance;
    if (!(r >= 0.0) || r > model.cell().radius)
        throw DomainError("radial distance must lie in [0, R]");
    // receiver faces straight down, so incidence = irradiance angle
    const double L = model.cell().height;
    if (std::atan2(r, L) > model.pd().field_of_view)
        return 0.0;
    if (r == 0.0)
        return model.gain_max();
    if (r == model.cell().radius)
        return model.gain_min();
    return model.aggregate_factor() / std::pow(r * r + L * L, (model.lambertian_order() + 3.0) / 2.0);
}

double snr_of_gain(const SystemModel& model, double gain)
{
    if (!(gain >= 0.0))
        throw DomainError("gain must be >= 0");
    return model.snr_scale() * gain * gain;
}

double radial_pdf(const CellGeometry& cell, double r)
{
    if (r < 0.0 || r > cell.radius)
        return 0.0;
    return 2.0 * r / (cell.radius * cell.radius);
}

double snr_pdf(const SystemModel& model, double snr)
{
    if (snr < model.snr_min() || snr > model.snr_max())
        return 0.0;
    return model.pdf_coefficient() * std::pow(snr, -model.pdf_exponent());
}

double snr_cdf_closed_form(const SystemModel& model, double snr)
{
    if (!(snr > 0.0))
        throw DomainError("SNR argument of the CDF must be > 0");
    if (snr <= model.snr_min())
        return 0.0;
    if (snr >= model.snr_max())
        return 1.0;
    const double R = model.cell().radius;
    const double L = model.cell().height;
    const double m = model.lambertian_order();
    const double mux2 = model.snr_scale() * model.aggregate_factor() * model.aggregate_factor();
    const double v = ((R * R + L * L) - std::pow(mux2 / snr, 1.0 / (m + 3.0))) / (R * R);
    return std::clamp(v, 0.0, 1.0);
}

} // namespace owcsa
