#pragma once

// Indoor line-of-sight OWC cell: Lambertian LED emitters on the floor plane,
// one ceiling photodetector looking down. All quantities are SI.

namespace owcsa {

inline constexpr double kPi = 3.14159265358979323846;

double lambertian_order(double semi_angle);

struct LedTransmitter {
    double semi_angle_half_power = kPi / 3.0;

    double lambertian_order() const { return owcsa::lambertian_order(semi_angle_half_power); }
};

struct PhotoDetector {
    double area = 1e-4;             // m^2
    double responsivity = 0.4;      // A/W
    double filter_gain = 1.0;
    double lens_refractive_index = 1.5;
    double field_of_view = kPi / 2; // rad

    /// zeta^2 / sin^2(FOV) inside the field of view, 0 outside.
    double concentrator_gain(double incidence) const;
};

struct CellGeometry {
    double radius = 3.0; // m
    double height = 2.5; // m
};

struct PowerNoiseParams {
    double tx_optical_power = 0.03; // W
    double oe_conversion = 0.8;
    double noise_psd = 1e-21;       // W/Hz
    double bandwidth = 200e3;       // Hz

    double noise_variance() const { return noise_psd * bandwidth; }
    double snr_scale() const
    {
        const double a = tx_optical_power * oe_conversion;
        return a * a / noise_variance();
    }
};

/// Validated cell parameterization plus the derived constants of the
/// gain and SNR distributions. Immutable once built.
class SystemModel {
public:
    SystemModel(const LedTransmitter& led, const PhotoDetector& pd, const CellGeometry& cell,
                const PowerNoiseParams& power);

    /// Defaults: 60 deg semi-angle, L = 2.5 m, R = 3 m, and the receiver/power
    /// values of the reference indoor setup.
    static SystemModel reference();

    SystemModel with_radius(double radius) const;
    SystemModel with_height(double height) const;
    SystemModel with_semi_angle(double semi_angle) const;
    SystemModel with_tx_power(double watts) const;
    SystemModel with_noise_psd(double psd) const;

    const LedTransmitter& led() const { return led_; }
    const PhotoDetector& pd() const { return pd_; }
    const CellGeometry& cell() const { return cell_; }
    const PowerNoiseParams& power() const { return power_; }

    double lambertian_order() const { return m_; }
    double aggregate_factor() const { return x_; }
    double gain_min() const { return gain_min_; }
    double gain_max() const { return gain_max_; }
    double snr_min() const { return snr_min_; }
    double snr_max() const { return snr_max_; }
    double snr_scale() const { return power_.snr_scale(); }

    /// f(g) = pdf_coefficient() * g^-pdf_exponent() on [snr_min, snr_max].
    double pdf_coefficient() const { return pdf_coef_; }
    double pdf_exponent() const { return pdf_exp_; }

    /// True when every point of the disk lies inside the receiver FOV, which
    /// is what the closed-form SNR distribution assumes.
    bool fov_covers_cell() const;

private:
    LedTransmitter led_;
    PhotoDetector pd_;
    CellGeometry cell_;
    PowerNoiseParams power_;
    double m_ = 0, x_ = 0;
    double gain_min_ = 0, gain_max_ = 0;
    double snr_min_ = 0, snr_max_ = 0;
    double pdf_coef_ = 0, pdf_exp_ = 0;
};

double channel_gain(const SystemModel& model, double radial_distance);
double snr_of_gain(const SystemModel& model, double gain);
double radial_pdf(const CellGeometry& cell, double r);
double snr_pdf(const SystemModel& model, double snr);
/// Antiderivative of snr_pdf; the single-user reference distribution.
double snr_cdf_closed_form(const SystemModel& model, double snr);

} // namespace owcsa
