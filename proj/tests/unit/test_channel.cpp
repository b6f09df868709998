#include <cmath>
#include <random>

#include <doctest.h>

#include "owcsa/channel.hpp"
#include "owcsa/errors.hpp"
#include "owcsa/quadrature.hpp"

using namespace owcsa;
using doctest::Approx;

namespace {
double deg(double d) { return d * kPi / 180.0; }
} // namespace

TEST_CASE("lambertian order")
{
    CHECK(lambertian_order(deg(60)) == Approx(1.0).epsilon(1e-14));
    CHECK(lambertian_order(deg(45)) == Approx(2.0).epsilon(1e-14));
    CHECK(lambertian_order(deg(30)) == Approx(4.818841679306418).epsilon(1e-13));
    CHECK_THROWS_AS(lambertian_order(0.0), DomainError);
    CHECK_THROWS_AS(lambertian_order(kPi / 2), DomainError);
    CHECK_THROWS_AS(lambertian_order(-0.1), DomainError);
    double prev = 0.0;
    for (int d = 5; d <= 85; d += 5) {
        const double m = lambertian_order(deg(d));
        CHECK(m > 0.0);
        if (d > 5)
            CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("reference gains and SNR scale")
{
    const auto m = SystemModel::reference();
    CHECK(m.lambertian_order() == Approx(1.0).epsilon(1e-14));
    CHECK(m.aggregate_factor() == Approx(1.790493109783822e-4).epsilon(1e-13));
    CHECK(channel_gain(m, 0.0) == Approx(4.583662361046586e-6).epsilon(1e-13));
    CHECK(channel_gain(m, 3.0) == Approx(7.698976016270132e-7).epsilon(1e-13));
    CHECK(channel_gain(m, 0.0) == m.gain_max());
    CHECK(channel_gain(m, 3.0) == m.gain_min());
    CHECK(m.snr_scale() == Approx(2.88e12).epsilon(1e-14));
    CHECK(snr_of_gain(m, 4.584e-6) == Approx(60.51760128).epsilon(1e-12));
    CHECK(snr_of_gain(m, 0.0) == 0.0);
    CHECK(snr_of_gain(m, m.gain_max()) == Approx(m.snr_max()).epsilon(1e-15));
    CHECK(snr_of_gain(m, m.gain_min()) == Approx(m.snr_min()).epsilon(1e-15));
    CHECK(m.snr_min() == Approx(1.707097872934158).epsilon(1e-13));
    CHECK(m.snr_max() == Approx(60.50868664341646).epsilon(1e-13));
    CHECK(m.power().noise_variance() == m.power().noise_psd * m.power().bandwidth);
}

TEST_CASE("gain is strictly decreasing with range [gain_min, gain_max]")
{
    const auto m = SystemModel::reference();
    double prev = INFINITY;
    for (int i = 0; i <= 300; ++i) {
        const double g = channel_gain(m, 3.0 * i / 300);
        CHECK(g < prev);
        CHECK(g >= m.gain_min());
        CHECK(g <= m.gain_max());
        prev = g;
    }
    CHECK_THROWS_AS(channel_gain(m, -1e-9), DomainError);
    CHECK_THROWS_AS(channel_gain(m, 3.0 + 1e-9), DomainError);
}

TEST_CASE("field of view cuts off the gain")
{
    PhotoDetector pd;
    pd.field_of_view = deg(30);
    const SystemModel m(LedTransmitter{}, pd, CellGeometry{}, PowerNoiseParams{});
    CHECK_FALSE(m.fov_covers_cell());
    CHECK(SystemModel::reference().fov_covers_cell());
    const double edge = 2.5 * std::tan(deg(30));
    CHECK(channel_gain(m, 0.5 * edge) > 0.0);
    CHECK(channel_gain(m, 1.01 * edge) == 0.0);
    CHECK(channel_gain(m, 3.0) == 0.0);
    CHECK(pd.concentrator_gain(deg(31)) == 0.0);
    CHECK(pd.concentrator_gain(deg(10)) == Approx(2.25 / 0.25));
}

TEST_CASE("invalid parameters are rejected")
{
    PhotoDetector pd;
    pd.area = 0;
    CHECK_THROWS_AS(SystemModel(LedTransmitter{}, pd, CellGeometry{}, PowerNoiseParams{}), DomainError);
    CHECK_THROWS_AS(SystemModel::reference().with_radius(0.0), DomainError);
    CHECK_THROWS_AS(SystemModel::reference().with_height(-1.0), DomainError);
    CHECK_THROWS_AS(SystemModel::reference().with_semi_angle(kPi / 2), DomainError);
    CHECK_THROWS_AS(SystemModel::reference().with_noise_psd(0.0), DomainError);
    PowerNoiseParams p;
    p.bandwidth = -1;
    CHECK_THROWS_AS(SystemModel(LedTransmitter{}, PhotoDetector{}, CellGeometry{}, p), DomainError);
    pd = PhotoDetector{};
    pd.field_of_view = deg(91);
    CHECK_THROWS_AS(SystemModel(LedTransmitter{}, pd, CellGeometry{}, PowerNoiseParams{}), DomainError);
}

TEST_CASE("radial density")
{
    const CellGeometry c3{3.0, 2.5}, c2{2.0, 2.5};
    CHECK(radial_pdf(c3, 3.0) == Approx(2.0 / 3.0));
    CHECK(radial_pdf(c3, 0.0) == 0.0);
    CHECK(radial_pdf(c2, 1.0) == Approx(0.5));
    CHECK(radial_pdf(c3, 3.1) == 0.0);
    CHECK(radial_pdf(c3, -0.1) == 0.0);
    const double mass = GaussLegendre::get(16).integrate([&](double r) { return radial_pdf(c3, r); }, 0.0, 3.0);
    CHECK(mass == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("SNR density and closed-form CDF")
{
    for (double sa : {15.0, 30.0, 45.0, 60.0, 75.0})
        for (double R : {1.0, 3.0, 5.0}) {
            const auto m = SystemModel::reference().with_semi_angle(deg(sa)).with_radius(R);
            CAPTURE(sa);
            CAPTURE(R);
            const double mass =
                integrate_log_panels([&](double g) { return snr_pdf(m, g); }, m.snr_min(), m.snr_max(), 64, 16);
            CHECK(mass == Approx(1.0).epsilon(1e-10));
            CHECK(snr_pdf(m, 0.999 * m.snr_min()) == 0.0);
            CHECK(snr_pdf(m, 1.001 * m.snr_max()) == 0.0);
            CHECK(snr_cdf_closed_form(m, m.snr_min()) == 0.0);
            CHECK(snr_cdf_closed_form(m, m.snr_max()) == 1.0);

            const double gm = std::sqrt(m.snr_min() * m.snr_max());
            const double num = integrate_log_panels([&](double g) { return snr_pdf(m, g); }, m.snr_min(), gm, 64, 16);
            CHECK(std::abs(num - snr_cdf_closed_form(m, gm)) < 1e-9);
        }
    const auto m = SystemModel::reference();
    CHECK(snr_cdf_closed_form(m, std::pow(10.0, 0.3)) == Approx(0.06480345556110562).epsilon(1e-13));
    CHECK(snr_cdf_closed_form(m, 0.5) == 0.0);
    CHECK(snr_cdf_closed_form(m, 1e6) == 1.0);
    CHECK_THROWS_AS(snr_cdf_closed_form(m, 0.0), DomainError);
    CHECK_THROWS_AS(snr_cdf_closed_form(m, -1.0), DomainError);
}

TEST_CASE("closed-form CDF agrees with quadrature at random points and is nondecreasing")
{
    std::mt19937_64 gen(7);
    const auto m = SystemModel::reference();
    std::uniform_real_distribution<double> u(std::log(m.snr_min()), std::log(m.snr_max()));
    for (int i = 0; i < 100; ++i) {
        const double x = std::exp(u(gen));
        const double num = integrate_log_panels([&](double g) { return snr_pdf(m, g); }, m.snr_min(), x, 32, 16);
        CHECK(std::abs(num - snr_cdf_closed_form(m, x)) < 1e-9);
    }
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double f = snr_cdf_closed_form(m, 0.5 + 70.0 * i / 1000);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("unit consistency and geometry monotonicity")
{
    const auto m = SystemModel::reference();
    const auto noisier = m.with_noise_psd(2 * m.power().noise_psd);
    CHECK(noisier.snr_scale() == Approx(m.snr_scale() / 2).epsilon(1e-15));
    const auto louder = m.with_tx_power(3 * m.power().tx_optical_power);
    for (double g : {m.gain_min(), 2e-6, m.gain_max()})
        CHECK(snr_of_gain(louder, g) == Approx(9 * snr_of_gain(m, g)).epsilon(1e-14));

    const auto wide = m.with_radius(4.0);
    CHECK(wide.gain_min() < m.gain_min());
    CHECK(wide.snr_min() < m.snr_min());
    CHECK(wide.gain_max() == m.gain_max());
    CHECK(wide.snr_max() == m.snr_max());
}
