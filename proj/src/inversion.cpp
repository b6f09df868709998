#include <algorithm>
#include <cmath>
#include <string>

#include "owcsa/errors.hpp"
#include "owcsa/sinr.hpp"

namespace owcsa {

namespace {

// Powers n <= this get the boundary subtraction; beyond it CF^n already decays fast.
constexpr int kMaxSubtracted = 3;
constexpr int kProbeSamples = 64;

Complex ipow(Complex z, int n)
{
    Complex r(1.0, 0.0);
    while (n > 0) {
        if (n & 1)
            r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

// Piecewise cubic carrying the one-user density's value and slope at both
// support ends, decaying to zero (C1) toward the interior.
PolynomialPanels boundary_model(const SystemModel& model)
{
    const double a = model.snr_min(), b = model.snr_max(), w = b - a;
    const double alpha = model.pdf_exponent();
    const double fa = snr_pdf(model, a), fb = snr_pdf(model, b);
    const double da = -alpha * fa / a, db = -alpha * fb / b;
    double lo_end = a + std::min(0.5 * w, 2.0 * a / alpha);
    double hi_start = b - std::min(0.5 * w, 2.0 * b / alpha);
    if (hi_start - lo_end <= 1e-12 * w)
        hi_start = lo_end = std::min(lo_end, hi_start);

    PolynomialPanels s;
    s.set_start(a);
    s.add_panel(lo_end, hermite_cubic(a, lo_end, fa, da, 0.0, 0.0));
    if (hi_start > lo_end)
        s.add_panel(hi_start, PolynomialPanels::Coeffs{});
    s.add_panel(b, hermite_cubic(hi_start, b, 0.0, 0.0, fb, db));
    return s;
}

// k-fold self-convolution of a piecewise polynomial, evaluated exactly with
// Gauss-Legendre on the polynomial pieces of the integrand.
class SelfConvolution {
public:
    SelfConvolution(const PolynomialPanels& s, int k_max) : s_(s)
    {
        const auto b1 = s.breakpoints();
        bps_.resize(static_cast<std::size_t>(k_max) + 1);
        bps_[1].assign(b1.begin(), b1.end());
        for (int k = 2; k <= k_max; ++k) {
            auto& out = bps_[k];
            for (double x : bps_[k - 1])
                for (double y : b1)
                    out.push_back(x + y);
            std::sort(out.begin(), out.end());
            const double scale = out.back();
            out.erase(std::unique(out.begin(), out.end(),
                                  [scale](double p, double q) { return std::abs(p - q) <= 1e-13 * scale; }),
                      out.end());
        }
    }

    double operator()(int k, double z) const
    {
        if (k == 1)
            return s_(z);
        const auto b1 = s_.breakpoints();
        const auto& prev = bps_[k - 1];
        const double g0 = std::max(b1.front(), z - prev.back());
        const double g1 = std::min(b1.back(), z - prev.front());
        if (!(g1 > g0))
            return 0.0;
        std::vector<double> cuts{g0, g1};
        for (double x : b1)
            if (x > g0 && x < g1)
                cuts.push_back(x);
        for (double x : prev)
            if (z - x > g0 && z - x < g1)
                cuts.push_back(z - x);
        std::sort(cuts.begin(), cuts.end());
        const auto& gl = GaussLegendre::get(2 * k);
        double sum = 0.0;
        for (std::size_t i = 1; i < cuts.size(); ++i) {
            if (!(cuts[i] > cuts[i - 1]))
                continue;
            sum += gl.integrate([&](double g) { return s_(g) * (*this)(k - 1, z - g); }, cuts[i - 1], cuts[i]);
        }
        return sum;
    }

private:
    const PolynomialPanels& s_;
    std::vector<std::vector<double>> bps_;
};

} // namespace

InversionResult invert_interference(const SystemModel& model, int n, const QuadratureSpec& spec,
                                    const CharacteristicFunction& cf)
{
    if (n < 1)
        throw DomainError("interference density needs at least one interferer");
    spec.validate();

    const double a = model.snr_min(), b = model.snr_max();
    const double c1 = cf.center();
    // trapezoid in t: >= 8 samples per period of exp(-j t (gamma - n c1)) over the support
    const double dt = kPi / (2.0 * n * (b - a));
    const bool subtract = n <= kMaxSubtracted;
    const PolynomialPanels s = subtract ? boundary_model(model) : PolynomialPanels{};

    const auto residual = [&](double t) {
        Complex r = ipow(cf.centered(t), n);
        if (subtract)
            r -= ipow(s.fourier(t, c1), n);
        return r;
    };

    const auto budget = static_cast<std::size_t>(spec.inversion_nodes);
    if (spec.inversion_t_max / dt > static_cast<double>(budget)) {
        // fail fast if the CF tail is still above tolerance where the budget ends
        const double t_end = static_cast<double>(budget) * dt;
        double worst = 0.0;
        for (int i = 0; i < kProbeSamples; ++i)
            worst = std::max(worst, std::abs(residual(t_end * (0.8 + 0.2 * i / (kProbeSamples - 1)))));
        if (worst >= kInversionTailTol)
            throw NumericalError("CF inversion: node budget of " + std::to_string(budget)
                                     + " exhausted with CF tail " + std::to_string(worst)
                                     + "; increase inversion_nodes or inversion_t_max",
                                 worst);
    }

    InversionResult out;
    std::vector<Complex> rho;
    std::size_t last_bad = 0;
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (t > spec.inversion_t_max) {
            out.capped = true;
            break;
        }
        if (k > budget)
            throw NumericalError("CF inversion: node budget exhausted before the CF tail fell below "
                                     "tolerance; increase inversion_nodes",
                                 std::abs(rho.back()));
        rho.push_back(residual(t));
        if (std::abs(rho.back()) >= kInversionTailTol)
            last_bad = k;
        if (k >= 16 && k >= last_bad + last_bad / 4 + 16)
            break;
    }
    out.nodes = rho.size();
    out.t_max = static_cast<double>(rho.size() - 1) * dt;

    const auto grid = log_grid(n * a, n * b, static_cast<std::size_t>(spec.grid_points));
    std::vector<double> pdf(grid.size());
    std::optional<SelfConvolution> base;
    if (subtract)
        base.emplace(s, n);
    const std::size_t K = rho.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i] - n * c1;
        const Complex step = std::polar(1.0, -dt * x);
        Complex rot(1.0, 0.0);
        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            if ((k & 1023) == 0)
                rot = std::polar(1.0, -dt * static_cast<double>(k) * x);
            const double w = (k == 0 || k + 1 == K) ? 0.5 : 1.0;
            sum += w * (rho[k].real() * rot.real() - rho[k].imag() * rot.imag());
            rot *= step;
        }
        const double v = sum * dt / kPi + (base ? (*base)(n, grid[i]) : 0.0);
        pdf[i] = std::max(v, 0.0);
    }

    out.density = TabulatedDistribution::from_pdf(grid, std::move(pdf));
    out.correction = std::abs(1.0 - out.density.mass());
    if (!(out.correction < kRenormalizationBudget))
        throw NumericalError("CF inversion: renormalization correction " + std::to_string(out.correction)
                                 + " exceeds the 1% budget; increase inversion_t_max/inversion_nodes",
                             out.correction);
    out.density.normalize();
    return out;
}

TabulatedDistribution interference_pdf(const SystemModel& model, int n_interferers, const QuadratureSpec& spec)
{
    const CharacteristicFunction cf(model, spec);
    return invert_interference(model, n_interferers, spec, cf).density;
}

} // namespace owcsa
