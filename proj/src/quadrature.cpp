#include "owcsa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "owcsa/errors.hpp"

namespace owcsa {

namespace {

constexpr int kMaxRule = 64;
constexpr int kOrder = PolynomialPanels::kDegree + 1;
// below this |theta| the moment series is used, above it the upward recurrence
constexpr double kSeriesTheta = 4.0;

struct Chebyshev {
    std::array<double, kOrder> nodes{};
    std::array<std::array<double, kOrder>, kOrder> inverse{}; // Vandermonde^-1

    Chebyshev()
    {
        for (int i = 0; i < kOrder; ++i)
            nodes[i] = std::cos((2.0 * i + 1.0) * M_PI / (2.0 * kOrder));
        // Gauss-Jordan on [V | I]
        double a[kOrder][2 * kOrder] = {};
        for (int i = 0; i < kOrder; ++i) {
            double p = 1.0;
            for (int k = 0; k < kOrder; ++k) {
                a[i][k] = p;
                p *= nodes[i];
            }
            a[i][kOrder + i] = 1.0;
        }
        for (int c = 0; c < kOrder; ++c) {
            int piv = c;
            for (int r = c + 1; r < kOrder; ++r)
                if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                    piv = r;
            for (int k = 0; k < 2 * kOrder; ++k)
                std::swap(a[c][k], a[piv][k]);
            const double d = a[c][c];
            for (int k = 0; k < 2 * kOrder; ++k)
                a[c][k] /= d;
            for (int r = 0; r < kOrder; ++r) {
                if (r == c)
                    continue;
                const double f = a[r][c];
                for (int k = 0; k < 2 * kOrder; ++k)
                    a[r][k] -= f * a[c][k];
            }
        }
        for (int i = 0; i < kOrder; ++i)
            for (int k = 0; k < kOrder; ++k)
                inverse[i][k] = a[i][kOrder + k];
    }
};

const Chebyshev& chebyshev()
{
    static const Chebyshev c;
    return c;
}

double eval_local(const PolynomialPanels::Coeffs& a, double u)
{
    double s = 0.0;
    for (int k = kOrder - 1; k >= 0; --k)
        s = s * u + a[k];
    return s;
}

} // namespace

GaussLegendre::GaussLegendre(int n)
{
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        nodes[n / 2] = 0.0;
}

const GaussLegendre& GaussLegendre::get(int n)
{
    if (n < 1 || n > kMaxRule)
        throw DomainError("Gauss-Legendre order must lie in [1, 64]");
    static std::array<std::unique_ptr<GaussLegendre>, kMaxRule + 1> rules;
    static std::array<std::once_flag, kMaxRule + 1> flags;
    std::call_once(flags[n], [n] { rules[n].reset(new GaussLegendre(n)); });
    return *rules[n];
}

std::array<Complex, kOrder> oscillatory_moments(double theta)
{
    std::array<Complex, kOrder> m{};
    if (std::abs(theta) <= kSeriesTheta) {
        // sum_p (j theta)^p / p! * \int u^{k+p}
        const Complex jt(0.0, theta);
        for (int k = 0; k < kOrder; ++k) {
            Complex term(1.0, 0.0), sum(0.0, 0.0);
            for (int p = 0; p < 60; ++p) {
                if ((k + p) % 2 == 0)
                    sum += term * (2.0 / (k + p + 1));
                term *= jt / static_cast<double>(p + 1);
                if (std::abs(term) < 1e-18 && p > 4)
                    break;
            }
            m[k] = sum;
        }
        return m;
    }
    const Complex e_r = std::polar(1.0, theta), e_l = std::conj(e_r);
    const Complex inv(0.0, -1.0 / theta); // 1 / (j theta)
    m[0] = (e_r - e_l) * inv;
    for (int k = 1; k < kOrder; ++k)
        m[k] = (e_r - (k % 2 ? -e_l : e_l)) * inv - static_cast<double>(k) * inv * m[k - 1];
    return m;
}

PolynomialPanels::Coeffs hermite_cubic(double x0, double x1, double v0, double d0, double v1, double d1)
{
    const double h = 0.5 * (x1 - x0);
    const double D0 = d0 * h, D1 = d1 * h;
    PolynomialPanels::Coeffs a{};
    a[2] = (D1 - D0) / 4.0;
    a[0] = 0.5 * (v0 + v1) - a[2];
    a[3] = ((D0 + D1) - (v1 - v0)) / 4.0;
    a[1] = 0.5 * (v1 - v0) - a[3];
    return a;
}

PolynomialPanels PolynomialPanels::interpolate(const std::function<double(double)>& f,
                                               std::vector<double> breakpoints)
{
    const auto& ch = chebyshev();
    PolynomialPanels p;
    p.set_start(breakpoints.front());
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const double x0 = breakpoints[i - 1], x1 = breakpoints[i];
        const double c = 0.5 * (x0 + x1), h = 0.5 * (x1 - x0);
        std::array<double, kOrder> v{};
        for (int q = 0; q < kOrder; ++q)
            v[q] = f(c + h * ch.nodes[q]);
        Coeffs a{};
        for (int k = 0; k < kOrder; ++k)
            for (int q = 0; q < kOrder; ++q)
                a[k] += ch.inverse[k][q] * v[q];
        p.add_panel(x1, a);
    }
    return p;
}

void PolynomialPanels::set_start(double x0)
{
    x_.assign(1, x0);
    coeffs_.clear();
}

void PolynomialPanels::add_panel(double x1, const Coeffs& local)
{
    if (x_.empty() || !(x1 > x_.back()))
        throw DomainError("panels must be added left to right");
    x_.push_back(x1);
    coeffs_.push_back(local);
}

double PolynomialPanels::operator()(double x) const
{
    if (coeffs_.empty() || x < x_.front() || x > x_.back())
        return 0.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    i = i == 0 ? 0 : std::min(i - 1, coeffs_.size() - 1);
    const double c = 0.5 * (x_[i] + x_[i + 1]), h = 0.5 * (x_[i + 1] - x_[i]);
    return eval_local(coeffs_[i], (x - c) / h);
}

double PolynomialPanels::integral() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double h = 0.5 * (x_[i + 1] - x_[i]);
        double q = 0.0;
        for (int k = 0; k < kOrder; k += 2)
            q += coeffs_[i][k] * 2.0 / (k + 1);
        s += h * q;
    }
    return s;
}

Complex PolynomialPanels::fourier(double t, double origin) const
{
    const std::size_t n = coeffs_.size();
    Complex total(0.0, 0.0);
    Complex e_left = std::polar(1.0, t * (x_[0] - origin));
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 0.5 * (x_[i + 1] - x_[i]);
        const double theta = t * h;
        const Complex e_right = std::polar(1.0, t * (x_[i + 1] - origin));
        const auto& a = coeffs_[i];
        Complex panel(0.0, 0.0);
        if (std::abs(theta) <= kSeriesTheta) {
            const auto mom = oscillatory_moments(theta);
            for (int k = 0; k < kOrder; ++k)
                panel += a[k] * mom[k];
            panel *= std::polar(1.0, t * (0.5 * (x_[i] + x_[i + 1]) - origin));
        } else {
            // moments already carrying the panel phase: N_k = e^{jt(c-o)} M_k
            const Complex inv(0.0, -1.0 / theta);
            Complex nk = (e_right - e_left) * inv;
            panel = a[0] * nk;
            for (int k = 1; k < kOrder; ++k) {
                nk = (e_right - (k % 2 ? -e_left : e_left)) * inv - static_cast<double>(k) * inv * nk;
                panel += a[k] * nk;
            }
        }
        total += h * panel;
        e_left = e_right;
    }
    return total;
}

double PolynomialPanels::l1_error(const std::function<double(double)>& f) const
{
    const auto& gl = GaussLegendre::get(16);
    double err = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double c = 0.5 * (x_[i] + x_[i + 1]), h = 0.5 * (x_[i + 1] - x_[i]);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double u = gl.nodes[q];
            err += gl.weights[q] * h * std::abs(f(c + h * u) - eval_local(coeffs_[i], u));
        }
    }
    return err;
}

} // namespace owcsa
