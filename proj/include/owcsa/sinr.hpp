#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "owcsa/channel.hpp"
#include "owcsa/quadrature.hpp"
#include "owcsa/tabulated.hpp"

namespace owcsa {

/// Which route produces the interference density inside the SINR pipeline.
/// `automatic` inverts the characteristic function and falls back to grid
/// convolution when the inversion cannot meet its budget.
enum class InterferencePath { automatic, inversion, convolution };

const char* to_string(InterferencePath p);

struct QuadratureSpec {
    int cf_nodes = 8192;             // node budget of the CF quadrature over the SNR support
    double inversion_t_max = 1e4;    // hard cap of the t-axis truncation
    int inversion_nodes = 1 << 18;   // node budget of the t-axis
    int lambda_nodes = 1024;         // nodes of the outer ratio integral
    double rel_tol = 1e-12;          // CF quadrature tolerance
    int grid_points = 2048;          // abscissae per tabulated distribution
    InterferencePath interference_path = InterferencePath::automatic;

    /// Throws DomainError naming the offending field.
    void validate() const;
};

/// CF tail threshold defining the adaptive truncation point of the inversion.
inline constexpr double kInversionTailTol = 1e-8;
/// t-axis node budget of the inversion when the path is `automatic`; beyond
/// it convolution is cheaper.
inline constexpr int kAutomaticInversionNodes = 1 << 15;
/// Budget for clipping/renormalizing an inverted density.
inline constexpr double kRenormalizationBudget = 1e-2;

/// E[exp(j t gamma)] of one user's SNR, by Filon-type quadrature of the
/// finite-support defining integral.
class CharacteristicFunction {
public:
    /// Throws NumericalError (estimate = achieved L1 bound) when cf_nodes
    /// runs out before rel_tol is met.
    CharacteristicFunction(const SystemModel& model, const QuadratureSpec& spec);

    Complex operator()(double t) const { return panels_.fourier(t, 0.0); }
    /// E[exp(j t (gamma - center()))].
    Complex centered(double t) const { return panels_.fourier(t, center_); }

    double center() const { return center_; }
    double error_bound() const { return error_; }
    std::size_t nodes() const { return panels_.panels() * (PolynomialPanels::kDegree + 1); }

private:
    PolynomialPanels panels_;
    double center_ = 0.0;
    double error_ = 0.0;
};

Complex single_interferer_cf(const SystemModel& model, double t, const QuadratureSpec& spec);
Complex interference_cf(const SystemModel& model, double t, int n_interferers, const QuadratureSpec& spec);

struct InversionResult {
    TabulatedDistribution density;
    double t_max = 0.0;
    std::size_t nodes = 0;
    double correction = 0.0; // |1 - mass| after clipping, before renormalization
    bool capped = false;     // t_max hit inversion_t_max before the tail criterion
};

/// Density of the sum of n i.i.d. SNRs by truncated Fourier inversion of CF^n.
/// Boundary singularities of the one-user density are subtracted analytically
/// for n <= 3 and added back in the gamma domain.
InversionResult invert_interference(const SystemModel& model, int n_interferers,
                                    const QuadratureSpec& spec, const CharacteristicFunction& cf);

TabulatedDistribution interference_pdf(const SystemModel& model, int n_interferers, const QuadratureSpec& spec);

/// One-user SNR density tabulated on the log grid of its support.
TabulatedDistribution tabulate_snr(const SystemModel& model, const QuadratureSpec& spec);

/// Density of the (k+1)-fold sum from the k-fold one (`k_fold`), by grid
/// convolution against the analytic one-user density.
TabulatedDistribution convolve_with_snr(const SystemModel& model, const TabulatedDistribution& k_fold,
                                        int k, const QuadratureSpec& spec);

TabulatedDistribution interference_pdf_convolution(const SystemModel& model, int n_interferers,
                                                   const QuadratureSpec& spec);

/// Memo of interference densities for one (model, spec); safe for concurrent use.
class InterferenceModel {
public:
    InterferenceModel(const SystemModel& model, const QuadratureSpec& spec);

    const SystemModel& model() const { return model_; }
    const QuadratureSpec& spec() const { return spec_; }

    std::shared_ptr<const TabulatedDistribution> density(int n_interferers);
    /// Path that produced density(n); nullopt before it was requested.
    std::optional<InterferencePath> path_used(int n_interferers) const;

private:
    std::shared_ptr<const TabulatedDistribution> by_convolution(int n);

    SystemModel model_;
    QuadratureSpec spec_;
    mutable std::mutex mu_;
    std::map<int, std::shared_ptr<const TabulatedDistribution>> memo_;
    std::map<int, InterferencePath> used_;
    std::vector<TabulatedDistribution> series_; // series_[k-1]: k-fold sum
    std::optional<CharacteristicFunction> cf_;
    bool cf_failed_ = false;
};

TabulatedDistribution conditional_sinr_pdf(InterferenceModel& interference, int n_active);
TabulatedDistribution conditional_sinr_pdf(const SystemModel& model, int n_active, const QuadratureSpec& spec);

/// P[SINR <= threshold | n_active], clamped to [0, 1].
double conditional_sinr_cdf(InterferenceModel& interference, int n_active, double threshold);
double conditional_sinr_cdf(const SystemModel& model, int n_active, double threshold, const QuadratureSpec& spec);

/// Smallest / largest attainable SINR with n_active users in the slot.
double sinr_floor(const SystemModel& model, int n_active);
double sinr_ceiling(const SystemModel& model, int n_active);

} // namespace owcsa
