#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "owcsa/montecarlo.hpp"
#include "owcsa/sinr.hpp"
#include "owcsa/traffic.hpp"

namespace owcsa {

inline const double kDefaultThreshold = std::pow(10.0, 0.3); // 3 dB

struct OutageQuery {
    double threshold = kDefaultThreshold; // linear SINR
    ReceiverMode mode = ReceiverMode::capture;
    Mixture mixture = Mixture::paper;

    void validate() const;
};

/// Binomial terms below this are dropped from the mixture.
inline constexpr double kBinomialTailTol = 1e-9;

double conditional_outage(InterferenceModel& interference, int n_active, const OutageQuery& query);
double conditional_outage(const SystemModel& model, int n_active, const OutageQuery& query,
                          const QuadratureSpec& spec);

/// P[U_a = n], evaluated in log space.
double binomial_pmf(const TrafficModel& traffic, int n);

double unconditional_outage(InterferenceModel& interference, const TrafficModel& traffic, const OutageQuery& query);
double unconditional_outage(const SystemModel& model, const TrafficModel& traffic, const OutageQuery& query,
                            const QuadratureSpec& spec);

enum class SweepAxis { users, semi_angle, radius, activation_prob };

const char* to_string(SweepAxis a);
/// Throws DomainError for an unknown name.
SweepAxis parse_sweep_axis(const std::string& name);

struct SweepRow {
    double param = 0.0;
    double p_out_capture = NAN;
    double p_out_classical = NAN;
    std::optional<McEstimate> mc;
    std::string error; // empty when the row succeeded
};

struct SweepResult {
    SweepAxis axis = SweepAxis::users;
    std::vector<SweepRow> rows;

    bool ok() const;
};

/// One row per value: users (integer U), semi_angle (radians), radius (m),
/// activation_prob. Both receivers are reported analytically; the MC column
/// follows query.mode and query.mixture, with the same random stream for
/// every row.
SweepResult sweep(const SystemModel& model, const TrafficModel& traffic, const OutageQuery& query, SweepAxis axis,
                  const std::vector<double>& values, const QuadratureSpec& spec, const McConfig* mc = nullptr);

} // namespace owcsa
