#include <algorithm>
#include <cmath>
#include <memory>

#include "owcsa/errors.hpp"
#include "owcsa/reliability.hpp"

namespace owcsa {

void TrafficModel::validate() const
{
    if (population < 1)
        throw DomainError("population must be >= 1");
    if (!(activation_prob >= 0.0 && activation_prob <= 1.0))
        throw DomainError("activation probability must lie in [0, 1]");
}

const char* to_string(ReceiverMode m) { return m == ReceiverMode::capture ? "capture" : "classical"; }
const char* to_string(Mixture m) { return m == Mixture::paper ? "paper" : "conditional"; }

void OutageQuery::validate() const
{
    if (!(threshold > 0.0) || !std::isfinite(threshold))
        throw DomainError("threshold must be a finite positive linear SINR");
}

double conditional_outage(InterferenceModel& interference, int n_active, const OutageQuery& query)
{
    query.validate();
    if (n_active < 1)
        throw DomainError("n_active must be >= 1");
    const SystemModel& model = interference.model();
    if (query.mode == ReceiverMode::classical)
        return n_active == 1 ? snr_cdf_closed_form(model, query.threshold) : 1.0;
    return conditional_sinr_cdf(interference, n_active, query.threshold);
}

double conditional_outage(const SystemModel& model, int n_active, const OutageQuery& query,
                          const QuadratureSpec& spec)
{
    InterferenceModel im(model, spec);
    return conditional_outage(im, n_active, query);
}

namespace {

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirling_error(double n)
{
    constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260, s3 = 1.0 / 1680, s4 = 1.0 / 1188;
    if (n <= 15.0)
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2 * kPi);
    const double nn = n * n;
    if (n > 500)
        return (s0 - s1 / nn) / n;
    if (n > 80)
        return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35)
        return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x / np) + np - x without cancellation
double deviance(double x, double np)
{
    if (std::abs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double next = s + ej / (2 * j + 1);
            if (next == s)
                return next;
            s = next;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

} // namespace

double binomial_pmf(const TrafficModel& traffic, int n)
{
    traffic.validate();
    const int u = traffic.population;
    const double p = traffic.activation_prob;
    if (n < 0 || n > u)
        throw DomainError("binomial_pmf needs 0 <= n <= population");
    if (p == 0.0)
        return n == 0 ? 1.0 : 0.0;
    if (p == 1.0)
        return n == u ? 1.0 : 0.0;
    // saddle-point form: exact in exact arithmetic, stable for large U
    const double q = 1.0 - p, un = u, x = n;
    if (n == 0)
        return std::exp(un * std::log1p(-p));
    if (n == u)
        return std::exp(un * std::log(p));
    const double lc = stirling_error(un) - stirling_error(x) - stirling_error(un - x) - deviance(x, un * p) -
                      deviance(un - x, un * q);
    const double lf = std::log(2 * kPi) + std::log(x) + std::log1p(-x / un);
    return std::exp(lc - 0.5 * lf);
}

namespace {

// P[U_a >= 1]
double any_active(const TrafficModel& t)
{
    if (t.activation_prob == 1.0)
        return 1.0;
    return -std::expm1(t.population * std::log1p(-t.activation_prob));
}

} // namespace

double unconditional_outage(InterferenceModel& interference, const TrafficModel& traffic, const OutageQuery& query)
{
    traffic.validate();
    query.validate();
    const double active = any_active(traffic);
    if (active == 0.0)
        return 0.0;
    const SystemModel& model = interference.model();
    const int u = traffic.population;

    double sum = 0.0;
    if (query.mode == ReceiverMode::classical) {
        const double single = binomial_pmf(traffic, 1);
        sum = single * snr_cdf_closed_form(model, query.threshold) + std::max(0.0, active - single);
    } else {
        // cumulative mass of U_a in [0, n]
        double cum = binomial_pmf(traffic, 0);
        for (int n = 1; n <= u; ++n) {
            const double w = binomial_pmf(traffic, n);
            const double rest = std::max(0.0, 1.0 - cum);
            if (rest < kBinomialTailTol)
                break;
            const double p = conditional_outage(interference, n, query);
            if (p >= 1.0 - kBinomialTailTol) {
                // outage is nondecreasing in n: the remaining mass is all outage
                sum += rest;
                break;
            }
            sum += w * p;
            cum += w;
        }
    }
    if (query.mixture == Mixture::conditional)
        sum /= active;
    return std::clamp(sum, 0.0, 1.0);
}

double unconditional_outage(const SystemModel& model, const TrafficModel& traffic, const OutageQuery& query,
                            const QuadratureSpec& spec)
{
    InterferenceModel im(model, spec);
    return unconditional_outage(im, traffic, query);
}

const char* to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::users: return "users";
    case SweepAxis::semi_angle: return "semi_angle";
    case SweepAxis::radius: return "radius";
    case SweepAxis::activation_prob: return "activation_prob";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& name)
{
    for (auto a : {SweepAxis::users, SweepAxis::semi_angle, SweepAxis::radius, SweepAxis::activation_prob})
        if (name == to_string(a))
            return a;
    throw DomainError("unknown sweep axis '" + name + "' (users|semi_angle|radius|activation_prob)");
}

bool SweepResult::ok() const
{
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.error.empty(); });
}

SweepResult sweep(const SystemModel& model, const TrafficModel& traffic, const OutageQuery& query, SweepAxis axis,
                  const std::vector<double>& values, const QuadratureSpec& spec, const McConfig* mc)
{
    query.validate();
    spec.validate();
    if (values.empty())
        throw DomainError("sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw DomainError("sweep values must be strictly increasing");

    SweepResult result;
    result.axis = axis;
    std::shared_ptr<InterferenceModel> shared; // one memo while the model is fixed

    for (double v : values) {
        SweepRow row;
        row.param = v;
        try {
            SystemModel m = model;
            TrafficModel t = traffic;
            switch (axis) {
            case SweepAxis::users:
                if (v != std::floor(v) || v < 1 || v > 1e9)
                    throw DomainError("users values must be positive integers");
                t.population = static_cast<int>(v);
                break;
            case SweepAxis::activation_prob: t.activation_prob = v; break;
            case SweepAxis::semi_angle: m = model.with_semi_angle(v); break;
            case SweepAxis::radius: m = model.with_radius(v); break;
            }
            t.validate();

            std::shared_ptr<InterferenceModel> im;
            if (axis == SweepAxis::users || axis == SweepAxis::activation_prob) {
                if (!shared)
                    shared = std::make_shared<InterferenceModel>(m, spec);
                im = shared;
            } else {
                im = std::make_shared<InterferenceModel>(m, spec);
            }

            OutageQuery q = query;
            q.mode = ReceiverMode::capture;
            row.p_out_capture = unconditional_outage(*im, t, q);
            q.mode = ReceiverMode::classical;
            row.p_out_classical = unconditional_outage(*im, t, q);
            if (mc)
                row.mc = simulate_unconditional_outage(m, t, query.threshold, query.mode, *mc,
                                                       query.mixture);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace owcsa
