#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "owcsa/commands.hpp"
#include "owcsa/errors.hpp"
#include "owcsa/version.hpp"

namespace owcsa {

const char* to_string(OutputMode m)
{
    switch (m) {
    case OutputMode::analytic: return "analytic";
    case OutputMode::mc: return "mc";
    case OutputMode::both: return "both";
    }
    return "?";
}

OutputMode parse_output_mode(const std::string& name)
{
    for (auto m : {OutputMode::analytic, OutputMode::mc, OutputMode::both})
        if (name == to_string(m))
            return m;
    throw DomainError("unknown mode '" + name + "' (analytic|mc|both)");
}

namespace {

using Extra = std::vector<std::pair<std::string, std::string>>;

void header(std::ostream& out, const RunConfig& config, const std::string& command, const Extra& extra)
{
    fmt::print(out, "# owcsa {}\n# command = {}\n", kVersion, command);
    for (const auto& [k, v] : extra)
        fmt::print(out, "# {} = {}\n", k, v);
    for (const auto& [k, v] : config.resolved())
        fmt::print(out, "# {} = {}\n", k, v);
}

bool analytic(OutputMode m) { return m != OutputMode::mc; }
bool monte_carlo(OutputMode m) { return m != OutputMode::analytic; }

std::string one_line(std::string s)
{
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

int cmd_cdf(const RunConfig& config, OutputMode mode, std::ostream& out)
{
    const SystemModel model = config.model();
    const int n = config.n_active;
    std::vector<double> x;
    TabulatedDistribution dist;
    if (analytic(mode)) {
        InterferenceModel im(model, config.quadrature);
        dist = conditional_sinr_pdf(im, n);
        dist.normalize();
        x = dist.grid;
    } else {
        x = log_grid(sinr_floor(model, n), sinr_ceiling(model, n),
                     static_cast<std::size_t>(config.quadrature.grid_points));
    }
    std::vector<double> mc_cdf;
    if (monte_carlo(mode)) {
        auto s = sample_conditional_sinr(model, n, config.mc);
        std::sort(s.begin(), s.end());
        mc_cdf = empirical_cdf(s, x);
    }

    header(out, config, "cdf", {{"mode", to_string(mode)}});
    switch (mode) {
    case OutputMode::analytic: out << "x,pdf,cdf\n"; break;
    case OutputMode::mc: out << "x,mc_cdf\n"; break;
    case OutputMode::both: out << "x,pdf,cdf,mc_cdf\n"; break;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        fmt::print(out, "{}", x[i]);
        if (analytic(mode))
            fmt::print(out, ",{},{}", dist.pdf_values[i], dist.cdf_values[i]);
        if (monte_carlo(mode))
            fmt::print(out, ",{}", mc_cdf[i]);
        out << '\n';
    }
    return kExitOk;
}

int cmd_outage(const RunConfig& config, OutputMode mode, std::ostream& out)
{
    const SystemModel model = config.model();
    double capture = NAN, classical = NAN;
    if (analytic(mode)) {
        InterferenceModel im(model, config.quadrature);
        OutageQuery q = config.query;
        q.mode = ReceiverMode::capture;
        capture = unconditional_outage(im, config.traffic, q);
        q.mode = ReceiverMode::classical;
        classical = unconditional_outage(im, config.traffic, q);
    }
    std::optional<McEstimate> mc;
    if (monte_carlo(mode))
        mc = simulate_unconditional_outage(model, config.traffic, config.query.threshold, config.query.mode,
                                           config.mc, config.query.mixture);

    header(out, config, "outage", {{"mode", to_string(mode)}});
    out << "users,pa,threshold,p_out_capture,p_out_classical,mc_value,mc_ci95\n";
    fmt::print(out, "{},{},{},", config.traffic.population, config.traffic.activation_prob, config.query.threshold);
    if (analytic(mode))
        fmt::print(out, "{},{}", capture, classical);
    else
        out << ',';
    if (mc && !mc->degenerate)
        fmt::print(out, ",{},{}\n", mc->value, mc->half_width_95);
    else
        out << ",,\n";
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, SweepAxis axis, const std::vector<double>& values, OutputMode mode,
              std::ostream& out)
{
    std::vector<double> internal = values;
    if (axis == SweepAxis::semi_angle)
        for (auto& v : internal)
            v *= kPi / 180.0;

    SweepResult result;
    const McConfig* mc = monte_carlo(mode) ? &config.mc : nullptr;
    if (analytic(mode)) {
        result = sweep(config.model(), config.traffic, config.query, axis, internal, config.quadrature, mc);
    } else {
        // MC only: reuse the sweep plumbing for parameter handling, analytic columns left empty
        result.axis = axis;
        for (std::size_t i = 0; i < internal.size(); ++i) {
            if (i > 0 && !(internal[i] > internal[i - 1]))
                throw DomainError("sweep values must be strictly increasing");
            SweepRow row;
            row.param = internal[i];
            try {
                SystemModel m = config.model();
                TrafficModel t = config.traffic;
                switch (axis) {
                case SweepAxis::users:
                    if (internal[i] != std::floor(internal[i]) || internal[i] < 1 || internal[i] > 1e9)
                        throw DomainError("users values must be positive integers");
                    t.population = static_cast<int>(internal[i]);
                    break;
                case SweepAxis::activation_prob: t.activation_prob = internal[i]; break;
                case SweepAxis::semi_angle: m = m.with_semi_angle(internal[i]); break;
                case SweepAxis::radius: m = m.with_radius(internal[i]); break;
                }
                row.mc = simulate_unconditional_outage(m, t, config.query.threshold, config.query.mode, config.mc,
                                                       config.query.mixture);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            result.rows.push_back(std::move(row));
        }
    }

    std::string list;
    for (double v : values)
        list += (list.empty() ? "" : ",") + fmt::format("{}", v);
    header(out, config, "sweep", {{"mode", to_string(mode)}, {"sweep.axis", to_string(axis)}, {"sweep.values", list}});
    out << "param,p_out_capture,p_out_classical,mc_value,mc_ci95\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        fmt::print(out, "{},", values[i]);
        if (row.error.empty() && analytic(mode))
            fmt::print(out, "{},{}", row.p_out_capture, row.p_out_classical);
        else
            out << ',';
        if (row.error.empty() && row.mc && !row.mc->degenerate)
            fmt::print(out, ",{},{}\n", row.mc->value, row.mc->half_width_95);
        else
            out << ",,\n";
        if (!row.error.empty())
            fmt::print(out, "# row-error {}: {}\n", values[i], one_line(row.error));
    }
    return result.ok() ? kExitOk : kExitNumerical;
}

namespace {

struct Check {
    std::string name;
    bool pass = false;
    double measured = NAN;
    double tolerance = 0.0;
    std::string note;
};

template <class F>
Check run_check(const std::string& name, double tolerance, F&& measure)
{
    Check c{name, false, NAN, tolerance, {}};
    try {
        c.measured = measure();
        c.pass = c.measured < tolerance;
    } catch (const NumericalError& e) {
        c.measured = e.estimate();
        c.note = one_line(e.what());
    } catch (const std::exception& e) {
        c.note = one_line(e.what());
    }
    return c;
}

} // namespace

int cmd_validate(const RunConfig& config, std::ostream& out)
{
    const SystemModel model = config.model();
    const QuadratureSpec& spec = config.quadrature;
    InterferenceModel im(model, spec);
    std::vector<Check> checks;

    checks.push_back(run_check("single_user_cdf", 1e-6, [&] {
        const auto th = log_grid(model.snr_min(), model.snr_max(), 100);
        double worst = 0.0;
        for (double x : th)
            worst = std::max(worst, std::abs(conditional_sinr_cdf(im, 1, x) - snr_cdf_closed_form(model, x)));
        return worst;
    }));

    std::optional<CharacteristicFunction> cf;
    checks.push_back(run_check("cf_at_zero", 1e-12, [&] {
        cf.emplace(model, spec);
        return std::abs((*cf)(0.0) - Complex(1.0, 0.0));
    }));

    checks.push_back(run_check("cf_round_trip", 1e-3, [&] {
        if (!cf)
            throw NumericalError("characteristic function unavailable", NAN);
        const auto r = invert_interference(model, 1, spec, *cf);
        double worst = 0.0, peak = 0.0;
        for (double x : r.density.grid) {
            worst = std::max(worst, std::abs(r.density.pdf(x) - snr_pdf(model, x)));
            peak = std::max(peak, snr_pdf(model, x));
        }
        return worst / peak;
    }));

    for (int n : {2, 3, 4})
        checks.push_back(run_check(fmt::format("inversion_vs_convolution_n{}", n), 1e-3, [&] {
            if (!cf)
                throw NumericalError("characteristic function unavailable", NAN);
            const auto inv = invert_interference(model, n, spec, *cf).density;
            const auto conv = interference_pdf_convolution(model, n, spec);
            return cdf_sup_distance(inv, conv);
        }));

    std::uint64_t stream = config.mc.stream_id;
    // Kolmogorov-Smirnov 95% band, floored at the acceptance tolerance
    const double ks_tol = std::max(0.01, 1.36 / std::sqrt(static_cast<double>(config.mc.trials)));
    for (int n : {1, 2, 3, 5}) {
        McConfig mc = config.mc;
        mc.stream_id = stream++;
        checks.push_back(run_check(fmt::format("mc_sinr_cdf_n{}", n), ks_tol, [&] {
            auto s = sample_conditional_sinr(model, n, mc);
            std::sort(s.begin(), s.end());
            if (n == 1)
                return ks_distance(s, [&](double x) { return snr_cdf_closed_form(model, x); });
            auto d = conditional_sinr_pdf(im, n);
            d.normalize();
            return ks_distance(s, [&](double x) { return d.cdf(x); });
        }));
    }

    {
        McConfig mc = config.mc;
        mc.stream_id = stream++;
        const auto e = simulate_conditional_outage(model, 2, config.query.threshold, mc);
        checks.push_back(run_check("mc_outage_n2", std::max(e.half_width_95, 0.005), [&] {
            return std::abs(conditional_sinr_cdf(im, 2, config.query.threshold) - e.value);
        }));
    }
    {
        McConfig mc = config.mc;
        mc.stream_id = stream++;
        const auto e = simulate_unconditional_outage(model, config.traffic, config.query.threshold, config.query.mode,
                                                     mc, config.query.mixture);
        checks.push_back(run_check("mc_unconditional_outage", std::max(e.half_width_95, 0.005), [&] {
            return std::abs(unconditional_outage(im, config.traffic, config.query) - e.value);
        }));
    }

    header(out, config, "validate", {});
    out << "check,status,measured,tolerance\n";
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        fmt::print(out, "{},{},{:.3e},{:.3e}\n", c.name, c.pass ? "pass" : "fail", c.measured, c.tolerance);
        if (!c.note.empty())
            fmt::print(out, "# {}: {}\n", c.name, c.note);
    }
    fmt::print(out, "# summary: {}/{} checks passed\n",
               std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }), checks.size());
    return all ? kExitOk : kExitValidation;
}

} // namespace owcsa
