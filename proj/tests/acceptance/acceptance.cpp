// Acceptance suite: one PASS/FAIL line per criterion, with the measured value,
// the pinned tolerance and the runtime budget. argv[1] is the CLI binary.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "owcsa/montecarlo.hpp"
#include "owcsa/reliability.hpp"
#include "owcsa/sinr.hpp"

using namespace owcsa;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const char* name, bool pass, const std::string& detail)
{
    std::printf("[%s] C%d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    failures += !pass;
}

void note(const std::string& line)
{
    std::printf("       %s\n", line.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args)
{
    std::array<char, 512> buf{};
    std::snprintf(buf.data(), buf.size(), f, args...);
    return buf.data();
}

template <class F>
void guarded(int id, const char* name, F&& body)
{
    try {
        body();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

const SystemModel kModel = SystemModel::reference();
const QuadratureSpec kSpec{};

void single_user()
{
    const auto t0 = std::chrono::steady_clock::now();
    InterferenceModel im(kModel, kSpec);
    double worst = 0.0;
    for (double x : log_grid(kModel.snr_min(), kModel.snr_max(), 100))
        worst = std::max(worst, std::abs(conditional_sinr_cdf(im, 1, x) - snr_cdf_closed_form(kModel, x)));
    const double dt = seconds_since(t0);
    report(1, "single-user oracle", worst < 1e-6 && dt < 1.0,
           fmt("max|dF| = %.2e over 100 thresholds (tol 1e-6), %.2f s (limit 1 s)", worst, dt));
}

void round_trip()
{
    const auto t0 = std::chrono::steady_clock::now();
    const CharacteristicFunction cf(kModel, kSpec);
    const double at_zero = std::abs(cf(0.0) - Complex(1.0, 0.0));
    const auto r = invert_interference(kModel, 1, kSpec, cf);
    double worst = 0.0, peak = 0.0;
    for (double x : r.density.grid) {
        worst = std::max(worst, std::abs(r.density.pdf(x) - snr_pdf(kModel, x)));
        peak = std::max(peak, snr_pdf(kModel, x));
    }
    const double dt = seconds_since(t0);
    report(2, "CF round-trip", worst / peak < 1e-3 && at_zero < 1e-12 && dt < 5.0,
           fmt("sup|f_inv - f|/peak = %.2e (tol 1e-3), |CF(0)-1| = %.1e (tol 1e-12), %.2f s (limit 5 s)",
               worst / peak, at_zero, dt));
}

void path_agreement()
{
    const auto t0 = std::chrono::steady_clock::now();
    const CharacteristicFunction cf(kModel, kSpec);
    double worst = 0.0;
    std::string parts;
    for (int n : {2, 3, 4}) {
        const auto inv = invert_interference(kModel, n, kSpec, cf).density;
        const auto conv = interference_pdf_convolution(kModel, n, kSpec);
        const double d = cdf_sup_distance(inv, conv);
        worst = std::max(worst, d);
        parts += fmt(" n=%d:%.1e", n, d);
    }
    const double dt = seconds_since(t0);
    report(3, "inversion vs convolution", worst < 1e-3 && dt < 30.0,
           fmt("CDF sup-distance%s (tol 1e-3), %.2f s (limit 30 s)", parts.c_str(), dt));
}

void mc_validation()
{
    McConfig mc;
    mc.trials = 1'000'000;
    bool pass = true;
    std::string parts;
    InterferenceModel im(kModel, kSpec);
    for (int n : {1, 2, 3, 5}) {
        const auto t0 = std::chrono::steady_clock::now();
        mc.stream_id = static_cast<std::uint64_t>(n);
        auto analytic = conditional_sinr_pdf(im, n);
        analytic.normalize();
        auto s = sample_conditional_sinr(kModel, n, mc);
        std::sort(s.begin(), s.end());
        const double ks = n == 1 ? ks_distance(s, [](double x) { return snr_cdf_closed_form(kModel, x); })
                                 : ks_distance(s, [&](double x) { return analytic.cdf(x); });
        const double dt = seconds_since(t0);
        pass = pass && ks < 0.01 && dt < 60.0;
        parts += fmt(" n=%d:%.2e/%.1fs", n, ks, dt);
    }
    report(4, "MC conditional SINR CDF", pass,
           fmt("KS distance/runtime%s (tol 0.01, limit 60 s per case, 1e6 slots)", parts.c_str()));
}

void unconditional()
{
    const auto t0 = std::chrono::steady_clock::now();
    McConfig mc;
    mc.trials = 1'000'000;
    InterferenceModel im(kModel, kSpec);
    bool pass = true;
    std::vector<std::string> rows;
    for (int u : {50, 500})
        for (double pa : {0.01, 0.1, 0.3}) {
            const TrafficModel t{u, pa};
            const double a = unconditional_outage(im, t, OutageQuery{});
            const auto e = simulate_unconditional_outage(kModel, t, kDefaultThreshold, ReceiverMode::capture, mc);
            const double tol = std::max(e.half_width_95, 0.005);
            const bool ok = std::abs(a - e.value) < tol;
            pass = pass && ok;
            rows.push_back(fmt("U=%-3d pa=%-4g analytic=%.6f mc=%.6f |d|=%.1e tol=%.1e %s", u, pa, a, e.value,
                               std::abs(a - e.value), tol, ok ? "ok" : "MISS"));
        }
    const double dt = seconds_since(t0);
    report(5, "unconditional outage vs MC (3 dB, paper mixture)", pass && dt < 120.0,
           fmt("6 cases, |d| < max(CI95, 0.005), %.1f s (limit 120 s)", dt));
    for (const auto& r : rows)
        note(r);
}

const std::vector<double> kUsers{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};

bool nondecreasing(const std::vector<double>& v, double slack = 1e-12)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1] - slack)
            return false;
    return true;
}

std::string series(const std::vector<double>& params, const std::vector<double>& v, double scale = 1.0)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += fmt("%s%g:%.4g", i ? " " : "", params[i] * scale, v[i]);
    return s;
}

std::vector<double> capture_column(const SweepResult& r)
{
    std::vector<double> v;
    for (const auto& row : r.rows) {
        if (!row.error.empty())
            throw std::runtime_error("sweep row failed: " + row.error);
        v.push_back(row.p_out_capture);
    }
    return v;
}

void dominance()
{
    bool pass = true;
    int rows = 0;
    double margin = INFINITY;
    for (double pa : {0.01, 0.1, 0.3}) {
        const auto r = sweep(kModel, {50, pa}, OutageQuery{}, SweepAxis::users, kUsers, kSpec);
        for (const auto& row : r.rows) {
            if (!row.error.empty())
                throw std::runtime_error("sweep row failed: " + row.error);
            pass = pass && row.p_out_capture <= row.p_out_classical + 1e-12;
            margin = std::min(margin, row.p_out_classical - row.p_out_capture);
            ++rows;
        }
    }
    report(6, "capture <= classical on the users sweep", pass,
           fmt("%d rows over pa in {0.01, 0.1, 0.3}, min(classical - capture) = %.2e (slack 1e-12)", rows, margin));
}

void figure_shapes()
{
    bool pass = true;
    std::vector<std::string> lines;
    auto sub = [&](const std::string& what, bool ok, const std::string& values) {
        pass = pass && ok;
        lines.push_back(fmt("%s %s: %s", ok ? "ok  " : "MISS", what.c_str(), values.c_str()));
    };

    for (double pa : {0.01, 0.1, 0.3}) {
        const auto v = capture_column(sweep(kModel, {50, pa}, OutageQuery{}, SweepAxis::users, kUsers, kSpec));
        sub(fmt("nondecreasing in U (pa=%g)", pa), nondecreasing(v), series(kUsers, v));
    }
    const std::vector<double> pas{0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5};
    for (int u : {50, 500}) {
        const auto v = capture_column(sweep(kModel, {u, 0.01}, OutageQuery{}, SweepAxis::activation_prob, pas, kSpec));
        sub(fmt("nondecreasing in pa (U=%d)", u), nondecreasing(v), series(pas, v));
    }

    std::vector<double> angles;
    for (int d = 15; d <= 75; d += 5)
        angles.push_back(d * kPi / 180);
    const auto va = capture_column(sweep(kModel, {50, 0.01}, OutageQuery{}, SweepAxis::semi_angle, angles, kSpec));
    bool decreasing = true;
    for (std::size_t i = 1; i < va.size(); ++i)
        decreasing = decreasing && va[i] < va[i - 1];
    sub("decreasing in semi-angle over [15, 75] deg (pa=0.01, U=50)", decreasing, series(angles, va, 180 / kPi));

    std::vector<double> radii;
    for (int i = 0; i <= 8; ++i)
        radii.push_back(1.0 + 0.5 * i);
    const auto vr = capture_column(sweep(kModel, {50, 0.01}, OutageQuery{}, SweepAxis::radius, radii, kSpec));
    sub("nondecreasing in R over [1, 5] m (pa=0.01, U=50)", nondecreasing(vr), series(radii, vr));

    report(7, "qualitative figure shapes", pass, "monotonicity of computed capture-outage rows");
    for (const auto& l : lines)
        note(l);
}

std::string run(const std::string& cmd)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        throw std::runtime_error("cannot run " + cmd);
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;)
        out.append(buf.data(), n);
    const int status = pclose(p);
    if (status != 0)
        out += fmt("\n<exit status %d>", status);
    return out;
}

void determinism(const std::string& cli)
{
    const std::string cmd = "'" + cli + "' validate --seed 7 --out -";
    const std::string a = run(cmd), b = run(cmd);
    const bool all_pass = a.find(",fail,") == std::string::npos && a.find("<exit status") == std::string::npos;
    report(8, "validate is byte-identical across runs", a == b && !a.empty(),
           fmt("%zu bytes, identical=%s, validate checks all passing=%s", a.size(), a == b ? "yes" : "no",
               all_pass ? "yes" : "no"));
}

} // namespace

int main(int argc, char** argv)
{
    const auto t0 = std::chrono::steady_clock::now();
    guarded(1, "single-user oracle", single_user);
    guarded(2, "CF round-trip", round_trip);
    guarded(3, "inversion vs convolution", path_agreement);
    guarded(4, "MC conditional SINR CDF", mc_validation);
    guarded(5, "unconditional outage vs MC", unconditional);
    guarded(6, "capture <= classical", dominance);
    guarded(7, "qualitative figure shapes", figure_shapes);
    if (argc > 1)
        guarded(8, "validate determinism", [&] { determinism(argv[1]); });
    else
        report(8, "validate determinism", false, "CLI path not given");
    std::printf("%d of 8 criteria failed, %.1f s\n", failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
