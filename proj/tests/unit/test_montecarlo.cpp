#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "owcsa/errors.hpp"
#include "owcsa/montecarlo.hpp"
#include "owcsa/reliability.hpp"

using namespace owcsa;
using doctest::Approx;

namespace {

const SystemModel& model()
{
    static const SystemModel m = SystemModel::reference();
    return m;
}

McConfig mc(std::int64_t trials, std::uint64_t stream = 0)
{
    McConfig c;
    c.trials = trials;
    c.seed = 12345;
    c.stream_id = stream;
    return c;
}

} // namespace

TEST_CASE("xoshiro256** reference outputs")
{
    Xoshiro256 g(42);
    CHECK(g() == 0x15780b2e0c2ec716ULL);
    CHECK(g() == 0x6104d9866d113a7eULL);
    CHECK(g() == 0xae17533239e499a1ULL);
    Xoshiro256 j(42);
    j.jump();
    CHECK(j() == 0x50086ef83cbf4f4aULL);
    CHECK(j() == 0xba285ec21347d703ULL);
    for (int i = 0; i < 1000; ++i) {
        const double u = g.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("shard generators are distinct and reproducible")
{
    CHECK(shard_generator(1, 0, 0) == Xoshiro256(1));
    CHECK(shard_generator(1, 2, 3) == shard_generator(1, 2, 3));
    CHECK_FALSE(shard_generator(1, 0, 1) == shard_generator(1, 1, 0));
    CHECK_FALSE(shard_generator(1, 0, 1) == shard_generator(1, 0, 0));
}

TEST_CASE("sampled SNR follows the closed-form distribution")
{
    auto rng = shard_generator(99, 0, 0);
    std::vector<double> s(1'000'000);
    for (auto& x : s) {
        x = sample_user_snr(model(), rng);
        REQUIRE(x >= model().snr_min());
        REQUIRE(x <= model().snr_max());
    }
    std::sort(s.begin(), s.end());
    CHECK(ks_distance(s, [](double x) { return snr_cdf_closed_form(model(), x); }) < 0.002);

    const auto tiny = model().with_radius(1e-6);
    for (int i = 0; i < 100; ++i)
        CHECK(sample_user_snr(tiny, rng) == Approx(tiny.snr_max()).epsilon(1e-9));
}

TEST_CASE("conditional outage estimates")
{
    CHECK(simulate_conditional_outage(model(), 1, 0.9 * model().snr_min(), mc(10000)).value == 0.0);

    const double th = std::pow(10.0, 0.3);
    const auto one = simulate_conditional_outage(model(), 1, th, mc(1'000'000));
    CHECK(std::abs(one.value - snr_cdf_closed_form(model(), th)) <= one.half_width_95);
    CHECK(one.trials == 1'000'000);
    CHECK(one.half_width_95 == Approx(half_width_95(one.value, one.trials)));

    const auto two = simulate_conditional_outage(model(), 2, 2.0, mc(1'000'000, 1));
    InterferenceModel im(model(), QuadratureSpec{});
    CHECK(std::abs(two.value - conditional_sinr_cdf(im, 2, 2.0)) <= std::max(two.half_width_95, 0.005));
    CHECK_THROWS_AS(simulate_conditional_outage(model(), 0, 2.0, mc(10)), DomainError);
}

TEST_CASE("unconditional outage estimates")
{
    const double th = kDefaultThreshold;
    const auto none = simulate_unconditional_outage(model(), {50, 0.0}, th, ReceiverMode::capture, mc(1000));
    CHECK(none.degenerate);
    CHECK(none.value == 0.0);
    CHECK(none.trials == 0);

    const auto always = simulate_unconditional_outage(model(), {2, 1.0}, th, ReceiverMode::classical, mc(10000));
    CHECK(always.value == 1.0);
    CHECK(always.half_width_95 == 0.0);

    const TrafficModel t{50, 0.01};
    const auto e = simulate_unconditional_outage(model(), t, th, ReceiverMode::capture, mc(1'000'000));
    const double analytic = unconditional_outage(model(), t, OutageQuery{}, QuadratureSpec{});
    CHECK(std::abs(e.value - analytic) <= std::max(e.half_width_95, 0.005));

    OutageQuery cq;
    cq.mixture = Mixture::conditional;
    const auto c = simulate_unconditional_outage(model(), t, th, ReceiverMode::capture, mc(1'000'000), Mixture::conditional);
    CHECK(c.trials < 1'000'000);
    CHECK(std::abs(c.value - unconditional_outage(model(), t, cq, QuadratureSpec{})) <= std::max(c.half_width_95, 0.005));
}

TEST_CASE("estimates are reproducible and independent of the thread count")
{
    auto base = mc(300'000);
    base.threads = 1;
    auto many = base;
    many.threads = 4;
    const TrafficModel t{30, 0.1};
    const auto a = simulate_unconditional_outage(model(), t, 2.0, ReceiverMode::capture, base);
    const auto b = simulate_unconditional_outage(model(), t, 2.0, ReceiverMode::capture, many);
    const auto c = simulate_unconditional_outage(model(), t, 2.0, ReceiverMode::capture, base);
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(sample_conditional_sinr(model(), 3, base) == sample_conditional_sinr(model(), 3, many));

    auto other = base;
    other.stream_id = 7;
    const auto d = simulate_unconditional_outage(model(), t, 2.0, ReceiverMode::capture, other);
    CHECK(d.value != a.value);
    CHECK(std::abs(d.value - a.value) < 4 * a.half_width_95);
}

TEST_CASE("classical outage dominates capture outage slot by slot")
{
    auto rng = shard_generator(5, 0, 0);
    for (double th : {1.0, 2.0, 10.0})
        for (int i = 0; i < 100'000; ++i) {
            const auto s = simulate_slot(model(), TrafficModel{20, 0.2}, th, rng);
            REQUIRE(s.classical_outage >= s.capture_outage);
            if (s.active >= 2)
                REQUIRE(s.classical_outage);
        }
}

TEST_CASE("confidence half-width scales with the trial count")
{
    for (double p : {0.01, 0.3, 0.5})
        CHECK(half_width_95(p, 2000) * std::sqrt(2.0) == Approx(half_width_95(p, 1000)).epsilon(1e-15));
    CHECK(half_width_95(0.5, 0) == 0.0);
    CHECK(half_width_95(0.5, 10000) == Approx(1.96 * 0.005));
}

TEST_CASE("empirical CDF and KS distance")
{
    const std::vector<double> s{1, 2, 3, 4};
    CHECK(empirical_cdf(s, {0.5, 1.0, 2.5, 4.0, 9.0}) == std::vector<double>{0.0, 0.25, 0.5, 1.0, 1.0});
    CHECK(ks_distance(s, [](double x) { return std::clamp(x / 4.0, 0.0, 1.0); }) == Approx(0.25));
}

TEST_CASE("mc configuration validation")
{
    auto c = mc(0);
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = mc(10);
    c.threads = -1;
    CHECK_THROWS_AS(c.validate(), DomainError);
}
