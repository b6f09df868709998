#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "owcsa/errors.hpp"
#include "owcsa/montecarlo.hpp"

namespace owcsa {

void McConfig::validate() const
{
    if (trials < 1)
        throw DomainError("mc trials must be >= 1");
    if (threads < 0)
        throw DomainError("mc threads must be >= 0");
}

double half_width_95(double p, std::int64_t n)
{
    if (n <= 0)
        return 0.0;
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

Xoshiro256 shard_generator(std::uint64_t seed, std::uint64_t stream_id, std::int64_t shard)
{
    Xoshiro256 g(seed);
    for (std::uint64_t i = 0; i < stream_id; ++i)
        g.long_jump();
    for (std::int64_t i = 0; i < shard; ++i)
        g.jump();
    return g;
}

double sample_user_snr(const SystemModel& model, Xoshiro256& rng)
{
    const double r = model.cell().radius * std::sqrt(rng.uniform());
    return snr_of_gain(model, channel_gain(model, r));
}

SlotOutcome simulate_slot(const SystemModel& model, int n_active, double threshold, Xoshiro256& rng)
{
    SlotOutcome out;
    out.active = n_active;
    if (n_active < 1)
        return out;
    const double ref = sample_user_snr(model, rng);
    out.classical_outage = n_active >= 2 || ref < threshold;
    if (ref < threshold) {
        out.capture_outage = true;
        return out;
    }
    double sum = 0.0;
    for (int i = 1; i < n_active; ++i) {
        sum += sample_user_snr(model, rng);
        if (ref / (sum + 1.0) < threshold) {
            out.capture_outage = true;
            break;
        }
    }
    return out;
}

SlotOutcome simulate_slot(const SystemModel& model, const TrafficModel& traffic, double threshold, Xoshiro256& rng)
{
    std::binomial_distribution<int> active(traffic.population, traffic.activation_prob);
    return simulate_slot(model, active(rng), threshold, rng);
}

namespace {

struct Counts {
    std::int64_t slots = 0;
    std::int64_t outages = 0;
};

int worker_count(const McConfig& mc, std::int64_t shards)
{
    int n = mc.threads > 0 ? mc.threads : static_cast<int>(std::thread::hardware_concurrency());
    return static_cast<int>(std::clamp<std::int64_t>(n, 1, shards));
}

// Runs body(rng, shard, n_trials) for every shard, in parallel; results are
// stored per shard so the caller reduces in shard order.
template <class Result, class Body>
std::vector<Result> run_shards(const McConfig& mc, Body&& body)
{
    const std::int64_t shards = (mc.trials + kShardTrials - 1) / kShardTrials;
    std::vector<Result> results(static_cast<std::size_t>(shards));
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        for (std::int64_t s; (s = next.fetch_add(1)) < shards;) {
            auto rng = shard_generator(mc.seed, mc.stream_id, s);
            const std::int64_t n = std::min(kShardTrials, mc.trials - s * kShardTrials);
            results[static_cast<std::size_t>(s)] = body(rng, n);
        }
    };
    const int workers = worker_count(mc, shards);
    std::vector<std::jthread> pool;
    for (int i = 1; i < workers; ++i)
        pool.emplace_back(work);
    work();
    return results;
}

McEstimate finish(const std::vector<Counts>& shards)
{
    Counts total;
    for (const auto& c : shards) {
        total.slots += c.slots;
        total.outages += c.outages;
    }
    McEstimate e;
    e.trials = total.slots;
    if (total.slots == 0) {
        e.degenerate = true;
        return e;
    }
    e.value = static_cast<double>(total.outages) / static_cast<double>(total.slots);
    e.half_width_95 = half_width_95(e.value, e.trials);
    return e;
}

} // namespace

std::vector<double> sample_conditional_sinr(const SystemModel& model, int n_active, const McConfig& mc)
{
    mc.validate();
    if (n_active < 1)
        throw DomainError("n_active must be >= 1");
    auto parts = run_shards<std::vector<double>>(mc, [&](Xoshiro256& rng, std::int64_t n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& x : v) {
            const double ref = sample_user_snr(model, rng);
            double sum = 0.0;
            for (int i = 1; i < n_active; ++i)
                sum += sample_user_snr(model, rng);
            x = ref / (sum + 1.0);
        }
        return v;
    });
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(mc.trials));
    for (const auto& p : parts)
        all.insert(all.end(), p.begin(), p.end());
    return all;
}

McEstimate simulate_conditional_outage(const SystemModel& model, int n_active, double threshold, const McConfig& mc)
{
    mc.validate();
    if (n_active < 1)
        throw DomainError("n_active must be >= 1");
    return finish(run_shards<Counts>(mc, [&](Xoshiro256& rng, std::int64_t n) {
        Counts c;
        c.slots = n;
        for (std::int64_t i = 0; i < n; ++i)
            c.outages += simulate_slot(model, n_active, threshold, rng).capture_outage;
        return c;
    }));
}

McEstimate simulate_unconditional_outage(const SystemModel& model, const TrafficModel& traffic, double threshold,
                                         ReceiverMode mode, const McConfig& mc, Mixture mixture)
{
    mc.validate();
    traffic.validate();
    if (traffic.activation_prob == 0.0) {
        McEstimate e;
        e.degenerate = true;
        return e;
    }
    return finish(run_shards<Counts>(mc, [&](Xoshiro256& rng, std::int64_t n) {
        std::binomial_distribution<int> active(traffic.population, traffic.activation_prob);
        Counts c;
        for (std::int64_t i = 0; i < n; ++i) {
            const int ua = active(rng);
            if (ua == 0) {
                c.slots += mixture == Mixture::paper;
                continue;
            }
            ++c.slots;
            const auto slot = simulate_slot(model, ua, threshold, rng);
            c.outages += mode == ReceiverMode::capture ? slot.capture_outage : slot.classical_outage;
        }
        return c;
    }));
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf)
{
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
    }
    return d;
}

std::vector<double> empirical_cdf(const std::vector<double>& sorted, const std::vector<double>& x)
{
    std::vector<double> out(x.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x[i]) - sorted.begin()) / n;
    return out;
}

} // namespace owcsa
