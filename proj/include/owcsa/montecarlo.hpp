#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "owcsa/channel.hpp"
#include "owcsa/rng.hpp"
#include "owcsa/traffic.hpp"

namespace owcsa {

struct McConfig {
    std::int64_t trials = 1'000'000;
    std::uint64_t seed = 20240101;
    std::uint64_t stream_id = 0;
    int threads = 0; // 0: hardware concurrency; never changes the result

    void validate() const;
};

struct McEstimate {
    double value = 0.0;
    double half_width_95 = 0.0;
    std::int64_t trials = 0;
    bool degenerate = false; // nothing to condition on (no active slot)
};

/// 1.96 sqrt(p (1 - p) / n); 0 when n == 0.
double half_width_95(double p, std::int64_t n);

/// Trials per shard. Shard k of a stream starts k jumps after the stream origin.
inline constexpr std::int64_t kShardTrials = 1 << 16;

/// Generator of shard `shard` of (seed, stream_id).
Xoshiro256 shard_generator(std::uint64_t seed, std::uint64_t stream_id, std::int64_t shard);

double sample_user_snr(const SystemModel& model, Xoshiro256& rng);

/// Outage indicators of one slot under both receivers, from the same draws.
struct SlotOutcome {
    int active = 0;
    bool capture_outage = false;
    bool classical_outage = false;
};

/// Draws the reference user first, then interferers until the capture
/// decision is settled.
SlotOutcome simulate_slot(const SystemModel& model, int n_active, double threshold, Xoshiro256& rng);
SlotOutcome simulate_slot(const SystemModel& model, const TrafficModel& traffic, double threshold,
                          Xoshiro256& rng);

/// Reference-user SINR for `trials` slots with n_active users (unsorted).
std::vector<double> sample_conditional_sinr(const SystemModel& model, int n_active, const McConfig& mc);

McEstimate simulate_conditional_outage(const SystemModel& model, int n_active, double threshold,
                                       const McConfig& mc);

McEstimate simulate_unconditional_outage(const SystemModel& model, const TrafficModel& traffic, double threshold,
                                         ReceiverMode mode, const McConfig& mc, Mixture mixture = Mixture::paper);

/// Kolmogorov-Smirnov distance between the empirical CDF of `sorted` and `cdf`.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

/// Empirical CDF of `sorted` at each abscissa of `x` (P[X <= x]).
std::vector<double> empirical_cdf(const std::vector<double>& sorted, const std::vector<double>& x);

} // namespace owcsa
