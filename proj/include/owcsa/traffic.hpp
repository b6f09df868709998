#pragma once

namespace owcsa {

/// U users, each active in a slot with probability p_a.
struct TrafficModel {
    int population = 50;
    double activation_prob = 0.01;

    void validate() const;
};

/// capture: the reference user is decoded when its SINR clears the threshold.
/// classical: any slot with two or more transmissions is lost.
enum class ReceiverMode { capture, classical };

/// paper: average over all slots, empty slots count as success.
/// conditional: average over slots with at least one active user.
enum class Mixture { paper, conditional };

const char* to_string(ReceiverMode m);
const char* to_string(Mixture m);

} // namespace owcsa
