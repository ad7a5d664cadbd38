#pragma once

#include "monty/analytics.hpp"
#include "monty/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace monty {

// Counter-based randomness: every draw is a pure function of
// (seed, trial, slot), so batch scheduling cannot change results.
namespace rng {

enum Slot : std::uint64_t { kCar = 0, kHost = 1, kStrategy = 2 };

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t bits(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot);
// Uniform double in [0, 1) on the 2^-53 grid.
double uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot);
// Uniform car placement over {T, L, R}.
Box car(std::uint64_t seed, std::uint64_t trial);

} // namespace rng

struct Strategy {
    enum class Kind { AlwaysStay, AlwaysSwitch, Mixed, BiasAware };

    Kind kind = Kind::AlwaysSwitch;
    Rational switch_probability{0}; // Mixed only

    static Strategy always_stay() { return {Kind::AlwaysStay, Rational(0)}; }
    static Strategy always_switch() { return {Kind::AlwaysSwitch, Rational(1)}; }
    static Strategy mixed(Rational p) { return {Kind::Mixed, p}; }
    static Strategy bias_aware() { return {Kind::BiasAware, Rational(0)}; }

    // "stay", "switch", "bias-aware", "mixed:<p>"
    static Strategy parse(std::string_view text);
    std::string str() const;

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct SimulationConfig {
    Variant variant = Variant::GameI;
    HostBias bias;
    Strategy strategy;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    // 0 picks a default (min(trials, 65536)).
    std::uint64_t batch_size = 0;
    // 0 uses std::thread::hardware_concurrency().
    unsigned threads = 0;

    std::uint64_t effective_batch_size() const;
    // Throws Error on an invalid configuration.
    void validate() const;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Wilson score interval at 95% confidence. Throws on games == 0 or wins > games.
Interval wilson_interval(std::uint64_t wins, std::uint64_t games);

struct Tally {
    std::uint64_t games = 0;
    std::uint64_t wins = 0;

    Tally& operator+=(const Tally& o) {
        games += o.games;
        wins += o.wins;
        return *this;
    }
    friend bool operator==(const Tally&, const Tally&) = default;
};

// Empirical rate with its interval; both absent when no games qualified.
struct RateEstimate {
    Tally tally;
    std::optional<double> rate;
    std::optional<Interval> ci95;

    static RateEstimate from(const Tally& t);
    friend bool operator==(const RateEstimate&, const RateEstimate&) = default;
};

struct SimulationResult {
    SimulationConfig config;
    std::uint64_t wins_total = 0;
    std::map<Box, Tally> wins_given_opened; // keys L and R
    RateEstimate overall;
    std::map<Box, RateEstimate> conditional; // keys L and R
    double elapsed_seconds = 0.0;

    double empirical_rate() const { return *overall.rate; }
};

SimulationResult run(const SimulationConfig& config);

// Exact values the empirical rates estimate, for the configured strategy.
struct ExactExpectation {
    Rational unconditional;
    std::map<Box, Rational> given_opened;   // P(win | host opened door)
    std::map<Box, Rational> opened_fraction; // P(host opens door)
};

ExactExpectation exact_expectation(Variant variant, const HostBias& bias, const Strategy& strategy);

// |observed - p| < k * sqrt(p(1-p)/n); when the bound is zero the observed
// value must equal p exactly.
struct SigmaCheck {
    std::string name;
    double observed = 0.0;
    Rational expected;
    std::uint64_t n = 0;
    double bound = 0.0;
    bool pass = false;
};

bool within_sigma(double observed, const Rational& expected, std::uint64_t n, double k,
                  double* bound_out = nullptr);

// Unconditional rate, each defined conditional rate, and the H_R fraction.
std::vector<SigmaCheck> three_sigma_checks(const SimulationResult& result);

struct SweepRow {
    HostBias bias;
    std::uint64_t seed = 0;
    SimulationResult result;
    ExactExpectation exact;
};

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t index);

// One run per grid point; row i uses sweep_seed(base.seed, i).
std::vector<SweepRow> sweep_bias(const std::vector<HostBias>& grid, const SimulationConfig& base);

} // namespace monty
