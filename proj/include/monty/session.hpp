#pragma once

// Live interactive sessions: a human plays the contestant against a simulated
// host. Transport-independent; the HTTP layer in server.hpp maps ServiceError
// statuses onto responses.

#include "monty/model.hpp"
#include "monty/simulation.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace monty {

enum class Phase { AwaitingPick, AwaitingCommit, Revealed, AwaitingDecision, Resolved };

std::string_view to_string(Phase p);

class ServiceError : public std::runtime_error {
public:
    ServiceError(int status, std::string code, const std::string& message)
        : std::runtime_error(message), status_(status), code_(std::move(code)) {}

    int status() const noexcept { return status_; }
    const std::string& code() const noexcept { return code_; }

private:
    int status_;
    std::string code_;
};

using Clock = std::chrono::system_clock;

struct Session {
    std::string id;
    std::uint64_t ordinal = 0;
    Variant variant = Variant::GameI;
    HostBias bias;
    Phase phase = Phase::AwaitingPick;
    std::vector<Phase> phase_history;
    // Physical box (0..2) holding the car, fixed at creation.
    int car_box = 0;
    // Physical boxes at T, L, R once the pick is made.
    std::optional<std::array<int, 3>> frame;
    std::optional<Box> host_opened;
    std::optional<Decision> decision;
    std::optional<Outcome> outcome;
    Clock::time_point created_at;
    std::optional<Clock::time_point> resolved_at;

    // Car position in the canonical frame; requires a pick.
    Box hidden_car() const;
    GameTranscript transcript() const;
};

// Public JSON view. The car's location appears only once phase is Resolved.
nlohmann::json public_view(const Session& s);

nlohmann::json rational_json(const Rational& r);
// Accepts "a/b" / decimal strings and JSON numbers.
Rational rational_from_json(const nlohmann::json& j);

std::string iso8601(Clock::time_point t);

// Nearest multiple of 1/8, ties rounded up.
Rational q_bucket(const Rational& q);

struct StatsFilter {
    std::optional<Variant> variant;
    std::optional<Rational> q; // bucketed before matching
};

class SessionManager {
public:
    struct Options {
        Rational q_default{1, 2};
        std::optional<std::uint64_t> seed; // random_device when absent
        std::string transcript_log;        // empty: no log
    };

    SessionManager();
    explicit SessionManager(Options options);

    Session create(std::optional<Variant> variant, std::optional<Rational> q);
    Session pick(const std::string& id, int box = 0);
    Session decide(const std::string& id, Decision decision);
    Session get(const std::string& id) const;

    nlohmann::json stats(const StatsFilter& filter) const;

    const Options& options() const noexcept { return options_; }

private:
    struct Entry {
        mutable std::mutex mutex;
        Session session;
    };

    // Per (variant, bucket numerator k in 0..8, decision), split by door L/R.
    using StatsKey = std::tuple<Variant, int, Decision>;
    struct Cell {
        Tally by_door[2];
    };

    std::shared_ptr<Entry> find(const std::string& id) const;
    double next_uniform();
    std::string next_id();

    Options options_;
    mutable std::shared_mutex sessions_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t next_ordinal_ = 0;

    std::mutex rng_mutex_;
    std::mt19937_64 rng_;

    mutable std::mutex stats_mutex_;
    std::map<StatsKey, Cell> stats_;

    std::mutex log_mutex_;
    std::ofstream log_;
};

} // namespace monty
