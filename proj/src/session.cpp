#include "monty/session.hpp"

#include "monty/analytics.hpp"
#include "monty/error.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <cstdio>

namespace monty {

using nlohmann::json;

std::string_view to_string(Phase p) {
    switch (p) {
    case Phase::AwaitingPick: return "AwaitingPick";
    case Phase::AwaitingCommit: return "AwaitingCommit";
    case Phase::Revealed: return "Revealed";
    case Phase::AwaitingDecision: return "AwaitingDecision";
    case Phase::Resolved: return "Resolved";
    }
    return "?";
}

Box Session::hidden_car() const {
    if (!frame) throw Error(ErrorCode::Internal, "canonical frame not set before pick");
    if ((*frame)[0] == car_box) return Box::T;
    return (*frame)[1] == car_box ? Box::L : Box::R;
}

GameTranscript Session::transcript() const {
    GameTranscript t;
    t.variant = variant;
    t.car = hidden_car();
    t.bias = bias;
    t.host_opened = host_opened.value_or(Box::L);
    t.decision = decision.value_or(Decision::Stay);
    t.outcome = outcome.value_or(Outcome::Lose);
    t.seed_index = ordinal;
    t.decided_before_reveal = variant == Variant::GameII;
    return t;
}

json rational_json(const Rational& r) {
    return json{{"num", r.num()}, {"den", r.den()}, {"approx", r.to_double()}};
}

Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (!std::isfinite(v)) throw Error(ErrorCode::Parse, "non-finite number");
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        if (ec != std::errc()) throw Error(ErrorCode::Parse, "cannot format number");
        return Rational::parse(std::string_view(buf, static_cast<std::size_t>(end - buf)));
    }
    if (j.is_object() && j.contains("num") && j.contains("den")) {
        return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
    }
    throw Error(ErrorCode::Parse, "expected a rational as \"a/b\", a decimal, or a number");
}

std::string iso8601(Clock::time_point t) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
    std::time_t secs = static_cast<std::time_t>(ms / 1000);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                  static_cast<int>(ms % 1000));
    return buf;
}

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    return std::string(to_string(*v));
}

int bucket_index(const Rational& q) {
    // floor(8q + 1/2) on the exact rational; q in [0, 1].
    Rational scaled = q * Rational(8) + Rational(1, 2);
    return static_cast<int>(scaled.num() / scaled.den());
}

json tally_json(const Tally& t) {
    RateEstimate e = RateEstimate::from(t);
    json j{{"games", t.games}, {"wins", t.wins}, {"empirical_rate", nullptr}, {"ci95", nullptr}};
    if (e.rate) {
        j["empirical_rate"] = *e.rate;
        j["ci95"] = {{"low", e.ci95->low}, {"high", e.ci95->high}};
    }
    return j;
}

} // namespace

json public_view(const Session& s) {
    json phases = json::array();
    for (Phase p : s.phase_history) phases.push_back(std::string(to_string(p)));
    json j{
        {"id", s.id},
        {"variant", std::string(to_string(s.variant))},
        {"q", rational_json(s.bias.q())},
        {"phase", std::string(to_string(s.phase))},
        {"phase_history", phases},
        {"picked_box", nullptr},
        {"frame", nullptr},
        {"host_opened", optional_json(s.host_opened)},
        {"decision", optional_json(s.decision)},
        {"decided_before_reveal", s.variant == Variant::GameII},
        {"outcome", optional_json(s.outcome)},
        {"created_at", iso8601(s.created_at)},
    };
    if (s.frame) {
        j["picked_box"] = (*s.frame)[0];
        j["frame"] = {{"T", (*s.frame)[0]}, {"L", (*s.frame)[1]}, {"R", (*s.frame)[2]}};
    }
    if (s.phase == Phase::Resolved) {
        j["hidden_car"] = std::string(to_string(s.hidden_car()));
        j["car_box"] = s.car_box;
        j["resolved_at"] = iso8601(*s.resolved_at);
    }
    return j;
}

Rational q_bucket(const Rational& q) { return Rational(bucket_index(q), 8); }

SessionManager::SessionManager() : SessionManager(Options{}) {}

SessionManager::SessionManager(Options options) : options_(std::move(options)) {
    HostBias check(options_.q_default);
    (void)check;
    rng_.seed(options_.seed ? *options_.seed : std::random_device{}());
    if (!options_.transcript_log.empty()) {
        log_.open(options_.transcript_log, std::ios::app);
        if (!log_) {
            throw Error(ErrorCode::Io, "cannot open transcript log " + options_.transcript_log);
        }
    }
}

double SessionManager::next_uniform() {
    std::lock_guard lock(rng_mutex_);
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::string SessionManager::next_id() {
    std::lock_guard lock(rng_mutex_);
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    return buf;
}

Session SessionManager::create(std::optional<Variant> variant, std::optional<Rational> q) {
    Session s;
    s.variant = variant.value_or(Variant::GameI);
    try {
        s.bias = HostBias(q.value_or(options_.q_default));
    } catch (const Error& e) {
        throw ServiceError(400, "bad_request", e.what());
    }
    s.phase = Phase::AwaitingPick;
    s.phase_history = {Phase::AwaitingPick};
    s.car_box = static_cast<int>(next_uniform() * 3.0);
    s.created_at = Clock::now();
    s.id = next_id();

    auto entry = std::make_shared<Entry>();
    std::unique_lock lock(sessions_mutex_);
    s.ordinal = next_ordinal_++;
    entry->session = s;
    sessions_.emplace(s.id, std::move(entry));
    return s;
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw ServiceError(404, "not_found", "unknown session " + id);
    return it->second;
}

Session SessionManager::get(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return entry->session;
}

Session SessionManager::pick(const std::string& id, int box) {
    if (box < 0 || box > 2) throw ServiceError(400, "bad_request", "box must be 0, 1 or 2");
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    Session& s = entry->session;
    if (s.phase != Phase::AwaitingPick) {
        throw ServiceError(409, "conflict", "pick not allowed in phase " + std::string(to_string(s.phase)));
    }
    s.frame = std::array<int, 3>{box, (box + 1) % 3, (box + 2) % 3};
    if (s.variant == Variant::GameI) {
        s.host_opened = host_choose(s.hidden_car(), s.bias, next_uniform());
        s.phase_history.push_back(Phase::Revealed);
        s.phase_history.push_back(Phase::AwaitingDecision);
        s.phase = Phase::AwaitingDecision;
    } else {
        s.phase_history.push_back(Phase::AwaitingCommit);
        s.phase = Phase::AwaitingCommit;
    }
    return s;
}

Session SessionManager::decide(const std::string& id, Decision decision) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    Session& s = entry->session;
    Phase expected = s.variant == Variant::GameI ? Phase::AwaitingDecision : Phase::AwaitingCommit;
    if (s.phase != expected) {
        throw ServiceError(409, "conflict",
                           "decision not allowed in phase " + std::string(to_string(s.phase)));
    }
    // GameI already revealed at pick time; GameII reveals now, after commitment.
    double draw = next_uniform();
    Box car = s.hidden_car();
    GameTranscript g = play(s.variant, car, s.bias, decision, draw, s.ordinal);
    if (s.host_opened) {
        g.host_opened = *s.host_opened;
        g.outcome = outcome_of(car, g.host_opened, decision);
    }
    s.host_opened = g.host_opened;
    s.decision = decision;
    s.outcome = g.outcome;
    s.resolved_at = Clock::now();
    s.phase_history.push_back(Phase::Resolved);
    s.phase = Phase::Resolved;

    {
        std::lock_guard stats_lock(stats_mutex_);
        Tally& t = stats_[{s.variant, bucket_index(s.bias.q()), decision}]
                       .by_door[g.host_opened == Box::L ? 0 : 1];
        ++t.games;
        if (g.outcome == Outcome::Win) ++t.wins;
    }
    if (log_.is_open()) {
        json line{
            {"session_id", s.id},
            {"variant", std::string(to_string(g.variant))},
            {"car", std::string(to_string(g.car))},
            {"bias", rational_json(g.bias.q())},
            {"host_opened", std::string(to_string(g.host_opened))},
            {"decision", std::string(to_string(g.decision))},
            {"outcome", std::string(to_string(g.outcome))},
            {"seed_index", g.seed_index},
            {"decided_before_reveal", g.decided_before_reveal},
            {"created_at", iso8601(s.created_at)},
            {"resolved_at", iso8601(*s.resolved_at)},
        };
        std::lock_guard log_lock(log_mutex_);
        log_ << line.dump() << '\n';
        log_.flush();
    }
    return s;
}

json SessionManager::stats(const StatsFilter& filter) const {
    std::vector<Variant> variants = filter.variant ? std::vector<Variant>{*filter.variant}
                                                   : std::vector<Variant>{Variant::GameI, Variant::GameII};
    std::vector<int> buckets;
    if (filter.q) {
        try {
            buckets.push_back(bucket_index(HostBias(*filter.q).q()));
        } catch (const Error& e) {
            throw ServiceError(400, "bad_request", e.what());
        }
    } else {
        for (int k = 0; k <= 8; ++k) buckets.push_back(k);
    }

    std::map<StatsKey, Cell> snapshot;
    {
        std::lock_guard lock(stats_mutex_);
        snapshot = stats_;
    }

    json entries = json::array();
    for (Variant v : variants) {
        for (int k : buckets) {
            HostBias centre(Rational(k, 8));
            for (Decision d : {Decision::Stay, Decision::Switch}) {
                Strategy strategy = d == Decision::Switch ? Strategy::always_switch() : Strategy::always_stay();
                ExactExpectation theory = exact_expectation(v, centre, strategy);
                Cell cell;
                if (auto it = snapshot.find({v, k, d}); it != snapshot.end()) cell = it->second;
                Tally total = cell.by_door[0];
                total += cell.by_door[1];

                json entry = tally_json(total);
                entry["variant"] = std::string(to_string(v));
                entry["q_bucket"] = rational_json(centre.q());
                entry["decision"] = std::string(to_string(d));
                entry["theory_rate"] = rational_json(theory.unconditional);
                json by_opened;
                for (Box door : {Box::L, Box::R}) {
                    json split = tally_json(cell.by_door[door == Box::L ? 0 : 1]);
                    split["theory_rate"] = rational_json(theory.given_opened.at(door));
                    by_opened[std::string(to_string(door))] = split;
                }
                entry["by_opened"] = by_opened;
                entries.push_back(std::move(entry));
            }
        }
    }
    return json{{"bucket_rule", "q rounded to the nearest multiple of 1/8, ties up"},
                {"entries", entries}};
}

} // namespace monty
