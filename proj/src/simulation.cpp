#include "monty/simulation.hpp"

#include "monty/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace monty {

namespace rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t bits(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot) {
    // A SplitMix64 stream keyed by the seed, indexed by (trial, slot).
    std::uint64_t key = splitmix64(seed);
    return splitmix64(key + kGolden * (trial * 4 + slot));
}

double uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot) {
    return static_cast<double>(bits(seed, trial, slot) >> 11) * 0x1.0p-53;
}

Box car(std::uint64_t seed, std::uint64_t trial) {
    auto wide = static_cast<unsigned __int128>(bits(seed, trial, kCar)) * 3u;
    switch (static_cast<unsigned>(wide >> 64)) {
    case 0: return Box::T;
    case 1: return Box::L;
    default: return Box::R;
    }
}

} // namespace rng

Strategy Strategy::parse(std::string_view text) {
    if (text == "stay" || text == "always-stay" || text == "AlwaysStay") return always_stay();
    if (text == "switch" || text == "always-switch" || text == "AlwaysSwitch") return always_switch();
    if (text == "bias-aware" || text == "BiasAware") return bias_aware();
    for (std::string_view prefix : {"mixed:", "Mixed:"}) {
        if (text.substr(0, prefix.size()) == prefix) {
            Rational p = Rational::parse(text.substr(prefix.size()));
            if (p < Rational(0) || p > Rational(1)) {
                throw Error(ErrorCode::OutOfRange, "mixed switch probability " + p.str() + " outside [0, 1]");
            }
            return mixed(p);
        }
    }
    throw Error(ErrorCode::Parse, "unknown strategy '" + std::string(text) + "'");
}

std::string Strategy::str() const {
    switch (kind) {
    case Kind::AlwaysStay: return "stay";
    case Kind::AlwaysSwitch: return "switch";
    case Kind::BiasAware: return "bias-aware";
    case Kind::Mixed: return "mixed:" + switch_probability.str();
    }
    return "?";
}

std::uint64_t SimulationConfig::effective_batch_size() const {
    if (batch_size != 0) return batch_size;
    return std::min<std::uint64_t>(trials, 65536);
}

void SimulationConfig::validate() const {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
    if (batch_size > trials) {
        throw Error(ErrorCode::InvalidArgument, "batch_size must not exceed trials");
    }
    if (strategy.kind == Strategy::Kind::Mixed &&
        (strategy.switch_probability < Rational(0) || strategy.switch_probability > Rational(1))) {
        throw Error(ErrorCode::OutOfRange, "mixed switch probability outside [0, 1]");
    }
    if (strategy.kind == Strategy::Kind::BiasAware && variant == Variant::GameII) {
        throw Error(ErrorCode::InvalidArgument,
                    "bias-aware strategy needs the opened door; it is undefined in GameII");
    }
}

Interval wilson_interval(std::uint64_t wins, std::uint64_t games) {
    if (games == 0) throw Error(ErrorCode::InvalidArgument, "Wilson interval needs games >= 1");
    if (wins > games) throw Error(ErrorCode::InvalidArgument, "Wilson interval needs wins <= games");
    constexpr double z = 1.959963984540054; // 97.5% normal quantile
    const double n = static_cast<double>(games);
    const double p = static_cast<double>(wins) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    if (wins == 0) ci.low = 0.0;
    if (wins == games) ci.high = 1.0;
    ci.low = std::min(ci.low, p);
    ci.high = std::max(ci.high, p);
    return ci;
}

RateEstimate RateEstimate::from(const Tally& t) {
    RateEstimate e;
    e.tally = t;
    if (t.games > 0) {
        e.rate = static_cast<double>(t.wins) / static_cast<double>(t.games);
        e.ci95 = wilson_interval(t.wins, t.games);
    }
    return e;
}

namespace {

struct BatchTally {
    Tally by_door[2]; // L, R

    BatchTally& operator+=(const BatchTally& o) {
        by_door[0] += o.by_door[0];
        by_door[1] += o.by_door[1];
        return *this;
    }
};

Decision decide(const SimulationConfig& c, Box opened, std::uint64_t trial) {
    switch (c.strategy.kind) {
    case Strategy::Kind::AlwaysStay: return Decision::Stay;
    case Strategy::Kind::AlwaysSwitch: return Decision::Switch;
    case Strategy::Kind::Mixed:
        return draw_below(rng::uniform(c.seed, trial, rng::kStrategy), c.strategy.switch_probability)
                   ? Decision::Switch
                   : Decision::Stay;
    case Strategy::Kind::BiasAware:
        return posterior_given_opened(c.bias, opened).p_switch_win >= Rational(1, 2)
                   ? Decision::Switch
                   : Decision::Stay;
    }
    return Decision::Stay;
}

BatchTally run_batch(const SimulationConfig& c, std::uint64_t begin, std::uint64_t end) {
    BatchTally t;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        Box car = rng::car(c.seed, trial);
        double host_draw = rng::uniform(c.seed, trial, rng::kHost);
        // Only BiasAware looks at the door; GameII strategies never do.
        Box opened = host_choose(car, c.bias, host_draw);
        Decision d = decide(c, opened, trial);
        GameTranscript g = play(c.variant, car, c.bias, d, host_draw, trial);
        Tally& slot = t.by_door[g.host_opened == Box::L ? 0 : 1];
        ++slot.games;
        if (g.outcome == Outcome::Win) ++slot.wins;
    }
    return t;
}

} // namespace

SimulationResult run(const SimulationConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const std::uint64_t batch = config.effective_batch_size();
    const std::uint64_t n_batches = (config.trials + batch - 1) / batch;
    std::vector<BatchTally> tallies(n_batches);

    unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, n_batches));

    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next++; b < n_batches; b = next++) {
            std::uint64_t begin = b * batch;
            tallies[b] = run_batch(config, begin, std::min(begin + batch, config.trials));
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }

    BatchTally total;
    for (const auto& t : tallies) total += t;

    SimulationResult r;
    r.config = config;
    r.wins_given_opened[Box::L] = total.by_door[0];
    r.wins_given_opened[Box::R] = total.by_door[1];
    r.wins_total = total.by_door[0].wins + total.by_door[1].wins;
    r.overall = RateEstimate::from(Tally{config.trials, r.wins_total});
    r.conditional[Box::L] = RateEstimate::from(total.by_door[0]);
    r.conditional[Box::R] = RateEstimate::from(total.by_door[1]);
    r.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

ExactExpectation exact_expectation(Variant variant, const HostBias& bias, const Strategy& strategy) {
    ExactExpectation e;
    e.unconditional = Rational(0);
    for (Box opened : {Box::L, Box::R}) {
        PosteriorReport post = posterior_given_opened(bias, opened);
        Rational p_switch;
        switch (strategy.kind) {
        case Strategy::Kind::AlwaysStay: p_switch = Rational(0); break;
        case Strategy::Kind::AlwaysSwitch: p_switch = Rational(1); break;
        case Strategy::Kind::Mixed: p_switch = strategy.switch_probability; break;
        case Strategy::Kind::BiasAware:
            if (variant == Variant::GameII) {
                throw Error(ErrorCode::InvalidArgument, "bias-aware strategy is undefined in GameII");
            }
            p_switch = post.p_switch_win >= Rational(1, 2) ? Rational(1) : Rational(0);
            break;
        }
        // The car's location given the opened door does not depend on when
        // the decision was made, so both variants share these conditionals.
        Rational given = p_switch * post.p_switch_win + (Rational(1) - p_switch) * post.p_stay_win;
        Rational fraction = prob_host_opens(bias, opened);
        e.given_opened[opened] = given;
        e.opened_fraction[opened] = fraction;
        e.unconditional += fraction * given;
    }
    return e;
}

bool within_sigma(double observed, const Rational& expected, std::uint64_t n, double k,
                  double* bound_out) {
    const double p = expected.to_double();
    const double bound = n == 0 ? 0.0 : k * std::sqrt(p * (1 - p) / static_cast<double>(n));
    if (bound_out) *bound_out = bound;
    const double diff = std::abs(observed - p);
    if (bound == 0.0) return diff == 0.0;
    return diff < bound;
}

std::vector<SigmaCheck> three_sigma_checks(const SimulationResult& r) {
    const ExactExpectation exact = exact_expectation(r.config.variant, r.config.bias, r.config.strategy);
    std::vector<SigmaCheck> checks;
    auto add = [&](std::string name, double observed, const Rational& expected, std::uint64_t n) {
        SigmaCheck c;
        c.name = std::move(name);
        c.observed = observed;
        c.expected = expected;
        c.n = n;
        c.pass = within_sigma(observed, expected, n, 3.0, &c.bound);
        checks.push_back(std::move(c));
    };
    add("win_rate", r.empirical_rate(), exact.unconditional, r.config.trials);
    for (Box door : {Box::L, Box::R}) {
        const RateEstimate& est = r.conditional.at(door);
        if (est.rate) {
            add("win_rate_given_opened_" + std::string(to_string(door)), *est.rate,
                exact.given_opened.at(door), est.tally.games);
        }
    }
    add("opened_R_fraction",
        static_cast<double>(r.wins_given_opened.at(Box::R).games) / static_cast<double>(r.config.trials),
        exact.opened_fraction.at(Box::R), r.config.trials);
    return checks;
}

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t index) {
    return base_seed + rng::kGolden * static_cast<std::uint64_t>(index);
}

std::vector<SweepRow> sweep_bias(const std::vector<HostBias>& grid, const SimulationConfig& base) {
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "bias sweep needs a non-empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SimulationConfig c = base;
        c.bias = grid[i];
        c.seed = sweep_seed(base.seed, i);
        try {
            SweepRow row;
            row.bias = grid[i];
            row.seed = c.seed;
            row.result = run(c);
            row.exact = exact_expectation(c.variant, c.bias, c.strategy);
            rows.push_back(std::move(row));
        } catch (const Error& e) {
            throw Error(e.code(), "q=" + grid[i].q().str() + ": " + e.what());
        }
    }
    return rows;
}

} // namespace monty
