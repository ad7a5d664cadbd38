#include "render.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace monty::cli {

namespace {

bool same(monty_rational a, monty_rational b) { return a.num == b.num && a.den == b.den; }

double approx(monty_rational r) { return static_cast<double>(r.num) / static_cast<double>(r.den); }

// Exact sum for totals; inputs are small probabilities, so 128 bits suffice.
monty_rational add(monty_rational a, monty_rational b) {
    __int128 num = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 den = static_cast<__int128>(a.den) * b.den;
    __int128 x = num < 0 ? -num : num, y = den;
    while (y != 0) {
        __int128 t = x % y;
        x = y;
        y = t;
    }
    if (x > 1) {
        num /= x;
        den /= x;
    }
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

monty_box box_from(const json& j) {
    std::string s = j.get<std::string>();
    if (s == "T") return MONTY_BOX_T;
    if (s == "L") return MONTY_BOX_L;
    if (s == "R") return MONTY_BOX_R;
    throw std::invalid_argument("unknown box " + s);
}

monty_decision decision_from(const json& j) {
    std::string s = j.get<std::string>();
    if (s == "Stay") return MONTY_STAY;
    if (s == "Switch") return MONTY_SWITCH;
    throw std::invalid_argument("unknown decision " + s);
}

monty_variant variant_from(const json& j) {
    std::string s = j.get<std::string>();
    if (s == "GameI") return MONTY_GAME_I;
    if (s == "GameII") return MONTY_GAME_II;
    throw std::invalid_argument("unknown variant " + s);
}

void strategy_from(const std::string& s, monty_sim_config& c) {
    c.mixed_switch_probability = {0, 1};
    if (s == "stay") {
        c.strategy = MONTY_STRATEGY_ALWAYS_STAY;
    } else if (s == "switch") {
        c.strategy = MONTY_STRATEGY_ALWAYS_SWITCH;
        c.mixed_switch_probability = {1, 1};
    } else if (s == "bias-aware") {
        c.strategy = MONTY_STRATEGY_BIAS_AWARE;
    } else if (s.rfind("mixed:", 0) == 0) {
        c.strategy = MONTY_STRATEGY_MIXED;
        if (monty_rational_parse(s.c_str() + 6, &c.mixed_switch_probability) != MONTY_OK) {
            throw std::invalid_argument(monty_last_error());
        }
    } else {
        throw std::invalid_argument("unknown strategy " + s);
    }
}

json rate_to_json(const monty_rate& r) {
    json j{{"wins", r.wins}, {"games", r.games}, {"defined", r.defined != 0}, {"rate", nullptr}, {"ci95", nullptr}};
    if (r.defined) {
        j["rate"] = r.rate;
        j["ci95"] = {{"low", r.ci_low}, {"high", r.ci_high}};
    }
    return j;
}

monty_rate rate_from_json(const json& j) {
    monty_rate r{};
    r.wins = j.at("wins").get<std::uint64_t>();
    r.games = j.at("games").get<std::uint64_t>();
    r.defined = j.at("defined").get<bool>() ? 1 : 0;
    if (r.defined) {
        r.rate = j.at("rate").get<double>();
        r.ci_low = j.at("ci95").at("low").get<double>();
        r.ci_high = j.at("ci95").at("high").get<double>();
    }
    return r;
}

json check_to_json(const Check& c) {
    return json{{"name", c.name},   {"observed", c.observed}, {"expected", rational_to_json(c.expected)},
                {"n", c.n},         {"bound", c.bound},       {"pass", c.pass}};
}

Check check_from_json(const json& j) {
    Check c;
    c.name = j.at("name").get<std::string>();
    c.observed = j.at("observed").get<double>();
    c.expected = rational_from_json(j.at("expected"));
    c.n = j.at("n").get<std::uint64_t>();
    c.bound = j.at("bound").get<double>();
    c.pass = j.at("pass").get<bool>();
    return c;
}

bool all_pass(const SimReport& r) {
    for (const auto& c : r.checks) {
        if (!c.pass) return false;
    }
    return true;
}

json sim_inputs(const monty_sim_config& c) {
    return json{{"variant", variant_str(c.variant)},
                {"q", rational_to_json(c.bias)},
                {"strategy", strategy_str(c.strategy, c.mixed_switch_probability)},
                {"trials", c.trials},
                {"seed", c.seed}};
}

json sim_results(const monty_sim_summary& s) {
    return json{{"wins_total", s.wins_total},
                {"overall", rate_to_json(s.overall)},
                {"given_opened",
                 {{"L", rate_to_json(s.given_opened[MONTY_BOX_L])}, {"R", rate_to_json(s.given_opened[MONTY_BOX_R])}}},
                {"elapsed_seconds", s.elapsed_seconds}};
}

json sim_exact(const monty_sim_summary& s) {
    return json{{"win_rate", rational_to_json(s.exact_rate)},
                {"given_opened",
                 {{"L", rational_to_json(s.exact_given_opened[MONTY_BOX_L])},
                  {"R", rational_to_json(s.exact_given_opened[MONTY_BOX_R])}}},
                {"opened_fraction",
                 {{"L", rational_to_json(s.exact_opened_fraction[MONTY_BOX_L])},
                  {"R", rational_to_json(s.exact_opened_fraction[MONTY_BOX_R])}}}};
}

json sim_verdict(const SimReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));
    return json{{"pass", all_pass(r)}, {"checks", checks}};
}

struct MetricRow {
    std::string name;
    std::uint64_t wins = 0;
    std::uint64_t games = 0;
    monty_rate rate{};
    monty_rational exact{0, 1};
    std::string within; // "true", "false" or "undefined"
};

std::vector<MetricRow> metric_rows(const SimReport& r) {
    const monty_sim_summary& s = r.summary;
    auto status = [&](const std::string& name) -> std::string {
        for (const auto& c : r.checks) {
            if (c.name == name) return c.pass ? "true" : "false";
        }
        return "undefined";
    };
    std::vector<MetricRow> rows;
    rows.push_back({"win_rate", s.overall.wins, s.overall.games, s.overall, s.exact_rate, status("win_rate")});
    for (monty_box door : {MONTY_BOX_L, MONTY_BOX_R}) {
        std::string name = "win_rate_given_opened_" + box_str(door);
        const monty_rate& g = s.given_opened[door];
        rows.push_back({name, g.wins, g.games, g, s.exact_given_opened[door], status(name)});
    }
    monty_rate opened{};
    opened.wins = s.given_opened[MONTY_BOX_R].games;
    opened.games = s.config.trials;
    opened.defined = 1;
    opened.rate = static_cast<double>(opened.wins) / static_cast<double>(opened.games);
    monty_wilson_interval(opened.wins, opened.games, &opened.ci_low, &opened.ci_high);
    rows.push_back({"opened_R_fraction", opened.wins, opened.games, opened, s.exact_opened_fraction[MONTY_BOX_R],
                    status("opened_R_fraction")});
    return rows;
}

std::vector<std::string> metric_fields(const MetricRow& m) {
    const bool d = m.rate.defined != 0;
    return {m.name,
            std::to_string(m.wins),
            std::to_string(m.games),
            d ? format_double(m.rate.rate) : "undefined",
            d ? format_double(m.rate.ci_low) : "undefined",
            d ? format_double(m.rate.ci_high) : "undefined",
            rational_str(m.exact),
            format_double(approx(m.exact)),
            d ? format_double(m.rate.rate - approx(m.exact)) : "undefined",
            m.within};
}

void write_sim_human(std::ostream& os, const SimReport& r) {
    const monty_sim_config& c = r.summary.config;
    os << variant_str(c.variant) << "  q=" << rational_str(c.bias)
       << "  strategy=" << strategy_str(c.strategy, c.mixed_switch_probability) << "  trials=" << c.trials
       << "  seed=" << c.seed << '\n';
    char line[256];
    for (const auto& m : metric_rows(r)) {
        if (m.rate.defined) {
            std::snprintf(line, sizeof line, "  %-24s %.6f  95%% CI [%.6f, %.6f]  exact %s (%.6f)  n=%llu\n",
                          m.name.c_str(), m.rate.rate, m.rate.ci_low, m.rate.ci_high, rational_str(m.exact).c_str(),
                          approx(m.exact), static_cast<unsigned long long>(m.games));
        } else {
            std::snprintf(line, sizeof line, "  %-24s undefined (no games)  exact %s\n", m.name.c_str(),
                          rational_str(m.exact).c_str());
        }
        os << line;
    }
    os << "  elapsed " << format_double(r.summary.elapsed_seconds) << " s\n";
}

void write_verdict_human(std::ostream& os, bool pass) {
    os << (pass ? "verdict: agrees with exact within 3 sigma\n"
                : "verdict: DISAGREES with exact beyond 3 sigma\n");
}

} // namespace

const std::vector<std::string> kExactCsvHeader{"q",          "opened",           "p_switch_win", "p_switch_win_approx",
                                               "p_stay_win", "p_stay_win_approx", "bayes_ratio", "routes_agree"};
const std::vector<std::string> kGame2CsvHeader{"decision",       "p_win",          "p_win_approx",
                                               "p_win_given_T", "p_win_given_L", "p_win_given_R"};
const std::vector<std::string> kEnumerateCsvHeader{"q", "car", "switch_target", "result", "probability",
                                                   "probability_approx"};
const std::vector<std::string> kSimulateCsvHeader{"metric", "wins",  "games",        "rate",  "ci_low",
                                                  "ci_high", "exact", "exact_approx", "delta", "within_3sigma"};
const std::vector<std::string> kSweepCsvHeader{"q",       "q_approx", "seed",         "metric", "wins",
                                               "games",   "rate",     "ci_low",       "ci_high", "exact",
                                               "exact_approx", "delta", "within_3sigma"};

std::string rational_str(monty_rational r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string box_str(monty_box b) {
    switch (b) {
    case MONTY_BOX_T: return "T";
    case MONTY_BOX_L: return "L";
    case MONTY_BOX_R: return "R";
    }
    return "?";
}

std::string decision_str(monty_decision d) { return d == MONTY_STAY ? "Stay" : "Switch"; }
std::string variant_str(monty_variant v) { return v == MONTY_GAME_I ? "GameI" : "GameII"; }

std::string strategy_str(monty_strategy_kind kind, monty_rational mixed_p) {
    switch (kind) {
    case MONTY_STRATEGY_ALWAYS_STAY: return "stay";
    case MONTY_STRATEGY_ALWAYS_SWITCH: return "switch";
    case MONTY_STRATEGY_BIAS_AWARE: return "bias-aware";
    case MONTY_STRATEGY_MIXED: return "mixed:" + rational_str(mixed_p);
    }
    return "?";
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

json rational_to_json(monty_rational r) { return json{{"num", r.num}, {"den", r.den}, {"approx", approx(r)}}; }

monty_rational rational_from_json(const json& j) {
    return {j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()};
}

json posterior_to_json(const monty_posterior& p) {
    return json{{"opened", box_str(p.opened)},
                {"p_switch_win", rational_to_json(p.p_switch_win)},
                {"p_stay_win", rational_to_json(p.p_stay_win)},
                {"bayes_ratio", p.bayes_ratio_infinite ? json("inf") : rational_to_json(p.bayes_ratio)}};
}

monty_posterior posterior_from_json(const json& j) {
    monty_posterior p{};
    p.opened = box_from(j.at("opened"));
    p.p_switch_win = rational_from_json(j.at("p_switch_win"));
    p.p_stay_win = rational_from_json(j.at("p_stay_win"));
    const json& ratio = j.at("bayes_ratio");
    p.bayes_ratio_infinite = ratio.is_string() ? 1 : 0;
    p.bayes_ratio = ratio.is_string() ? monty_rational{0, 1} : rational_from_json(ratio);
    return p;
}

json game2_to_json(const monty_game2_report& r) {
    return json{{"decision", decision_str(r.decision)},
                {"p_win", rational_to_json(r.decision == MONTY_SWITCH ? r.p_win_switch : r.p_win_stay)},
                {"p_win_switch", rational_to_json(r.p_win_switch)},
                {"p_win_stay", rational_to_json(r.p_win_stay)},
                {"per_placement",
                 {{"T", rational_to_json(r.per_placement[MONTY_BOX_T])},
                  {"L", rational_to_json(r.per_placement[MONTY_BOX_L])},
                  {"R", rational_to_json(r.per_placement[MONTY_BOX_R])}}}};
}

monty_game2_report game2_from_json(const json& j) {
    monty_game2_report r{};
    r.decision = decision_from(j.at("decision"));
    r.p_win_switch = rational_from_json(j.at("p_win_switch"));
    r.p_win_stay = rational_from_json(j.at("p_win_stay"));
    for (monty_box b : {MONTY_BOX_T, MONTY_BOX_L, MONTY_BOX_R}) {
        r.per_placement[b] = rational_from_json(j.at("per_placement").at(box_str(b)));
    }
    return r;
}

json atoms_to_json(const Atoms& atoms) {
    json out = json::array();
    for (const auto& a : atoms) {
        out.push_back({{"car", box_str(a.car)},
                       {"switch_target", box_str(a.switch_target)},
                       {"result", a.result == MONTY_WIN ? "Win" : "Lose"},
                       {"probability", rational_to_json(a.probability)}});
    }
    return out;
}

Atoms atoms_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("expected four atoms");
    Atoms atoms{};
    for (std::size_t i = 0; i < 4; ++i) {
        atoms[i].car = box_from(j[i].at("car"));
        atoms[i].switch_target = box_from(j[i].at("switch_target"));
        atoms[i].result = j[i].at("result").get<std::string>() == "Win" ? MONTY_WIN : MONTY_LOSE;
        atoms[i].probability = rational_from_json(j[i].at("probability"));
    }
    return atoms;
}

SimReport collect(const monty_simulation* sim) {
    SimReport r;
    if (monty_simulation_summary(sim, &r.summary) != MONTY_OK) throw std::runtime_error(monty_last_error());
    for (std::size_t i = 0; i < monty_simulation_check_count(sim); ++i) {
        monty_sigma_check c{};
        if (monty_simulation_check(sim, i, &c) != MONTY_OK) throw std::runtime_error(monty_last_error());
        r.checks.push_back({c.name, c.observed, c.expected, c.n, c.bound, c.pass != 0});
    }
    return r;
}

json envelope(const std::string& command, json inputs, json results, json exact, json verdict) {
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)},
                {"exact", std::move(exact)},
                {"verdict", std::move(verdict)}};
}

json sim_to_json(const SimReport& r) {
    return envelope("simulate", sim_inputs(r.summary.config), sim_results(r.summary), sim_exact(r.summary),
                    sim_verdict(r));
}

SimReport sim_from_json(const json& j) {
    SimReport r;
    monty_sim_summary& s = r.summary;
    const json& in = j.at("inputs");
    s.config.variant = variant_from(in.at("variant"));
    s.config.bias = rational_from_json(in.at("q"));
    strategy_from(in.at("strategy").get<std::string>(), s.config);
    s.config.trials = in.at("trials").get<std::uint64_t>();
    s.config.seed = in.at("seed").get<std::uint64_t>();

    const json& res = j.at("results");
    s.wins_total = res.at("wins_total").get<std::uint64_t>();
    s.overall = rate_from_json(res.at("overall"));
    s.given_opened[MONTY_BOX_L] = rate_from_json(res.at("given_opened").at("L"));
    s.given_opened[MONTY_BOX_R] = rate_from_json(res.at("given_opened").at("R"));
    s.elapsed_seconds = res.at("elapsed_seconds").get<double>();

    const json& ex = j.at("exact");
    s.exact_rate = rational_from_json(ex.at("win_rate"));
    s.exact_given_opened[MONTY_BOX_T] = {0, 1};
    s.exact_opened_fraction[MONTY_BOX_T] = {0, 1};
    for (monty_box door : {MONTY_BOX_L, MONTY_BOX_R}) {
        s.exact_given_opened[door] = rational_from_json(ex.at("given_opened").at(box_str(door)));
        s.exact_opened_fraction[door] = rational_from_json(ex.at("opened_fraction").at(box_str(door)));
    }

    const json& v = j.at("verdict");
    s.agrees_3sigma = v.at("pass").get<bool>() ? 1 : 0;
    for (const auto& c : v.at("checks")) r.checks.push_back(check_from_json(c));
    return r;
}

json sweep_to_json(const std::vector<SimReport>& rows) {
    json grid = json::array(), results = json::array(), exact = json::array(), verdicts = json::array();
    bool pass = true;
    for (const auto& r : rows) {
        const monty_sim_summary& s = r.summary;
        grid.push_back(rational_to_json(s.config.bias));
        json res = sim_results(s);
        res["q"] = rational_to_json(s.config.bias);
        res["seed"] = s.config.seed;
        results.push_back(res);
        json ex = sim_exact(s);
        ex["q"] = rational_to_json(s.config.bias);
        exact.push_back(ex);
        json v = sim_verdict(r);
        v["q"] = rational_to_json(s.config.bias);
        verdicts.push_back(v);
        pass = pass && all_pass(r);
    }
    json inputs = json::object();
    if (!rows.empty()) {
        const monty_sim_config& c = rows.front().summary.config;
        inputs = {{"variant", variant_str(c.variant)},
                  {"strategy", strategy_str(c.strategy, c.mixed_switch_probability)},
                  {"trials", c.trials},
                  {"seed", c.seed},
                  {"grid", grid}};
    }
    return envelope("sweep", inputs, json{{"rows", results}}, json{{"rows", exact}},
                    json{{"pass", pass}, {"rows", verdicts}});
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << "\r\n";
}

void write_exact(std::ostream& os, Format f, monty_rational q, const monty_posterior& bayes,
                 const monty_posterior& sample_space) {
    const bool agree = same(bayes.p_switch_win, sample_space.p_switch_win) &&
                       same(bayes.p_stay_win, sample_space.p_stay_win) &&
                       bayes.bayes_ratio_infinite == sample_space.bayes_ratio_infinite &&
                       same(bayes.bayes_ratio, sample_space.bayes_ratio);
    const std::string ratio = bayes.bayes_ratio_infinite ? "inf" : rational_str(bayes.bayes_ratio);
    switch (f) {
    case Format::Json:
        os << envelope("exact", {{"q", rational_to_json(q)}, {"opened", box_str(bayes.opened)}},
                       posterior_to_json(bayes),
                       {{"sample_space_route", posterior_to_json(sample_space)},
                        {"formula", bayes.opened == MONTY_BOX_R ? "1/(1+q)" : "1/(2-q)"}},
                       {{"pass", agree}, {"detail", agree ? "Bayes and sample-space routes agree" : "routes differ"}})
                  .dump(2)
           << '\n';
        break;
    case Format::Csv:
        csv_row(os, kExactCsvHeader);
        csv_row(os, {rational_str(q), box_str(bayes.opened), rational_str(bayes.p_switch_win),
                     format_double(approx(bayes.p_switch_win)), rational_str(bayes.p_stay_win),
                     format_double(approx(bayes.p_stay_win)), ratio, agree ? "true" : "false"});
        break;
    case Format::Human:
        os << "q = " << rational_str(q) << ", host opened " << box_str(bayes.opened) << '\n'
           << "  p_switch_win = " << rational_str(bayes.p_switch_win) << "  (" << format_double(approx(bayes.p_switch_win))
           << ")\n"
           << "  p_stay_win   = " << rational_str(bayes.p_stay_win) << "  (" << format_double(approx(bayes.p_stay_win))
           << ")\n"
           << "  switch/stay  = " << ratio << '\n'
           << "  sample-space route " << (agree ? "agrees" : "DISAGREES") << '\n';
        break;
    }
}

void write_game2(std::ostream& os, Format f, const monty_game2_report& r) {
    const monty_rational p = r.decision == MONTY_SWITCH ? r.p_win_switch : r.p_win_stay;
    const monty_rational total = add(r.p_win_switch, r.p_win_stay);
    const bool complementary = same(total, {1, 1});
    switch (f) {
    case Format::Json:
        os << envelope("game2", {{"decision", decision_str(r.decision)}}, game2_to_json(r),
                       {{"p_win_switch_plus_stay", rational_to_json(total)}},
                       {{"pass", complementary}, {"detail", "switch and stay probabilities sum to 1"}})
                  .dump(2)
           << '\n';
        break;
    case Format::Csv:
        csv_row(os, kGame2CsvHeader);
        csv_row(os, {decision_str(r.decision), rational_str(p), format_double(approx(p)),
                     rational_str(r.per_placement[MONTY_BOX_T]), rational_str(r.per_placement[MONTY_BOX_L]),
                     rational_str(r.per_placement[MONTY_BOX_R])});
        break;
    case Format::Human:
        os << "Game II, decision committed before any door opens: " << decision_str(r.decision) << '\n'
           << "  P(win) = " << rational_str(p) << "  (" << format_double(approx(p)) << ")\n"
           << "  P(win | car at T, L, R) = " << rational_str(r.per_placement[MONTY_BOX_T]) << ", "
           << rational_str(r.per_placement[MONTY_BOX_L]) << ", " << rational_str(r.per_placement[MONTY_BOX_R]) << '\n';
        break;
    }
}

void write_enumerate(std::ostream& os, Format f, monty_rational q, const Atoms& atoms) {
    monty_rational total{0, 1};
    for (const auto& a : atoms) total = add(total, a.probability);
    const bool normalised = same(total, {1, 1});
    switch (f) {
    case Format::Json:
        os << envelope("enumerate", {{"q", rational_to_json(q)}}, {{"atoms", atoms_to_json(atoms)}},
                       {{"total", rational_to_json(total)}},
                       {{"pass", normalised}, {"detail", "atom probabilities sum to 1"}})
                  .dump(2)
           << '\n';
        break;
    case Format::Csv:
        csv_row(os, kEnumerateCsvHeader);
        for (const auto& a : atoms) {
            csv_row(os, {rational_str(q), box_str(a.car), box_str(a.switch_target), a.result == MONTY_WIN ? "Win" : "Lose",
                         rational_str(a.probability), format_double(approx(a.probability))});
        }
        break;
    case Format::Human:
        os << "sample space at q = " << rational_str(q) << '\n';
        for (const auto& a : atoms) {
            os << "  (C_" << box_str(a.car) << ", S_" << box_str(a.switch_target) << ", "
               << (a.result == MONTY_WIN ? "Win" : "Lose") << ")  " << rational_str(a.probability) << '\n';
        }
        os << "  total " << rational_str(total) << '\n';
        break;
    }
}

void write_simulate(std::ostream& os, Format f, const SimReport& r) {
    switch (f) {
    case Format::Json:
        os << sim_to_json(r).dump(2) << '\n';
        break;
    case Format::Csv:
        csv_row(os, kSimulateCsvHeader);
        for (const auto& m : metric_rows(r)) csv_row(os, metric_fields(m));
        break;
    case Format::Human:
        write_sim_human(os, r);
        write_verdict_human(os, all_pass(r));
        break;
    }
}

void write_sweep(std::ostream& os, Format f, const std::vector<SimReport>& rows) {
    bool pass = true;
    for (const auto& r : rows) pass = pass && all_pass(r);
    switch (f) {
    case Format::Json:
        os << sweep_to_json(rows).dump(2) << '\n';
        break;
    case Format::Csv:
        csv_row(os, kSweepCsvHeader);
        for (const auto& r : rows) {
            const monty_sim_config& c = r.summary.config;
            for (const auto& m : metric_rows(r)) {
                std::vector<std::string> fields{rational_str(c.bias), format_double(approx(c.bias)),
                                                std::to_string(c.seed)};
                auto rest = metric_fields(m);
                fields.insert(fields.end(), rest.begin(), rest.end());
                csv_row(os, fields);
            }
        }
        break;
    case Format::Human:
        for (const auto& r : rows) write_sim_human(os, r);
        write_verdict_human(os, pass);
        break;
    }
}

} // namespace monty::cli
