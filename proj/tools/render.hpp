#pragma once

// Report rendering for the command-line tool. Works on the C API structs so
// the tool depends on libmonty only.
//
// JSON envelope: {command, inputs, results, exact, verdict}. Rationals are
// {"num", "den", "approx"}. Undefined rates (no qualifying games) are null.

#include "monty/monty.h"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace monty::cli {

using nlohmann::json;

enum class Format { Human, Json, Csv };

std::string rational_str(monty_rational r);
std::string box_str(monty_box b);
std::string decision_str(monty_decision d);
std::string variant_str(monty_variant v);
std::string strategy_str(monty_strategy_kind kind, monty_rational mixed_p);

json rational_to_json(monty_rational r);
monty_rational rational_from_json(const json& j);

json posterior_to_json(const monty_posterior& p);
monty_posterior posterior_from_json(const json& j);

json game2_to_json(const monty_game2_report& r);
monty_game2_report game2_from_json(const json& j);

using Atoms = std::array<monty_atom, 4>;
json atoms_to_json(const Atoms& atoms);
Atoms atoms_from_json(const json& j);

struct Check {
    std::string name;
    double observed = 0.0;
    monty_rational expected{0, 1};
    std::uint64_t n = 0;
    double bound = 0.0;
    bool pass = false;
};

// Everything a simulate report carries.
struct SimReport {
    monty_sim_summary summary{};
    std::vector<Check> checks;
};

SimReport collect(const monty_simulation* sim);

// Envelope for the simulate command and its parse-back.
json sim_to_json(const SimReport& r);
SimReport sim_from_json(const json& envelope);

// Sweep envelope: one element of results.rows per grid point.
json sweep_to_json(const std::vector<SimReport>& rows);

json envelope(const std::string& command, json inputs, json results, json exact, json verdict);

// RFC 4180: quote fields containing separators, quotes or line breaks; CRLF rows.
std::string csv_field(const std::string& s);
void csv_row(std::ostream& os, const std::vector<std::string>& fields);

std::string format_double(double v);

// One writer per command and format.
void write_exact(std::ostream& os, Format f, monty_rational q, const monty_posterior& bayes,
                 const monty_posterior& sample_space);
void write_game2(std::ostream& os, Format f, const monty_game2_report& r);
void write_enumerate(std::ostream& os, Format f, monty_rational q, const Atoms& atoms);
void write_simulate(std::ostream& os, Format f, const SimReport& r);
void write_sweep(std::ostream& os, Format f, const std::vector<SimReport>& rows);

// Fixed CSV headers.
extern const std::vector<std::string> kExactCsvHeader;
extern const std::vector<std::string> kGame2CsvHeader;
extern const std::vector<std::string> kEnumerateCsvHeader;
extern const std::vector<std::string> kSimulateCsvHeader;
extern const std::vector<std::string> kSweepCsvHeader;

} // namespace monty::cli
