#pragma once

#include "monty/rational.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace monty {

// Canonical frame: the contestant's pick is rotated to T; L and R are the two
// doors the host may open.
enum class Box { T, L, R };
enum class Variant { GameI, GameII };
enum class Decision { Stay, Switch };
enum class Outcome { Win, Lose };

std::string_view to_string(Box b);
std::string_view to_string(Variant v);
std::string_view to_string(Decision d);
std::string_view to_string(Outcome o);

std::optional<Box> parse_box(std::string_view s);
std::optional<Variant> parse_variant(std::string_view s);
std::optional<Decision> parse_decision(std::string_view s);

// The closable door that is not `b`. Requires b != T.
Box other_door(Box b);

// q = P(host opens R | car at T). Always within [0, 1].
class HostBias {
public:
    HostBias() : q_(1, 2) {}
    explicit HostBias(Rational q);

    const Rational& q() const noexcept { return q_; }

    static HostBias parse(std::string_view text) { return HostBias(Rational::parse(text)); }

    friend bool operator==(const HostBias&, const HostBias&) = default;

private:
    Rational q_;
};

struct GameTranscript {
    Variant variant = Variant::GameI;
    Box car = Box::T;
    HostBias bias;
    Box host_opened = Box::L;
    Decision decision = Decision::Stay;
    Outcome outcome = Outcome::Lose;
    std::uint64_t seed_index = 0;
    // Set for GameII: the decision was committed before host_opened was revealed.
    bool decided_before_reveal = false;

    friend bool operator==(const GameTranscript&, const GameTranscript&) = default;
};

// Doors the host may open given the car: {L, R} minus the car's box.
std::vector<Box> legal_host_doors(Box car);

// Forced door when the car is behind L or R; with the car at T, R iff draw < q.
Box host_choose(Box car, const HostBias& bias, double draw);

Outcome outcome_of(Box car, Box host_opened, Decision decision);

GameTranscript play(Variant variant, Box car, const HostBias& bias, Decision decision,
                    double draw, std::uint64_t seed_index = 0);

} // namespace monty
