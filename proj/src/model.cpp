#include "monty/model.hpp"

#include "monty/error.hpp"

namespace monty {

std::string_view to_string(Box b) {
    switch (b) {
    case Box::T: return "T";
    case Box::L: return "L";
    case Box::R: return "R";
    }
    return "?";
}

std::string_view to_string(Variant v) { return v == Variant::GameI ? "GameI" : "GameII"; }
std::string_view to_string(Decision d) { return d == Decision::Stay ? "Stay" : "Switch"; }
std::string_view to_string(Outcome o) { return o == Outcome::Win ? "Win" : "Lose"; }

std::optional<Box> parse_box(std::string_view s) {
    if (s == "T" || s == "t") return Box::T;
    if (s == "L" || s == "l") return Box::L;
    if (s == "R" || s == "r") return Box::R;
    return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view s) {
    if (s == "GameI" || s == "I" || s == "1" || s == "game1" || s == "gameI") return Variant::GameI;
    if (s == "GameII" || s == "II" || s == "2" || s == "game2" || s == "gameII") return Variant::GameII;
    return std::nullopt;
}

std::optional<Decision> parse_decision(std::string_view s) {
    if (s == "Stay" || s == "stay") return Decision::Stay;
    if (s == "Switch" || s == "switch") return Decision::Switch;
    return std::nullopt;
}

Box other_door(Box b) {
    switch (b) {
    case Box::L: return Box::R;
    case Box::R: return Box::L;
    case Box::T: break;
    }
    throw Error(ErrorCode::InvalidDoor, "T has no opposite door");
}

HostBias::HostBias(Rational q) : q_(q) {
    if (q < Rational(0) || q > Rational(1)) {
        throw Error(ErrorCode::OutOfRange, "host bias q=" + q.str() + " outside [0, 1]");
    }
}

std::vector<Box> legal_host_doors(Box car) {
    switch (car) {
    case Box::T: return {Box::L, Box::R};
    case Box::L: return {Box::R};
    case Box::R: return {Box::L};
    }
    return {};
}

Box host_choose(Box car, const HostBias& bias, double draw) {
    if (car != Box::T) return other_door(car);
    return draw_below(draw, bias.q()) ? Box::R : Box::L;
}

Outcome outcome_of(Box car, Box host_opened, Decision decision) {
    bool win = decision == Decision::Stay
                   ? car == Box::T
                   : car != Box::T && car != host_opened;
    return win ? Outcome::Win : Outcome::Lose;
}

GameTranscript play(Variant variant, Box car, const HostBias& bias, Decision decision,
                    double draw, std::uint64_t seed_index) {
    GameTranscript t;
    t.variant = variant;
    t.car = car;
    t.bias = bias;
    t.decision = decision;
    t.seed_index = seed_index;
    t.decided_before_reveal = variant == Variant::GameII;
    t.host_opened = host_choose(car, bias, draw);
    t.outcome = outcome_of(car, t.host_opened, decision);
    return t;
}

} // namespace monty
