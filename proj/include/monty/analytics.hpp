#pragma once

// Exact closed-form probabilities for the biased-host game, in rational
// arithmetic. Two independent routes are provided for the Game I posterior:
// Bayes' rule on the host's likelihoods, and filtering the four-atom sample
// space. They must agree exactly.

#include "monty/model.hpp"
#include "monty/rational.hpp"

#include <array>
#include <map>
#include <optional>

namespace monty {

// A rational or +infinity (the stay-side posterior can be exactly zero).
class ExtendedRational {
public:
    static ExtendedRational infinite() { return ExtendedRational(); }
    ExtendedRational(Rational v) : value_(v) {} // NOLINT(google-explicit-constructor)

    bool is_infinite() const noexcept { return !value_.has_value(); }
    const Rational& value() const;

    std::string str() const { return value_ ? value_->str() : "inf"; }

    friend bool operator==(const ExtendedRational&, const ExtendedRational&) = default;

private:
    ExtendedRational() = default;
    std::optional<Rational> value_;
};

struct SampleSpaceAtom {
    Box car = Box::T;
    Box switch_target = Box::L;
    Outcome result = Outcome::Lose;
    Rational probability;

    friend bool operator==(const SampleSpaceAtom&, const SampleSpaceAtom&) = default;
};

struct PosteriorReport {
    Box opened = Box::R;
    Rational p_switch_win;
    Rational p_stay_win;
    ExtendedRational bayes_ratio = Rational(0);

    friend bool operator==(const PosteriorReport&, const PosteriorReport&) = default;
};

struct GameIIReport {
    Decision decision = Decision::Switch;
    Rational p_win_switch;
    Rational p_win_stay;
    // P(W | C_i) for the reported decision.
    std::map<Box, Rational> per_placement;

    // Win probability of the reported decision.
    const Rational& p_win() const {
        return decision == Decision::Switch ? p_win_switch : p_win_stay;
    }

    friend bool operator==(const GameIIReport&, const GameIIReport&) = default;
};

inline const Rational kPrior{1, 3};

// Bayes route: 1/(1+q) after R opens, 1/(2-q) after L opens.
PosteriorReport posterior_given_opened(const HostBias& bias, Box opened);

// p_switch / p_stay after the host opens R, i.e. 1/q; infinite at q = 0.
ExtendedRational bayes_ratio(const HostBias& bias);

// The four combined events (C_T,S_R,Lose), (C_T,S_L,Lose), (C_L,S_L,Win),
// (C_R,S_R,Win) with probabilities (1-q)/3, q/3, 1/3, 1/3.
std::array<SampleSpaceAtom, 4> enumerate_sample_space(const HostBias& bias);

// Sample-space route: keep the atoms whose switch target is the door left
// closed, renormalise.
PosteriorReport posterior_from_sample_space(const HostBias& bias, Box opened);

// Total-probability route for the commit-before-reveal variant.
GameIIReport game_two_win(Decision decision);

// P(host opens `opened`): (1+q)/3 for R, (2-q)/3 for L.
Rational prob_host_opens(const HostBias& bias, Box opened);

// sum over opened doors of P(H) * p_switch_win; checked against 2/3.
Rational long_run_switch_rate(const HostBias& bias);

} // namespace monty
