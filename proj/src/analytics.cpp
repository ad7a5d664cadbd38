#include "monty/analytics.hpp"

#include "monty/error.hpp"

namespace monty {

const Rational& ExtendedRational::value() const {
    if (!value_) throw Error(ErrorCode::InvalidArgument, "value() of an infinite ratio");
    return *value_;
}

namespace {

void require_closable(Box opened) {
    if (opened == Box::T) {
        throw Error(ErrorCode::InvalidDoor, "the host never opens the contestant's box T");
    }
}

ExtendedRational ratio(const Rational& switch_win, const Rational& stay_win) {
    if (stay_win.is_zero()) return ExtendedRational::infinite();
    return switch_win / stay_win;
}

PosteriorReport make_report(Box opened, const Rational& p_switch) {
    PosteriorReport r;
    r.opened = opened;
    r.p_switch_win = p_switch;
    r.p_stay_win = Rational(1) - p_switch;
    r.bayes_ratio = ratio(r.p_switch_win, r.p_stay_win);
    return r;
}

} // namespace

PosteriorReport posterior_given_opened(const HostBias& bias, Box opened) {
    require_closable(opened);
    const Rational& q = bias.q();
    // Opening L is the mirror image: the free-choice probability becomes 1-q.
    Rational free_choice = opened == Box::R ? q : Rational(1) - q;
    return make_report(opened, Rational(1) / (Rational(1) + free_choice));
}

ExtendedRational bayes_ratio(const HostBias& bias) {
    if (bias.q().is_zero()) return ExtendedRational::infinite();
    return bias.q().reciprocal();
}

std::array<SampleSpaceAtom, 4> enumerate_sample_space(const HostBias& bias) {
    const Rational& q = bias.q();
    return {{
        {Box::T, Box::R, Outcome::Lose, kPrior * (Rational(1) - q)},
        {Box::T, Box::L, Outcome::Lose, kPrior * q},
        {Box::L, Box::L, Outcome::Win, kPrior},
        {Box::R, Box::R, Outcome::Win, kPrior},
    }};
}

PosteriorReport posterior_from_sample_space(const HostBias& bias, Box opened) {
    require_closable(opened);
    Box target = other_door(opened);
    Rational compatible(0);
    Rational winning(0);
    for (const auto& atom : enumerate_sample_space(bias)) {
        if (atom.switch_target != target) continue;
        compatible += atom.probability;
        if (atom.result == Outcome::Win) winning += atom.probability;
    }
    PosteriorReport r;
    r.opened = opened;
    r.p_switch_win = winning / compatible;
    r.p_stay_win = (compatible - winning) / compatible;
    r.bayes_ratio = ratio(r.p_switch_win, r.p_stay_win);
    return r;
}

GameIIReport game_two_win(Decision decision) {
    auto total = [](Decision d, std::map<Box, Rational>& terms) {
        Rational sum(0);
        for (Box car : {Box::T, Box::L, Box::R}) {
            // With a pre-committed decision the host's door cannot matter:
            // switching wins iff the car is not at T.
            bool win = d == Decision::Stay ? car == Box::T : car != Box::T;
            Rational given = win ? Rational(1) : Rational(0);
            terms[car] = given;
            sum += given * kPrior;
        }
        return sum;
    };
    GameIIReport r;
    r.decision = decision;
    std::map<Box, Rational> switch_terms;
    std::map<Box, Rational> stay_terms;
    r.p_win_switch = total(Decision::Switch, switch_terms);
    r.p_win_stay = total(Decision::Stay, stay_terms);
    r.per_placement = decision == Decision::Switch ? switch_terms : stay_terms;
    return r;
}

Rational prob_host_opens(const HostBias& bias, Box opened) {
    require_closable(opened);
    // Car behind the other closable door forces this door; car at T opens it
    // with the free-choice probability.
    Rational free_choice = opened == Box::R ? bias.q() : Rational(1) - bias.q();
    return kPrior + kPrior * free_choice;
}

Rational long_run_switch_rate(const HostBias& bias) {
    Rational rate(0);
    for (Box opened : {Box::L, Box::R}) {
        rate += prob_host_opens(bias, opened) * posterior_given_opened(bias, opened).p_switch_win;
    }
    if (rate != Rational(2, 3)) {
        throw Error(ErrorCode::Internal,
                    "long-run switch rate " + rate.str() + " != 2/3 at q=" + bias.q().str());
    }
    return rate;
}

} // namespace monty
