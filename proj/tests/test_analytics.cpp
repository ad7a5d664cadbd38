#include "oracle.hpp"

#include "monty/analytics.hpp"
#include "monty/error.hpp"

#include <gtest/gtest.h>

using namespace monty;

namespace {

HostBias q(std::int64_t n, std::int64_t d) { return HostBias(Rational(n, d)); }

bool matches(const Rational& r, const oracle::Q& o) {
    return r.num() == o.numerator() && r.den() == o.denominator();
}

} // namespace

TEST(PosteriorGivenOpened, Examples) {
    EXPECT_EQ(posterior_given_opened(q(1, 2), Box::R).p_switch_win, Rational(2, 3));
    EXPECT_EQ(posterior_given_opened(q(0, 1), Box::R).p_switch_win, Rational(1));
    EXPECT_EQ(posterior_given_opened(q(1, 1), Box::R).p_switch_win, Rational(1, 2));
    EXPECT_EQ(posterior_given_opened(q(1, 4), Box::R).p_switch_win, Rational(4, 5));
    // Under q = P(open R | car at T), q=0 with L opened is the mirror 1/(2-0).
    EXPECT_EQ(posterior_given_opened(q(0, 1), Box::L).p_switch_win, Rational(1, 2));
    EXPECT_EQ(posterior_given_opened(q(1, 1), Box::L).p_switch_win, Rational(1));
}

TEST(PosteriorGivenOpened, OracleAgreesAtQuarter) {
    // Frozen from the brute-force enumeration in oracle.hpp.
    oracle::Q expected = oracle::switch_win_given_opened(oracle::R, oracle::Q(1, 4));
    ASSERT_EQ(expected, oracle::Q(4, 5));
    EXPECT_TRUE(matches(posterior_given_opened(q(1, 4), Box::R).p_switch_win, expected));
}

TEST(PosteriorGivenOpened, MatchesOracleOnFineGrid) {
    for (int k = 0; k <= 64; ++k) {
        for (auto [door, odoor] : {std::pair{Box::L, oracle::L}, std::pair{Box::R, oracle::R}}) {
            PosteriorReport r = posterior_given_opened(q(k, 64), door);
            ASSERT_TRUE(matches(r.p_switch_win, oracle::switch_win_given_opened(odoor, oracle::Q(k, 64))))
                << "k=" << k << " door=" << to_string(door);
        }
    }
}

TEST(PosteriorGivenOpened, RejectsDoorT) {
    try {
        posterior_given_opened(q(1, 2), Box::T);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidDoor);
    }
    EXPECT_THROW(posterior_from_sample_space(q(1, 2), Box::T), Error);
}

TEST(BayesRatio, Examples) {
    EXPECT_EQ(bayes_ratio(q(1, 2)), ExtendedRational(Rational(2)));
    EXPECT_EQ(bayes_ratio(q(1, 1)), ExtendedRational(Rational(1)));
    EXPECT_TRUE(bayes_ratio(q(0, 1)).is_infinite());
    EXPECT_EQ(bayes_ratio(q(0, 1)).str(), "inf");
    EXPECT_THROW((void)bayes_ratio(q(0, 1)).value(), Error);
}

TEST(EnumerateSampleSpace, Examples) {
    auto probs = [](const HostBias& b) {
        std::vector<Rational> out;
        for (const auto& a : enumerate_sample_space(b)) out.push_back(a.probability);
        return out;
    };
    EXPECT_EQ(probs(q(1, 2)), (std::vector<Rational>{Rational(1, 6), Rational(1, 6), Rational(1, 3), Rational(1, 3)}));
    EXPECT_EQ(probs(q(0, 1)), (std::vector<Rational>{Rational(1, 3), Rational(0), Rational(1, 3), Rational(1, 3)}));
    EXPECT_EQ(probs(q(3, 4)), (std::vector<Rational>{Rational(1, 12), Rational(1, 4), Rational(1, 3), Rational(1, 3)}));
}

TEST(EnumerateSampleSpace, AtomsInOrderWithOutcomes) {
    auto atoms = enumerate_sample_space(q(1, 3));
    EXPECT_EQ(atoms[0].car, Box::T);
    EXPECT_EQ(atoms[0].switch_target, Box::R);
    EXPECT_EQ(atoms[0].result, Outcome::Lose);
    EXPECT_EQ(atoms[1].car, Box::T);
    EXPECT_EQ(atoms[1].switch_target, Box::L);
    EXPECT_EQ(atoms[2].car, Box::L);
    EXPECT_EQ(atoms[2].result, Outcome::Win);
    EXPECT_EQ(atoms[3].car, Box::R);
    EXPECT_EQ(atoms[3].switch_target, Box::R);
}

TEST(EnumerateSampleSpace, EachAtomMatchesOracleJoint) {
    // An atom (car, switch target) is the joint event (car, host opens the other door).
    for (int k = 0; k <= 64; ++k) {
        oracle::Q oq(k, 64);
        for (const auto& a : enumerate_sample_space(q(k, 64))) {
            auto ocar = static_cast<oracle::Door>(static_cast<int>(a.car));
            auto opened = a.switch_target == Box::L ? oracle::R : oracle::L;
            ASSERT_TRUE(matches(a.probability, oracle::joint(ocar, opened, oq)));
        }
    }
}

TEST(PosteriorFromSampleSpace, Examples) {
    EXPECT_EQ(posterior_from_sample_space(q(1, 2), Box::R).p_switch_win, Rational(2, 3));
    EXPECT_EQ(posterior_from_sample_space(q(1, 1), Box::R).p_switch_win, Rational(1, 2));
    EXPECT_EQ(posterior_from_sample_space(q(2, 5), Box::L), posterior_given_opened(q(2, 5), Box::L));
}

TEST(GameTwo, Examples) {
    GameIIReport sw = game_two_win(Decision::Switch);
    GameIIReport st = game_two_win(Decision::Stay);
    EXPECT_EQ(sw.p_win(), Rational(2, 3));
    EXPECT_EQ(st.p_win(), Rational(1, 3));
    EXPECT_EQ(sw.p_win() + st.p_win(), Rational(1));
    EXPECT_EQ(sw.per_placement, (std::map<Box, Rational>{{Box::T, 0}, {Box::L, 1}, {Box::R, 1}}));
    EXPECT_EQ(st.per_placement, (std::map<Box, Rational>{{Box::T, 1}, {Box::L, 0}, {Box::R, 0}}));
    EXPECT_EQ(sw.p_win_switch + sw.p_win_stay, Rational(1));
}

TEST(LongRun, Examples) {
    EXPECT_EQ(long_run_switch_rate(q(0, 1)), Rational(2, 3));
    EXPECT_EQ(long_run_switch_rate(q(1, 2)), Rational(2, 3));
    // Oracle: total probability through the brute-force joint.
    oracle::Q oq(7, 13);
    oracle::Q total = oracle::prob_opened(oracle::R, oq) * oracle::switch_win_given_opened(oracle::R, oq) +
                      oracle::prob_opened(oracle::L, oq) * oracle::switch_win_given_opened(oracle::L, oq);
    ASSERT_EQ(total, oracle::Q(2, 3));
    EXPECT_EQ(long_run_switch_rate(q(7, 13)), Rational(2, 3));
}

TEST(ProbHostOpens, MatchesOracle) {
    for (int k = 0; k <= 64; ++k) {
        EXPECT_TRUE(matches(prob_host_opens(q(k, 64), Box::R), oracle::prob_opened(oracle::R, oracle::Q(k, 64))));
        EXPECT_TRUE(matches(prob_host_opens(q(k, 64), Box::L), oracle::prob_opened(oracle::L, oracle::Q(k, 64))));
    }
}

// Invariants over the k/64 grid plus a few awkward denominators.
class AnalyticsInvariants : public ::testing::TestWithParam<Rational> {};

TEST_P(AnalyticsInvariants, Hold) {
    HostBias b(GetParam());
    const Rational& qv = b.q();
    for (Box door : {Box::L, Box::R}) {
        PosteriorReport bayes = posterior_given_opened(b, door);
        PosteriorReport space = posterior_from_sample_space(b, door);
        EXPECT_EQ(bayes, space);
        EXPECT_EQ(bayes.p_switch_win + bayes.p_stay_win, Rational(1));
        EXPECT_GE(bayes.p_switch_win, Rational(1, 2));
    }
    Rational atoms_total(0);
    for (const auto& a : enumerate_sample_space(b)) {
        EXPECT_GE(a.probability, Rational(0));
        EXPECT_LE(a.probability, Rational(1));
        atoms_total += a.probability;
    }
    EXPECT_EQ(atoms_total, Rational(1));
    PosteriorReport r = posterior_given_opened(b, Box::R);
    if (!qv.is_zero()) {
        EXPECT_EQ(r.p_switch_win / r.p_stay_win, qv.reciprocal());
        EXPECT_EQ(r.bayes_ratio, bayes_ratio(b));
    } else {
        EXPECT_TRUE(r.bayes_ratio.is_infinite());
    }
    EXPECT_EQ((Rational(1) + qv) / Rational(3) * (Rational(1) / (Rational(1) + qv)) +
                  (Rational(2) - qv) / Rational(3) * (Rational(1) / (Rational(2) - qv)),
              Rational(2, 3));
    EXPECT_EQ(long_run_switch_rate(b), Rational(2, 3));
}

std::vector<Rational> invariant_grid() {
    std::vector<Rational> g;
    for (int k = 0; k <= 64; ++k) g.emplace_back(k, 64);
    for (auto [n, d] : {std::pair{1, 3}, {2, 7}, {5, 11}, {7, 13}, {999, 1000}, {1, 1000003}}) g.emplace_back(n, d);
    return g;
}

INSTANTIATE_TEST_SUITE_P(Grid, AnalyticsInvariants, ::testing::ValuesIn(invariant_grid()));

TEST(Analytics, SwitchPosteriorStrictlyDecreasingInQ) {
    Rational prev = posterior_given_opened(q(0, 1), Box::R).p_switch_win;
    EXPECT_EQ(prev, Rational(1));
    for (int k = 1; k <= 256; ++k) {
        Rational cur = posterior_given_opened(q(k, 256), Box::R).p_switch_win;
        EXPECT_LT(cur, prev);
        prev = cur;
    }
    EXPECT_EQ(prev, Rational(1, 2));
}

TEST(Analytics, UnbiasedStayIsOneThird) {
    EXPECT_EQ(posterior_given_opened(q(1, 2), Box::R).p_stay_win, Rational(1, 3));
    EXPECT_EQ(posterior_given_opened(q(1, 2), Box::L).p_stay_win, Rational(1, 3));
}
