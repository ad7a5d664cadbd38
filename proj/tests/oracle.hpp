#pragma once

// Test-only brute-force oracle. Enumerates the joint distribution of
// (car placement, host door) with boost::rational, independent of the
// library's Rational and of both analytics routes.

#include <boost/rational.hpp>

#include <cstdint>

namespace oracle {

using Q = boost::rational<std::int64_t>;

enum Door { T = 0, L = 1, R = 2 };

// P(car = c, host opens h) where q = P(host opens R | car at T).
inline Q joint(Door car, Door opened, Q q) {
    const Q third(1, 3);
    if (opened == T || opened == car) return Q(0);
    if (car == T) return third * (opened == R ? q : Q(1) - q);
    return third; // forced
}

// P(switching wins | host opened `opened`).
inline Q switch_win_given_opened(Door opened, Q q) {
    Door other = opened == R ? L : R;
    Q evidence(0);
    for (Door car : {T, L, R}) evidence += joint(car, opened, q);
    return joint(other, opened, q) / evidence;
}

inline Q prob_opened(Door opened, Q q) {
    Q total(0);
    for (Door car : {T, L, R}) total += joint(car, opened, q);
    return total;
}

} // namespace oracle
