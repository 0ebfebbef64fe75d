#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace chesslab {

/// The quantities of one sequential Elo update:
/// elo_new = elo_old + (actual - expected) * k.
struct RatingUpdate {
    double elo_old = 0;       // rating before the game
    double elo_new = 0;       // rating after the game
    double k = 0;             // tournament weight
    double actual = 0;        // game result: 1 win, 0.5 draw, 0 loss
    double expected = 0;      // expected score, in (0,1)
    double player_elo = 0;    // player rating entering the expectation
    double opponent_elo = 0;  // opponent rating entering the expectation
};

/// Stockfish skill knob paired with its normalized Elo e = (elo-1320)/1870.
struct SkillLevel {
    double sk = 0;
    double e = 0;
};

/// Expected score of `player_elo` against `opponent_elo`:
/// 1 / (1 + 10^((opponent - player)/400)). Strictly increasing in
/// player_elo, and expected(a,b) + expected(b,a) == 1.
double expected_score(double player_elo, double opponent_elo);

/// One sequential update. r_a must be 0, 0.5 or 1 and k > 0; throws
/// DomainError otherwise.
RatingUpdate update(double elo_old, double r_a, double opponent_elo, double k);

/// Cubic skill curve evaluated at e = (elo-1320)/1870:
/// sk = 37.247 e^3 - 40.852 e^2 + 22.294 e - 0.311.
/// Defined for elo in [1320, 3190]; extrapolation is refused (DomainError).
SkillLevel skill_from_elo(double elo);

/// Inverse of skill_from_elo by bisection on e in [0,1]; the cubic is
/// strictly increasing there so the root is unique. sk must lie in
/// [-0.311, 18.378].
double elo_from_skill(double sk);

/// K as a function of current rating: the customary two-value schedule
/// (higher K for lower-rated players).
struct KSchedule {
    double low_k = 20.0;
    double high_k = 10.0;
    double threshold = 2000.0;

    double k_for(double elo) const { return elo < threshold ? low_k : high_k; }
};

/// Published Elo band for a Stockfish skill level, when one exists.
struct EloBand {
    double low = 0;
    double high = 0;
    double midpoint() const { return (low + high) / 2.0; }
};

/// Opponent Elo assigned to a Stockfish skill level: the midpoint of the
/// skill curve evaluated at sk and sk+1 (clamped to the curve's domain),
/// further clamped into the published band for skill levels 0-2.
double opponent_elo_for_skill(int skill);

/// The published band, for skills that have one (0, 1 and 2).
const EloBand* published_band(int skill);

struct GameOutcome {
    double r_a = 0;          // 1 win, 0.5 draw, 0 loss
    double opponent_elo = 0;
};

struct RatingEstimate {
    double elo = 0;           // final rating after folding the sequence
    double tail_mean = 0;     // mean rating over the second half of the run
    double uncertainty = 0;   // half-width of the bootstrap central 95% interval
    double interval_low = 0;
    double interval_high = 0;
    int games = 0;
};

/// Sequential Elo estimation: folds update() over the results in order,
/// starting from initial_elo with K from the schedule. Uncertainty comes
/// from `bootstrap_rounds` seeded resamples (with replacement, re-folded in
/// sampled order); the point estimate does not depend on the bootstrap seed.
RatingEstimate estimate_rating(const std::vector<GameOutcome>& results,
                               const KSchedule& schedule, double initial_elo,
                               int bootstrap_rounds = 1000, uint64_t seed = 0);

}  // namespace chesslab
