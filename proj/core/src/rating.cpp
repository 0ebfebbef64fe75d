#include "chesslab/rating.hpp"

#include <algorithm>
#include <cmath>

#include "chesslab/errors.hpp"
#include "chesslab/rng.hpp"

namespace chesslab {

namespace {

constexpr double kEloFloor = 1320.0;
constexpr double kEloSpan = 1870.0;
constexpr double kCubicA = 37.247;
constexpr double kCubicB = -40.852;
constexpr double kCubicC = 22.294;
constexpr double kCubicD = -0.311;

double skill_curve(double e) { return ((kCubicA * e + kCubicB) * e + kCubicC) * e + kCubicD; }

const EloBand kPublishedBands[3] = {{1350, 1440}, {1450, 1560}, {1570, 1720}};

constexpr double kSkillMin = kCubicD;                                  // e = 0
const double kSkillMax = kCubicA + kCubicB + kCubicC + kCubicD;        // e = 1

}  // namespace

double expected_score(double player_elo, double opponent_elo) {
    return 1.0 / (1.0 + std::pow(10.0, (opponent_elo - player_elo) / 400.0));
}

RatingUpdate update(double elo_old, double r_a, double opponent_elo, double k) {
    if (r_a != 0.0 && r_a != 0.5 && r_a != 1.0)
        throw DomainError("game result must be 0, 0.5 or 1");
    if (!(k > 0.0)) throw DomainError("K must be positive");
    RatingUpdate u;
    u.elo_old = elo_old;
    u.player_elo = elo_old;
    u.opponent_elo = opponent_elo;
    u.k = k;
    u.actual = r_a;
    u.expected = expected_score(elo_old, opponent_elo);
    u.elo_new = elo_old + (r_a - u.expected) * k;
    return u;
}

SkillLevel skill_from_elo(double elo) {
    if (elo < kEloFloor || elo > kEloFloor + kEloSpan)
        throw DomainError("elo " + std::to_string(elo) +
                          " outside skill-conversion range [1320, 3190]");
    SkillLevel s;
    s.e = (elo - kEloFloor) / kEloSpan;
    s.sk = skill_curve(s.e);
    return s;
}

double elo_from_skill(double sk) {
    if (sk < kSkillMin - 1e-12 || sk > kSkillMax + 1e-12)
        throw DomainError("skill " + std::to_string(sk) +
                          " outside invertible range [-0.311, 18.378]");
    // Bisection well past the documented 0.5-Elo tolerance, so round trips
    // through skill_from_elo are exact to ~1e-9.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 64 && (hi - lo) * kEloSpan > 1e-9; ++i) {
        double mid = 0.5 * (lo + hi);
        if (skill_curve(mid) < sk)
            lo = mid;
        else
            hi = mid;
    }
    return kEloFloor + kEloSpan * 0.5 * (lo + hi);
}

const EloBand* published_band(int skill) {
    if (skill < 0 || skill > 2) return nullptr;
    return &kPublishedBands[skill];
}

double opponent_elo_for_skill(int skill) {
    if (skill < 0 || skill > 20) throw DomainError("skill level must be in [0, 20]");
    auto clamped_point = [](double sk) {
        return elo_from_skill(std::clamp(sk, kSkillMin, kSkillMax));
    };
    double mid = 0.5 * (clamped_point(skill) + clamped_point(skill + 1.0));
    if (const EloBand* band = published_band(skill))
        mid = std::clamp(mid, band->low, band->high);
    return mid;
}

namespace {

double fold_sequence(const std::vector<GameOutcome>& results, const KSchedule& schedule,
                     double initial_elo, std::vector<double>* trajectory) {
    double elo = initial_elo;
    for (const GameOutcome& g : results) {
        elo = update(elo, g.r_a, g.opponent_elo, schedule.k_for(elo)).elo_new;
        if (trajectory) trajectory->push_back(elo);
    }
    return elo;
}

}  // namespace

RatingEstimate estimate_rating(const std::vector<GameOutcome>& results,
                               const KSchedule& schedule, double initial_elo,
                               int bootstrap_rounds, uint64_t seed) {
    if (results.empty()) throw DomainError("estimate_rating needs at least one result");

    RatingEstimate est;
    est.games = static_cast<int>(results.size());

    std::vector<double> trajectory;
    trajectory.reserve(results.size());
    est.elo = fold_sequence(results, schedule, initial_elo, &trajectory);

    const size_t tail_start = trajectory.size() / 2;
    double tail_sum = 0;
    for (size_t i = tail_start; i < trajectory.size(); ++i) tail_sum += trajectory[i];
    est.tail_mean = tail_sum / static_cast<double>(trajectory.size() - tail_start);

    if (bootstrap_rounds > 0) {
        Rng rng(derive_seed(seed, {0xb007u}));
        std::vector<double> finals(bootstrap_rounds);
        std::vector<GameOutcome> resample(results.size());
        for (int b = 0; b < bootstrap_rounds; ++b) {
            for (size_t i = 0; i < results.size(); ++i)
                resample[i] = results[rng.uniform(results.size())];
            finals[b] = fold_sequence(resample, schedule, initial_elo, nullptr);
        }
        std::sort(finals.begin(), finals.end());
        auto quantile = [&finals](double q) {
            double idx = q * static_cast<double>(finals.size() - 1);
            size_t lo = static_cast<size_t>(idx);
            size_t hi = std::min(lo + 1, finals.size() - 1);
            double frac = idx - static_cast<double>(lo);
            return finals[lo] * (1.0 - frac) + finals[hi] * frac;
        };
        est.interval_low = quantile(0.025);
        est.interval_high = quantile(0.975);
        est.uncertainty = 0.5 * (est.interval_high - est.interval_low);
    } else {
        est.interval_low = est.interval_high = est.elo;
        est.uncertainty = 0;
    }
    return est;
}

}  // namespace chesslab
