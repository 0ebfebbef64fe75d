#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chesslab/types.hpp"

namespace chesslab {

enum class GameResult : uint8_t { WhiteWins, BlackWins, Draw, Unfinished };

const char* result_token(GameResult r);  // "1-0", "0-1", "1/2-1/2", "*"
std::optional<GameResult> result_from_token(std::string_view token);

/// How one move of a game was obtained. `attempts_used == 0` marks a
/// harness-injected randomized opening ply (excluded from sampling stats);
/// sampled moves have attempts_used >= 1.
struct MoveTelemetry {
    int ply = 0;  // 1-based
    Color proposer = Color::White;
    int attempts_used = 0;
    bool first_attempt_legal = false;
    enum class Fallback : uint8_t { None, EngineBest, RandomLegal };
    Fallback fallback_source = Fallback::None;
    int64_t elapsed_ms = 0;  // wall clock; never serialized into artifacts
};

/// One complete game: PGN-style tag pairs, the move list, the result, and
/// (for arena games) per-move sampling telemetry.
struct GameRecord {
    std::vector<std::pair<std::string, std::string>> tags;
    std::vector<Move> moves;
    GameResult result = GameResult::Unfinished;
    std::optional<std::vector<MoveTelemetry>> per_move_meta;

    std::optional<std::string> tag(std::string_view name) const {
        for (const auto& [k, v] : tags)
            if (k == name) return v;
        return std::nullopt;
    }
};

}  // namespace chesslab
