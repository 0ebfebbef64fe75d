#pragma once

// Brute-force rules oracle used to cross-check the production move
// generator. Deliberately written as a different algorithm: every (from,
// to) square pair is validated against piece-movement geometry, king
// safety is established by scanning all 64 squares for attackers, and move
// application is a separate case analysis. Slow and simple on purpose;
// keep it independent of detail::generate_legal_unsorted and
// detail::apply_move_unchecked.

#include <cstdint>
#include <vector>

#include "chesslab/position.hpp"

namespace chesslab::oracle {

bool oracle_attacked(const Position& pos, Square target, Color by);
Position oracle_apply(const Position& pos, Move m);
std::vector<Move> oracle_legal_moves(const Position& pos);  // sorted
uint64_t oracle_perft(const Position& pos, int depth);

}  // namespace chesslab::oracle
