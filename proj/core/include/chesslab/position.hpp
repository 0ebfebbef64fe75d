#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chesslab/types.hpp"

namespace chesslab {

// Castling rights bitmask, FEN letter order.
enum CastlingRight : uint8_t {
    CastleWK = 1,
    CastleWQ = 2,
    CastleBK = 4,
    CastleBQ = 8,
};

/// Full board state: the six FEN fields. A plain value type; every rules
/// operation takes a const Position and returns a fresh one, so positions
/// can be shared across worker threads without coordination.
class Position {
public:
    Position();  // empty board, white to move

    static Position startpos();

    std::optional<Piece> piece_at(Square sq) const;
    void set_piece(Square sq, std::optional<Piece> piece);

    Color side_to_move() const { return side_; }
    void set_side_to_move(Color c) { side_ = c; }

    uint8_t castling_rights() const { return castling_; }
    void set_castling_rights(uint8_t mask) { castling_ = mask; }

    std::optional<Square> en_passant() const;
    void set_en_passant(std::optional<Square> sq);

    int halfmove_clock() const { return halfmove_clock_; }
    void set_halfmove_clock(int n) { halfmove_clock_ = n; }

    int fullmove_number() const { return fullmove_number_; }
    void set_fullmove_number(int n) { fullmove_number_ = n; }

    /// King square of `c`; index -1 if that king is missing (invalid position).
    Square king_square(Color c) const { return Square(king_sq_[static_cast<int>(c)]); }

    int piece_count() const;

    /// Identity key for repetition detection and dataset dedup: the first
    /// four FEN fields (placement, side, castling, en passant).
    std::string repetition_key() const;

    /// Nullopt when all Position invariants hold, else a description of the
    /// first violation found.
    std::optional<std::string> invariant_violation() const;

    friend bool operator==(const Position&, const Position&) = default;

    // Raw signed piece code at an index: 0 empty, +1..+6 white P N B R Q K,
    // negative for black. The move generator's inner loops live on this.
    int8_t raw(int idx) const { return board_[idx]; }

private:
    std::array<int8_t, 64> board_{};
    Color side_ = Color::White;
    uint8_t castling_ = 0;
    int8_t ep_ = -1;
    int halfmove_clock_ = 0;
    int fullmove_number_ = 1;
    int8_t king_sq_[2] = {-1, -1};
};

/// True when `sq` is attacked by any piece of color `by`.
bool is_attacked(const Position& pos, Square sq, Color by);

bool in_check(const Position& pos, Color c);

/// Every move legal under FIDE rules, sorted by (from, to, promotion).
/// Throws InvalidPositionError when `pos` violates its invariants.
std::vector<Move> legal_moves(const Position& pos);

/// Successor position. Throws IllegalMoveError unless m is legal in pos.
Position apply_move(const Position& pos, Move m);

/// Adjudicates the game ending at `pos`. `history` holds every position of
/// the game in order, with `pos` as its last element (it is only consulted
/// for threefold repetition; an empty span disables that rule).
///
/// When several ending conditions hold at once the tag is chosen in the
/// order: checkmate, stalemate, fifty-move, threefold, insufficient
/// material. DrawMoveCap is an arena-level ruling and never returned here.
GameStatus status(const Position& pos, std::span<const Position> history);

/// Leaf count of the legal-move tree at exactly `depth` plies. depth >= 1.
uint64_t perft(const Position& pos, int depth);

namespace detail {
// Unchecked fast paths used by perft, the legality filter and callers that
// already know `m` is legal. `apply_move_unchecked` assumes pseudo-legality
// and does not test for self-check.
Position apply_move_unchecked(const Position& pos, Move m);
void generate_legal_unsorted(const Position& pos, std::vector<Move>& out);
}  // namespace detail

}  // namespace chesslab
