#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chesslab/game_record.hpp"
#include "chesslab/position.hpp"
#include "chesslab/types.hpp"

namespace chesslab {

/// Parses a six-field FEN string. Tolerates surrounding whitespace, any
/// amount of whitespace between fields, and a UTF-8 BOM. Throws ParseError
/// (naming the offending field) on malformed input and when the resulting
/// position breaks an invariant.
Position parse_fen(std::string_view text);

/// Canonical single-line FEN: maximal digit compression, "-" for empty
/// castling/en-passant fields.
std::string render_fen(const Position& pos);

/// Outcome of classifying one move-text token against a position. Kept as
/// data (rather than exceptions) because policy sampling classifies large
/// numbers of proposals.
struct ParsedMoveText {
    enum class Outcome { Legal, SyntaxError, IllegalMove, Ambiguous };
    Outcome outcome = Outcome::SyntaxError;
    std::optional<Move> move;  // present iff outcome == Legal
    std::string message;
};

/// Accepts, in order of attempt: strict coordinate text ("e2e4", "e7e8q"),
/// lenient piece-prefixed coordinate text ("Ng1f3", "Nd2xc4", "b5xc4"),
/// castling words ("O-O", "O-O-O"), then SAN ("Bg5", "exd5", "Qf8#").
/// Disambiguation binds against the legal moves of `pos`.
ParsedMoveText classify_move_text(std::string_view text, const Position& pos);

/// classify_move_text, throwing MoveTextError unless the token denotes a
/// unique legal move.
Move parse_move_text(std::string_view text, const Position& pos);

/// Minimal-disambiguation SAN with "+"/"#" suffixes, "=Q" promotions and
/// "O-O"/"O-O-O" castling. Throws IllegalMoveError when m is not legal.
std::string render_san(Move m, const Position& pos);

/// Parses a PGN file (possibly several games). Tag pairs are kept in input
/// order; comments, NAGs and recursive variations are skipped; movetext is
/// bound through parse_move_text against the evolving position, honoring a
/// FEN tag when present. Curly double quotes around tag values are
/// normalized to straight quotes.
std::vector<GameRecord> parse_pgn(std::string_view text);

/// PGN export: seven-tag-roster tags first (in roster order) when present,
/// remaining tags after, movetext wrapped at 80 columns, result token last.
std::string render_pgn(const GameRecord& rec);

/// Start position of a record: the FEN tag when present, else the standard
/// start position.
Position record_start_position(const GameRecord& rec);

}  // namespace chesslab
