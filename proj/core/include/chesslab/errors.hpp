#pragma once

#include <stdexcept>
#include <string>

#include "chesslab/types.hpp"

namespace chesslab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed text input (FEN/PGN/dataset files). `field` names the
/// offending part when known.
struct ParseError : Error {
    ParseError(std::string field_, const std::string& what)
        : Error(what), field(std::move(field_)) {}
    std::string field;
};

/// Move text that failed to bind to a legal move. The three kinds are kept
/// distinct because downstream legality accounting depends on whether the
/// token was gibberish or a well-formed but unavailable move.
struct MoveTextError : Error {
    enum class Kind { Syntax, Illegal, Ambiguous };
    MoveTextError(Kind kind_, const std::string& what) : Error(what), kind(kind_) {}
    Kind kind;
};

struct IllegalMoveError : Error {
    IllegalMoveError(Move m, const std::string& what) : Error(what), move(m) {}
    Move move;
};

/// A Position that violates its own invariants (bad king count, pawns on
/// the back rank, impossible en-passant square, ...).
struct InvalidPositionError : Error {
    using Error::Error;
};

struct EngineError : Error {
    enum class Kind { Spawn, Handshake, Protocol, Timeout, IllegalReply, Dead };
    EngineError(Kind kind_, const std::string& what, std::string stderr_tail_ = {})
        : Error(what), kind(kind_), stderr_tail(std::move(stderr_tail_)) {}
    Kind kind;
    std::string stderr_tail;
};

/// Transport failure of an external policy adapter, distinct from the
/// adapter proposing an illegal move.
struct PolicyTransportError : Error {
    using Error::Error;
};

/// Input outside an operation's documented domain (e.g. Elo outside the
/// skill-conversion range).
struct DomainError : Error {
    using Error::Error;
};

}  // namespace chesslab
