#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace chesslab {

enum class Color : uint8_t { White = 0, Black = 1 };

constexpr Color opposite(Color c) {
    return c == Color::White ? Color::Black : Color::White;
}

enum class PieceKind : uint8_t { Pawn = 0, Knight, Bishop, Rook, Queen, King };

struct Piece {
    PieceKind kind;
    Color color;

    friend bool operator==(const Piece&, const Piece&) = default;
};

/// A board coordinate. Internally an index 0..63 in rank-major order
/// (a1=0, b1=1, ..., h8=63), which doubles as the canonical total order.
struct Square {
    int8_t index = 0;

    constexpr Square() = default;
    constexpr explicit Square(int idx) : index(static_cast<int8_t>(idx)) {}
    constexpr Square(int file, int rank) : index(static_cast<int8_t>(rank * 8 + file)) {}

    constexpr int file() const { return index % 8; }   // 0..7 = a..h
    constexpr int rank() const { return index / 8; }   // 0..7 = 1..8

    static constexpr bool in_board(int file, int rank) {
        return file >= 0 && file < 8 && rank >= 0 && rank < 8;
    }

    std::string algebraic() const {
        return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
    }

    /// Parses "e4" style coordinates; nullopt on anything else.
    static std::optional<Square> from_algebraic(std::string_view s) {
        if (s.size() != 2 || s[0] < 'a' || s[0] > 'h' || s[1] < '1' || s[1] > '8')
            return std::nullopt;
        return Square(s[0] - 'a', s[1] - '1');
    }

    friend constexpr auto operator<=>(const Square&, const Square&) = default;
};

/// One chess action: from/to squares plus the promotion piece when a pawn
/// reaches the last rank. Ordering (from, to, promotion) is the move order
/// used everywhere downstream.
struct Move {
    Square from;
    Square to;
    std::optional<PieceKind> promotion;

    friend constexpr auto operator<=>(const Move&, const Move&) = default;

    /// Plain coordinate text: "e2e4", "e7e8q".
    std::string uci() const {
        std::string s = from.algebraic() + to.algebraic();
        if (promotion) {
            static constexpr char letters[] = {'?', 'n', 'b', 'r', 'q', '?'};
            s += letters[static_cast<int>(*promotion)];
        }
        return s;
    }
};

struct GameStatus {
    enum class Tag : uint8_t {
        Ongoing,
        Checkmate,
        Stalemate,
        DrawFiftyMove,
        DrawThreefold,
        DrawInsufficientMaterial,
        DrawMoveCap,  // arena-imposed ply cap, never produced by status()
    };

    Tag tag = Tag::Ongoing;
    std::optional<Color> winner;  // present iff tag == Checkmate

    bool is_over() const { return tag != Tag::Ongoing; }
    bool is_draw() const { return is_over() && !winner.has_value(); }

    friend bool operator==(const GameStatus&, const GameStatus&) = default;
};

const char* to_string(GameStatus::Tag tag);
const char* to_string(Color c);
char piece_letter(PieceKind k);                       // K Q R B N P
std::optional<PieceKind> piece_from_letter(char c);   // accepts upper case

}  // namespace chesslab
