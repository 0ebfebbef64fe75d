#include "chesslab/position.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

#include "chesslab/errors.hpp"

namespace chesslab {

namespace {

constexpr int8_t kEmpty = 0;

int8_t encode(Piece p) {
    int8_t code = static_cast<int8_t>(static_cast<int>(p.kind) + 1);
    return p.color == Color::White ? code : static_cast<int8_t>(-code);
}

Piece decode(int8_t code) {
    return Piece{static_cast<PieceKind>(std::abs(code) - 1),
                 code > 0 ? Color::White : Color::Black};
}

constexpr int sign_of(Color c) { return c == Color::White ? 1 : -1; }

// (file, rank) step tables.
constexpr int KNIGHT_STEPS[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                    {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr int KING_STEPS[8][2] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                  {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
constexpr int BISHOP_DIRS[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
constexpr int ROOK_DIRS[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

constexpr PieceKind PROMOTION_KINDS[4] = {PieceKind::Knight, PieceKind::Bishop,
                                          PieceKind::Rook, PieceKind::Queen};

char file_char(int f) { return static_cast<char>('a' + f); }

}  // namespace

const char* to_string(GameStatus::Tag tag) {
    switch (tag) {
        case GameStatus::Tag::Ongoing: return "ongoing";
        case GameStatus::Tag::Checkmate: return "checkmate";
        case GameStatus::Tag::Stalemate: return "stalemate";
        case GameStatus::Tag::DrawFiftyMove: return "draw_fifty_move";
        case GameStatus::Tag::DrawThreefold: return "draw_threefold";
        case GameStatus::Tag::DrawInsufficientMaterial: return "draw_insufficient_material";
        case GameStatus::Tag::DrawMoveCap: return "draw_move_cap";
    }
    return "?";
}

const char* to_string(Color c) { return c == Color::White ? "white" : "black"; }

char piece_letter(PieceKind k) {
    static constexpr char letters[] = {'P', 'N', 'B', 'R', 'Q', 'K'};
    return letters[static_cast<int>(k)];
}

std::optional<PieceKind> piece_from_letter(char c) {
    switch (c) {
        case 'P': return PieceKind::Pawn;
        case 'N': return PieceKind::Knight;
        case 'B': return PieceKind::Bishop;
        case 'R': return PieceKind::Rook;
        case 'Q': return PieceKind::Queen;
        case 'K': return PieceKind::King;
        default: return std::nullopt;
    }
}

Position::Position() = default;

Position Position::startpos() {
    Position p;
    static constexpr PieceKind back_rank[8] = {
        PieceKind::Rook, PieceKind::Knight, PieceKind::Bishop, PieceKind::Queen,
        PieceKind::King, PieceKind::Bishop, PieceKind::Knight, PieceKind::Rook};
    for (int f = 0; f < 8; ++f) {
        p.set_piece(Square(f, 0), Piece{back_rank[f], Color::White});
        p.set_piece(Square(f, 1), Piece{PieceKind::Pawn, Color::White});
        p.set_piece(Square(f, 6), Piece{PieceKind::Pawn, Color::Black});
        p.set_piece(Square(f, 7), Piece{back_rank[f], Color::Black});
    }
    p.set_castling_rights(CastleWK | CastleWQ | CastleBK | CastleBQ);
    return p;
}

std::optional<Piece> Position::piece_at(Square sq) const {
    int8_t code = board_[sq.index];
    if (code == kEmpty) return std::nullopt;
    return decode(code);
}

void Position::set_piece(Square sq, std::optional<Piece> piece) {
    int8_t old = board_[sq.index];
    if (old != kEmpty && std::abs(old) == static_cast<int>(PieceKind::King) + 1) {
        Color c = old > 0 ? Color::White : Color::Black;
        if (king_sq_[static_cast<int>(c)] == sq.index)
            king_sq_[static_cast<int>(c)] = -1;
    }
    if (!piece) {
        board_[sq.index] = kEmpty;
        return;
    }
    board_[sq.index] = encode(*piece);
    if (piece->kind == PieceKind::King)
        king_sq_[static_cast<int>(piece->color)] = sq.index;
}

std::optional<Square> Position::en_passant() const {
    if (ep_ < 0) return std::nullopt;
    return Square(ep_);
}

void Position::set_en_passant(std::optional<Square> sq) {
    ep_ = sq ? sq->index : int8_t{-1};
}

int Position::piece_count() const {
    int n = 0;
    for (int8_t c : board_)
        if (c != kEmpty) ++n;
    return n;
}

std::string Position::repetition_key() const {
    // Mirrors the first four FEN fields without going through the renderer.
    std::string key;
    key.reserve(80);
    for (int rank = 7; rank >= 0; --rank) {
        int empties = 0;
        for (int file = 0; file < 8; ++file) {
            int8_t code = board_[rank * 8 + file];
            if (code == kEmpty) {
                ++empties;
                continue;
            }
            if (empties) {
                key += static_cast<char>('0' + empties);
                empties = 0;
            }
            Piece p = decode(code);
            char letter = piece_letter(p.kind);
            key += p.color == Color::White ? letter
                                           : static_cast<char>(letter - 'A' + 'a');
        }
        if (empties) key += static_cast<char>('0' + empties);
        if (rank) key += '/';
    }
    key += ' ';
    key += side_ == Color::White ? 'w' : 'b';
    key += ' ';
    if (!castling_) {
        key += '-';
    } else {
        if (castling_ & CastleWK) key += 'K';
        if (castling_ & CastleWQ) key += 'Q';
        if (castling_ & CastleBK) key += 'k';
        if (castling_ & CastleBQ) key += 'q';
    }
    key += ' ';
    key += ep_ < 0 ? std::string("-") : Square(ep_).algebraic();
    return key;
}

bool is_attacked(const Position& pos, Square sq, Color by) {
    const int f = sq.file(), r = sq.rank();
    const int s = sign_of(by);

    // Pawn attacks come from one rank behind the attacker's push direction.
    const int pr = r - s;
    if (pr >= 0 && pr < 8) {
        for (int df : {-1, 1}) {
            int pf = f + df;
            if (pf >= 0 && pf < 8 &&
                pos.raw(pr * 8 + pf) == static_cast<int8_t>(s * 1))
                return true;
        }
    }
    for (auto [df, dr] : KNIGHT_STEPS) {
        int nf = f + df, nr = r + dr;
        if (Square::in_board(nf, nr) &&
            pos.raw(nr * 8 + nf) == static_cast<int8_t>(s * 2))
            return true;
    }
    for (auto [df, dr] : KING_STEPS) {
        int nf = f + df, nr = r + dr;
        if (Square::in_board(nf, nr) &&
            pos.raw(nr * 8 + nf) == static_cast<int8_t>(s * 6))
            return true;
    }
    for (auto [df, dr] : BISHOP_DIRS) {
        int nf = f + df, nr = r + dr;
        while (Square::in_board(nf, nr)) {
            int8_t code = pos.raw(nr * 8 + nf);
            if (code != kEmpty) {
                if (code == static_cast<int8_t>(s * 3) || code == static_cast<int8_t>(s * 5))
                    return true;
                break;
            }
            nf += df;
            nr += dr;
        }
    }
    for (auto [df, dr] : ROOK_DIRS) {
        int nf = f + df, nr = r + dr;
        while (Square::in_board(nf, nr)) {
            int8_t code = pos.raw(nr * 8 + nf);
            if (code != kEmpty) {
                if (code == static_cast<int8_t>(s * 4) || code == static_cast<int8_t>(s * 5))
                    return true;
                break;
            }
            nf += df;
            nr += dr;
        }
    }
    return false;
}

bool in_check(const Position& pos, Color c) {
    Square k = pos.king_square(c);
    if (k.index < 0) return false;
    return is_attacked(pos, k, opposite(c));
}

std::optional<std::string> Position::invariant_violation() const {
    int kings[2] = {0, 0};
    for (int idx = 0; idx < 64; ++idx) {
        int8_t code = board_[idx];
        if (code == kEmpty) continue;
        Piece p = decode(code);
        if (p.kind == PieceKind::King) ++kings[static_cast<int>(p.color)];
        if (p.kind == PieceKind::Pawn) {
            int rank = idx / 8;
            if (rank == 0 || rank == 7)
                return "pawn on rank " + std::to_string(rank + 1) + " at " +
                       Square(idx).algebraic();
        }
    }
    if (kings[0] != 1) return "white king count is " + std::to_string(kings[0]);
    if (kings[1] != 1) return "black king count is " + std::to_string(kings[1]);

    if (ep_ >= 0) {
        int rank = ep_ / 8;
        int expected = side_ == Color::White ? 5 : 2;  // rank 6 or rank 3
        if (rank != expected)
            return "en passant square " + Square(ep_).algebraic() +
                   " inconsistent with side to move";
        // The double-pushed pawn must actually stand in front of the square.
        int pawn_rank = side_ == Color::White ? 4 : 3;
        int8_t want = side_ == Color::White ? int8_t{-1} : int8_t{1};
        if (board_[pawn_rank * 8 + ep_ % 8] != want)
            return "en passant square " + Square(ep_).algebraic() +
                   " has no pawn to capture";
    }
    if (halfmove_clock_ < 0) return "negative halfmove clock";
    if (fullmove_number_ < 1) return "fullmove number below 1";

    // Claimed castling rights require king and rook on their home squares.
    struct Claim { uint8_t bit; int king, rook; int8_t king_code, rook_code; };
    static constexpr Claim claims[] = {
        {CastleWK, 4, 7, 6, 4},   {CastleWQ, 4, 0, 6, 4},
        {CastleBK, 60, 63, -6, -4}, {CastleBQ, 60, 56, -6, -4}};
    for (const Claim& c : claims) {
        if (!(castling_ & c.bit)) continue;
        if (board_[c.king] != c.king_code || board_[c.rook] != c.rook_code)
            return "castling right inconsistent with piece placement";
    }

    if (in_check(*this, opposite(side_)))
        return "side not to move is in check";
    return std::nullopt;
}

namespace detail {

namespace {

void push_pawn_targets(int from_idx, int to_idx, std::vector<Move>& out) {
    int to_rank = to_idx / 8;
    if (to_rank == 0 || to_rank == 7) {
        for (PieceKind k : PROMOTION_KINDS)
            out.push_back(Move{Square(from_idx), Square(to_idx), k});
    } else {
        out.push_back(Move{Square(from_idx), Square(to_idx), std::nullopt});
    }
}

void generate_pseudo(const Position& pos, std::vector<Move>& out) {
    const Color us = pos.side_to_move();
    const int s = sign_of(us);
    const std::optional<Square> ep = pos.en_passant();

    for (int idx = 0; idx < 64; ++idx) {
        int8_t code = pos.raw(idx);
        if (code == kEmpty || (code > 0) != (us == Color::White)) continue;
        const int f = idx % 8, r = idx / 8;
        switch (std::abs(code)) {
            case 1: {  // pawn
                int one = idx + s * 8;
                if (pos.raw(one) == kEmpty) {
                    push_pawn_targets(idx, one, out);
                    int start_rank = us == Color::White ? 1 : 6;
                    int two = idx + s * 16;
                    if (r == start_rank && pos.raw(two) == kEmpty)
                        out.push_back(Move{Square(idx), Square(two), std::nullopt});
                }
                for (int df : {-1, 1}) {
                    int nf = f + df, nr = r + s;
                    if (!Square::in_board(nf, nr)) continue;
                    int to = nr * 8 + nf;
                    int8_t target = pos.raw(to);
                    bool enemy = target != kEmpty && (target > 0) != (us == Color::White);
                    bool ep_hit = ep && ep->index == to;
                    if (enemy || ep_hit) push_pawn_targets(idx, to, out);
                }
                break;
            }
            case 2:  // knight
                for (auto [df, dr] : KNIGHT_STEPS) {
                    int nf = f + df, nr = r + dr;
                    if (!Square::in_board(nf, nr)) continue;
                    int8_t target = pos.raw(nr * 8 + nf);
                    if (target == kEmpty || (target > 0) != (us == Color::White))
                        out.push_back(Move{Square(idx), Square(nf, nr), std::nullopt});
                }
                break;
            case 6:  // king (castling handled by the caller)
                for (auto [df, dr] : KING_STEPS) {
                    int nf = f + df, nr = r + dr;
                    if (!Square::in_board(nf, nr)) continue;
                    int8_t target = pos.raw(nr * 8 + nf);
                    if (target == kEmpty || (target > 0) != (us == Color::White))
                        out.push_back(Move{Square(idx), Square(nf, nr), std::nullopt});
                }
                break;
            default: {  // sliders
                int kind = std::abs(code);
                bool diag = kind == 3 || kind == 5;
                bool ortho = kind == 4 || kind == 5;
                if (diag)
                    for (auto [df, dr] : BISHOP_DIRS) {
                        int nf = f + df, nr = r + dr;
                        while (Square::in_board(nf, nr)) {
                            int8_t target = pos.raw(nr * 8 + nf);
                            if (target == kEmpty) {
                                out.push_back(Move{Square(idx), Square(nf, nr), std::nullopt});
                            } else {
                                if ((target > 0) != (us == Color::White))
                                    out.push_back(Move{Square(idx), Square(nf, nr), std::nullopt});
                                break;
                            }
                            nf += df;
                            nr += dr;
                        }
                    }
                if (ortho)
                    for (auto [df, dr] : ROOK_DIRS) {
                        int nf = f + df, nr = r + dr;
                        while (Square::in_board(nf, nr)) {
                            int8_t target = pos.raw(nr * 8 + nf);
                            if (target == kEmpty) {
                                out.push_back(Move{Square(idx), Square(nf, nr), std::nullopt});
                            } else {
                                if ((target > 0) != (us == Color::White))
                                    out.push_back(Move{Square(idx), Square(nf, nr), std::nullopt});
                                break;
                            }
                            nf += df;
                            nr += dr;
                        }
                    }
                break;
            }
        }
    }
}

void generate_castling(const Position& pos, std::vector<Move>& out) {
    const Color us = pos.side_to_move();
    const Color them = opposite(us);
    const int base = us == Color::White ? 0 : 56;
    const uint8_t kside = us == Color::White ? CastleWK : CastleBK;
    const uint8_t qside = us == Color::White ? CastleWQ : CastleBQ;
    const int8_t king_code = static_cast<int8_t>(sign_of(us) * 6);
    const int8_t rook_code = static_cast<int8_t>(sign_of(us) * 4);

    if (pos.raw(base + 4) != king_code) return;
    if (is_attacked(pos, Square(base + 4), them)) return;

    if ((pos.castling_rights() & kside) && pos.raw(base + 7) == rook_code &&
        pos.raw(base + 5) == kEmpty && pos.raw(base + 6) == kEmpty &&
        !is_attacked(pos, Square(base + 5), them) &&
        !is_attacked(pos, Square(base + 6), them))
        out.push_back(Move{Square(base + 4), Square(base + 6), std::nullopt});

    if ((pos.castling_rights() & qside) && pos.raw(base) == rook_code &&
        pos.raw(base + 1) == kEmpty && pos.raw(base + 2) == kEmpty &&
        pos.raw(base + 3) == kEmpty &&
        !is_attacked(pos, Square(base + 3), them) &&
        !is_attacked(pos, Square(base + 2), them))
        out.push_back(Move{Square(base + 4), Square(base + 2), std::nullopt});
}

}  // namespace

Position apply_move_unchecked(const Position& pos, Move m) {
    Position next = pos;
    const Color us = pos.side_to_move();
    const Piece mover = *pos.piece_at(m.from);
    const std::optional<Piece> captured = pos.piece_at(m.to);
    const std::optional<Square> ep = pos.en_passant();

    bool is_pawn = mover.kind == PieceKind::Pawn;
    bool is_ep_capture = is_pawn && ep && ep->index == m.to.index && !captured;

    next.set_piece(m.from, std::nullopt);
    if (is_ep_capture) {
        // The captured pawn sits beside the destination, not on it.
        int victim = m.to.index + (us == Color::White ? -8 : 8);
        next.set_piece(Square(victim), std::nullopt);
    }
    Piece placed = mover;
    if (m.promotion) placed.kind = *m.promotion;
    next.set_piece(m.to, placed);

    if (mover.kind == PieceKind::King && std::abs(m.to.file() - m.from.file()) == 2) {
        int base = us == Color::White ? 0 : 56;
        if (m.to.file() == 6) {  // O-O
            next.set_piece(Square(base + 7), std::nullopt);
            next.set_piece(Square(base + 5), Piece{PieceKind::Rook, us});
        } else {  // O-O-O
            next.set_piece(Square(base), std::nullopt);
            next.set_piece(Square(base + 3), Piece{PieceKind::Rook, us});
        }
    }

    uint8_t rights = pos.castling_rights();
    auto clear_for_square = [&rights](int idx) {
        switch (idx) {
            case 4: rights &= static_cast<uint8_t>(~(CastleWK | CastleWQ)); break;
            case 0: rights &= static_cast<uint8_t>(~CastleWQ); break;
            case 7: rights &= static_cast<uint8_t>(~CastleWK); break;
            case 60: rights &= static_cast<uint8_t>(~(CastleBK | CastleBQ)); break;
            case 56: rights &= static_cast<uint8_t>(~CastleBQ); break;
            case 63: rights &= static_cast<uint8_t>(~CastleBK); break;
        }
    };
    clear_for_square(m.from.index);
    clear_for_square(m.to.index);
    next.set_castling_rights(rights);

    // Classic FEN convention: the en-passant field is set after every double
    // push, whether or not a capture is actually possible.
    if (is_pawn && std::abs(m.to.rank() - m.from.rank()) == 2)
        next.set_en_passant(Square(m.from.index + (us == Color::White ? 8 : -8)));
    else
        next.set_en_passant(std::nullopt);

    bool is_capture = captured.has_value() || is_ep_capture;
    next.set_halfmove_clock(is_pawn || is_capture ? 0 : pos.halfmove_clock() + 1);
    if (us == Color::Black)
        next.set_fullmove_number(pos.fullmove_number() + 1);
    next.set_side_to_move(opposite(us));
    return next;
}

void generate_legal_unsorted(const Position& pos, std::vector<Move>& out) {
    out.clear();
    std::vector<Move> pseudo;
    pseudo.reserve(64);
    generate_pseudo(pos, pseudo);
    generate_castling(pos, pseudo);
    const Color us = pos.side_to_move();
    for (Move m : pseudo) {
        Position child = apply_move_unchecked(pos, m);
        if (!in_check(child, us)) out.push_back(m);
    }
}

}  // namespace detail

std::vector<Move> legal_moves(const Position& pos) {
    if (auto violation = pos.invariant_violation())
        throw InvalidPositionError("invalid position: " + *violation);
    std::vector<Move> moves;
    detail::generate_legal_unsorted(pos, moves);
    std::sort(moves.begin(), moves.end());
    return moves;
}

Position apply_move(const Position& pos, Move m) {
    std::vector<Move> moves = legal_moves(pos);
    if (!std::binary_search(moves.begin(), moves.end(), m))
        throw IllegalMoveError(m, "illegal move " + m.uci());
    return detail::apply_move_unchecked(pos, m);
}

namespace {

bool insufficient_material(const Position& pos) {
    // K vs K, K+B vs K, K+N vs K, and K+B vs K+B with same-colored bishops.
    int knights = 0;
    int bishops = 0;
    int bishop_owner[2] = {0, 0};
    int bishop_square_color = -1;
    bool bishops_same_color = true;
    for (int idx = 0; idx < 64; ++idx) {
        int8_t code = pos.raw(idx);
        if (code == kEmpty) continue;
        switch (std::abs(code)) {
            case 1:
            case 4:
            case 5:
                return false;  // pawn, rook or queen: mating material
            case 2:
                ++knights;
                break;
            case 3: {
                ++bishops;
                ++bishop_owner[code > 0 ? 0 : 1];
                int sq_color = (idx / 8 + idx % 8) & 1;
                if (bishop_square_color < 0)
                    bishop_square_color = sq_color;
                else if (sq_color != bishop_square_color)
                    bishops_same_color = false;
                break;
            }
            default:
                break;
        }
    }
    if (knights == 0 && bishops == 0) return true;            // K vs K
    if (knights == 1 && bishops == 0) return true;            // K+N vs K
    if (knights == 0 && bishops == 1) return true;            // K+B vs K
    if (knights == 0 && bishops == 2 && bishop_owner[0] == 1 &&
        bishop_owner[1] == 1 && bishops_same_color)
        return true;                                          // K+B vs K+B
    return false;
}

}  // namespace

GameStatus status(const Position& pos, std::span<const Position> history) {
    std::vector<Move> moves;
    detail::generate_legal_unsorted(pos, moves);
    if (moves.empty()) {
        if (in_check(pos, pos.side_to_move()))
            return {GameStatus::Tag::Checkmate, opposite(pos.side_to_move())};
        return {GameStatus::Tag::Stalemate, std::nullopt};
    }
    if (pos.halfmove_clock() >= 100)
        return {GameStatus::Tag::DrawFiftyMove, std::nullopt};
    if (!history.empty()) {
        const std::string key = pos.repetition_key();
        int count = 0;
        for (const Position& p : history)
            if (p.repetition_key() == key) ++count;
        if (count >= 3) return {GameStatus::Tag::DrawThreefold, std::nullopt};
    }
    if (insufficient_material(pos))
        return {GameStatus::Tag::DrawInsufficientMaterial, std::nullopt};
    return {GameStatus::Tag::Ongoing, std::nullopt};
}

namespace {

uint64_t perft_inner(const Position& pos, int depth, std::vector<std::vector<Move>>& stacks) {
    std::vector<Move>& moves = stacks[depth];
    detail::generate_legal_unsorted(pos, moves);
    if (depth == 1) return moves.size();
    uint64_t nodes = 0;
    for (Move m : moves)
        nodes += perft_inner(detail::apply_move_unchecked(pos, m), depth - 1, stacks);
    return nodes;
}

}  // namespace

uint64_t perft(const Position& pos, int depth) {
    if (depth < 1) throw std::invalid_argument("perft depth must be >= 1");
    if (auto violation = pos.invariant_violation())
        throw InvalidPositionError("invalid position: " + *violation);
    std::vector<std::vector<Move>> stacks(depth + 1);
    return perft_inner(pos, depth, stacks);
}

}  // namespace chesslab
