#include "support/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace chesslab::oracle {

namespace {

bool path_clear(const Position& pos, Square from, Square to) {
    int df = to.file() - from.file();
    int dr = to.rank() - from.rank();
    int steps = std::max(std::abs(df), std::abs(dr));
    int sf = df == 0 ? 0 : df / std::abs(df);
    int sr = dr == 0 ? 0 : dr / std::abs(dr);
    for (int i = 1; i < steps; ++i) {
        if (pos.piece_at(Square(from.file() + sf * i, from.rank() + sr * i)))
            return false;
    }
    return true;
}

// Geometry of a capture threat from `from` onto `to` by `piece`. Pawn
// forward moves are not attacks and are excluded here.
bool attacks_square(const Position& pos, Square from, Square to, Piece piece) {
    int df = to.file() - from.file();
    int dr = to.rank() - from.rank();
    if (df == 0 && dr == 0) return false;
    switch (piece.kind) {
        case PieceKind::Pawn: {
            int dir = piece.color == Color::White ? 1 : -1;
            return dr == dir && std::abs(df) == 1;
        }
        case PieceKind::Knight:
            return (std::abs(df) == 1 && std::abs(dr) == 2) ||
                   (std::abs(df) == 2 && std::abs(dr) == 1);
        case PieceKind::Bishop:
            return std::abs(df) == std::abs(dr) && path_clear(pos, from, to);
        case PieceKind::Rook:
            return (df == 0 || dr == 0) && path_clear(pos, from, to);
        case PieceKind::Queen:
            return (df == 0 || dr == 0 || std::abs(df) == std::abs(dr)) &&
                   path_clear(pos, from, to);
        case PieceKind::King:
            return std::abs(df) <= 1 && std::abs(dr) <= 1;
    }
    return false;
}

Square find_king(const Position& pos, Color c) {
    for (int idx = 0; idx < 64; ++idx) {
        auto p = pos.piece_at(Square(idx));
        if (p && p->kind == PieceKind::King && p->color == c) return Square(idx);
    }
    return Square(-1);
}

// Non-castling movement pattern check for one square pair.
bool pattern_moves(const Position& pos, Square from, Square to, Piece piece) {
    auto target = pos.piece_at(to);
    if (target && target->color == piece.color) return false;
    int df = to.file() - from.file();
    int dr = to.rank() - from.rank();
    if (df == 0 && dr == 0) return false;

    if (piece.kind == PieceKind::Pawn) {
        int dir = piece.color == Color::White ? 1 : -1;
        int start_rank = piece.color == Color::White ? 1 : 6;
        if (df == 0 && dr == dir && !target) return true;
        if (df == 0 && dr == 2 * dir && from.rank() == start_rank && !target &&
            !pos.piece_at(Square(from.file(), from.rank() + dir)))
            return true;
        if (std::abs(df) == 1 && dr == dir) {
            if (target) return true;  // enemy by the color check above
            auto ep = pos.en_passant();
            return ep && ep->index == to.index;
        }
        return false;
    }
    return attacks_square(pos, from, to, piece);
}

bool castle_allowed(const Position& pos, Color us, bool kingside) {
    const int rank = us == Color::White ? 0 : 7;
    const uint8_t bit = us == Color::White ? (kingside ? CastleWK : CastleWQ)
                                           : (kingside ? CastleBK : CastleBQ);
    if (!(pos.castling_rights() & bit)) return false;

    auto king = pos.piece_at(Square(4, rank));
    if (!king || king->kind != PieceKind::King || king->color != us) return false;
    int rook_file = kingside ? 7 : 0;
    auto rook = pos.piece_at(Square(rook_file, rank));
    if (!rook || rook->kind != PieceKind::Rook || rook->color != us) return false;

    int lo = kingside ? 5 : 1;
    int hi = kingside ? 6 : 3;
    for (int f = lo; f <= hi; ++f)
        if (pos.piece_at(Square(f, rank))) return false;

    Color them = opposite(us);
    if (oracle_attacked(pos, Square(4, rank), them)) return false;
    int step = kingside ? 1 : -1;
    for (int f = 4 + step;; f += step) {
        if (oracle_attacked(pos, Square(f, rank), them)) return false;
        if (f == (kingside ? 6 : 2)) break;
    }
    return true;
}

}  // namespace

bool oracle_attacked(const Position& pos, Square target, Color by) {
    for (int idx = 0; idx < 64; ++idx) {
        auto p = pos.piece_at(Square(idx));
        if (p && p->color == by && attacks_square(pos, Square(idx), target, *p))
            return true;
    }
    return false;
}

Position oracle_apply(const Position& pos, Move m) {
    Position next = pos;
    Piece piece = *pos.piece_at(m.from);
    Color us = piece.color;
    bool capture = pos.piece_at(m.to).has_value();

    if (piece.kind == PieceKind::Pawn) {
        auto ep = pos.en_passant();
        if (ep && ep->index == m.to.index && m.from.file() != m.to.file() && !capture) {
            next.set_piece(Square(m.to.file(), m.from.rank()), std::nullopt);
            capture = true;
        }
    }

    next.set_piece(m.from, std::nullopt);
    next.set_piece(m.to, m.promotion ? Piece{*m.promotion, us} : piece);

    if (piece.kind == PieceKind::King && std::abs(m.to.file() - m.from.file()) == 2) {
        int rank = m.from.rank();
        if (m.to.file() == 6) {
            next.set_piece(Square(7, rank), std::nullopt);
            next.set_piece(Square(5, rank), Piece{PieceKind::Rook, us});
        } else {
            next.set_piece(Square(0, rank), std::nullopt);
            next.set_piece(Square(3, rank), Piece{PieceKind::Rook, us});
        }
    }

    uint8_t rights = pos.castling_rights();
    if (piece.kind == PieceKind::King)
        rights &= us == Color::White ? static_cast<uint8_t>(~(CastleWK | CastleWQ))
                                     : static_cast<uint8_t>(~(CastleBK | CastleBQ));
    for (Square sq : {m.from, m.to}) {
        if (sq == Square(0, 0)) rights &= static_cast<uint8_t>(~CastleWQ);
        if (sq == Square(7, 0)) rights &= static_cast<uint8_t>(~CastleWK);
        if (sq == Square(0, 7)) rights &= static_cast<uint8_t>(~CastleBQ);
        if (sq == Square(7, 7)) rights &= static_cast<uint8_t>(~CastleBK);
    }
    next.set_castling_rights(rights);

    if (piece.kind == PieceKind::Pawn && std::abs(m.to.rank() - m.from.rank()) == 2)
        next.set_en_passant(Square(m.from.file(), (m.from.rank() + m.to.rank()) / 2));
    else
        next.set_en_passant(std::nullopt);

    if (piece.kind == PieceKind::Pawn || capture)
        next.set_halfmove_clock(0);
    else
        next.set_halfmove_clock(pos.halfmove_clock() + 1);
    if (us == Color::Black) next.set_fullmove_number(pos.fullmove_number() + 1);
    next.set_side_to_move(opposite(us));
    return next;
}

std::vector<Move> oracle_legal_moves(const Position& pos) {
    const Color us = pos.side_to_move();
    std::vector<Move> out;
    for (int from = 0; from < 64; ++from) {
        auto piece = pos.piece_at(Square(from));
        if (!piece || piece->color != us) continue;
        for (int to = 0; to < 64; ++to) {
            if (to == from) continue;
            std::vector<Move> candidates;
            if (pattern_moves(pos, Square(from), Square(to), *piece)) {
                int to_rank = to / 8;
                if (piece->kind == PieceKind::Pawn && (to_rank == 0 || to_rank == 7)) {
                    for (PieceKind k : {PieceKind::Knight, PieceKind::Bishop,
                                        PieceKind::Rook, PieceKind::Queen})
                        candidates.push_back(Move{Square(from), Square(to), k});
                } else {
                    candidates.push_back(Move{Square(from), Square(to), std::nullopt});
                }
            }
            for (Move m : candidates) {
                Position child = oracle_apply(pos, m);
                if (!oracle_attacked(child, find_king(child, us), opposite(us)))
                    out.push_back(m);
            }
        }
    }
    for (bool kingside : {true, false}) {
        if (castle_allowed(pos, us, kingside)) {
            int rank = us == Color::White ? 0 : 7;
            out.push_back(Move{Square(4, rank), Square(kingside ? 6 : 2, rank),
                               std::nullopt});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t oracle_perft(const Position& pos, int depth) {
    std::vector<Move> moves = oracle_legal_moves(pos);
    if (depth <= 1) return moves.size();
    uint64_t nodes = 0;
    for (Move m : moves) nodes += oracle_perft(oracle_apply(pos, m), depth - 1);
    return nodes;
}

}  // namespace chesslab::oracle
