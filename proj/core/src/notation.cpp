#include "chesslab/notation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "chesslab/errors.hpp"

namespace chesslab {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::vector<std::string_view> split_fields(std::string_view text) {
    std::vector<std::string_view> fields;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) fields.push_back(text.substr(start, i - start));
    }
    return fields;
}

std::string_view strip_bom(std::string_view text) {
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB &&
        static_cast<unsigned char>(text[2]) == 0xBF)
        return text.substr(3);
    return text;
}

}  // namespace

const char* result_token(GameResult r) {
    switch (r) {
        case GameResult::WhiteWins: return "1-0";
        case GameResult::BlackWins: return "0-1";
        case GameResult::Draw: return "1/2-1/2";
        case GameResult::Unfinished: return "*";
    }
    return "*";
}

std::optional<GameResult> result_from_token(std::string_view token) {
    if (token == "1-0") return GameResult::WhiteWins;
    if (token == "0-1") return GameResult::BlackWins;
    if (token == "1/2-1/2") return GameResult::Draw;
    if (token == "*") return GameResult::Unfinished;
    return std::nullopt;
}

Position parse_fen(std::string_view text) {
    const std::vector<std::string_view> fields = split_fields(strip_bom(text));
    if (fields.size() != 6)
        throw ParseError("field_count", "FEN must have 6 fields, got " +
                                            std::to_string(fields.size()));

    Position pos;

    // Field 1: piece placement, ranks 8 down to 1.
    {
        std::string_view placement = fields[0];
        int rank = 7, file = 0, ranks_seen = 1;
        for (char c : placement) {
            if (c == '/') {
                if (file != 8)
                    throw ParseError("placement", "rank has " + std::to_string(file) +
                                                      " squares, expected 8");
                ++ranks_seen;
                --rank;
                file = 0;
                if (rank < 0) throw ParseError("placement", "more than 8 ranks");
                continue;
            }
            if (c >= '1' && c <= '8') {
                file += c - '0';
                if (file > 8) throw ParseError("placement", "rank overflows 8 squares");
                continue;
            }
            auto kind = piece_from_letter(static_cast<char>(std::toupper(
                static_cast<unsigned char>(c))));
            if (!kind)
                throw ParseError("placement", std::string("illegal piece letter '") + c + "'");
            if (file > 7) throw ParseError("placement", "rank overflows 8 squares");
            Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::White
                                                                      : Color::Black;
            pos.set_piece(Square(file, rank), Piece{*kind, color});
            ++file;
        }
        if (ranks_seen != 8)
            throw ParseError("placement",
                             "expected 8 ranks, got " + std::to_string(ranks_seen));
        if (file != 8)
            throw ParseError("placement",
                             "rank has " + std::to_string(file) + " squares, expected 8");
    }

    if (fields[1] == "w")
        pos.set_side_to_move(Color::White);
    else if (fields[1] == "b")
        pos.set_side_to_move(Color::Black);
    else
        throw ParseError("side_to_move", "expected 'w' or 'b'");

    {
        uint8_t rights = 0;
        if (fields[2] != "-") {
            for (char c : fields[2]) {
                uint8_t bit;
                switch (c) {
                    case 'K': bit = CastleWK; break;
                    case 'Q': bit = CastleWQ; break;
                    case 'k': bit = CastleBK; break;
                    case 'q': bit = CastleBQ; break;
                    default:
                        throw ParseError("castling",
                                         std::string("illegal castling letter '") + c + "'");
                }
                if (rights & bit)
                    throw ParseError("castling", std::string("duplicate castling letter '") + c + "'");
                rights |= bit;
            }
        }
        pos.set_castling_rights(rights);
    }

    if (fields[3] != "-") {
        auto sq = Square::from_algebraic(fields[3]);
        if (!sq)
            throw ParseError("en_passant",
                             "malformed en passant square '" + std::string(fields[3]) + "'");
        pos.set_en_passant(*sq);
    }

    auto parse_int = [](std::string_view s, const char* field, int min_value) {
        if (s.empty() || s.size() > 9 ||
            !std::all_of(s.begin(), s.end(),
                         [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError(field, "malformed number '" + std::string(s) + "'");
        int v = 0;
        for (char c : s) v = v * 10 + (c - '0');
        if (v < min_value)
            throw ParseError(field, "value " + std::to_string(v) + " below minimum");
        return v;
    };
    pos.set_halfmove_clock(parse_int(fields[4], "halfmove_clock", 0));
    pos.set_fullmove_number(parse_int(fields[5], "fullmove_number", 1));

    if (auto violation = pos.invariant_violation()) {
        std::string field = "position";
        if (violation->find("en passant") != std::string::npos) field = "en_passant";
        if (violation->find("castling") != std::string::npos) field = "castling";
        throw ParseError(field, "invalid position: " + *violation);
    }
    return pos;
}

std::string render_fen(const Position& pos) {
    std::string fen = pos.repetition_key();  // first four fields
    fen += ' ';
    fen += std::to_string(pos.halfmove_clock());
    fen += ' ';
    fen += std::to_string(pos.fullmove_number());
    return fen;
}

namespace {

struct MoveTextGrammar {
    // Returns true when `text` matches the strict coordinate form; fills m.
    static bool strict_uci(std::string_view text, Move& m) {
        if (text.size() != 4 && text.size() != 5) return false;
        auto from = Square::from_algebraic(text.substr(0, 2));
        auto to = Square::from_algebraic(text.substr(2, 2));
        if (!from || !to) return false;
        m = Move{*from, *to, std::nullopt};
        if (text.size() == 5) {
            auto kind = piece_from_letter(static_cast<char>(std::toupper(
                static_cast<unsigned char>(text[4]))));
            if (!kind || *kind == PieceKind::King || *kind == PieceKind::Pawn) return false;
            m.promotion = kind;
        }
        return true;
    }

    // Piece-prefixed coordinate text as printed in informal scores:
    // "Ng1f3", "Nd2xc4", "b5xc4", "e7e8=Q", optional "+"/"#" suffix.
    static bool lenient_uci(std::string_view text, Move& m,
                            std::optional<PieceKind>& claimed) {
        claimed = std::nullopt;
        if (!text.empty() && (text.back() == '+' || text.back() == '#'))
            text.remove_suffix(1);
        if (!text.empty()) {
            if (auto k = piece_from_letter(text[0]); k && *k != PieceKind::Pawn) {
                claimed = k;
                text.remove_prefix(1);
            }
        }
        if (text.size() < 4) return false;
        auto from = Square::from_algebraic(text.substr(0, 2));
        if (!from) return false;
        text.remove_prefix(2);
        if (!text.empty() && (text[0] == 'x' || text[0] == 'X')) text.remove_prefix(1);
        if (text.size() < 2) return false;
        auto to = Square::from_algebraic(text.substr(0, 2));
        if (!to) return false;
        text.remove_prefix(2);
        m = Move{*from, *to, std::nullopt};
        if (!text.empty()) {
            if (text[0] == '=') text.remove_prefix(1);
            if (text.size() != 1) return false;
            auto kind = piece_from_letter(static_cast<char>(std::toupper(
                static_cast<unsigned char>(text[0]))));
            if (!kind || *kind == PieceKind::King || *kind == PieceKind::Pawn) return false;
            m.promotion = kind;
        }
        return true;
    }
};

struct SanPattern {
    PieceKind kind = PieceKind::Pawn;
    std::optional<int> from_file;
    std::optional<int> from_rank;
    bool capture = false;
    Square target;
    std::optional<PieceKind> promotion;
};

bool parse_san_pattern(std::string_view text, SanPattern& p) {
    // Trailing check/mate/annotation glyphs carry no binding information.
    while (!text.empty() && (text.back() == '+' || text.back() == '#' ||
                             text.back() == '!' || text.back() == '?'))
        text.remove_suffix(1);
    if (text.size() < 2) return false;

    p = SanPattern{};
    if (auto k = piece_from_letter(text[0]); k && *k != PieceKind::Pawn) {
        p.kind = *k;
        text.remove_prefix(1);
    } else if (text.size() >= 2 && text[text.size() - 2] == '=') {
        // pawn promotion suffix, e.g. "e8=Q", "exd8=Q"
        auto kind = piece_from_letter(static_cast<char>(std::toupper(
            static_cast<unsigned char>(text.back()))));
        if (!kind || *kind == PieceKind::King || *kind == PieceKind::Pawn) return false;
        p.promotion = kind;
        text.remove_suffix(2);
    }

    if (text.size() < 2) return false;
    auto target = Square::from_algebraic(text.substr(text.size() - 2));
    if (!target) return false;
    p.target = *target;
    text.remove_suffix(2);

    if (!text.empty() && text.back() == 'x') {
        p.capture = true;
        text.remove_suffix(1);
    }
    for (char c : text) {
        if (c >= 'a' && c <= 'h' && !p.from_file)
            p.from_file = c - 'a';
        else if (c >= '1' && c <= '8' && !p.from_rank)
            p.from_rank = c - '1';
        else
            return false;
    }
    // A pawn move other than a plain push must name its file.
    if (p.kind == PieceKind::Pawn && p.capture && !p.from_file) return false;
    return true;
}

bool move_is_capture(const Position& pos, Move m) {
    if (pos.piece_at(m.to)) return true;
    auto ep = pos.en_passant();
    return ep && ep->index == m.to.index &&
           pos.piece_at(m.from)->kind == PieceKind::Pawn;
}

}  // namespace

ParsedMoveText classify_move_text(std::string_view raw, const Position& pos) {
    // Trim surrounding whitespace.
    size_t b = 0, e = raw.size();
    while (b < e && is_space(raw[b])) ++b;
    while (e > b && is_space(raw[e - 1])) --e;
    const std::string_view text = raw.substr(b, e - b);

    if (text.empty())
        return {ParsedMoveText::Outcome::SyntaxError, std::nullopt, "empty move text"};

    const std::vector<Move> legal = legal_moves(pos);
    auto is_legal = [&legal](Move m) {
        return std::binary_search(legal.begin(), legal.end(), m);
    };
    auto legal_result = [&](Move m) -> ParsedMoveText {
        return {ParsedMoveText::Outcome::Legal, m, {}};
    };
    auto illegal_result = [&](const std::string& msg) -> ParsedMoveText {
        return {ParsedMoveText::Outcome::IllegalMove, std::nullopt, msg};
    };

    Move m{};
    if (MoveTextGrammar::strict_uci(text, m)) {
        if (is_legal(m)) return legal_result(m);
        return illegal_result("move " + m.uci() + " is not legal in this position");
    }

    std::optional<PieceKind> claimed;
    if (MoveTextGrammar::lenient_uci(text, m, claimed)) {
        auto mover = pos.piece_at(m.from);
        if (claimed && (!mover || mover->kind != *claimed))
            return illegal_result("no " + std::string(1, piece_letter(*claimed)) +
                                  " on " + m.from.algebraic());
        if (is_legal(m)) return legal_result(m);
        return illegal_result("move " + m.uci() + " is not legal in this position");
    }

    {
        std::string word(text);
        if (!word.empty() && (word.back() == '+' || word.back() == '#')) word.pop_back();
        std::replace(word.begin(), word.end(), '0', 'O');
        if (word == "O-O" || word == "O-O-O") {
            int king_to_file = word == "O-O" ? 6 : 2;
            int home_rank = pos.side_to_move() == Color::White ? 0 : 7;
            Move castle{Square(4, home_rank), Square(king_to_file, home_rank),
                        std::nullopt};
            if (is_legal(castle)) return legal_result(castle);
            return illegal_result("castling " + word + " is not legal here");
        }
    }

    SanPattern p;
    if (!parse_san_pattern(text, p))
        return {ParsedMoveText::Outcome::SyntaxError, std::nullopt,
                "unrecognized move text '" + std::string(text) + "'"};

    std::vector<Move> matches;
    for (Move cand : legal) {
        if (cand.to != p.target) continue;
        auto mover = pos.piece_at(cand.from);
        if (mover->kind != p.kind) continue;
        if (cand.promotion != p.promotion) continue;
        if (p.from_file && cand.from.file() != *p.from_file) continue;
        if (p.from_rank && cand.from.rank() != *p.from_rank) continue;
        if (move_is_capture(pos, cand) != p.capture) continue;
        // Exclude castling interpreted as a two-square king slide.
        if (p.kind == PieceKind::King &&
            std::abs(cand.to.file() - cand.from.file()) == 2)
            continue;
        matches.push_back(cand);
    }
    if (matches.size() == 1) return legal_result(matches[0]);
    if (matches.size() > 1)
        return {ParsedMoveText::Outcome::Ambiguous, std::nullopt,
                "'" + std::string(text) + "' matches " +
                    std::to_string(matches.size()) + " legal moves"};
    return illegal_result("'" + std::string(text) + "' denotes no legal move here");
}

Move parse_move_text(std::string_view text, const Position& pos) {
    ParsedMoveText parsed = classify_move_text(text, pos);
    switch (parsed.outcome) {
        case ParsedMoveText::Outcome::Legal:
            return *parsed.move;
        case ParsedMoveText::Outcome::SyntaxError:
            throw MoveTextError(MoveTextError::Kind::Syntax, parsed.message);
        case ParsedMoveText::Outcome::Ambiguous:
            throw MoveTextError(MoveTextError::Kind::Ambiguous, parsed.message);
        case ParsedMoveText::Outcome::IllegalMove:
        default:
            throw MoveTextError(MoveTextError::Kind::Illegal, parsed.message);
    }
}

std::string render_san(Move m, const Position& pos) {
    const std::vector<Move> legal = legal_moves(pos);
    if (!std::binary_search(legal.begin(), legal.end(), m))
        throw IllegalMoveError(m, "cannot render illegal move " + m.uci());

    const Piece mover = *pos.piece_at(m.from);
    std::string san;

    if (mover.kind == PieceKind::King && std::abs(m.to.file() - m.from.file()) == 2) {
        san = m.to.file() == 6 ? "O-O" : "O-O-O";
    } else if (mover.kind == PieceKind::Pawn) {
        if (move_is_capture(pos, m)) {
            san += static_cast<char>('a' + m.from.file());
            san += 'x';
        }
        san += m.to.algebraic();
        if (m.promotion) {
            san += '=';
            san += piece_letter(*m.promotion);
        }
    } else {
        san += piece_letter(mover.kind);
        bool file_unique = true, rank_unique = true, needs_disamb = false;
        for (Move other : legal) {
            if (other.from == m.from || other.to != m.to) continue;
            if (pos.piece_at(other.from)->kind != mover.kind) continue;
            needs_disamb = true;
            if (other.from.file() == m.from.file()) file_unique = false;
            if (other.from.rank() == m.from.rank()) rank_unique = false;
        }
        if (needs_disamb) {
            if (file_unique)
                san += static_cast<char>('a' + m.from.file());
            else if (rank_unique)
                san += static_cast<char>('1' + m.from.rank());
            else
                san += m.from.algebraic();
        }
        if (move_is_capture(pos, m)) san += 'x';
        san += m.to.algebraic();
    }

    const Position child = detail::apply_move_unchecked(pos, m);
    if (in_check(child, child.side_to_move())) {
        std::vector<Move> replies;
        detail::generate_legal_unsorted(child, replies);
        san += replies.empty() ? '#' : '+';
    }
    return san;
}

Position record_start_position(const GameRecord& rec) {
    if (auto fen = rec.tag("FEN")) return parse_fen(*fen);
    return Position::startpos();
}

namespace {

class PgnReader {
public:
    explicit PgnReader(std::string_view text) : text_(text) {}

    std::vector<GameRecord> read_all() {
        std::vector<GameRecord> games;
        while (true) {
            skip_inter_game();
            if (at_end()) break;
            games.push_back(read_game(games.size() + 1));
        }
        return games;
    }

private:
    std::string_view text_;
    size_t i_ = 0;

    bool at_end() const { return i_ >= text_.size(); }
    char peek() const { return text_[i_]; }

    void skip_inter_game() {
        while (!at_end() && is_space(peek())) ++i_;
    }

    void skip_ws_and_comments(int game_index) {
        while (!at_end()) {
            char c = peek();
            if (is_space(c)) {
                ++i_;
            } else if (c == '{') {
                size_t close = text_.find('}', i_);
                if (close == std::string_view::npos)
                    throw ParseError("comment", "game " + std::to_string(game_index) +
                                                    ": unterminated { comment");
                i_ = close + 1;
            } else if (c == ';') {
                size_t nl = text_.find('\n', i_);
                i_ = nl == std::string_view::npos ? text_.size() : nl + 1;
            } else if (c == '(') {
                skip_variation(game_index);
            } else if (c == '$') {
                ++i_;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
            } else {
                return;
            }
        }
    }

    void skip_variation(int game_index) {
        int depth = 0;
        while (!at_end()) {
            char c = peek();
            if (c == '{') {
                size_t close = text_.find('}', i_);
                if (close == std::string_view::npos)
                    throw ParseError("comment", "game " + std::to_string(game_index) +
                                                    ": unterminated { comment");
                i_ = close + 1;
                continue;
            }
            if (c == '(') ++depth;
            if (c == ')') {
                --depth;
                ++i_;
                if (depth == 0) return;
                continue;
            }
            ++i_;
        }
        throw ParseError("variation", "game " + std::to_string(game_index) +
                                          ": unterminated ( variation");
    }

    std::pair<std::string, std::string> read_tag(int game_index) {
        ++i_;  // '['
        while (!at_end() && is_space(peek())) ++i_;
        std::string name;
        while (!at_end() && !is_space(peek()) && peek() != '"' && peek() != ']')
            name += text_[i_++];
        while (!at_end() && is_space(peek())) ++i_;
        if (at_end() || peek() != '"')
            throw ParseError("tag", "game " + std::to_string(game_index) +
                                        ": tag '" + name + "' missing quoted value");
        ++i_;
        std::string value;
        while (true) {
            if (at_end())
                throw ParseError("tag", "game " + std::to_string(game_index) +
                                            ": unterminated tag value");
            char c = text_[i_++];
            if (c == '\\' && !at_end()) {
                value += text_[i_++];
            } else if (c == '"') {
                break;
            } else {
                value += c;
            }
        }
        while (!at_end() && is_space(peek())) ++i_;
        if (at_end() || peek() != ']')
            throw ParseError("tag", "game " + std::to_string(game_index) +
                                        ": tag '" + name + "' missing ']'");
        ++i_;
        return {name, value};
    }

    GameRecord read_game(int game_index) {
        GameRecord rec;
        skip_inter_game();
        while (!at_end() && peek() == '[') {
            rec.tags.push_back(read_tag(game_index));
            skip_inter_game();
        }

        Position pos = record_start_position(rec);
        std::vector<Position> history{pos};
        bool saw_result = false;

        while (true) {
            skip_ws_and_comments(game_index);
            if (at_end()) break;
            if (peek() == '[') break;  // next game's tag section

            size_t start = i_;
            while (!at_end() && !is_space(peek()) && peek() != '{' && peek() != ';' &&
                   peek() != '(' && peek() != ')' && peek() != '[')
                ++i_;
            std::string token(text_.substr(start, i_ - start));
            if (token.empty()) {
                ++i_;  // stray ')' or '['; skip defensively
                continue;
            }

            if (auto result = result_from_token(token)) {
                rec.result = *result;
                saw_result = true;
                break;
            }
            if (std::isdigit(static_cast<unsigned char>(token[0]))) {
                // Move-number token, possibly glued to the move ("1.e4").
                size_t j = 0;
                while (j < token.size() && std::isdigit(static_cast<unsigned char>(token[j])))
                    ++j;
                while (j < token.size() && token[j] == '.') ++j;
                if (j == token.size()) continue;
                token = token.substr(j);
            }

            ParsedMoveText parsed = classify_move_text(token, pos);
            if (parsed.outcome != ParsedMoveText::Outcome::Legal)
                throw ParseError("movetext",
                                 "game " + std::to_string(game_index) + " ply " +
                                     std::to_string(rec.moves.size() + 1) + ": " +
                                     parsed.message);
            rec.moves.push_back(*parsed.move);
            pos = detail::apply_move_unchecked(pos, *parsed.move);
            history.push_back(pos);
        }

        if (!saw_result) rec.result = GameResult::Unfinished;
        return rec;
    }
};

std::string normalize_quotes(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        unsigned char c = text[i];
        // U+201C / U+201D curly double quotes -> '"'
        if (c == 0xE2 && i + 2 < text.size() &&
            static_cast<unsigned char>(text[i + 1]) == 0x80 &&
            (static_cast<unsigned char>(text[i + 2]) == 0x9C ||
             static_cast<unsigned char>(text[i + 2]) == 0x9D)) {
            out += '"';
            i += 3;
            continue;
        }
        out += text[i++];
    }
    return out;
}

}  // namespace

std::vector<GameRecord> parse_pgn(std::string_view text) {
    const std::string normalized = normalize_quotes(strip_bom(text));
    return PgnReader(normalized).read_all();
}

std::string render_pgn(const GameRecord& rec) {
    static constexpr const char* kRoster[] = {"Event", "Site",  "Date", "Round",
                                              "White", "Black", "Result"};
    std::string out;
    std::vector<bool> used(rec.tags.size(), false);
    auto emit_tag = [&out](const std::string& name, const std::string& value) {
        out += '[';
        out += name;
        out += " \"";
        for (char c : value) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        out += "\"]\n";
    };
    for (const char* name : kRoster)
        for (size_t i = 0; i < rec.tags.size(); ++i)
            if (!used[i] && rec.tags[i].first == name) {
                emit_tag(rec.tags[i].first, rec.tags[i].second);
                used[i] = true;
                break;
            }
    for (size_t i = 0; i < rec.tags.size(); ++i)
        if (!used[i]) emit_tag(rec.tags[i].first, rec.tags[i].second);
    if (!rec.tags.empty()) out += '\n';

    std::vector<std::string> tokens;
    Position pos = record_start_position(rec);
    for (Move m : rec.moves) {
        if (pos.side_to_move() == Color::White)
            tokens.push_back(std::to_string(pos.fullmove_number()) + ".");
        else if (tokens.empty())
            tokens.push_back(std::to_string(pos.fullmove_number()) + "...");
        tokens.push_back(render_san(m, pos));
        pos = apply_move(pos, m);
    }
    tokens.emplace_back(result_token(rec.result));

    std::string line;
    for (const std::string& token : tokens) {
        if (!line.empty() && line.size() + 1 + token.size() > 80) {
            out += line;
            out += '\n';
            line.clear();
        }
        if (!line.empty()) line += ' ';
        line += token;
    }
    if (!line.empty()) {
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace chesslab
