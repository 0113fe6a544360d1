#include "qk/io.hpp"

#include "qk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace qk::io {

Format parse_format(std::string_view name) {
    if (name == "edgelist")
        return Format::edgelist;
    if (name == "dot")
        return Format::dot;
    throw Error("unknown format '" + std::string(name) + "' (expected edgelist or dot)");
}

namespace {

bool parse_index(std::string_view token, std::uint64_t& value) {
    if (token.empty())
        return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

Digraph build(std::size_t n, const std::vector<Arc>& arcs, std::size_t line) {
    try {
        return Digraph::from_edge_list(n, arcs);
    } catch (const InvalidDigraph& e) {
        throw ParseError(e.what(), line);
    }
}

} // namespace

Digraph read_edge_list(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint64_t n = 0, m = 0;
    std::vector<Arc> arcs;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto tokens = split_ws(line);
        if (tokens.empty())
            continue;
        if (tokens.size() != 2)
            throw ParseError("expected two integers, got " + std::to_string(tokens.size()) + " tokens", line_no);
        std::uint64_t a = 0, b = 0;
        if (!parse_index(tokens[0], a) || !parse_index(tokens[1], b))
            throw ParseError("expected non-negative integers", line_no);
        if (!have_header) {
            n = a;
            m = b;
            have_header = true;
            if (n > std::numeric_limits<Vertex>::max())
                throw ParseError("vertex count too large", line_no);
            continue;
        }
        if (arcs.size() == m)
            throw ParseError("more arc lines than the declared " + std::to_string(m), line_no);
        if (a >= n || b >= n)
            throw ParseError("arc endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1), line_no);
        if (a == b)
            throw ParseError("loop arc (" + std::to_string(a) + ", " + std::to_string(b) + ")", line_no);
        arcs.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    if (!have_header)
        throw ParseError("missing header line \"n m\"", std::max<std::size_t>(line_no, 1));
    if (arcs.size() != m)
        throw ParseError("declared " + std::to_string(m) + " arcs but found " + std::to_string(arcs.size()), line_no);
    return build(n, arcs, line_no);
}

void write_edge_list(std::ostream& out, const Digraph& d) {
    out << d.vertex_count() << ' ' << d.arc_count() << '\n';
    for (const auto& [u, v] : d.arcs())
        out << u << ' ' << v << '\n';
}

namespace {

struct Token {
    enum Kind { word, number, arrow, open_brace, close_brace, semicolon, open_bracket, close_bracket, quoted, end };
    Kind kind;
    std::string text;
    std::size_t line;
};

class DotLexer {
public:
    explicit DotLexer(std::string text) : text_(std::move(text)) {}

    Token next() {
        skip_space_and_comments();
        if (pos_ >= text_.size())
            return {Token::end, "", line_};
        char c = text_[pos_];
        if (c == '{' || c == '}' || c == ';' || c == '[' || c == ']') {
            ++pos_;
            Token::Kind kind = c == '{'   ? Token::open_brace
                               : c == '}' ? Token::close_brace
                               : c == ';' ? Token::semicolon
                               : c == '[' ? Token::open_bracket
                                          : Token::close_bracket;
            return {kind, std::string(1, c), line_};
        }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            pos_ += 2;
            return {Token::arrow, "->", line_};
        }
        if (c == '"') {
            std::size_t start = ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n')
                    ++line_;
                ++pos_;
            }
            if (pos_ >= text_.size())
                throw ParseError("unterminated string", line_);
            return {Token::quoted, text_.substr(start, pos_++ - start), line_};
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '=' ||
            c == ',') {
            std::size_t start = pos_;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.' || d == '=' || d == ',' ||
                    (d == '-' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')))
                    ++pos_;
                else
                    break;
            }
            std::string word = text_.substr(start, pos_ - start);
            bool all_digits = !word.empty();
            for (char d : word)
                all_digits = all_digits && std::isdigit(static_cast<unsigned char>(d));
            return {all_digits ? Token::number : Token::word, word, line_};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#' || (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
                pos_ += 2;
                while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
                    if (text_[pos_] == '\n')
                        ++line_;
                    ++pos_;
                }
                pos_ += 2;
            } else {
                break;
            }
        }
    }

    std::string text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

Vertex vertex_id(const Token& token) {
    std::uint64_t value = 0;
    if (token.kind != Token::number || !parse_index(token.text, value))
        throw ParseError("expected a non-negative integer vertex id, got '" + token.text + "'", token.line);
    if (value >= std::numeric_limits<Vertex>::max())
        throw ParseError("vertex id too large", token.line);
    return static_cast<Vertex>(value);
}

} // namespace

Digraph read_dot(std::istream& in) {
    DotLexer lexer(std::string(std::istreambuf_iterator<char>(in), {}));
    Token token = lexer.next();
    if (token.kind == Token::word && token.text == "strict")
        token = lexer.next();
    if (token.kind != Token::word || token.text != "digraph")
        throw ParseError("expected 'digraph'", token.line);
    token = lexer.next();
    if (token.kind == Token::word || token.kind == Token::number || token.kind == Token::quoted)
        token = lexer.next();
    if (token.kind != Token::open_brace)
        throw ParseError("expected '{'", token.line);

    std::vector<Arc> arcs;
    std::size_t n = 0;
    auto note = [&n](Vertex v) { n = std::max<std::size_t>(n, std::size_t{v} + 1); };
    auto skip_attributes = [&lexer](Token& t) {
        while (t.kind != Token::close_bracket) {
            if (t.kind == Token::end)
                throw ParseError("unterminated attribute list", t.line);
            t = lexer.next();
        }
        t = lexer.next();
    };

    token = lexer.next();
    while (token.kind != Token::close_brace) {
        if (token.kind == Token::end)
            throw ParseError("missing closing '}'", token.line);
        if (token.kind == Token::semicolon) {
            token = lexer.next();
            continue;
        }
        if (token.kind == Token::word && (token.text == "node" || token.text == "edge" || token.text == "graph")) {
            const std::string keyword = token.text;
            token = lexer.next();
            if (token.kind != Token::open_bracket)
                throw ParseError("expected '[' after '" + keyword + "'", token.line);
            skip_attributes(token);
            continue;
        }
        Vertex from = vertex_id(token);
        note(from);
        token = lexer.next();
        while (token.kind == Token::arrow) {
            Token target = lexer.next();
            Vertex to = vertex_id(target);
            note(to);
            if (from == to)
                throw ParseError("loop arc (" + std::to_string(from) + ", " + std::to_string(to) + ")", target.line);
            arcs.emplace_back(from, to);
            from = to;
            token = lexer.next();
        }
        if (token.kind == Token::open_bracket)
            skip_attributes(token);
    }
    if (Token trailing = lexer.next(); trailing.kind != Token::end)
        throw ParseError("unexpected content after closing '}'", trailing.line);
    return build(n, arcs, 0);
}

void write_dot(std::ostream& out, const Digraph& d) {
    out << "digraph G {\n";
    for (Vertex v = 0; v < d.vertex_count(); ++v)
        out << "  " << v << ";\n";
    for (const auto& [u, v] : d.arcs())
        out << "  " << u << " -> " << v << ";\n";
    out << "}\n";
}

Digraph read(std::istream& in, Format format) {
    return format == Format::dot ? read_dot(in) : read_edge_list(in);
}

void write(std::ostream& out, const Digraph& d, Format format) {
    if (format == Format::dot)
        write_dot(out, d);
    else
        write_edge_list(out, d);
}

} // namespace qk::io
