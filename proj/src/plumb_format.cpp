#include "plumb/plumb_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace plumb {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line, std::size_t offset) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), offset + start + 1});
    }
    return out;
}

std::optional<std::int64_t> parse_weight(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

PlumbingGraph parse_graph(std::string_view text) {
    enum class Section { none, vertices, edges };
    Section section = Section::none;
    bool saw_vertices = false;
    PlumbingGraph g;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = split_tokens(line, 0);
        if (tokens.empty()) {
            if (eol == text.size()) break;
            continue;
        }

        // The keyword may be glued to the first item ("vertices:a:-2").
        Token head = tokens.front();
        std::string_view rest;
        if (head.text.starts_with("vertices:")) {
            if (section == Section::edges)
                throw ParseError(line_no, head.column, "'vertices:' line after 'edges:' line");
            section = Section::vertices;
            saw_vertices = true;
            rest = head.text.substr(9);
        } else if (head.text.starts_with("edges:")) {
            if (!saw_vertices) throw ParseError(line_no, head.column, "'edges:' line before any 'vertices:' line");
            section = Section::edges;
            rest = head.text.substr(6);
        } else {
            throw ParseError(line_no, head.column,
                             "expected 'vertices:' or 'edges:', found '" + std::string(head.text) + "'");
        }
        std::vector<Token> items;
        if (!rest.empty()) items.push_back({rest, head.column + (head.text.size() - rest.size())});
        items.insert(items.end(), tokens.begin() + 1, tokens.end());

        for (const Token& tok : items) {
            if (section == Section::vertices) {
                auto colon = tok.text.find(':');
                if (colon == std::string_view::npos)
                    throw ParseError(line_no, tok.column, "expected <id>:<weight>, found '" + std::string(tok.text) + "'");
                std::string_view id = tok.text.substr(0, colon);
                std::string_view weight_text = tok.text.substr(colon + 1);
                if (!is_valid_id(id))
                    throw ParseError(line_no, tok.column, "invalid vertex id '" + std::string(id) + "'");
                auto weight = parse_weight(weight_text);
                if (!weight)
                    throw ParseError(line_no, tok.column + colon + 1,
                                     "invalid weight '" + std::string(weight_text) + "'");
                if (g.index_of(id))
                    throw ParseError(line_no, tok.column, "duplicate vertex id '" + std::string(id) + "'");
                g.add_vertex(std::string(id), *weight);
            } else {
                auto dash = tok.text.find('-');
                if (dash == std::string_view::npos || dash == 0 || dash + 1 == tok.text.size())
                    throw ParseError(line_no, tok.column, "expected <id>-<id>, found '" + std::string(tok.text) + "'");
                std::string_view a = tok.text.substr(0, dash);
                std::string_view b = tok.text.substr(dash + 1);
                auto ia = g.index_of(a);
                if (!ia) throw ParseError(line_no, tok.column, "unknown vertex id '" + std::string(a) + "'");
                auto ib = g.index_of(b);
                if (!ib) throw ParseError(line_no, tok.column + dash + 1, "unknown vertex id '" + std::string(b) + "'");
                try {
                    g.add_edge(*ia, *ib);
                } catch (const InputError& e) {
                    throw ParseError(line_no, tok.column, e.what());
                }
            }
        }
        if (eol == text.size()) break;
    }
    if (!saw_vertices) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'vertices:' line");
    return g;
}

PlumbingGraph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_graph(buf.str());
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    }
}

std::string serialize_graph(const PlumbingGraph& g) {
    std::string out = "vertices:";
    for (const Vertex& v : g.vertices()) out += " " + v.id + ":" + std::to_string(v.weight);
    out += "\nedges:";
    for (const Edge& e : g.edges()) out += " " + g.id(e.first) + "-" + g.id(e.second);
    out += "\n";
    return out;
}

}  // namespace plumb
