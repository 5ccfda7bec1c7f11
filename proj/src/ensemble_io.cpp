#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rce/ensemble.hpp"
#include "rce/errors.hpp"

namespace rce::ensemble {
namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',' && line[i] != '#') ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

/// Reads lines until one with tokens; returns false at end of input.
bool next_content_line(std::istream& in, std::size_t& line_no, std::vector<Token>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        tokens = tokenize(line);
        if (!tokens.empty()) return true;
    }
    return false;
}

Label parse_label(const Token& t, std::size_t line_no) {
    if (t.text == "+1" || t.text == "1") return Label::Pos;
    if (t.text == "-1") return Label::Neg;
    throw ParseError("expected a label +1 or -1, got '" + t.text + "'", line_no, t.column);
}

std::size_t parse_count(const Token& t, std::size_t line_no, const char* what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(t.text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.text.size() || v == 0 || t.text[0] == '-' || t.text[0] == '+') {
        throw ParseError(std::string("expected a positive integer for ") + what + ", got '" + t.text + "'", line_no,
                         t.column);
    }
    return static_cast<std::size_t>(v);
}

LabelVector parse_row(const std::vector<Token>& tokens, std::size_t line_no, std::size_t expected_length) {
    LabelVector row;
    row.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (expected_length != 0 && row.size() == expected_length) {
            throw ParseError("too many labels, expected " + std::to_string(expected_length), line_no, t.column);
        }
        row.push_back(parse_label(t, line_no));
    }
    if (expected_length != 0 && row.size() != expected_length) {
        throw ParseError("expected " + std::to_string(expected_length) + " labels, got " + std::to_string(row.size()),
                         line_no, 0);
    }
    return row;
}

}  // namespace

VoteInstance parse_instance(std::istream& in) {
    std::size_t line_no = 0;
    std::vector<Token> tokens;
    if (!next_content_line(in, line_no, tokens)) throw ParseError("empty instance, expected header 'N k'", line_no + 1, 0);
    if (tokens.size() != 2) throw ParseError("header must be 'N k'", line_no, tokens.size() > 2 ? tokens[2].column : 0);
    const std::size_t n = parse_count(tokens[0], line_no, "N");
    const std::size_t k = parse_count(tokens[1], line_no, "k");

    if (!next_content_line(in, line_no, tokens)) throw ParseError("missing expected-label line", line_no + 1, 0);
    LabelVector expected = parse_row(tokens, line_no, k);

    std::vector<LabelVector> outputs;
    outputs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!next_content_line(in, line_no, tokens)) {
            throw ParseError("missing output row " + std::to_string(i + 1) + " of " + std::to_string(n), line_no + 1, 0);
        }
        outputs.push_back(parse_row(tokens, line_no, k));
    }
    if (next_content_line(in, line_no, tokens)) throw ParseError("unexpected extra content", line_no, tokens[0].column);
    return VoteInstance(std::move(expected), std::move(outputs));
}

LabelVector parse_label_vector(std::istream& in, std::size_t expected_length) {
    std::size_t line_no = 0;
    std::vector<Token> tokens;
    if (!next_content_line(in, line_no, tokens)) throw ParseError("empty label vector", line_no + 1, 0);
    LabelVector row = parse_row(tokens, line_no, expected_length);
    if (next_content_line(in, line_no, tokens)) throw ParseError("unexpected extra content", line_no, tokens[0].column);
    return row;
}

void write_instance(std::ostream& out, const VoteInstance& inst) {
    auto row = [&](const LabelVector& labels) {
        for (std::size_t j = 0; j < labels.size(); ++j) out << (j ? " " : "") << (labels[j] == Label::Pos ? "+1" : "-1");
        out << '\n';
    };
    out << inst.n_components() << ' ' << inst.n_samples() << '\n';
    row(inst.expected());
    for (const auto& r : inst.outputs()) row(r);
}

std::string format_labels(const LabelVector& labels) {
    std::string s = "[";
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (j) s += ',';
        s += labels[j] == Label::Pos ? "+1" : "-1";
    }
    return s + "]";
}

}  // namespace rce::ensemble
