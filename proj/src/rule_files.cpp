#include "rncca/rule_files.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace rncca {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t pos = 0;
    std::size_t number = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view line = text.substr(pos, end - pos);
        line = line.substr(0, line.find('#'));
        Line out{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) out.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (!out.tokens.empty()) lines.push_back(std::move(out));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

template <class Int>
Int to_int(std::string_view token, std::size_t line, std::string_view what) {
    Int value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line, "bad value for " + std::string(what) + ": '" + std::string(token) + "'");
    return value;
}

std::optional<std::string_view> key_value(std::string_view token, std::string_view key) {
    if (token.size() > key.size() && token.starts_with(key) && token[key.size()] == '=')
        return token.substr(key.size() + 1);
    return std::nullopt;
}

std::vector<int> int_list(std::string_view text, std::size_t line) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        out.push_back(to_int<int>(text.substr(pos, comma - pos), line, "neighborhood"));
        pos = comma + 1;
    }
    return out;
}

std::string hex16(std::uint64_t value) {
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

std::string_view first_keyword(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty rule file");
    return lines.front().tokens.front();
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string source_hash(const Rpca2& p) { return hex16(fnv1a64(format_rpca(p))); }

std::string format_ncca(const NccaRule& rule, bool dump_balanced_pairs) {
    const auto& code = rule.code();
    std::ostringstream out;
    out << "ncca C=" << code.c_size() << " R=" << code.r_size() << " states=" << code.state_count()
        << " neighborhood=-2,-1,0,1 phi=canonical source=" << source_hash(rule.source()) << "\n";
    out << format_rpca(rule.source());
    if (dump_balanced_pairs) {
        for (State a = 0; a < code.state_count(); ++a)
            for (State b = 0; b < code.state_count(); ++b)
                if (code.is_balanced_heavy(a, b)) out << "bc " << a << ' ' << b << "\n";
        for (State a = 0; a < code.state_count(); ++a)
            for (State b = 0; b < code.state_count(); ++b)
                if (code.is_balanced_light(a, b)) out << "br " << a << ' ' << b << "\n";
    }
    return out.str();
}

NccaRule parse_ncca(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty() || lines.front().tokens.front() != "ncca") throw ParseError(1, "missing 'ncca' header");
    const auto& header = lines.front();
    std::optional<std::uint32_t> c, r, states;
    std::optional<std::string> hash;
    for (std::size_t i = 1; i < header.tokens.size(); ++i) {
        const auto token = header.tokens[i];
        if (auto v = key_value(token, "C")) c = to_int<std::uint32_t>(*v, header.number, "C");
        else if (auto v = key_value(token, "R")) r = to_int<std::uint32_t>(*v, header.number, "R");
        else if (auto v = key_value(token, "states")) states = to_int<std::uint32_t>(*v, header.number, "states");
        else if (auto v = key_value(token, "neighborhood")) {
            if (*v != "-2,-1,0,1") throw ParseError(header.number, "converted rules use neighborhood -2,-1,0,1");
        } else if (auto v = key_value(token, "phi")) {
            if (*v != "canonical") throw ParseError(header.number, "only phi=canonical is supported");
        } else if (auto v = key_value(token, "source")) hash = std::string(*v);
        else throw ParseError(header.number, "unknown field '" + std::string(token) + "'");
    }
    if (!c || !r || !states || !hash) throw ParseError(header.number, "header needs C, R, states and source");

    // Body: the source table, then optional balanced-pair listings.
    std::string table;
    std::set<std::pair<State, State>> listed_heavy, listed_light;
    bool listed = false;
    std::size_t body_line = header.number + 1;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.tokens[0] == "bc" || line.tokens[0] == "br") {
            if (line.tokens.size() != 3) throw ParseError(line.number, "expected 'bc|br <q1> <q2>'");
            const std::pair<State, State> pair{to_int<State>(line.tokens[1], line.number, "q1"),
                                               to_int<State>(line.tokens[2], line.number, "q2")};
            (line.tokens[0] == "bc" ? listed_heavy : listed_light).insert(pair);
            listed = true;
            continue;
        }
        if (listed) throw ParseError(line.number, "table lines must precede balanced-pair lines");
        for (std::size_t t = 0; t < line.tokens.size(); ++t) {
            if (t) table += ' ';
            table += line.tokens[t];
        }
        table += '\n';
        if (i == 1) body_line = line.number;
    }
    Rpca2 source = [&] {
        try {
            return parse_rpca(table);
        } catch (const ParseError& e) {
            throw ParseError(body_line + e.line() - 1, e.what());
        }
    }();
    if (source.c_size() != *c || source.r_size() != *r)
        throw ParseError(header.number, "header sizes do not match the embedded source rule");
    if (*states != 4 * *c * *r) throw ParseError(header.number, "states must equal 4*C*R");
    if (*hash != source_hash(source))
        throw ParseError(header.number, "source hash " + *hash + " does not match the embedded rule (" +
                                            source_hash(source) + ")");
    NccaRule rule = [&] {
        try {
            return convert(source);
        } catch (const RuleError& e) {
            throw ParseError(header.number, e.what());
        }
    }();
    if (listed) {
        const auto& code = rule.code();
        for (State a = 0; a < code.state_count(); ++a)
            for (State b = 0; b < code.state_count(); ++b) {
                if (code.is_balanced_heavy(a, b) != listed_heavy.contains({a, b}) ||
                    code.is_balanced_light(a, b) != listed_light.contains({a, b}))
                    throw ParseError(header.number, "balanced-pair listing does not match the rule");
            }
    }
    return rule;
}

Rule parse_table_rule(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty() || lines.front().tokens.front() != "ca") throw ParseError(1, "missing 'ca' header");
    const auto& header = lines.front();
    std::optional<std::uint32_t> states, quiescent, fallback;
    std::optional<std::vector<int>> neighborhood;
    for (std::size_t i = 1; i < header.tokens.size(); ++i) {
        const auto token = header.tokens[i];
        if (auto v = key_value(token, "states")) states = to_int<std::uint32_t>(*v, header.number, "states");
        else if (auto v = key_value(token, "neighborhood")) neighborhood = int_list(*v, header.number);
        else if (auto v = key_value(token, "quiescent")) quiescent = to_int<std::uint32_t>(*v, header.number, "quiescent");
        else if (auto v = key_value(token, "default")) fallback = to_int<std::uint32_t>(*v, header.number, "default");
        else throw ParseError(header.number, "unknown field '" + std::string(token) + "'");
    }
    if (!states || !neighborhood || !quiescent)
        throw ParseError(header.number, "header needs states, neighborhood and quiescent");
    if (*states == 0) throw ParseError(header.number, "states must be positive");
    const std::size_t m = neighborhood->size();
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < m; ++i) {
        size *= *states;
        if (size > 100'000'000) throw ParseError(header.number, "rule table too large to tabulate");
    }
    std::vector<std::optional<State>> table(size);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.tokens.size() != m + 2 || line.tokens[m] != "->")
            throw ParseError(line.number, "expected " + std::to_string(m) + " states, '->' and a state");
        std::uint64_t index = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const auto q = to_int<State>(line.tokens[j], line.number, "state");
            if (q >= *states) throw ParseError(line.number, "state out of range");
            index = index * *states + q;
        }
        const auto out = to_int<State>(line.tokens[m + 1], line.number, "state");
        if (table[index]) throw ParseError(line.number, "tuple listed more than once");
        table[index] = out;
    }
    std::vector<State> entries(size);
    for (std::uint64_t i = 0; i < size; ++i) {
        if (!table[i] && !fallback)
            throw ParseError(header.number, "tuple " + std::to_string(i) + " is missing and there is no default");
        entries[i] = table[i] ? *table[i] : *fallback;
    }
    try {
        return make_table_rule(*states, *neighborhood, std::move(entries), *quiescent);
    } catch (const RuleError& e) {
        throw ParseError(header.number, e.what());
    }
}

RuleFile parse_rule_file(std::string_view text) {
    const auto keyword = first_keyword(text);
    if (keyword == "rpca") return parse_rpca(text);
    if (keyword == "ncca") return parse_ncca(text);
    if (keyword == "ca") return parse_table_rule(text);
    throw ParseError(1, "unknown rule file kind '" + std::string(keyword) + "'");
}

}  // namespace rncca
