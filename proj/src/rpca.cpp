#include "rncca/rpca.hpp"

#include <charconv>
#include <sstream>

#include "rncca/random.hpp"

namespace rncca {

namespace {

constexpr int kForward[] = {0, -1};
constexpr int kBackward[] = {0, 1};

}  // namespace

Rpca2::Rpca2(std::uint32_t c_size, std::uint32_t r_size, std::vector<PairState> table)
    : c_size_(c_size), r_size_(r_size), table_(std::move(table)) {
    if (c_size_ == 0 || r_size_ == 0) throw RuleError("|C| and |R| must be positive");
    if (table_.size() != static_cast<std::size_t>(c_size_) * r_size_)
        throw RuleError("partitioned rule table must have |C|*|R| entries");
    for (const auto& out : table_)
        if (!contains(out))
            throw RuleError("table output (" + std::to_string(out.c) + "," + std::to_string(out.r) +
                            ") out of range");
    if (table_[0] != quiescent()) throw RuleError("table must map the quiescent pair (0,0) to itself");
}

std::optional<Collision> find_collision(const Rpca2& p) {
    std::vector<std::optional<std::uint32_t>> preimage(p.pair_count());
    for (std::uint32_t i = 0; i < p.pair_count(); ++i) {
        const PairState out = p.table()[i];
        auto& slot = preimage[p.index(out)];
        if (slot) return Collision{p.pair(*slot), p.pair(i), out};
        slot = i;
    }
    return std::nullopt;
}

bool check_local_injective(const Rpca2& p) { return !find_collision(p); }

void check_states(const Rpca2& p, const RpcaConfiguration& config) {
    config.for_each_stored_cell([&](PairState s) {
        if (!p.contains(s))
            throw RuleError("configuration cell (" + std::to_string(s.c) + "," + std::to_string(s.r) +
                            ") out of range");
    });
}

RpcaConfiguration step_rpca(const Rpca2& p, const RpcaConfiguration& config) {
    check_states(p, config);
    return step_configuration(config, std::span<const int>(kForward),
                              [&](std::span<const PairState> nb) { return p.apply(nb[0].c, nb[1].r); });
}

std::vector<RpcaConfiguration> run_rpca(const Rpca2& p, const RpcaConfiguration& config, std::size_t steps) {
    std::vector<RpcaConfiguration> out{config};
    out.reserve(steps + 1);
    for (std::size_t t = 0; t < steps; ++t) out.push_back(step_rpca(p, out.back()));
    return out;
}

RpcaInverse::RpcaInverse(const Rpca2& p) : forward_(p), inverse_(p.pair_count()) {
    if (auto collision = find_collision(p))
        throw RuleError("partitioned rule is not injective: (" + std::to_string(collision->first.c) + "," +
                        std::to_string(collision->first.r) + ") and (" + std::to_string(collision->second.c) +
                        "," + std::to_string(collision->second.r) + ") share an image");
    for (std::uint32_t i = 0; i < p.pair_count(); ++i) inverse_[p.index(p.table()[i])] = p.pair(i);
}

RpcaConfiguration RpcaInverse::step_back(const RpcaConfiguration& config) const {
    check_states(forward_, config);
    return step_configuration(config, std::span<const int>(kBackward), [&](std::span<const PairState> nb) {
        const PairState here = inverse_[forward_.index(nb[0])];
        const PairState right = inverse_[forward_.index(nb[1])];
        return PairState{here.c, right.r};
    });
}

RpcaInverse invert_rpca(const Rpca2& p) { return RpcaInverse(p); }

Rpca2 identity_rpca(std::uint32_t c_size, std::uint32_t r_size) {
    std::vector<PairState> table;
    for (std::uint32_t c = 0; c < c_size; ++c)
        for (std::uint32_t r = 0; r < r_size; ++r) table.push_back({c, r});
    return Rpca2(c_size, r_size, std::move(table));
}

Rpca2 xor_rpca() {
    std::vector<PairState> table;
    for (std::uint32_t c = 0; c < 2; ++c)
        for (std::uint32_t r = 0; r < 2; ++r) table.push_back({c ^ r, r});
    return Rpca2(2, 2, std::move(table));
}

Rpca2 swap_rpca(std::uint32_t size) {
    std::vector<PairState> table;
    for (std::uint32_t c = 0; c < size; ++c)
        for (std::uint32_t r = 0; r < size; ++r) table.push_back({r, c});
    return Rpca2(size, size, std::move(table));
}

Rpca2 random_rpca(std::uint64_t seed, std::uint32_t c_size, std::uint32_t r_size) {
    if (c_size == 0 || r_size == 0) throw RuleError("|C| and |R| must be positive");
    const std::uint32_t n = c_size * r_size;
    std::vector<std::uint32_t> image(n);
    for (std::uint32_t i = 0; i < n; ++i) image[i] = i;
    Rng rng(seed);
    for (std::uint32_t i = n - 1; i >= 1; --i) {
        const auto j = static_cast<std::uint32_t>(rng.uniform(i + 1));
        std::swap(image[i], image[j]);
    }
    if (image[0] != 0) {
        for (std::uint32_t i = 1; i < n; ++i)
            if (image[i] == 0) {
                std::swap(image[0], image[i]);
                break;
            }
    }
    std::vector<PairState> table(n);
    for (std::uint32_t i = 0; i < n; ++i) table[i] = {image[i] / r_size, image[i] % r_size};
    return Rpca2(c_size, r_size, std::move(table));
}

Rpca2 example_rpca(std::string_view name) {
    if (name == "identity") return identity_rpca(2, 2);
    if (name == "xor") return xor_rpca();
    if (name == "swap") return swap_rpca(2);
    if (name.starts_with("random:")) {
        std::uint64_t seed = 0;
        std::uint32_t c = 0, r = 0;
        char colon1 = 0, colon2 = 0;
        std::istringstream in{std::string(name.substr(7))};
        if (in >> seed >> colon1 >> c >> colon2 >> r && colon1 == ':' && colon2 == ':' && in.peek() == EOF)
            return random_rpca(seed, c, r);
    }
    throw RuleError("unknown example rule '" + std::string(name) + "'");
}

Rule to_rule(const Rpca2& p) {
    auto local = [p](std::span<const State> nb) {
        return static_cast<State>(p.index(p.apply(p.pair(nb[0]).c, p.pair(nb[1]).r)));
    };
    return Rule(p.pair_count(), {0, -1}, std::move(local), 0);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint32_t parse_uint(std::string_view token, std::size_t line, std::string_view what) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
        throw ParseError(line, "expected a non-negative integer for " + std::string(what) + ", got '" +
                                   std::string(token) + "'");
    return value;
}

std::uint32_t parse_key(std::string_view token, std::string_view key, std::size_t line) {
    if (!token.starts_with(key) || token.size() <= key.size() || token[key.size()] != '=')
        throw ParseError(line, "expected " + std::string(key) + "=<int>, got '" + std::string(token) + "'");
    return parse_uint(token.substr(key.size() + 1), line, key);
}

}  // namespace

Rpca2 parse_rpca(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> sizes;
    std::vector<std::optional<PairState>> table;
    std::size_t header_line = 0;

    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        line = line.substr(0, line.find('#'));
        pos = end + 1;
        ++line_no;

        auto tokens = split_ws(line);
        if (tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (!sizes) {
            if (tokens.size() != 3 || tokens[0] != "rpca")
                throw ParseError(line_no, "expected header 'rpca C=<int> R=<int>'");
            const auto c = parse_key(tokens[1], "C", line_no);
            const auto r = parse_key(tokens[2], "R", line_no);
            if (c == 0 || r == 0) throw ParseError(line_no, "C and R must be positive");
            sizes = {c, r};
            table.assign(static_cast<std::size_t>(c) * r, std::nullopt);
            header_line = line_no;
        } else {
            if (tokens.size() != 5 || tokens[2] != "->")
                throw ParseError(line_no, "expected 'c r -> c' r''");
            const PairState in{parse_uint(tokens[0], line_no, "c"), parse_uint(tokens[1], line_no, "r")};
            const PairState out{parse_uint(tokens[3], line_no, "c'"), parse_uint(tokens[4], line_no, "r'")};
            const auto [cs, rs] = *sizes;
            if (in.c >= cs || in.r >= rs || out.c >= cs || out.r >= rs)
                throw ParseError(line_no, "state out of range for C=" + std::to_string(cs) +
                                              " R=" + std::to_string(rs));
            auto& slot = table[static_cast<std::size_t>(in.c) * rs + in.r];
            if (slot)
                throw ParseError(line_no, "pair (" + std::to_string(in.c) + "," + std::to_string(in.r) +
                                              ") appears more than once");
            slot = out;
        }
        if (end == text.size()) break;
    }
    if (!sizes) throw ParseError(line_no, "missing 'rpca' header");
    std::vector<PairState> entries;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table[i])
            throw ParseError(line_no, "pair (" + std::to_string(i / sizes->second) + "," +
                                          std::to_string(i % sizes->second) + ") is missing");
        entries.push_back(*table[i]);
    }
    try {
        return Rpca2(sizes->first, sizes->second, std::move(entries));
    } catch (const RuleError& e) {
        throw ParseError(header_line, e.what());
    }
}

std::string format_rpca(const Rpca2& p) {
    std::ostringstream out;
    out << "rpca C=" << p.c_size() << " R=" << p.r_size() << "\n";
    for (std::uint32_t i = 0; i < p.pair_count(); ++i) {
        const PairState in = p.pair(i);
        const PairState o = p.table()[i];
        out << in.c << ' ' << in.r << " -> " << o.c << ' ' << o.r << "\n";
    }
    return out.str();
}

}  // namespace rncca
