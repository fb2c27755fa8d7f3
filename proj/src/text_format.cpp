#include "rncca/text_format.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace rncca {

namespace {

void write_cell(std::ostream& out, State q) { out << q; }
void write_cell(std::ostream& out, PairState p) { out << '(' << p.c << ',' << p.r << ')'; }

template <class Cell>
void write_list(std::ostream& out, const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        write_cell(out, cells[i]);
    }
}

template <class Cell>
std::string format_any(const BasicConfiguration<Cell>& config) {
    std::ostringstream out;
    if (auto f = config.finite()) {
        out << "finite q#=";
        write_cell(out, f->quiescent);
        out << " @" << f->offset << ":";
        if (!f->word.empty()) out << ' ';
        write_list(out, f->word);
    } else if (auto c = config.cyclic()) {
        out << "cyclic: ";
        write_list(out, c->word);
    } else {
        const auto& b = *config.biperiodic();
        out << "biperiodic left=";
        write_list(out, b.left);
        out << " center@" << b.center_offset << '=';
        write_list(out, b.center);
        out << " right=";
        write_list(out, b.right);
    }
    return out.str();
}

std::string_view first_record(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') return line;
        if (end == text.size()) break;
        pos = end + 1;
    }
    throw FormatError(0, "no configuration record found");
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_).starts_with(word)) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view word) {
        if (!accept(word)) fail("expected '" + std::string(word) + "'");
    }

    template <class Int>
    Int integer() {
        skip_ws();
        Int value{};
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc()) fail("expected an integer");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return value;
    }

    bool at_cell_start() {
        skip_ws();
        return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(');
    }

    void cell(State& out) { out = integer<State>(); }
    void cell(PairState& out) {
        expect("(");
        out.c = integer<std::uint32_t>();
        expect(",");
        out.r = integer<std::uint32_t>();
        expect(")");
    }

    template <class Cell>
    std::vector<Cell> list() {
        std::vector<Cell> out;
        if (!at_cell_start()) return out;
        do {
            Cell c{};
            cell(c);
            out.push_back(c);
        } while (accept(","));
        return out;
    }

    void finish() {
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing text");
    }

    [[noreturn]] void fail(const std::string& message) const { throw FormatError(pos_ + 1, message); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

template <class Cell>
BasicConfiguration<Cell> parse_any(std::string_view text) {
    Parser in(first_record(text));
    try {
        if (in.accept("finite")) {
            in.expect("q#=");
            Cell quiescent{};
            in.cell(quiescent);
            in.expect("@");
            const auto offset = in.template integer<Position>();
            in.expect(":");
            auto word = in.template list<Cell>();
            in.finish();
            return Finite<Cell>{offset, std::move(word), quiescent};
        }
        if (in.accept("cyclic")) {
            in.accept(":");
            auto word = in.template list<Cell>();
            in.finish();
            if (word.empty()) in.fail("cyclic word must be non-empty");
            return Cyclic<Cell>{std::move(word)};
        }
        if (in.accept("biperiodic")) {
            in.expect("left=");
            auto left = in.template list<Cell>();
            in.expect("center@");
            const auto offset = in.template integer<Position>();
            in.expect("=");
            auto center = in.template list<Cell>();
            in.expect("right=");
            auto right = in.template list<Cell>();
            in.finish();
            if (left.empty() || right.empty()) in.fail("background words must be non-empty");
            return BiPeriodic<Cell>{std::move(left), offset, std::move(center), std::move(right)};
        }
    } catch (const std::invalid_argument& e) {
        in.fail(e.what());
    }
    in.fail("expected 'finite', 'cyclic' or 'biperiodic'");
}

}  // namespace

std::string format_configuration(const Configuration& config) { return format_any(config); }
std::string format_configuration(const RpcaConfiguration& config) { return format_any(config); }

Configuration parse_configuration(std::string_view text) { return parse_any<State>(text); }
RpcaConfiguration parse_rpca_configuration(std::string_view text) { return parse_any<PairState>(text); }

bool holds_pair_cells(std::string_view text) { return first_record(text).find('(') != std::string_view::npos; }

}  // namespace rncca
