#pragma once

// One-dimensional configurations over an arbitrary cell type.
//
// Three shapes are supported:
//   Finite      a finite word embedded in a quiescent background,
//   Cyclic      a word repeated over the whole line (cell x reads word[x mod n]),
//   BiPeriodic  a finite center between two periodic backgrounds.
//
// Periodic words are indexed by absolute position: a cell x left of the
// center reads left[x mod |left|], a cell right of it reads right[x mod |right|].
// This fixes the phase of every background without a separate anchor field.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace rncca {

using Position = std::int64_t;

// Floor modulo; the result is in [0, n).
inline std::int64_t floor_mod(std::int64_t x, std::int64_t n) {
    std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

inline std::int64_t floor_div(std::int64_t x, std::int64_t n) {
    return (x - floor_mod(x, n)) / n;
}

template <class Cell>
struct Finite {
    Position offset = 0;
    std::vector<Cell> word;
    Cell quiescent{};

    bool operator==(const Finite&) const = default;
};

template <class Cell>
struct Cyclic {
    std::vector<Cell> word;

    bool operator==(const Cyclic&) const = default;
};

template <class Cell>
struct BiPeriodic {
    std::vector<Cell> left;
    Position center_offset = 0;
    std::vector<Cell> center;
    std::vector<Cell> right;

    bool operator==(const BiPeriodic&) const = default;
};

template <class Cell>
using Shape = std::variant<Finite<Cell>, Cyclic<Cell>, BiPeriodic<Cell>>;

namespace detail {

// Shortest prefix p of `word` with p | |word| and word[i] == word[i mod p].
template <class Cell>
std::vector<Cell> primitive_root(const std::vector<Cell>& word) {
    const std::size_t n = word.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = word[i] == word[i - p];
        if (ok) return {word.begin(), word.begin() + static_cast<std::ptrdiff_t>(p)};
    }
    return word;
}

template <class Cell>
const Cell& periodic_at(const std::vector<Cell>& word, Position x) {
    return word[static_cast<std::size_t>(floor_mod(x, static_cast<Position>(word.size())))];
}

template <class Cell>
Finite<Cell> canonical_finite(Finite<Cell> f) {
    auto first = std::find_if(f.word.begin(), f.word.end(),
                              [&](const Cell& c) { return !(c == f.quiescent); });
    if (first == f.word.end()) {
        f.word.clear();
        f.offset = 0;
        return f;
    }
    auto last = std::find_if(f.word.rbegin(), f.word.rend(),
                             [&](const Cell& c) { return !(c == f.quiescent); });
    f.offset += first - f.word.begin();
    f.word = std::vector<Cell>(first, last.base());
    return f;
}

template <class Cell>
BiPeriodic<Cell> canonical_biperiodic(BiPeriodic<Cell> b) {
    if (b.left.empty() || b.right.empty())
        throw std::invalid_argument("bi-periodic background words must be non-empty");
    b.left = primitive_root(b.left);
    b.right = primitive_root(b.right);

    std::size_t lo = 0;
    std::size_t hi = b.center.size();
    while (lo < hi && b.center[lo] == periodic_at(b.left, b.center_offset + static_cast<Position>(lo)))
        ++lo;
    while (hi > lo && b.center[hi - 1] == periodic_at(b.right, b.center_offset + static_cast<Position>(hi) - 1))
        --hi;
    b.center_offset += static_cast<Position>(lo);
    b.center = std::vector<Cell>(b.center.begin() + static_cast<std::ptrdiff_t>(lo),
                                 b.center.begin() + static_cast<std::ptrdiff_t>(hi));
    if (!b.center.empty()) return b;

    // Empty center: the boundary may slide over cells where both backgrounds
    // agree. Take the leftmost boundary; if the backgrounds agree everywhere
    // the configuration is globally periodic and the boundary is pinned at 0.
    const auto span = static_cast<Position>(std::lcm(b.left.size(), b.right.size()));
    Position boundary = b.center_offset;
    Position slid = 0;
    while (slid <= span && periodic_at(b.left, boundary - 1) == periodic_at(b.right, boundary - 1)) {
        --boundary;
        ++slid;
    }
    b.center_offset = slid > span ? 0 : boundary;
    return b;
}

}  // namespace detail

// Returns the unique canonical representative of a shape.
//   Finite: word trimmed of quiescent cells at both ends (empty word at offset 0).
//   Cyclic: stored as given (non-empty).
//   BiPeriodic: backgrounds reduced to primitive periods, center trimmed of
//   cells equal to the phase-aligned background on either side.
template <class Cell>
Shape<Cell> canonicalize(Shape<Cell> shape) {
    return std::visit(
        [](auto&& s) -> Shape<Cell> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Finite<Cell>>) {
                return detail::canonical_finite(std::move(s));
            } else if constexpr (std::is_same_v<T, Cyclic<Cell>>) {
                if (s.word.empty()) throw std::invalid_argument("cyclic word must be non-empty");
                return std::move(s);
            } else {
                return detail::canonical_biperiodic(std::move(s));
            }
        },
        std::move(shape));
}

// An immutable configuration, always held in canonical form.
template <class Cell>
class BasicConfiguration {
public:
    using cell_type = Cell;

    BasicConfiguration() : shape_(Finite<Cell>{}) {}
    BasicConfiguration(Shape<Cell> shape) : shape_(canonicalize(std::move(shape))) {}
    BasicConfiguration(Finite<Cell> f) : BasicConfiguration(Shape<Cell>(std::move(f))) {}
    BasicConfiguration(Cyclic<Cell> c) : BasicConfiguration(Shape<Cell>(std::move(c))) {}
    BasicConfiguration(BiPeriodic<Cell> b) : BasicConfiguration(Shape<Cell>(std::move(b))) {}

    const Shape<Cell>& shape() const { return shape_; }

    const Finite<Cell>* finite() const { return std::get_if<Finite<Cell>>(&shape_); }
    const Cyclic<Cell>* cyclic() const { return std::get_if<Cyclic<Cell>>(&shape_); }
    const BiPeriodic<Cell>* biperiodic() const { return std::get_if<BiPeriodic<Cell>>(&shape_); }

    Cell at(Position x) const {
        if (auto f = finite()) {
            const Position i = x - f->offset;
            if (i < 0 || i >= static_cast<Position>(f->word.size())) return f->quiescent;
            return f->word[static_cast<std::size_t>(i)];
        }
        if (auto c = cyclic()) return detail::periodic_at(c->word, x);
        const auto& b = *biperiodic();
        if (x < b.center_offset) return detail::periodic_at(b.left, x);
        const Position i = x - b.center_offset;
        if (i < static_cast<Position>(b.center.size())) return b.center[static_cast<std::size_t>(i)];
        return detail::periodic_at(b.right, x);
    }

    // Every stored cell, for range validation.
    template <class Fn>
    void for_each_stored_cell(Fn&& fn) const {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Finite<Cell>>) {
                    fn(s.quiescent);
                    for (const auto& c : s.word) fn(c);
                } else if constexpr (std::is_same_v<T, Cyclic<Cell>>) {
                    for (const auto& c : s.word) fn(c);
                } else {
                    for (const auto& c : s.left) fn(c);
                    for (const auto& c : s.center) fn(c);
                    for (const auto& c : s.right) fn(c);
                }
            },
            shape_);
    }

    // Shapes compare by canonical form. Cyclic configurations compare as
    // functions on Z, so [a,b] equals [a,b,a,b] but not [b,a].
    friend bool operator==(const BasicConfiguration& a, const BasicConfiguration& b) {
        auto ca = a.cyclic();
        auto cb = b.cyclic();
        if (ca && cb) {
            const auto n = static_cast<Position>(std::lcm(ca->word.size(), cb->word.size()));
            for (Position x = 0; x < n; ++x)
                if (!(a.at(x) == b.at(x))) return false;
            return true;
        }
        return a.shape_ == b.shape_;
    }

private:
    Shape<Cell> shape_;
};

// Translate a configuration by d cells to the right.
template <class Cell>
BasicConfiguration<Cell> translate(const BasicConfiguration<Cell>& config, Position d) {
    if (auto f = config.finite()) {
        auto g = *f;
        g.offset += d;
        return g;
    }
    if (auto c = config.cyclic()) {
        const auto n = static_cast<Position>(c->word.size());
        std::vector<Cell> word(c->word.size());
        for (Position x = 0; x < n; ++x) word[static_cast<std::size_t>(x)] = config.at(x - d);
        return Cyclic<Cell>{std::move(word)};
    }
    const auto& b = *config.biperiodic();
    auto rotate = [d](const std::vector<Cell>& w) {
        const auto n = static_cast<Position>(w.size());
        std::vector<Cell> out(w.size());
        for (Position x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] = detail::periodic_at(w, x - d);
        return out;
    };
    return BiPeriodic<Cell>{rotate(b.left), b.center_offset + d, b.center, rotate(b.right)};
}

// Applies `fn` to every stored cell, keeping the shape.
template <class Out, class Cell, class Fn>
BasicConfiguration<Out> map_cells(const BasicConfiguration<Cell>& config, Fn&& fn) {
    auto map = [&](const std::vector<Cell>& w) {
        std::vector<Out> out;
        out.reserve(w.size());
        for (const auto& c : w) out.push_back(fn(c));
        return out;
    };
    if (auto f = config.finite()) return Finite<Out>{f->offset, map(f->word), fn(f->quiescent)};
    if (auto c = config.cyclic()) return Cyclic<Out>{map(c->word)};
    const auto& b = *config.biperiodic();
    return BiPeriodic<Out>{map(b.left), b.center_offset, map(b.center), map(b.right)};
}

// The images of one synchronous update over [lo, hi], where cell x reads
// source(x + n_i) for each neighborhood offset n_i.
template <class Cell, class Source, class Local>
std::vector<Cell> evaluate_window(Position lo, Position hi, std::span<const int> neighborhood,
                                  Source&& source, Local&& local) {
    if (hi < lo) return {};
    const auto [mn, mx] = std::minmax_element(neighborhood.begin(), neighborhood.end());
    const Position pad_lo = lo + *mn;
    const Position pad_hi = hi + *mx;
    std::vector<Cell> padded(static_cast<std::size_t>(pad_hi - pad_lo + 1));
    for (Position x = pad_lo; x <= pad_hi; ++x) padded[static_cast<std::size_t>(x - pad_lo)] = source(x);

    std::vector<Cell> out(static_cast<std::size_t>(hi - lo + 1));
    std::vector<Cell> neighbors(neighborhood.size());
    for (Position x = lo; x <= hi; ++x) {
        for (std::size_t j = 0; j < neighborhood.size(); ++j)
            neighbors[j] = padded[static_cast<std::size_t>(x + neighborhood[j] - pad_lo)];
        out[static_cast<std::size_t>(x - lo)] = local(std::span<const Cell>(neighbors));
    }
    return out;
}

// One synchronous update of a configuration under a local map with the given
// neighborhood. Finite supports widen by max(0, max n_i) cells on the left and
// max(0, -min n_i) on the right; bi-periodic centers widen the same way and
// their backgrounds are stepped as cyclic words.
template <class Cell, class Local>
BasicConfiguration<Cell> step_configuration(const BasicConfiguration<Cell>& config,
                                            std::span<const int> neighborhood, Local&& local) {
    if (neighborhood.empty()) throw std::invalid_argument("empty neighborhood");
    const auto [mn, mx] = std::minmax_element(neighborhood.begin(), neighborhood.end());
    const Position grow_left = std::max(0, *mx);
    const Position grow_right = std::max(0, -*mn);
    auto source = [&](Position x) { return config.at(x); };

    auto step_cyclic = [&](const std::vector<Cell>& word) {
        const auto n = static_cast<Position>(word.size());
        return evaluate_window<Cell>(0, n - 1, neighborhood,
                                     [&](Position x) { return detail::periodic_at(word, x); }, local);
    };

    if (auto f = config.finite()) {
        std::vector<Cell> all_quiet(neighborhood.size(), f->quiescent);
        Cell next_quiescent = local(std::span<const Cell>(all_quiet));
        if (!(next_quiescent == f->quiescent))
            throw std::invalid_argument("local map does not fix the quiescent state");
        const Position lo = f->offset - grow_left;
        const Position hi = f->offset + static_cast<Position>(f->word.size()) - 1 + grow_right;
        if (f->word.empty()) return config;
        return Finite<Cell>{lo, evaluate_window<Cell>(lo, hi, neighborhood, source, local), f->quiescent};
    }
    if (auto c = config.cyclic()) return Cyclic<Cell>{step_cyclic(c->word)};

    const auto& b = *config.biperiodic();
    const Position lo = b.center_offset - grow_left;
    const Position hi = b.center_offset + static_cast<Position>(b.center.size()) - 1 + grow_right;
    return BiPeriodic<Cell>{step_cyclic(b.left), lo,
                            evaluate_window<Cell>(lo, hi, neighborhood, source, local),
                            step_cyclic(b.right)};
}

}  // namespace rncca
