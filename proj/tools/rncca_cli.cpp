// rncca: convert reversible partitioned CAs into reversible number-conserving
// CAs, simulate them, and check their properties.
//
// Exit codes: 0 pass, 1 property or validation failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rncca/convert.hpp"
#include "rncca/render.hpp"
#include "rncca/rpca.hpp"
#include "rncca/rule_files.hpp"
#include "rncca/text_format.hpp"
#include "rncca/verify.hpp"

namespace {

using namespace rncca;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

RuleFile load_rule(const std::string& path) {
    const auto text = read_file(path);
    try {
        return parse_rule_file(text);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

const Rpca2& require_rpca(const RuleFile& rule, std::string_view command) {
    if (auto p = std::get_if<Rpca2>(&rule)) return *p;
    if (auto n = std::get_if<NccaRule>(&rule)) return n->source();
    throw UsageError(std::string(command) + " needs a partitioned (rpca) or converted (ncca) rule");
}

// The 4-neighbor rule a file stands for: a partitioned rule is converted.
Rule cellular_rule(const RuleFile& rule) {
    if (auto p = std::get_if<Rpca2>(&rule)) return convert(*p).rule();
    if (auto n = std::get_if<NccaRule>(&rule)) return n->rule();
    return std::get<Rule>(rule);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad integer list '" + text + "'");
        }
        if (used != item.size()) throw UsageError("bad integer list '" + text + "'");
        out.push_back(value);
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

std::string pair_literal(PairState p) { return "(" + std::to_string(p.c) + "," + std::to_string(p.r) + ")"; }

int cmd_validate(const std::string& rule_path) {
    const auto rule = load_rule(rule_path);
    const auto* p = std::get_if<Rpca2>(&rule);
    if (!p) throw UsageError("validate needs a partitioned (rpca) rule");
    const auto collision = find_collision(*p);
    std::cout << "reversible: " << (collision ? "no" : "yes") << ", states: " << p->pair_count()
              << " (C=" << p->c_size() << ", R=" << p->r_size() << ")\n";
    if (collision) {
        std::cout << "witness: " << pair_literal(collision->first) << " and " << pair_literal(collision->second)
                  << " both map to " << pair_literal(collision->image) << "\n";
        return kFail;
    }
    return kPass;
}

int cmd_convert(const std::string& rule_path, const std::string& out_path, bool dump_pairs) {
    const auto rule = load_rule(rule_path);
    const auto& p = require_rpca(rule, "convert");
    if (auto collision = find_collision(p)) {
        std::cerr << "error: rule is not reversible: " << pair_literal(collision->first) << " and "
                  << pair_literal(collision->second) << " both map to " << pair_literal(collision->image) << "\n";
        return kFail;
    }
    write_output(out_path, format_ncca(convert(p), dump_pairs));
    return kPass;
}

struct RunOptions {
    std::size_t steps = 10;
    std::string format = "text";
    std::optional<Position> from;
    std::optional<Position> to;
    std::string out;
};

template <class Cell>
std::pair<Position, Position> default_window(const BasicConfiguration<Cell>& config) {
    if (auto f = config.finite()) {
        if (f->word.empty()) return {-4, 4};
        return {f->offset - 2, f->offset + static_cast<Position>(f->word.size()) + 1};
    }
    if (auto c = config.cyclic()) return {0, static_cast<Position>(c->word.size()) - 1};
    const auto& b = *config.biperiodic();
    return {b.center_offset - 4, b.center_offset + static_cast<Position>(b.center.size()) + 3};
}

int cmd_run(const std::string& rule_path, const std::string& config_path, const RunOptions& options) {
    const auto rule = load_rule(rule_path);
    const auto text = read_file(config_path);

    RenderSpec spec;
    try {
        spec.format = parse_render_format(options.format);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    spec.steps = options.steps;

    std::vector<Configuration> rows;
    std::size_t state_count = 0;
    std::pair<Position, Position> window;
    try {
        if (holds_pair_cells(text)) {
            const auto& p = require_rpca(rule, "running a partitioned configuration");
            const auto alpha = parse_rpca_configuration(text);
            window = default_window(alpha);
            // Partitioned cells render as pair indices c * |R| + r.
            for (const auto& a : run_rpca(p, alpha, options.steps))
                rows.push_back(map_cells<State>(a, [&](PairState s) { return static_cast<State>(p.index(s)); }));
            state_count = p.pair_count();
        } else {
            const auto ca = cellular_rule(rule);
            const auto config = parse_configuration(text);
            window = default_window(config);
            rows = run(ca, config, options.steps).configs;
            state_count = ca.state_count();
        }
    } catch (const FormatError& e) {
        throw UsageError(config_path + ": " + e.what());
    } catch (const RuleError& e) {
        throw UsageError(config_path + ": " + e.what());
    }
    spec.x_min = options.from.value_or(window.first);
    spec.x_max = options.to.value_or(window.second);
    if (spec.x_max < spec.x_min) throw UsageError("render window is empty (--from > --to)");
    write_output(options.out, render(rows, state_count, spec));
    return kPass;
}

struct VerifyCliOptions {
    int support = 4;
    std::size_t steps = 4;
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    std::size_t cycle = 3;
    int k = 3;
    std::string gaps;
    int background_gap = 1;
    bool exhaustive = false;
};

int cmd_verify(const std::string& rule_path, const std::string& property, const VerifyCliOptions& o) {
    const auto rule = load_rule(rule_path);
    VerifyOptions options;
    options.budget = budget_from_environment();
    if (o.exhaustive && o.samples) throw UsageError("--exhaustive and --samples are exclusive");
    const SweepMode sweep = o.samples ? SweepMode(Sampled{o.samples, o.seed, o.support}) : SweepMode(Exhaustive{o.support});

    VerificationReport report;
    try {
        if (property == "conserve") {
            report = check_number_conserving(cellular_rule(rule), sweep, options);
        } else if (property == "inject") {
            const CycleMode mode = o.samples ? CycleMode(RandomWords{o.samples, o.seed}) : CycleMode(AllWords{});
            report = check_injective_cyclic(cellular_rule(rule), o.cycle, mode, options);
        } else if (property == "simulate") {
            report = check_simulation_correspondence(require_rpca(rule, "simulate"), sweep, o.steps, options);
        } else if (property == "tauprime") {
            Spacing spacing = UniformSpacing{o.k};
            if (!o.gaps.empty()) spacing = GapSpacing{parse_int_list(o.gaps), o.background_gap};
            report = check_tau_prime_correspondence(require_rpca(rule, "tauprime"), spacing, sweep, o.steps, options).report;
        } else {
            throw UsageError("unknown property '" + property + "' (conserve, inject, simulate, tauprime)");
        }
    } catch (const BudgetExceeded& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << serialize(report) << "\n";
    return report.passed ? kPass : kFail;
}

struct EmbedOptions {
    bool tau = false;
    std::optional<int> tau_prime;
    std::string gaps;
    int background_gap = 1;
    std::string out;
};

int cmd_embed(const std::string& rule_path, const std::string& config_path, const EmbedOptions& o) {
    const auto rule = load_rule(rule_path);
    const auto& p = require_rpca(rule, "embed");
    const int chosen = int(o.tau) + int(o.tau_prime.has_value()) + int(!o.gaps.empty());
    if (chosen != 1) throw UsageError("choose exactly one of --tau, --tau-prime and --gaps");
    const ParticleCode code(p);
    try {
        const auto alpha = parse_rpca_configuration(read_file(config_path));
        check_states(p, alpha);
        Configuration embedded;
        if (o.tau) embedded = encode_tau(code, alpha);
        else if (o.tau_prime) embedded = encode_tau_prime(code, alpha, UniformSpacing{*o.tau_prime});
        else embedded = encode_tau_prime(code, alpha, GapSpacing{parse_int_list(o.gaps), o.background_gap});
        write_output(o.out, format_configuration(embedded) + "\n");
    } catch (const FormatError& e) {
        throw UsageError(config_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible number-conserving cellular automata toolkit"};
    app.require_subcommand(1);

    std::string rule_path, config_path, out_path, property;

    auto* validate = app.add_subcommand("validate", "Check that a partitioned rule is reversible");
    validate->add_option("rule", rule_path, "rpca rule file")->required();

    bool dump_pairs = false;
    auto* convert_cmd = app.add_subcommand("convert", "Convert a reversible partitioned rule to a 4-neighbor rule");
    convert_cmd->add_option("rule", rule_path, "rpca rule file")->required();
    convert_cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    convert_cmd->add_flag("--dump-balanced-pairs", dump_pairs, "list the balanced pairs");

    RunOptions run_options;
    auto* run_cmd = app.add_subcommand("run", "Simulate and render a space-time diagram");
    run_cmd->add_option("rule", rule_path, "rule file (rpca, ncca or ca)")->required();
    run_cmd->add_option("config", config_path, "configuration file")->required();
    run_cmd->add_option("-T,--steps", run_options.steps, "number of steps");
    run_cmd->add_option("--format", run_options.format, "text, pgm or csv");
    run_cmd->add_option("--from", run_options.from, "leftmost rendered cell");
    run_cmd->add_option("--to", run_options.to, "rightmost rendered cell");
    run_cmd->add_option("-o,--out", run_options.out, "output file (default stdout)");

    VerifyCliOptions verify_options;
    auto* verify = app.add_subcommand("verify", "Check conserve, inject, simulate or tauprime");
    verify->add_option("rule", rule_path, "rule file")->required();
    verify->add_option("property", property, "conserve, inject, simulate or tauprime")->required();
    verify->add_option("--support", verify_options.support, "maximum support size");
    verify->add_option("--steps", verify_options.steps, "simulated source steps");
    verify->add_option("--samples", verify_options.samples, "sample count (default: exhaustive)");
    verify->add_option("--seed", verify_options.seed, "seed for sampled modes");
    verify->add_option("--cycle", verify_options.cycle, "cycle length for inject");
    verify->add_option("--k", verify_options.k, "block period for tauprime");
    verify->add_option("--gaps", verify_options.gaps, "comma-separated gaps for tauprime");
    verify->add_option("--background-gap", verify_options.background_gap, "background gap for --gaps");
    verify->add_flag("--exhaustive", verify_options.exhaustive, "enumerate every input");

    EmbedOptions embed_options;
    auto* embed = app.add_subcommand("embed", "Embed a partitioned configuration");
    embed->add_option("rule", rule_path, "rpca rule file")->required();
    embed->add_option("config", config_path, "partitioned configuration file")->required();
    embed->add_flag("--tau", embed_options.tau, "dense two-cell blocks");
    embed->add_option("--tau-prime", embed_options.tau_prime, "blocks every k cells (k >= 3)");
    embed->add_option("--gaps", embed_options.gaps, "comma-separated zero-cell gaps between blocks");
    embed->add_option("--background-gap", embed_options.background_gap, "background gap for --gaps");
    embed->add_option("-o,--out", embed_options.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*validate) return cmd_validate(rule_path);
        if (*convert_cmd) return cmd_convert(rule_path, out_path, dump_pairs);
        if (*run_cmd) return cmd_run(rule_path, config_path, run_options);
        if (*verify) return cmd_verify(rule_path, property, verify_options);
        if (*embed) return cmd_embed(rule_path, config_path, embed_options);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
