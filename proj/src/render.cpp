#include "rncca/render.hpp"

#include <sstream>
#include <stdexcept>

namespace rncca {

std::string render(std::span<const Configuration> configs, std::size_t state_count, const RenderSpec& spec) {
    if (spec.x_max < spec.x_min) throw std::invalid_argument("render window is empty (x_min > x_max)");
    if (state_count == 0) throw std::invalid_argument("state count must be positive");
    std::ostringstream out;
    switch (spec.format) {
        case RenderFormat::text: {
            const auto width = std::to_string(state_count - 1).size();
            for (const auto& config : configs) {
                for (Position x = spec.x_min; x <= spec.x_max; ++x) {
                    const auto cell = std::to_string(config.at(x));
                    if (x != spec.x_min) out << ' ';
                    out << std::string(width - std::min(width, cell.size()), ' ') << cell;
                }
                out << '\n';
            }
            break;
        }
        case RenderFormat::pgm: {
            out << "P2\n" << (spec.x_max - spec.x_min + 1) << ' ' << configs.size() << "\n255\n";
            for (const auto& config : configs) {
                for (Position x = spec.x_min; x <= spec.x_max; ++x) {
                    const std::uint64_t q = config.at(x);
                    const auto gray = state_count > 1 ? 255 * q / (state_count - 1) : 0;
                    if (x != spec.x_min) out << ' ';
                    out << gray;
                }
                out << '\n';
            }
            break;
        }
        case RenderFormat::csv: {
            out << "t,x,state\n";
            for (std::size_t t = 0; t < configs.size(); ++t)
                for (Position x = spec.x_min; x <= spec.x_max; ++x)
                    out << t << ',' << x << ',' << configs[t].at(x) << '\n';
            break;
        }
    }
    return out.str();
}

RenderFormat parse_render_format(std::string_view name) {
    if (name == "text") return RenderFormat::text;
    if (name == "pgm") return RenderFormat::pgm;
    if (name == "csv") return RenderFormat::csv;
    throw std::invalid_argument("unknown render format '" + std::string(name) + "'");
}

}  // namespace rncca
