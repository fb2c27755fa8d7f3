#pragma once

#include <span>
#include <string>

#include "rncca/rule.hpp"

namespace rncca {

enum class RenderFormat { text, pgm, csv };

struct RenderSpec {
    RenderFormat format = RenderFormat::text;
    Position x_min = 0;
    Position x_max = 0;
    std::size_t steps = 0;
};

// Space-time diagram of configs[0..] over [x_min, x_max], one row per step.
//   text: cells right-aligned to the width of state_count - 1, single-space separated
//   pgm:  plain P2 image, gray level floor(255 * q / (state_count - 1))
//   csv:  header "t,x,state", then one line per cell
std::string render(std::span<const Configuration> configs, std::size_t state_count, const RenderSpec& spec);

RenderFormat parse_render_format(std::string_view name);

}  // namespace rncca
