#pragma once

#include <string>
#include <vector>

#include "fpump/report.hpp"

namespace fpump {

/// Distance (pair fractionality) and quality (c'x) per iteration of one run,
/// on twin vertical axes.
std::string render_distance_quality_svg(const std::vector<IterEvent>& events,
                                        const std::string& title);

/// Fractionality of the current pair per iteration with the accepted move
/// marked, alpha on the right axis.
std::string render_fractionality_svg(const std::vector<IterEvent>& events,
                                     const std::string& title);

/// Events of one run, in order.
std::vector<IterEvent> filter_run(const std::vector<IterEvent>& events, int run);

}  // namespace fpump
