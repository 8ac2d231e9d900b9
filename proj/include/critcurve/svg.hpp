#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "critcurve/sweep.hpp"

namespace critcurve {

/// q on the curve Gamma(p, q) = n/2 for a given p, if one exists with q > 1.
std::optional<double> gamma_level_q(int n, double p);

/// 200-point polylines (p, q) of pq = 1 + 2/n and Gamma(p, q) = n/2, spread
/// over the stretch of each curve inside [1, p_max] x [1, q_max]. Empty when
/// the curve misses the window.
std::vector<std::pair<double, double>> critical_curve(int n, double p_max, double q_max);
std::vector<std::pair<double, double>> gamma_curve(int n, double p_max, double q_max);

/// Self-contained SVG of the sweep cells colored by observed verdict with
/// both curves overlaid. The first line is an XML comment holding the banner.
std::string phase_diagram_svg(int n, const SweepResult& result, std::string_view banner_text);

}  // namespace critcurve
