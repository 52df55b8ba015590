#ifndef SUMBOUNDS_SVG_HPP
#define SUMBOUNDS_SVG_HPP

#include <string>
#include <vector>

#include "sumbounds/experiments.hpp"

namespace sumbounds {

struct PlotOptions {
    std::string title;
    int width = 920;
    int height = 640;
};

// Static log-log plot of the three bounds and the true error against n.
// Rows with nonpositive or non-finite values drop out of the affected series;
// an input with no plottable point at all is an error.
std::string render_loglog_svg(const std::vector<SweepRow>& rows,
                              const PlotOptions& opts = {});

}  // namespace sumbounds

#endif
