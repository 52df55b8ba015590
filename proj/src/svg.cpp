#include "sumbounds/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sumbounds/errors.hpp"

namespace sumbounds {

namespace {

struct Series {
    const char* name;
    const char* color;
    std::vector<std::pair<double, double>> pts;  // (log10 n, log10 value)
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

}  // namespace

std::string render_loglog_svg(const std::vector<SweepRow>& rows,
                              const PlotOptions& opts) {
    if (rows.empty()) throw invalid_input_error("plot: no rows to plot");

    Series series[4] = {
        {"true relative error", "#d62728", {}},
        {"deterministic bound", "#1f77b4", {}},
        {"azuma bound", "#2ca02c", {}},
        {"martingale bound", "#9467bd", {}},
    };
    for (const SweepRow& row : rows) {
        double n = static_cast<double>(row.report.n);
        if (n <= 0) continue;
        double ln = std::log10(n);
        const double vals[4] = {row.report.true_err, row.report.det,
                                row.report.azuma, row.report.martingale};
        for (int s = 0; s < 4; ++s)
            if (std::isfinite(vals[s]) && vals[s] > 0.0)
                series[s].pts.emplace_back(ln, std::log10(vals[s]));
    }

    double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = HUGE_VAL, ymax = -HUGE_VAL;
    bool any = false;
    for (const auto& s : series) {
        for (auto [x, y] : s.pts) {
            any = true;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!any) throw invalid_input_error("plot: no positive finite values to plot");
    if (xmax - xmin < 1e-9) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-9) { ymin -= 0.5; ymax += 0.5; }

    const int W = opts.width, H = opts.height;
    const int ml = 70, mr = 20, mt = opts.title.empty() ? 24 : 44, mb = 50;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
              "font-family=\"sans-serif\" font-size=\"16\">"
           << opts.title << "</text>\n";

    // decade grid lines and tick labels
    os << "<g stroke=\"#dddddd\" stroke-width=\"1\" font-family=\"sans-serif\" "
          "font-size=\"11\" fill=\"black\">\n";
    for (int d = static_cast<int>(std::ceil(xmin)); d <= std::floor(xmax); ++d) {
        double px = X(d);
        os << "<line x1=\"" << px << "\" y1=\"" << mt << "\" x2=\"" << px
           << "\" y2=\"" << H - mb << "\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << H - mb + 16
           << "\" text-anchor=\"middle\" stroke=\"none\">1e" << d << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ymin)); d <= std::floor(ymax); ++d) {
        double py = Y(d);
        os << "<line x1=\"" << ml << "\" y1=\"" << py << "\" x2=\"" << W - mr
           << "\" y2=\"" << py << "\"/>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" stroke=\"none\">1e" << d << "</text>\n";
    }
    os << "</g>\n";

    // axes
    os << "<g stroke=\"black\" stroke-width=\"1\">\n"
       << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
       << "\" y2=\"" << H - mb << "\"/>\n"
       << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
       << H - mb << "\"/>\n</g>\n";
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
          "n</text>\n";

    // series
    for (const auto& s : series) {
        if (s.pts.empty()) continue;
        os << "<polyline fill=\"none\" stroke=\"" << s.color
           << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.pts) os << fmt(X(x)) << ',' << fmt(Y(y)) << ' ';
        os << "\"/>\n";
        for (auto [x, y] : s.pts)
            os << "<circle cx=\"" << fmt(X(x)) << "\" cy=\"" << fmt(Y(y))
               << "\" r=\"2.2\" fill=\"" << s.color << "\"/>\n";
    }

    // legend
    int ly = mt + 10;
    for (const auto& s : series) {
        if (s.pts.empty()) continue;
        os << "<line x1=\"" << ml + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + 40
           << "\" y2=\"" << ly << "\" stroke=\"" << s.color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << ml + 46 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name
           << "</text>\n";
        ly += 18;
    }

    os << "</svg>\n";
    return os.str();
}

}  // namespace sumbounds
