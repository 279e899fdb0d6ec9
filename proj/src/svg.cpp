#include "qdcav/svg.hpp"

#include "qdcav/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace qdcav {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kColors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) ticks.push_back(t);
    return ticks;
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const auto& ser = plot.series[s];
        const double off = plot.y_offset_step * static_cast<double>(s);
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            double x = ser.x[i];
            if (plot.log_x) {
                if (!(x > 0.0)) continue;
                x = std::log10(x);
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, ser.y[i] + off);
            ymax = std::max(ymax, ser.y[i] + off);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin)) throw DomainError("render_svg: nothing to plot");
    if (xmax == xmin) { xmin -= 0.5; xmax += 0.5; }
    if (ymax == ymin) { ymin -= 0.5; ymax += 0.5; }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(plot.title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    if (plot.log_x) {
        for (double d = std::ceil(xmin); d <= xmax + 1e-9; d += 1.0) {
            os << "<line x1=\"" << sx(d) << "\" y1=\"" << kTop + ph << "\" x2=\"" << sx(d) << "\" y2=\""
               << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << sx(d) << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">1e"
               << static_cast<int>(d) << "</text>\n";
        }
    } else {
        for (double t : nice_ticks(xmin, xmax)) {
            os << "<line x1=\"" << sx(t) << "\" y1=\"" << kTop + ph << "\" x2=\"" << sx(t) << "\" y2=\""
               << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << sx(t) << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">" << t
               << "</text>\n";
        }
    }
    for (double t : nice_ticks(ymin, ymax)) {
        os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(t) << "\" x2=\"" << kLeft << "\" y2=\"" << sy(t)
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(t) + 4 << "\" text-anchor=\"end\">" << t << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
       << escape(plot.x_label) << "</text>\n";
    os << "<text transform=\"translate(20," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(plot.y_label) << "</text>\n";

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const auto& ser = plot.series[s];
        const double off = plot.y_offset_step * static_cast<double>(s);
        const char* color = kColors[s % kColors.size()];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            double x = ser.x[i];
            if (plot.log_x) {
                if (!(x > 0.0)) continue;
                x = std::log10(x);
            }
            os << sx(x) << ',' << sy(ser.y[i] + off) << ' ';
        }
        os << "\"/>\n";
        const double ly = kTop + 15.0 + 18.0 * static_cast<double>(s);
        os << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30 << "\" y2=\""
           << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly + 4 << "\">" << escape(ser.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace qdcav
