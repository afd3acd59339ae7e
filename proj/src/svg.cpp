#include "microsim/svg.hpp"

#include "microsim/csv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace microsim::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

std::string num(double v) { return csv::fixed(v, 2); }
std::string pct(double rate) { return csv::fixed(rate * 100.0, 1) + "%"; }

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Axis {
    double lo{0.0};
    double hi{1.0};
    double y(double v) const {
        const double plot = kHeight - kTop - kBottom;
        return kTop + plot * (1.0 - (v - lo) / (hi - lo));
    }
};

// Bounds rounded outwards to whole percentage points.
Axis rate_axis(double lo, double hi, bool from_zero) {
    Axis a;
    a.lo = from_zero ? 0.0 : std::floor(lo * 100.0 - 0.5) / 100.0;
    a.hi = std::ceil(hi * 100.0 + 0.5) / 100.0;
    a.lo = std::max(0.0, a.lo);
    a.hi = std::min(1.0, std::max(a.hi, a.lo + 0.01));
    return a;
}

void open(std::ostringstream &out, std::string_view title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
        << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
}

void y_axis(std::ostringstream &out, const Axis &a) {
    const double x = kLeft;
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kHeight - kBottom) << "\" stroke=\"black\"/>\n";
    const int steps = 5;
    for (int i = 0; i <= steps; ++i) {
        const double v = a.lo + (a.hi - a.lo) * i / steps;
        const double y = a.y(v);
        out << "<line x1=\"" << num(x - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kWidth - kRight)
            << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(x - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
            << pct(v) << "</text>\n";
    }
}

} // namespace

std::optional<std::string> band_chart(const report::BandSeries &band) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < band.scales.size(); ++i) {
        if (band.rates[i]) {
            idx.push_back(i);
        }
    }
    if (idx.empty()) {
        return std::nullopt;
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return band.scales[a] < band.scales[b]; });
    double lo = 1.0;
    double hi = 0.0;
    for (auto i : idx) {
        lo = std::min(lo, *band.rates[i]);
        hi = std::max(hi, *band.rates[i]);
    }
    const Axis axis = rate_axis(lo, hi, false);
    std::ostringstream out;
    open(out, "Relative child poverty by shock scale");
    y_axis(out, axis);
    const double plot_w = kWidth - kLeft - kRight;
    const auto x_of = [&](std::size_t k) {
        return kLeft + plot_w * (static_cast<double>(k) + 0.5) / static_cast<double>(idx.size());
    };
    out << "<polyline fill=\"none\" stroke=\"#4477aa\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        out << (k ? " " : "") << num(x_of(k)) << ',' << num(axis.y(*band.rates[idx[k]]));
    }
    out << "\"/>\n";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto i = idx[k];
        const double x = x_of(k);
        const double y = axis.y(*band.rates[i]);
        out << "<circle class=\"marker\" cx=\"" << num(x) << "\" cy=\"" << num(y)
            << "\" r=\"5\" fill=\"#4477aa\"/>\n";
        out << "<text class=\"label\" x=\"" << num(x) << "\" y=\"" << num(y - 10)
            << "\" text-anchor=\"middle\">" << pct(*band.rates[i]) << "</text>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kBottom + 20)
            << "\" text-anchor=\"middle\">scale " << num(band.scales[i]) << "</text>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kBottom + 36)
            << "\" text-anchor=\"middle\" fill=\"#666666\">" << band.headcounts[i]
            << " children</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::optional<std::string> group_chart(const report::GroupSeries &series) {
    double hi = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < series.groups.size(); ++i) {
        for (const auto &r : {series.pre[i], series.post[i]}) {
            if (r) {
                any = true;
                hi = std::max(hi, *r);
            }
        }
    }
    if (!any) {
        return std::nullopt;
    }
    const Axis axis = rate_axis(0.0, hi, true);
    std::ostringstream out;
    open(out, "Relative child poverty by " + series.dimension);
    y_axis(out, axis);
    const double plot_w = kWidth - kLeft - kRight;
    const double slot = plot_w / static_cast<double>(series.groups.size());
    const double bar = std::min(40.0, slot * 0.35);
    const double base_y = axis.y(axis.lo);
    const auto draw = [&](double x, const std::optional<double> &r, const char *fill, const char *cls) {
        if (!r) {
            out << "<text class=\"undefined\" x=\"" << num(x + bar / 2) << "\" y=\"" << num(base_y - 4)
                << "\" text-anchor=\"middle\" fill=\"#999999\">n/a</text>\n";
            return;
        }
        const double y = axis.y(*r);
        out << "<rect class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
            << num(bar) << "\" height=\"" << num(base_y - y) << "\" fill=\"" << fill << "\"/>\n";
        out << "<text x=\"" << num(x + bar / 2) << "\" y=\"" << num(y - 4)
            << "\" text-anchor=\"middle\" font-size=\"10\">" << pct(*r) << "</text>\n";
    };
    for (std::size_t i = 0; i < series.groups.size(); ++i) {
        const double centre = kLeft + slot * (static_cast<double>(i) + 0.5);
        draw(centre - bar, series.pre[i], "#bbbbbb", "pre");
        draw(centre, series.post[i], "#4477aa", "post");
        out << "<text x=\"" << num(centre) << "\" y=\"" << num(kHeight - kBottom + 20)
            << "\" text-anchor=\"middle\">" << escape(series.groups[i]) << "</text>\n";
    }
    const double ly = kHeight - 20;
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(ly - 10) << "\" width=\"12\" height=\"12\" fill=\"#bbbbbb\"/>\n";
    out << "<text x=\"" << num(kLeft + 18) << "\" y=\"" << num(ly) << "\">pre-shock</text>\n";
    out << "<rect x=\"" << num(kLeft + 110) << "\" y=\"" << num(ly - 10) << "\" width=\"12\" height=\"12\" fill=\"#4477aa\"/>\n";
    out << "<text x=\"" << num(kLeft + 128) << "\" y=\"" << num(ly) << "\">scenario</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace microsim::svg
