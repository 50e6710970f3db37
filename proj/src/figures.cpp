#include "sie/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <vector>

namespace sie {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 930.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 490.0;

constexpr const char* kPalette[] = {"#1b6ca8", "#c0392b", "#1e8449",
                                    "#8e44ad", "#d68910", "#2c3e50"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// Affine map from a value axis to pixel coordinates.
struct Scale {
    double v0 = 0.0, v1 = 1.0, p0 = 0.0, p1 = 1.0;
    double operator()(double v) const { return p0 + (v - v0) / (v1 - v0) * (p1 - p0); }
};

/// Comments may not contain "--" per the XML grammar.
std::string sanitize_comment(std::string s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == '-' && s[i + 1] == '-') s[i + 1] = ' ';
    }
    return s;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

void svg_open(std::ostream& out, const std::string& stamp) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!stamp.empty()) out << "<!-- " << sanitize_comment(stamp) << " -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void svg_text(std::ostream& out, double x, double y, const std::string& text,
              const char* anchor = "middle", const char* extra = "") {
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"" << anchor << "\" "
        << extra << ">" << xml_escape(text) << "</text>\n";
}

void svg_line(std::ostream& out, double x1, double y1, double x2, double y2, const char* stroke,
              const char* extra = "") {
    out << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
        << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" " << extra << "/>\n";
}

/// Tick spacing of the form {1,2,5}x10^k giving roughly `target` steps.
double nice_step(double span, int target) {
    const double raw = span / std::max(target, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

void draw_axes(std::ostream& out, const Scale& xs, const Scale& ys, const std::string& x_label,
               const std::string& y_label) {
    svg_line(out, kLeft, kBottom, kRight, kBottom, "black");
    svg_line(out, kLeft, kTop, kLeft, kBottom, "black");

    const double xstep = nice_step(xs.v1 - xs.v0, 8);
    for (double v = std::ceil(xs.v0 / xstep) * xstep; v <= xs.v1 + 1e-9; v += xstep) {
        const double px = xs(v);
        svg_line(out, px, kBottom, px, kBottom + 5, "black");
        svg_text(out, px, kBottom + 20, fmt(std::abs(v) < 1e-12 ? 0.0 : v));
    }
    const double ystep = nice_step(std::abs(ys.v1 - ys.v0), 6);
    for (double v = std::ceil(std::min(ys.v0, ys.v1) / ystep) * ystep;
         v <= std::max(ys.v0, ys.v1) + 1e-9; v += ystep) {
        const double py = ys(v);
        svg_line(out, kLeft - 5, py, kLeft, py, "black");
        svg_text(out, kLeft - 9, py + 4, fmt(v), "end");
    }
    svg_text(out, (kLeft + kRight) / 2, kHeight - 10, x_label);
    svg_text(out, 18, (kTop + kBottom) / 2, y_label, "middle",
             ("transform=\"rotate(-90 18 " + fmt((kTop + kBottom) / 2) + ")\"").c_str());
}

std::string month_tag(int year, int month) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

double gaussian_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

void write_density_grid_csv(const SweepResult& result, std::ostream& out) {
    out << "offset,extent,density\n";
    for (const auto& entry : result.entries) {
        if (!entry.ok()) {
            out << "# offset " << entry.offset << " failed: " << entry.error << '\n';
            continue;
        }
        const ForecastDistribution& f = *entry.forecast;
        const double step = 8.0 * f.sigma / 200.0;
        if (step < 1e-6) {
            out << "# offset " << entry.offset
                << " skipped: density too narrow to grid (sigma=" << fmt6(f.sigma) << ")\n";
            continue;
        }
        for (int j = 0; j <= 200; ++j) {
            const double x = f.mu - 4.0 * f.sigma + step * j;
            out << entry.offset << ',' << fmt6(x) << ',' << fmt6(gaussian_pdf(x, f.mu, f.sigma))
                << '\n';
        }
    }
}

void write_fan_chart_svg(const SweepResult& result, std::ostream& out, const std::string& stamp) {
    svg_open(out, stamp);

    std::vector<const SweepEntry*> ok;
    for (const auto& e : result.entries) {
        if (e.ok()) ok.push_back(&e);
    }
    if (ok.empty()) {
        svg_text(out, kWidth / 2, kHeight / 2, "no successful sweep entries");
        out << "</svg>\n";
        return;
    }

    double ymin = result.realized.value_or(ok.front()->forecast->interval_lo);
    double ymax = ymin;
    for (const auto* e : ok) {
        ymin = std::min(ymin, e->forecast->interval_lo);
        ymax = std::max(ymax, e->forecast->interval_hi);
    }
    if (result.realized) {
        ymin = std::min(ymin, *result.realized);
        ymax = std::max(ymax, *result.realized);
    }
    const double pad = std::max((ymax - ymin) * 0.06, 0.05);
    double x0 = static_cast<double>(result.entries.front().offset);
    double x1 = static_cast<double>(result.entries.back().offset);
    if (x0 == x1) {
        x0 -= 1.0;
        x1 += 1.0;
    }
    const Scale xs{x0, x1, kLeft, kRight};
    const Scale ys{ymin - pad, ymax + pad, kBottom, kTop};

    draw_axes(out, xs, ys, "days until end of " + month_tag(result.target_year,
                                                            result.target_month),
              "extent (million km^2)");

    // Contiguous successful runs get a band polygon and a center polyline;
    // isolated points fall back to markers.
    std::size_t i = 0;
    while (i < result.entries.size()) {
        if (!result.entries[i].ok()) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < result.entries.size() && result.entries[j + 1].ok()) ++j;

        if (j > i) {
            out << "<polygon fill=\"#1b6ca8\" fill-opacity=\"0.22\" stroke=\"none\" points=\"";
            for (std::size_t m = i; m <= j; ++m) {
                out << fmt(xs(result.entries[m].offset)) << ','
                    << fmt(ys(result.entries[m].forecast->interval_hi)) << ' ';
            }
            for (std::size_t m = j + 1; m-- > i;) {
                out << fmt(xs(result.entries[m].offset)) << ','
                    << fmt(ys(result.entries[m].forecast->interval_lo)) << ' ';
            }
            out << "\"/>\n";
            out << "<polyline fill=\"none\" stroke=\"#1b6ca8\" stroke-width=\"1.8\" points=\"";
            for (std::size_t m = i; m <= j; ++m) {
                out << fmt(xs(result.entries[m].offset)) << ','
                    << fmt(ys(result.entries[m].forecast->mu)) << ' ';
            }
            out << "\"/>\n";
        } else {
            out << "<circle cx=\"" << fmt(xs(result.entries[i].offset)) << "\" cy=\""
                << fmt(ys(result.entries[i].forecast->mu)) << "\" r=\"2.5\" fill=\"#1b6ca8\"/>\n";
        }
        i = j + 1;
    }

    if (result.realized) {
        const double py = ys(*result.realized);
        svg_line(out, kLeft, py, kRight, py, "#c0392b", "stroke-dasharray=\"6 4\"");
        svg_text(out, kRight - 4, py - 6, "realized " + fmt(*result.realized), "end");
    }
    svg_text(out, (kLeft + kRight) / 2, 22,
             "Point forecast and +/-2 sigma band, target " +
                 month_tag(result.target_year, result.target_month));
    out << "</svg>\n";
}

void write_density_overlay_svg(const std::vector<ForecastDistribution>& forecasts,
                               const std::optional<double>& realized, std::ostream& out,
                               const std::string& stamp) {
    svg_open(out, stamp);

    std::vector<const ForecastDistribution*> usable;
    for (const auto& f : forecasts) {
        if (f.sigma > 0.0) {
            usable.push_back(&f);
        } else {
            out << "<!-- skipped degenerate density at " << to_string(f.effective_date)
                << " (sigma = 0) -->\n";
        }
    }
    if (usable.empty()) {
        svg_text(out, kWidth / 2, kHeight / 2, "no densities to draw");
        out << "</svg>\n";
        return;
    }

    double xmin = usable.front()->mu, xmax = xmin, peak = 0.0;
    for (const auto* f : usable) {
        xmin = std::min(xmin, f->mu - 4.0 * f->sigma);
        xmax = std::max(xmax, f->mu + 4.0 * f->sigma);
        peak = std::max(peak, gaussian_pdf(f->mu, f->mu, f->sigma));
    }
    if (realized) {
        xmin = std::min(xmin, *realized - 0.1);
        xmax = std::max(xmax, *realized + 0.1);
    }
    const Scale xs{xmin, xmax, kLeft, kRight};
    const Scale ys{0.0, peak * 1.08, kBottom, kTop};

    draw_axes(out, xs, ys, "extent (million km^2)", "density");

    for (std::size_t i = 0; i < usable.size(); ++i) {
        const ForecastDistribution& f = *usable[i];
        const char* color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.8\" points=\"";
        for (int j = 0; j <= 200; ++j) {
            const double x = f.mu - 4.0 * f.sigma + 8.0 * f.sigma * j / 200.0;
            out << fmt(xs(x)) << ',' << fmt(ys(gaussian_pdf(x, f.mu, f.sigma))) << ' ';
        }
        out << "\"/>\n";
        const double ly = kTop + 18.0 * static_cast<double>(i) + 8.0;
        svg_line(out, kRight - 150, ly, kRight - 120, ly, color, "stroke-width=\"1.8\"");
        svg_text(out, kRight - 114, ly + 4, "data through " + to_string(f.effective_date),
                 "start");
    }

    if (realized) {
        const double px = xs(*realized);
        svg_line(out, px, kTop, px, kBottom, "#444444", "stroke-dasharray=\"6 4\"");
        svg_text(out, px, kTop - 6, "realized " + fmt(*realized));
    }
    out << "</svg>\n";
}

}  // namespace sie
