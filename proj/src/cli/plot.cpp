#include "susy/cli.hpp"
#include "susy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace susy::cli {

namespace {

constexpr int W = 640, H = 420, margin = 50;

std::string num(double v)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

int column_index(const ResultTable& t, const std::string& name)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::string header(const ResultTable& t)
{
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\">\n";
    if (auto h = t.get("config_hash")) os << "<!-- config_hash " << *h << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return os.str();
}

} // namespace

PlotKind parse_plot_kind(const std::string& s)
{
    if (s == "line") return PlotKind::Line;
    if (s == "heatmap") return PlotKind::Heatmap;
    throw ArgumentError("plot: kind must be line or heatmap");
}

int count_local_minima(const std::vector<double>& v)
{
    int count = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) continue;
        // walk across flat stretches
        std::size_t j = i + 1;
        while (j < v.size() && v[j] == v[i]) ++j;
        if (j < v.size() && v[i] < v[j]) ++count;
    }
    return count;
}

PlotResult cmd_plot(const ResultTable& t, PlotKind kind, double y0)
{
    if (t.rows.empty() || t.columns.size() < 2) throw ArgumentError("plot: empty table");
    PlotResult res;
    std::ostringstream os;
    os << header(t);

    if (kind == PlotKind::Line) {
        std::vector<double> xs, vs;
        const int yc = column_index(t, "y");
        int vc = column_index(t, "V");
        if (vc < 0) vc = column_index(t, "re_K");
        if (vc < 0) vc = column_index(t, "re_G");
        if (vc < 0) vc = static_cast<int>(t.columns.size()) - 1;
        double ysel = 0.0;
        if (yc >= 0) {
            double best = INFINITY;
            for (const auto& r : t.rows)
                if (std::abs(r[yc] - y0) < best) best = std::abs(r[yc] - y0), ysel = r[yc];
        }
        for (const auto& r : t.rows) {
            if (yc >= 0 && r[yc] != ysel) continue;
            if (!std::isfinite(r[vc])) continue;
            xs.push_back(r[0]);
            vs.push_back(r[vc]);
        }
        if (xs.size() < 2) throw ArgumentError("plot: fewer than two finite samples");
        res.minima = count_local_minima(vs);
        const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
        const auto [vmin, vmax] = std::minmax_element(vs.begin(), vs.end());
        const double x0 = *xmin, x1 = *xmax;
        const double v0 = *vmin, v1 = (*vmax > *vmin) ? *vmax : *vmin + 1.0;
        auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (W - 2 * margin); };
        auto py = [&](double v) { return H - margin - (v - v0) / (v1 - v0) * (H - 2 * margin); };
        os << "<g stroke=\"black\" stroke-width=\"1\">\n";
        os << "<line x1=\"" << margin << "\" y1=\"" << H - margin << "\" x2=\"" << W - margin << "\" y2=\""
           << H - margin << "\"/>\n";
        os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << H - margin
           << "\"/>\n</g>\n";
        os << "<text x=\"" << margin << "\" y=\"" << H - 15 << "\" font-size=\"12\">" << num(x0) << "</text>\n";
        os << "<text x=\"" << W - margin - 30 << "\" y=\"" << H - 15 << "\" font-size=\"12\">" << num(x1)
           << "</text>\n";
        os << "<text x=\"5\" y=\"" << margin << "\" font-size=\"12\">" << num(v1) << "</text>\n";
        os << "<text x=\"5\" y=\"" << H - margin << "\" font-size=\"12\">" << num(v0) << "</text>\n";
        os << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << num(px(xs[i])) << ',' << num(py(vs[i]));
        os << "\"/>\n";
        os << "<text x=\"" << W / 2 - 60 << "\" y=\"" << margin / 2 << "\" font-size=\"13\">" << t.columns[vc]
           << " (local minima: " << res.minima << ")</text>\n";
    } else {
        const int xc = column_index(t, "x"), yc = column_index(t, "y");
        if (xc < 0 || yc < 0) throw ArgumentError("plot: heatmap needs x and y columns");
        int ac = column_index(t, "abs_K");
        if (ac < 0) ac = column_index(t, "abs_G");
        if (ac < 0) ac = static_cast<int>(t.columns.size()) - 1;
        std::vector<double> xs, ys;
        for (const auto& r : t.rows) {
            if (std::find(xs.begin(), xs.end(), r[xc]) == xs.end()) xs.push_back(r[xc]);
            if (std::find(ys.begin(), ys.end(), r[yc]) == ys.end()) ys.push_back(r[yc]);
        }
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        if (xs.size() * ys.size() != t.rows.size()) throw ArgumentError("plot: table is not a full (x, y) grid");
        double amax = 0.0;
        for (const auto& r : t.rows)
            if (std::isfinite(r[ac])) amax = std::max(amax, r[ac]);
        if (amax == 0.0) amax = 1.0;
        res.width_cells = static_cast<int>(xs.size());
        res.height_cells = static_cast<int>(ys.size());
        const double cw = double(W - 2 * margin) / xs.size(), ch = double(H - 2 * margin) / ys.size();
        os << "<g data-nx=\"" << xs.size() << "\" data-ny=\"" << ys.size() << "\">\n";
        for (const auto& r : t.rows) {
            const auto i = std::lower_bound(xs.begin(), xs.end(), r[xc]) - xs.begin();
            const auto j = std::lower_bound(ys.begin(), ys.end(), r[yc]) - ys.begin();
            const double s = std::isfinite(r[ac]) ? std::clamp(r[ac] / amax, 0.0, 1.0) : 0.0;
            const int red = static_cast<int>(std::lround(255 * s));
            const int blue = 255 - red;
            os << "<rect x=\"" << num(margin + i * cw) << "\" y=\"" << num(H - margin - (j + 1) * ch) << "\" width=\""
               << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"rgb(" << red << ",40," << blue << ")\"/>\n";
        }
        os << "</g>\n";
        os << "<text x=\"" << W / 2 - 40 << "\" y=\"" << margin / 2 << "\" font-size=\"13\">" << t.columns[ac]
           << "</text>\n";
    }
    os << "</svg>\n";
    res.svg = os.str();
    return res;
}

} // namespace susy::cli
