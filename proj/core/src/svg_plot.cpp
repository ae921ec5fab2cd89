#include "xplain/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "xplain/errors.hpp"

namespace xplain {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 470.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 430.0;

const char* kClassColor[2] = {"#d95f02", "#1b9e77"};
const char* kPositiveColor = "#7570b3";
const char* kNegativeColor = "#e7298a";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Axis {
    std::size_t column = 0;
    double lo = 0.0;
    double hi = 1.0;
    double map(double v, double out_lo, double out_hi) const {
        const double span = hi > lo ? hi - lo : 1.0;
        return out_lo + (v - lo) / span * (out_hi - out_lo);
    }
};

double column_variance(const Dataset& ds, std::size_t col) {
    double mean = 0.0;
    for (const auto& p : ds.points) mean += p[col];
    mean /= static_cast<double>(ds.rows());
    double var = 0.0;
    for (const auto& p : ds.points) {
        const double d = p[col] - mean;
        var += d * d;
    }
    return var / static_cast<double>(ds.rows());
}

void marker(std::ostringstream& os, const std::string& shape, double x, double y,
            const char* color) {
    if (shape == "square") {
        os << "<rect x=\"" << num(x - 5) << "\" y=\"" << num(y - 5)
           << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\"/>\n";
    } else if (shape == "diamond") {
        os << "<polygon points=\"" << num(x) << "," << num(y - 6) << " " << num(x + 6) << ","
           << num(y) << " " << num(x) << "," << num(y + 6) << " " << num(x - 6) << ","
           << num(y) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
}

void test_marker(std::ostringstream& os, double x, double y) {
    os << "<rect x=\"" << num(x - 7) << "\" y=\"" << num(y - 7)
       << "\" width=\"14\" height=\"14\" fill=\"none\" stroke=\"#000000\" "
          "stroke-width=\"1.5\"/>\n";
    os << "<line x1=\"" << num(x - 7) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 7)
       << "\" y2=\"" << num(y) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(y - 7) << "\" x2=\"" << num(x)
       << "\" y2=\"" << num(y + 7) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
}

} // namespace

std::string render_svg_plot(const Dataset& ds, const std::vector<std::size_t>& hull_rows,
                            const EvidenceSet& evidence, const TestQuery& x0) {
    if (ds.rows() == 0) throw InputError("svg plot: dataset is empty");
    if (x0.point.size() != ds.cols()) {
        throw InputError("svg plot: test point dimension does not match the dataset");
    }

    Axis ax, ay;
    if (ds.cols() == 1) {
        ax.column = 0;
        ay.column = 0;
    } else {
        std::vector<std::pair<double, std::size_t>> by_var;
        for (std::size_t c = 0; c < ds.cols(); ++c) {
            by_var.emplace_back(-column_variance(ds, c), c);
        }
        std::sort(by_var.begin(), by_var.end());
        ax.column = std::min(by_var[0].second, by_var[1].second);
        ay.column = std::max(by_var[0].second, by_var[1].second);
    }

    const auto fit = [&](Axis& a) {
        a.lo = x0.point[a.column];
        a.hi = x0.point[a.column];
        for (const auto& p : ds.points) {
            a.lo = std::min(a.lo, p[a.column]);
            a.hi = std::max(a.hi, p[a.column]);
        }
        const double pad = 0.05 * (a.hi > a.lo ? a.hi - a.lo : 1.0);
        a.lo -= pad;
        a.hi += pad;
    };
    fit(ax);
    fit(ay);

    const auto px = [&](double v) { return ax.map(v, kLeft, kRight); };
    const auto py = [&](double v) { return ay.map(v, kBottom, kTop); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
       << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(kHeight) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
       << "\" fill=\"#ffffff\"/>\n";

    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kRight)
       << "\" y2=\"" << num(kBottom) << "\" stroke=\"#333333\"/>\n";
    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kLeft)
       << "\" y2=\"" << num(kTop) << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << num(kBottom + 35)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
       << ds.column_names[ax.column] << "</text>\n";
    os << "<text x=\"" << num(kLeft - 40) << "\" y=\"" << num((kTop + kBottom) / 2)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
          "transform=\"rotate(-90 "
       << num(kLeft - 40) << " " << num((kTop + kBottom) / 2) << ")\">"
       << ds.column_names[ay.column] << "</text>\n";
    os << "<text x=\"" << num(kLeft) << "\" y=\"" << num(kBottom + 18)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(ax.lo)
       << "</text>\n";
    os << "<text x=\"" << num(kRight) << "\" y=\"" << num(kBottom + 18)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(ax.hi)
       << "</text>\n";
    os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(kBottom + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(ay.lo)
       << "</text>\n";
    os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(kTop + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(ay.hi)
       << "</text>\n";

    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const double x = px(ds.points[i][ax.column]);
        const double y = py(ds.points[i][ay.column]);
        os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\""
           << kClassColor[ds.labels[i] == 1 ? 1 : 0] << "\" fill-opacity=\"0.55\"/>\n";
    }

    std::set<std::size_t> ring(hull_rows.begin(), hull_rows.end());
    for (std::size_t row : ring) {
        if (row >= ds.rows()) continue;
        const double x = px(ds.points[row][ax.column]);
        const double y = py(ds.points[row][ay.column]);
        os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
           << "\" r=\"6\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }

    const auto draw_evidence = [&](const std::vector<WeightedPoint>& points, const char* color) {
        for (const auto& p : points) {
            if (p.row_index >= ds.rows()) continue;
            const double x = px(ds.points[p.row_index][ax.column]);
            const double y = py(ds.points[p.row_index][ay.column]);
            marker(os, p.kind == EvidenceKind::Global ? "square" : "diamond", x, y, color);
        }
    };
    draw_evidence(evidence.positive, kPositiveColor);
    draw_evidence(evidence.negative, kNegativeColor);

    test_marker(os, px(x0.point[ax.column]), py(x0.point[ay.column]));

    double ly = kTop + 10;
    const double lx = kRight + 18;
    const auto legend_text = [&](const std::string& label) {
        os << "<text x=\"" << num(lx + 14) << "\" y=\"" << num(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
        ly += 20;
    };
    os << "<circle cx=\"" << num(lx) << "\" cy=\"" << num(ly) << "\" r=\"3\" fill=\""
       << kClassColor[0] << "\"/>\n";
    legend_text("class " + ds.schema.negative_label);
    os << "<circle cx=\"" << num(lx) << "\" cy=\"" << num(ly) << "\" r=\"3\" fill=\""
       << kClassColor[1] << "\"/>\n";
    legend_text("class " + ds.schema.positive_label);
    os << "<circle cx=\"" << num(lx) << "\" cy=\"" << num(ly)
       << "\" r=\"6\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    legend_text("hull vertex");
    marker(os, "square", lx, ly, kPositiveColor);
    legend_text("global evidence +");
    marker(os, "diamond", lx, ly, kPositiveColor);
    legend_text("local evidence +");
    marker(os, "square", lx, ly, kNegativeColor);
    legend_text("global evidence -");
    marker(os, "diamond", lx, ly, kNegativeColor);
    legend_text("local evidence -");
    test_marker(os, lx, ly);
    legend_text("test point");

    os << "</svg>\n";
    return os.str();
}

} // namespace xplain
