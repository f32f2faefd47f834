#include "recur/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "recur/error.hpp"

namespace recur::ph {

namespace {

const char* kColors[3] = {"#8c8c8c", "#1f77b4", "#d62728"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const PersistenceDiagrams& dgms) {
    const double size = 640.0, margin = 70.0;
    const double plot = size - 2.0 * margin;

    double hi = 0.0;
    for (int d = 0; d <= dgms.max_dim; ++d)
        for (const auto& p : dgms.dim(d))
            if (p.finite()) hi = std::max(hi, p.death);
    if (hi <= 0.0) hi = std::max(dgms.threshold, 1.0);
    hi *= 1.05;

    auto sx = [&](double v) { return margin + v / hi * plot; };
    auto sy = [&](double v) { return size - margin - v / hi * plot; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    out += "<rect width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";

    // axes
    out += "<line x1=\"" + fmt(margin) + "\" y1=\"" + fmt(size - margin) + "\" x2=\"" +
           fmt(size - margin) + "\" y2=\"" + fmt(size - margin) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + fmt(margin) + "\" y1=\"" + fmt(size - margin) + "\" x2=\"" +
           fmt(margin) + "\" y2=\"" + fmt(margin) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(size / 2.0) + "\" y=\"" + fmt(size - margin / 3.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">birth"
           "</text>\n";
    out += "<text x=\"" + fmt(margin / 3.0) + "\" y=\"" + fmt(size / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
           "transform=\"rotate(-90 " +
           fmt(margin / 3.0) + " " + fmt(size / 2.0) + ")\">death</text>\n";

    // tick labels at 0 and the upper bound
    out += "<text x=\"" + fmt(margin) + "\" y=\"" + fmt(size - margin + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">0</text>\n";
    out += "<text x=\"" + fmt(size - margin) + "\" y=\"" + fmt(size - margin + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(hi) + "</text>\n";
    out += "<text x=\"" + fmt(margin - 8.0) + "\" y=\"" + fmt(margin + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + fmt(hi) +
           "</text>\n";

    // diagonal
    out += "<line x1=\"" + fmt(sx(0.0)) + "\" y1=\"" + fmt(sy(0.0)) + "\" x2=\"" +
           fmt(sx(hi)) + "\" y2=\"" + fmt(sy(hi)) +
           "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";

    for (int d = 0; d <= dgms.max_dim && d < 3; ++d) {
        for (const auto& p : dgms.dim(d)) {
            if (!p.finite()) continue;
            out += "<circle cx=\"" + fmt(sx(p.birth)) + "\" cy=\"" + fmt(sy(p.death)) +
                   "\" r=\"3\" fill=\"" + kColors[d] + "\" fill-opacity=\"0.8\"/>\n";
        }
        // legend
        double ly = margin + 20.0 * d;
        out += "<circle cx=\"" + fmt(size - margin - 90.0) + "\" cy=\"" + fmt(ly) +
               "\" r=\"4\" fill=\"" + std::string(kColors[d]) + "\"/>\n";
        out += "<text x=\"" + fmt(size - margin - 78.0) + "\" y=\"" + fmt(ly + 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"13\">H" + std::to_string(d) +
               "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

void save_svg(const PersistenceDiagrams& dgms, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << render_svg(dgms);
}

}  // namespace recur::ph
