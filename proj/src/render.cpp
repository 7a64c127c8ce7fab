#include "clusterlab/render.hpp"

#include <cstdio>

namespace clusterlab {

namespace {

const char* kPalette[8] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                           "#59a14f", "#edc948", "#b07aa1", "#ff9da7"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string render_svg(const ClusterNet& net, const RenderStyle& style) {
    const Rect& w = net.window;
    double sx = style.width_px / w.width();
    double height = w.height() * sx;
    auto X = [&](double x) { return (x - w.xmin) * sx; };
    auto Y = [&](double y) { return (w.ymax - y) * sx; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.width_px) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(style.width_px) + " " +
         fmt(height) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + fmt(style.width_px) + "\" height=\"" +
         fmt(height) + "\" fill=\"white\" stroke=\"#888\" stroke-width=\"1\"/>\n";

    if (style.fill_regions) {
        for (int region = 1; region <= net.m; ++region) {
            std::string d;
            for (const auto& loop : region_loops(net, region)) {
                for (size_t k = 0; k + 1 < loop.size(); ++k) {
                    d += (k == 0 ? "M" : "L");
                    d += fmt(X(loop[k].x)) + " " + fmt(Y(loop[k].y));
                }
                d += "Z";
            }
            if (d.empty()) continue;
            s += "<path d=\"" + d + "\" fill=\"" + kPalette[(region - 1) % 8] +
                 "\" fill-opacity=\"0.55\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
        }
    }

    double stroke = style.stroke_rel * style.width_px;
    for (const auto& arc : net.arcs) {
        std::string pts;
        for (const auto& p : arc.points) {
            if (!pts.empty()) pts += " ";
            pts += fmt(X(p.x)) + "," + fmt(Y(p.y));
        }
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"" +
             fmt(stroke) + "\"/>\n";
    }

    if (style.mark_junctions) {
        double r = style.marker_rel * style.width_px;
        for (const auto& node : net.nodes)
            s += "<circle cx=\"" + fmt(X(node.pos.x)) + "\" cy=\"" + fmt(Y(node.pos.y)) +
                 "\" r=\"" + fmt(r) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" +
                 fmt(0.5 * stroke) + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace clusterlab
