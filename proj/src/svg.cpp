#include "treemaplab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <vector>

#include "treemaplab/rng.hpp"

namespace treemaplab {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", v);
    return buf;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += ch;
        }
    }
    return out;
}

double channel(double p, double q, double t) {
    if (t < 0.0) {
        t += 1.0;
    }
    if (t > 1.0) {
        t -= 1.0;
    }
    if (t < 1.0 / 6.0) {
        return p + (q - p) * 6.0 * t;
    }
    if (t < 0.5) {
        return q;
    }
    if (t < 2.0 / 3.0) {
        return p + (q - p) * (2.0 / 3.0 - t) * 6.0;
    }
    return p;
}

std::string hsl_hex(double hue, double sat, double light) {
    double q = light < 0.5 ? light * (1.0 + sat) : light + sat - light * sat;
    double p = 2.0 * light - q;
    double h = hue / 360.0;
    int r = static_cast<int>(std::lround(channel(p, q, h + 1.0 / 3.0) * 255.0));
    int g = static_cast<int>(std::lround(channel(p, q, h) * 255.0));
    int b = static_cast<int>(std::lround(channel(p, q, h - 1.0 / 3.0) * 255.0));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string fill_color(const std::string& name, int id, std::uint64_t seed) {
    std::uint64_t h = detail::mix64(seed ^ 0x9e3779b97f4a7c15ull);
    if (name.empty()) {
        h = detail::mix64(h ^ static_cast<std::uint64_t>(id));
    } else {
        for (unsigned char ch : name) {
            h = detail::mix64(h ^ ch);
        }
    }
    double hue = static_cast<double>(h % 3600) / 10.0;
    return hsl_hex(hue, 0.55, 0.62);
}

}  // namespace

std::string render_svg(const Layout& layout, const SvgOptions& options) {
    if (layout.cells.empty()) {
        throw std::invalid_argument("cannot render an empty layout");
    }
    const Rect& box = layout.container;
    if (box.w <= 0.0 || box.h <= 0.0) {
        throw std::invalid_argument("container must have positive extent");
    }
    double flip_base = 2.0 * box.y + box.h;
    auto flip = [&](const Rect& r) {
        return Rect{r.x, flip_base - r.y - r.h, r.w, r.h};
    };
    double stroke = options.stroke_fraction * std::max(box.w, box.h);
    double height_px = options.width_px * box.h / box.w;

    std::vector<Cell> cells = layout.cells;
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.id < b.id; });

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           num(options.width_px) + "\" height=\"" + num(height_px) +
           "\" viewBox=\"" + num(box.x) + " " + num(box.y) + " " + num(box.w) + " " +
           num(box.h) + "\">\n";
    for (const Cell& cell : cells) {
        Rect r = flip(cell.rect);
        out += "  <rect x=\"" + num(r.x) + "\" y=\"" + num(r.y) + "\" width=\"" +
               num(r.w) + "\" height=\"" + num(r.h) + "\" fill=\"" +
               fill_color(cell.name, cell.id, options.color_seed) +
               "\" stroke=\"#222222\" stroke-width=\"" + num(stroke) + "\"/>\n";
    }
    if (!layout.bundles.empty()) {
        std::map<int, const Rect*> by_id;
        for (const Cell& cell : cells) {
            by_id[cell.id] = &cell.rect;
        }
        for (const std::vector<int>& group : layout.bundles) {
            std::vector<Rect> members;
            for (int id : group) {
                auto it = by_id.find(id);
                if (it == by_id.end()) {
                    throw std::invalid_argument("bundle references unknown cell id " +
                                                std::to_string(id));
                }
                members.push_back(*it->second);
            }
            if (members.empty()) {
                continue;
            }
            Rect outline = flip(bounding_box(members));
            out += "  <rect x=\"" + num(outline.x) + "\" y=\"" + num(outline.y) +
                   "\" width=\"" + num(outline.w) + "\" height=\"" + num(outline.h) +
                   "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"" +
                   num(3.0 * stroke) + "\"/>\n";
        }
    }
    if (options.labels) {
        for (const Cell& cell : cells) {
            Rect r = flip(cell.rect);
            double size = 0.28 * std::min(r.w, r.h);
            out += "  <text x=\"" + num(r.x + r.w / 2.0) + "\" y=\"" +
                   num(r.y + r.h / 2.0) + "\" font-size=\"" + num(size) +
                   "\" font-family=\"sans-serif\" text-anchor=\"middle\" "
                   "dominant-baseline=\"middle\">" +
                   escape_xml(cell.name) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace treemaplab
