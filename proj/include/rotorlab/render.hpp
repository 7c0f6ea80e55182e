#ifndef ROTORLAB_RENDER_HPP
#define ROTORLAB_RENDER_HPP

#include "geometry.hpp"
#include "portrait.hpp"

#include <ostream>

namespace rotorlab {

// Binary P6.
inline void write_ppm(std::ostream& os, const Portrait& img, long steps)
{
    os << "P6\n" << img.width << " " << img.height << "\n255\n";
    for (const auto& p : img.pixels) {
        RGB c = pixel_color(p, steps);
        os.write(reinterpret_cast<const char*>(c.data()), 3);
    }
}

inline void write_segments_csv(std::ostream& os, const std::vector<LabeledSegment>& segs)
{
    os << "t,x1,y1,x2,y2\n";
    for (const auto& s : segs)
        os << s.t << "," << to_string(s.segment.first.x) << "," << to_string(s.segment.first.y) << ","
           << to_string(s.segment.second.x) << "," << to_string(s.segment.second.y) << "\n";
}

// Unit square drawn with y up; hue by |t|, backward images dashed.
inline void write_segments_svg(std::ostream& os, const std::vector<LabeledSegment>& segs, int size = 800)
{
    long depth = 0;
    for (const auto& s : segs) depth = std::max(depth, std::abs(s.t));
    auto coord = [&](const Exact& v) { return to_string(to_real(v) * size, 10); };
    auto ycoord = [&](const Exact& v) { return to_string((1 - to_real(v)) * size, 10); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (const auto& s : segs) {
        long hue = depth == 0 ? 0 : (300 * std::abs(s.t)) / depth;
        os << "<line x1=\"" << coord(s.segment.first.x) << "\" y1=\"" << ycoord(s.segment.first.y) << "\" x2=\""
           << coord(s.segment.second.x) << "\" y2=\"" << ycoord(s.segment.second.y) << "\" stroke=\"hsl(" << hue
           << ",80%,40%)\" stroke-width=\"1\"" << (s.t < 0 ? " stroke-dasharray=\"4 2\"" : "") << "><title>t="
           << s.t << "</title></line>\n";
    }
    os << "</svg>\n";
}

} // namespace rotorlab

#endif
