#ifndef ROTORLAB_PORTRAIT_HPP
#define ROTORLAB_PORTRAIT_HPP

#include "parallel.hpp"
#include "vertices.hpp"

#include <array>
#include <cstdint>

namespace rotorlab {

// Half-open convex polygon test against a ScaledOrbit, using integer line
// coefficients so no rational is formed per step.
class ScaledPolygonTest {
public:
    explicit ScaledPolygonTest(const Polygon& poly)
    {
        orient_ = polygon_orientation(poly);
        if (orient_ == 0) throw std::invalid_argument("ScaledPolygonTest: degenerate polygon");
        size_t k = poly.vertices.size();
        for (size_t i = 0; i < k; ++i) {
            const Point& a = poly.vertices[i];
            const Point& b = poly.vertices[(i + 1) % k];
            // cross(b − a, p − a) = A x + B y + C
            Exact A = a.y - b.y, B = b.x - a.x, C = (b.y - a.y) * a.x - (b.x - a.x) * a.y;
            Integer l = mp::lcm(mp::lcm(denominator(A), denominator(B)), denominator(C));
            lines_.push_back({numerator(A) * (l / denominator(A)), numerator(B) * (l / denominator(B)),
                              numerator(C) * (l / denominator(C)), poly.edge_included[i]});
        }
    }

    bool contains(const ScaledOrbit& o) const
    {
        for (const auto& e : lines_) {
            int s = o.side(e.a, e.b, e.c) * orient_;
            if (s < 0 || (s == 0 && !e.included)) return false;
        }
        return true;
    }

private:
    struct Line {
        Integer a, b, c;
        bool included;
    };
    std::vector<Line> lines_;
    int orient_ = 0;
};

struct PortraitOptions {
    Exact x0{0}, y0{0}, x1{1}, y1{1}; // window
    long width = 256, height = 256;
    long steps = 500;
};

enum class PixelClass : std::uint8_t { periodic, escaping, bounded };

struct PixelResult {
    PixelClass kind = PixelClass::bounded;
    long value = 0; // period, or the step count at first entry into Λ
};

struct Portrait {
    long width = 0, height = 0;
    std::vector<PixelResult> pixels; // row-major, row 0 at the top

    const PixelResult& at(long i, long j) const { return pixels[static_cast<size_t>(j * width + i)]; }

    double fraction(PixelClass k) const
    {
        if (pixels.empty()) return 0;
        long c = 0;
        for (const auto& p : pixels) c += p.kind == k;
        return static_cast<double>(c) / static_cast<double>(pixels.size());
    }
};

inline Point pixel_center(const PortraitOptions& opt, long i, long j)
{
    Exact dx = (opt.x1 - opt.x0) / Exact(opt.width), dy = (opt.y1 - opt.y0) / Exact(opt.height);
    return {opt.x0 + (Exact(i) + Exact(1, 2)) * dx, opt.y1 - (Exact(j) + Exact(1, 2)) * dy};
}

// Classifies the orbit of p: exact period up to `steps`; otherwise the time of
// first entry into `target` (when given); otherwise bounded.
inline PixelResult classify_point(const Point& p, const Exact& lam, long steps, const ScaledPolygonTest* target)
{
    ScaledOrbit orb(p, lam);
    for (long t = 1; t <= steps; ++t) {
        orb.step();
        if (orb.equals(p)) return {PixelClass::periodic, t};
        if (target && target->contains(orb)) return {PixelClass::escaping, t};
    }
    return {PixelClass::bounded, 0};
}

// Phase portrait over a rational window. Escape detection uses Λ, available for
// 0 < λ < λ₊; for other λ only periods are detected.
inline Portrait render_portrait(const Exact& lam, const PortraitOptions& opt)
{
    require_map_range(lam);
    if (opt.width < 1 || opt.height < 1 || opt.width > 4096 || opt.height > 4096)
        throw std::invalid_argument("portrait grid must be between 1x1 and 4096x4096");
    if (opt.steps < 1) throw std::invalid_argument("portrait steps must be positive");
    if (!(opt.x0 >= 0 && opt.y0 >= 0 && opt.x1 <= 1 && opt.y1 <= 1 && opt.x0 < opt.x1 && opt.y0 < opt.y1))
        throw std::invalid_argument("portrait window must lie inside the unit square");
    std::optional<ScaledPolygonTest> target;
    if (lam > 0) target.emplace(lambda_domain(ExactVertices(lam)));
    Portrait img;
    img.width = opt.width;
    img.height = opt.height;
    img.pixels.resize(static_cast<size_t>(opt.width * opt.height));
    parallel_for(img.pixels.size(), [&](size_t k) {
        long i = static_cast<long>(k) % opt.width, j = static_cast<long>(k) / opt.width;
        Point p = pixel_center(opt, i, j);
        img.pixels[k] = classify_point(p, lam, opt.steps, target ? &*target : nullptr);
    });
    return img;
}

using RGB = std::array<std::uint8_t, 3>;

inline RGB pixel_color(const PixelResult& p, long steps)
{
    switch (p.kind) {
    case PixelClass::bounded:
        return {32, 64, 160};
    case PixelClass::periodic: {
        static constexpr RGB palette[] = {{230, 60, 50},  {250, 170, 40}, {240, 230, 60}, {90, 200, 80},
                                          {60, 190, 200}, {150, 90, 210}, {230, 110, 180}, {140, 100, 60}};
        return palette[static_cast<size_t>(p.value - 1) % std::size(palette)];
    }
    case PixelClass::escaping: {
        long v = std::min(p.value, steps);
        auto g = static_cast<std::uint8_t>(255 - (200 * v) / std::max<long>(steps, 1));
        return {g, g, g};
    }
    }
    return {0, 0, 0};
}

} // namespace rotorlab

#endif
