#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "redistrict/errors.hpp"

namespace redistrict {

// Planar polygon kernel. All coordinates live in a projected CRS (meters);
// robustness comes from snapping to a grid before boolean work, not from
// exact arithmetic.

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point& a, const Point& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

inline bool point_finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

/// Closed ring: first point equals last, at least 4 entries when valid.
using Ring = std::vector<Point>;

struct Polygon {
    Ring exterior;
    std::vector<Ring> holes;
};

struct MultiPolygon {
    std::vector<Polygon> parts;

    bool empty() const { return parts.empty(); }
};

struct Box {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void expand(const Point& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    void expand(const Box& b) {
        min_x = std::min(min_x, b.min_x);
        min_y = std::min(min_y, b.min_y);
        max_x = std::max(max_x, b.max_x);
        max_y = std::max(max_y, b.max_y);
    }
    bool intersects(const Box& b, double pad = 0.0) const {
        return !(min_x > b.max_x + pad || b.min_x > max_x + pad ||
                 min_y > b.max_y + pad || b.min_y > max_y + pad);
    }
    bool valid() const { return min_x <= max_x && min_y <= max_y; }
};

// ---- ring primitives ---------------------------------------------------------

/// Signed shoelace area: positive for counter-clockwise rings.
inline double ring_signed_area(const Ring& r) {
    double acc = 0.0;
    if (r.size() < 3) return 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        acc += r[i].x * r[i + 1].y - r[i + 1].x * r[i].y;
    }
    // Unclosed rings still get the wrap term.
    if (r.front() != r.back()) {
        acc += r.back().x * r.front().y - r.front().x * r.back().y;
    }
    return 0.5 * acc;
}

inline double ring_length(const Ring& r) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        acc += std::hypot(r[i + 1].x - r[i].x, r[i + 1].y - r[i].y);
    }
    if (!r.empty() && r.front() != r.back()) {
        acc += std::hypot(r.front().x - r.back().x, r.front().y - r.back().y);
    }
    return acc;
}

inline std::size_t ring_distinct_points(const Ring& r) {
    std::vector<Point> pts(r.begin(), r.end());
    if (!pts.empty() && pts.front() == pts.back()) pts.pop_back();
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts.size();
}

inline bool ring_degenerate(const Ring& r) { return ring_distinct_points(r) < 3; }

/// Closes the ring in place (appends front if needed) and strips consecutive
/// duplicate vertices.
inline void close_ring(Ring& r) {
    if (r.empty()) return;
    Ring clean;
    clean.reserve(r.size() + 1);
    clean.push_back(r.front());
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i] != clean.back()) clean.push_back(r[i]);
    }
    if (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
    clean.push_back(clean.front());
    r = std::move(clean);
}

/// Exterior counter-clockwise, holes clockwise. Real shapefiles disagree on
/// winding, so orientation is normalized rather than rejected.
inline void normalize_winding(Polygon& p) {
    close_ring(p.exterior);
    if (ring_signed_area(p.exterior) < 0.0) {
        std::reverse(p.exterior.begin(), p.exterior.end());
    }
    for (auto& h : p.holes) {
        close_ring(h);
        if (ring_signed_area(h) > 0.0) std::reverse(h.begin(), h.end());
    }
}

inline void normalize_winding(MultiPolygon& mp) {
    for (auto& p : mp.parts) normalize_winding(p);
}

// ---- area / perimeter / bounds ------------------------------------------------

inline void validate_geometry(const MultiPolygon& g, const std::string& what) {
    for (const auto& part : g.parts) {
        if (ring_degenerate(part.exterior)) {
            throw InvalidGeometry(what + ": degenerate exterior ring (< 3 distinct points)");
        }
        for (const auto& p : part.exterior) {
            if (!point_finite(p)) throw InvalidGeometry(what + ": non-finite coordinate");
        }
        for (const auto& h : part.holes) {
            if (ring_degenerate(h)) {
                throw InvalidGeometry(what + ": degenerate hole ring (< 3 distinct points)");
            }
            for (const auto& p : h) {
                if (!point_finite(p)) throw InvalidGeometry(what + ": non-finite coordinate");
            }
        }
    }
}

/// Shoelace area of exteriors minus holes. Square meters, never negative.
inline double area(const MultiPolygon& g) {
    validate_geometry(g, "area");
    double acc = 0.0;
    for (const auto& part : g.parts) {
        double a = std::abs(ring_signed_area(part.exterior));
        for (const auto& h : part.holes) a -= std::abs(ring_signed_area(h));
        acc += a;
    }
    return std::max(acc, 0.0);
}

/// Total boundary length: exteriors plus hole rings.
inline double perimeter(const MultiPolygon& g) {
    double acc = 0.0;
    for (const auto& part : g.parts) {
        acc += ring_length(part.exterior);
        for (const auto& h : part.holes) acc += ring_length(h);
    }
    return acc;
}

inline Box bounds(const MultiPolygon& g) {
    Box b;
    for (const auto& part : g.parts) {
        for (const auto& p : part.exterior) b.expand(p);
    }
    return b;
}

// ---- point in polygon ----------------------------------------------------------

/// Even-odd crossing test against one ring. Boundary points count as inside.
inline bool ring_contains(const Ring& r, const Point& q) {
    bool inside = false;
    std::size_t n = r.size();
    if (n < 4) return false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Point& a = r[i];
        const Point& b = r[i + 1];
        if ((a.y > q.y) != (b.y > q.y)) {
            double t = (q.y - a.y) / (b.y - a.y);
            double xi = a.x + t * (b.x - a.x);
            if (q.x < xi) inside = !inside;
            else if (q.x == xi) return true;  // on edge
        }
    }
    return inside;
}

inline bool contains_point(const MultiPolygon& g, const Point& q) {
    for (const auto& part : g.parts) {
        if (!ring_contains(part.exterior, q)) continue;
        bool in_hole = false;
        for (const auto& h : part.holes) {
            if (ring_contains(h, q)) {
                in_hole = true;
                break;
            }
        }
        if (!in_hole) return true;
    }
    return false;
}

// ---- snapping -------------------------------------------------------------------

inline double snap_coord(double v, double grid) {
    return std::round(v / grid) * grid;
}

inline Point snap_point(const Point& p, double grid) {
    return {snap_coord(p.x, grid), snap_coord(p.y, grid)};
}

struct SnapOutcome {
    MultiPolygon geometry;
    std::size_t dropped_rings = 0;  // rings that degenerated at this grid
    bool collapsed = false;         // everything vanished
};

/// Rounds every coordinate to the grid, removes zero-length segments, and
/// drops rings that degenerate (fewer than 3 distinct points or zero area).
inline SnapOutcome snap_geometry(const MultiPolygon& g, double grid) {
    SnapOutcome out;
    for (const auto& part : g.parts) {
        Polygon np;
        Ring ext;
        ext.reserve(part.exterior.size());
        for (const auto& p : part.exterior) ext.push_back(snap_point(p, grid));
        close_ring(ext);
        if (ring_distinct_points(ext) < 3 || ring_signed_area(ext) == 0.0) {
            ++out.dropped_rings;
            out.dropped_rings += part.holes.size();
            continue;  // whole part gone; its holes go with it
        }
        np.exterior = std::move(ext);
        for (const auto& h : part.holes) {
            Ring hr;
            hr.reserve(h.size());
            for (const auto& p : h) hr.push_back(snap_point(p, grid));
            close_ring(hr);
            if (ring_distinct_points(hr) < 3 || ring_signed_area(hr) == 0.0) {
                ++out.dropped_rings;
                continue;
            }
            np.holes.push_back(std::move(hr));
        }
        normalize_winding(np);
        out.geometry.parts.push_back(std::move(np));
    }
    out.collapsed = out.geometry.parts.empty() && !g.parts.empty();
    return out;
}

// ---- shared boundary ---------------------------------------------------------------

namespace detail {

struct Segment {
    Point a;
    Point b;
};

inline void collect_segments(const MultiPolygon& g, std::vector<Segment>& out) {
    auto push_ring = [&out](const Ring& r) {
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            if (r[i] != r[i + 1]) out.push_back({r[i], r[i + 1]});
        }
    };
    for (const auto& part : g.parts) {
        push_ring(part.exterior);
        for (const auto& h : part.holes) push_ring(h);
    }
}

/// Length of the collinear overlap of two segments, or 0. Both endpoints of
/// the second segment must lie within tol of the first segment's line.
inline double collinear_overlap(const Segment& s, const Segment& t, double tol) {
    double dx = s.b.x - s.a.x;
    double dy = s.b.y - s.a.y;
    double len = std::hypot(dx, dy);
    if (len <= 0.0) return 0.0;
    double ux = dx / len, uy = dy / len;

    auto perp = [&](const Point& p) {
        return std::abs(ux * (p.y - s.a.y) - uy * (p.x - s.a.x));
    };
    if (perp(t.a) > tol || perp(t.b) > tol) return 0.0;

    auto along = [&](const Point& p) {
        return ux * (p.x - s.a.x) + uy * (p.y - s.a.y);
    };
    double ta = along(t.a), tb = along(t.b);
    double lo = std::max(0.0, std::min(ta, tb));
    double hi = std::min(len, std::max(ta, tb));
    return std::max(0.0, hi - lo);
}

inline double point_segment_distance(const Point& p, const Segment& s) {
    double dx = s.b.x - s.a.x;
    double dy = s.b.y - s.a.y;
    double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return std::hypot(p.x - s.a.x, p.y - s.a.y);
    double t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (s.a.x + t * dx), p.y - (s.a.y + t * dy));
}

}  // namespace detail

/// Total length of collinear overlapping boundary between two geometries.
/// Works by segment-overlap detection on (already snapped) coordinates:
/// stable on long collinear runs where boolean boundary intersection is not.
/// Point contact yields 0.
inline double shared_boundary_length(const MultiPolygon& a, const MultiPolygon& b,
                                     double snap_tol) {
    std::vector<detail::Segment> sa, sb;
    detail::collect_segments(a, sa);
    detail::collect_segments(b, sb);
    if (sa.empty() || sb.empty()) return 0.0;

    Box bb = bounds(b);
    double total = 0.0;
    for (const auto& s : sa) {
        Box sbox;
        sbox.expand(s.a);
        sbox.expand(s.b);
        if (!sbox.intersects(bb, snap_tol)) continue;
        for (const auto& t : sb) {
            Box tbox;
            tbox.expand(t.a);
            tbox.expand(t.b);
            if (!sbox.intersects(tbox, snap_tol)) continue;
            total += detail::collinear_overlap(s, t, snap_tol);
        }
    }
    return total;
}

/// True when the boundaries touch at all (shared edge or single point).
/// Combined with shared_boundary_length == 0 this identifies queen-only
/// contact.
inline bool boundaries_touch(const MultiPolygon& a, const MultiPolygon& b,
                             double snap_tol) {
    std::vector<detail::Segment> sa, sb;
    detail::collect_segments(a, sa);
    detail::collect_segments(b, sb);
    for (const auto& s : sa) {
        for (const auto& t : sb) {
            if (detail::point_segment_distance(t.a, s) <= snap_tol) return true;
            if (detail::point_segment_distance(t.b, s) <= snap_tol) return true;
            if (detail::point_segment_distance(s.a, t) <= snap_tol) return true;
            if (detail::point_segment_distance(s.b, t) <= snap_tol) return true;
        }
    }
    return false;
}

// ---- small constructors (fixtures, tests, parsers) -----------------------------

inline Ring make_ring(std::initializer_list<Point> pts) {
    Ring r(pts);
    close_ring(r);
    return r;
}

inline MultiPolygon make_rect(double x0, double y0, double x1, double y1) {
    MultiPolygon g;
    Polygon p;
    p.exterior = make_ring({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
    g.parts.push_back(std::move(p));
    return g;
}

}  // namespace redistrict
