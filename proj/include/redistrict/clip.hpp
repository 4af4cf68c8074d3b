#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <boost/geometry/algorithms/area.hpp>
#include <boost/geometry/algorithms/correct.hpp>
#include <boost/geometry/algorithms/difference.hpp>
#include <boost/geometry/algorithms/intersection.hpp>
#include <boost/geometry/algorithms/is_valid.hpp>
#include <boost/geometry/algorithms/union.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "redistrict/geometry.hpp"

namespace redistrict {

// Boolean operations on polygons, backed by Boost.Geometry's sweep-based
// overlay behind this facade. Inputs are expected to be snapped; the shoelace
// area and shared-boundary code in geometry.hpp stay independent of this path
// so the two routes can be checked against each other.

namespace bgi_detail {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, false, true>;  // ccw, closed
using BMulti = bg::model::multi_polygon<BPolygon>;

inline BMulti to_boost(const MultiPolygon& g) {
    BMulti out;
    for (const auto& part : g.parts) {
        BPolygon bp;
        for (const auto& p : part.exterior) bp.outer().push_back(BPoint(p.x, p.y));
        for (const auto& h : part.holes) {
            bp.inners().emplace_back();
            for (const auto& p : h) bp.inners().back().push_back(BPoint(p.x, p.y));
        }
        out.push_back(std::move(bp));
    }
    bg::correct(out);
    return out;
}

inline MultiPolygon from_boost(const BMulti& b) {
    MultiPolygon out;
    for (const auto& bp : b) {
        Polygon p;
        for (const auto& q : bp.outer()) p.exterior.push_back({q.x(), q.y()});
        for (const auto& ring : bp.inners()) {
            Ring h;
            for (const auto& q : ring) h.push_back({q.x(), q.y()});
            p.holes.push_back(std::move(h));
        }
        normalize_winding(p);
        if (!ring_degenerate(p.exterior)) out.parts.push_back(std::move(p));
    }
    return out;
}

/// Deterministic total order on geometries: used to canonicalize argument
/// order so symmetric operations return bit-identical results either way.
inline bool geom_less(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size();
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        const auto& pa = a.parts[i];
        const auto& pb = b.parts[i];
        if (pa.exterior.size() != pb.exterior.size())
            return pa.exterior.size() < pb.exterior.size();
        for (std::size_t j = 0; j < pa.exterior.size(); ++j) {
            if (pa.exterior[j].x != pb.exterior[j].x)
                return pa.exterior[j].x < pb.exterior[j].x;
            if (pa.exterior[j].y != pb.exterior[j].y)
                return pa.exterior[j].y < pb.exterior[j].y;
        }
    }
    return false;
}

}  // namespace bgi_detail

/// a ∩ b as a geometry.
inline MultiPolygon intersect(const MultiPolygon& a, const MultiPolygon& b) {
    validate_geometry(a, "intersect");
    validate_geometry(b, "intersect");
    namespace bg = boost::geometry;
    const MultiPolygon* first = &a;
    const MultiPolygon* second = &b;
    if (bgi_detail::geom_less(b, a)) std::swap(first, second);
    bgi_detail::BMulti out;
    bg::intersection(bgi_detail::to_boost(*first), bgi_detail::to_boost(*second), out);
    return bgi_detail::from_boost(out);
}

/// Area of a ∩ b. Symmetric by construction (arguments are canonicalized).
inline double intersection_area(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty() || b.empty()) {
        validate_geometry(a, "intersection_area");
        validate_geometry(b, "intersection_area");
        return 0.0;
    }
    if (!bounds(a).intersects(bounds(b))) {
        validate_geometry(a, "intersection_area");
        validate_geometry(b, "intersection_area");
        return 0.0;
    }
    return area(intersect(a, b));
}

inline MultiPolygon unite(const MultiPolygon& a, const MultiPolygon& b) {
    validate_geometry(a, "unite");
    validate_geometry(b, "unite");
    namespace bg = boost::geometry;
    bgi_detail::BMulti out;
    bg::union_(bgi_detail::to_boost(a), bgi_detail::to_boost(b), out);
    return bgi_detail::from_boost(out);
}

/// a minus b.
inline MultiPolygon subtract(const MultiPolygon& a, const MultiPolygon& b) {
    validate_geometry(a, "subtract");
    validate_geometry(b, "subtract");
    if (b.empty()) return a;
    namespace bg = boost::geometry;
    bgi_detail::BMulti out;
    bg::difference(bgi_detail::to_boost(a), bgi_detail::to_boost(b), out);
    return bgi_detail::from_boost(out);
}

/// Union of many geometries by balanced pairwise merging.
inline MultiPolygon union_all(const std::vector<MultiPolygon>& geoms) {
    if (geoms.empty()) return {};
    std::vector<MultiPolygon> level = geoms;
    while (level.size() > 1) {
        std::vector<MultiPolygon> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            next.push_back(unite(level[i], level[i + 1]));
        }
        if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return level.front();
}

inline double union_area(const MultiPolygon& a, const MultiPolygon& b) {
    return area(unite(a, b));
}

}  // namespace redistrict
