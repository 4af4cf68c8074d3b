#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/geometry/geometries/box.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <json.hpp>

#include "redistrict/clip.hpp"
#include "redistrict/geometry.hpp"
#include "redistrict/layer.hpp"
#include "redistrict/parallel.hpp"

namespace redistrict {

// Gap/overlap detection and repair. The repair procedure here is a documented
// greedy scheme, not a reproduction of any external tool: every overlap region
// goes to the claimant that shares the most boundary with it, and every gap is
// merged into the neighbor that shares the most boundary with it. The exit
// condition is the same either way: the layer passes doctor.

struct RepairOptions {
    double snap_grid = 1e-6;  // meters
    double area_tol = 1.0;    // m²; far below any census block
    std::optional<double> drop_above;  // gaps larger than this are left in place
    int max_passes = 10;
};

struct OverlapEntry {
    std::string unit_a;
    std::string unit_b;
    double area = 0.0;
};

struct GapEntry {
    MultiPolygon region;
    double area = 0.0;
    std::vector<std::string> adjacent_units;  // positive shared boundary, sorted
};

struct DoctorReport {
    std::vector<OverlapEntry> overlaps;
    std::vector<GapEntry> gaps;
    /// Uncovered regions that coincide with holes declared in a single unit's
    /// own geometry (deliberate holes in the source data, lake-style), as
    /// opposed to alignment slivers between units.
    std::vector<GapEntry> holes_outside_coverage;

    bool clean() const {
        return overlaps.empty() && gaps.empty() && holes_outside_coverage.empty();
    }

    std::string to_text() const {
        std::ostringstream os;
        os << overlaps.size() << " overlap(s), " << gaps.size() << " gap(s), "
           << holes_outside_coverage.size() << " hole(s) outside coverage\n";
        for (const auto& o : overlaps) {
            os << "  overlap " << o.unit_a << " x " << o.unit_b << ": area " << o.area << "\n";
        }
        for (const auto& g : gaps) {
            os << "  gap: area " << g.area << ", adjacent to";
            for (const auto& id : g.adjacent_units) os << " " << id;
            os << "\n";
        }
        for (const auto& h : holes_outside_coverage) {
            os << "  hole outside coverage: area " << h.area << "\n";
        }
        return os.str();
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["clean"] = clean();
        j["overlaps"] = nlohmann::ordered_json::array();
        for (const auto& o : overlaps) {
            j["overlaps"].push_back({{"unit_a", o.unit_a}, {"unit_b", o.unit_b}, {"area", o.area}});
        }
        auto gap_json = [](const GapEntry& g) {
            nlohmann::ordered_json e;
            e["area"] = g.area;
            e["adjacent_units"] = g.adjacent_units;
            Box b = bounds(g.region);
            e["bbox"] = {b.min_x, b.min_y, b.max_x, b.max_y};
            return e;
        };
        j["gaps"] = nlohmann::ordered_json::array();
        for (const auto& g : gaps) j["gaps"].push_back(gap_json(g));
        j["holes_outside_coverage"] = nlohmann::ordered_json::array();
        for (const auto& h : holes_outside_coverage) {
            j["holes_outside_coverage"].push_back(gap_json(h));
        }
        return j;
    }
};

struct RepairLog {
    std::vector<std::string> entries;
    double union_area_before = 0.0;
    double union_area_after = 0.0;
    double filled_gap_area = 0.0;
    std::vector<GapEntry> dropped_gaps;     // left in place because of drop_above
    std::vector<GapEntry> unfillable_gaps;  // no adjacent unit to merge into

    void note(const std::string& line) { entries.push_back(line); }
};

namespace repair_detail {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;
using BBox = bg::model::box<bgi_detail::BPoint>;
using RtreeEntry = std::pair<BBox, std::size_t>;
using Rtree = bgi::rtree<RtreeEntry, bgi::quadratic<16>>;

inline BBox to_bbox(const Box& b, double pad = 0.0) {
    return BBox(bgi_detail::BPoint(b.min_x - pad, b.min_y - pad),
                bgi_detail::BPoint(b.max_x + pad, b.max_y + pad));
}

inline Rtree build_index(const GeoLayer& layer) {
    std::vector<RtreeEntry> entries;
    entries.reserve(layer.units.size());
    for (std::size_t i = 0; i < layer.units.size(); ++i) {
        Box b = bounds(layer.units[i].geometry);
        if (b.valid()) entries.emplace_back(to_bbox(b), i);
    }
    return Rtree(entries.begin(), entries.end());
}

inline std::vector<std::size_t> query_box(const Rtree& tree, const Box& b, double pad = 0.0) {
    std::vector<RtreeEntry> hits;
    tree.query(bgi::intersects(to_bbox(b, pad)), std::back_inserter(hits));
    std::vector<std::size_t> out;
    out.reserve(hits.size());
    for (const auto& h : hits) out.push_back(h.second);
    std::sort(out.begin(), out.end());
    return out;
}

/// All bbox-intersecting unit pairs (i < j), deterministic order.
inline std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const GeoLayer& layer) {
    Rtree tree = build_index(layer);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < layer.units.size(); ++i) {
        Box b = bounds(layer.units[i].geometry);
        if (!b.valid()) continue;
        for (std::size_t j : query_box(tree, b)) {
            if (j > i) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

/// Gap polygon from a union inner ring (reversed into an exterior).
inline MultiPolygon region_from_hole(const Ring& hole) {
    Polygon p;
    p.exterior = hole;
    std::reverse(p.exterior.begin(), p.exterior.end());
    MultiPolygon g;
    g.parts.push_back(std::move(p));
    normalize_winding(g);
    return g;
}

inline std::vector<MultiPolygon> layer_geometries(const GeoLayer& layer) {
    std::vector<MultiPolygon> gs;
    gs.reserve(layer.units.size());
    for (const auto& u : layer.units) gs.push_back(u.geometry);
    return gs;
}

}  // namespace repair_detail

/// Reports every pairwise overlap and every bounded gap above the area
/// tolerance. Deterministic: entries ordered by descending area, then ids.
inline DoctorReport doctor(const GeoLayer& layer, double area_tol = 1.0,
                           double snap_tol = 1e-6) {
    for (const auto& u : layer.units) validate_geometry(u.geometry, "doctor: unit " + u.id);

    DoctorReport report;
    auto pairs = repair_detail::candidate_pairs(layer);

    // Pairwise overlap areas, computed in parallel over the candidate list.
    std::vector<double> pair_area(pairs.size(), 0.0);
    parallel_for(pairs.size(), 16, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto& [i, j] = pairs[k];
            pair_area[k] =
                intersection_area(layer.units[i].geometry, layer.units[j].geometry);
        }
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pair_area[k] > area_tol) {
            const auto& [i, j] = pairs[k];
            report.overlaps.push_back({layer.units[i].id, layer.units[j].id, pair_area[k]});
        }
    }
    std::sort(report.overlaps.begin(), report.overlaps.end(),
              [](const OverlapEntry& a, const OverlapEntry& b) {
                  if (a.area != b.area) return a.area > b.area;
                  if (a.unit_a != b.unit_a) return a.unit_a < b.unit_a;
                  return a.unit_b < b.unit_b;
              });

    // Bounded gaps: inner rings of the union of all units.
    MultiPolygon merged = union_all(repair_detail::layer_geometries(layer));
    repair_detail::Rtree tree = repair_detail::build_index(layer);
    std::vector<GapEntry> found;
    for (const auto& part : merged.parts) {
        for (const auto& hole : part.holes) {
            MultiPolygon region = repair_detail::region_from_hole(hole);
            double a = area(region);
            if (a <= area_tol) continue;
            GapEntry gap;
            gap.area = a;
            for (std::size_t idx : repair_detail::query_box(tree, bounds(region), snap_tol)) {
                if (shared_boundary_length(region, layer.units[idx].geometry, snap_tol) > 0.0) {
                    gap.adjacent_units.push_back(layer.units[idx].id);
                }
            }
            std::sort(gap.adjacent_units.begin(), gap.adjacent_units.end());
            gap.region = std::move(region);
            found.push_back(std::move(gap));
        }
    }
    std::sort(found.begin(), found.end(), [](const GapEntry& a, const GapEntry& b) {
        if (a.area != b.area) return a.area > b.area;
        std::string fa = a.adjacent_units.empty() ? "" : a.adjacent_units.front();
        std::string fb = b.adjacent_units.empty() ? "" : b.adjacent_units.front();
        return fa < fb;
    });

    // A gap that sits inside a hole declared by a single unit's own geometry
    // is a deliberate hole in the source data, reported separately.
    for (auto& gap : found) {
        bool declared = false;
        for (std::size_t idx : repair_detail::query_box(tree, bounds(gap.region), snap_tol)) {
            for (const auto& p : layer.units[idx].geometry.parts) {
                for (const auto& h : p.holes) {
                    MultiPolygon hole_region = repair_detail::region_from_hole(h);
                    if (intersection_area(gap.region, hole_region) >= gap.area * 0.999) {
                        declared = true;
                        break;
                    }
                }
                if (declared) break;
            }
            if (declared) break;
        }
        if (declared) {
            report.holes_outside_coverage.push_back(std::move(gap));
        } else {
            report.gaps.push_back(std::move(gap));
        }
    }
    return report;
}

/// Subtracts every overlap region from all claimants except the one with the
/// greatest shared boundary against that region (ties: smallest unit id).
/// Iterates until no overlap above tolerance remains; convergence is capped.
inline GeoLayer resolve_overlaps(const GeoLayer& input, const RepairOptions& opts = {},
                                 RepairLog* log = nullptr) {
    GeoLayer layer = snap_points(input, opts.snap_grid);
    layer.validate();

    for (int pass = 0; pass < opts.max_passes; ++pass) {
        auto pairs = repair_detail::candidate_pairs(layer);
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, MultiPolygon>> overlaps;
        for (const auto& pr : pairs) {
            MultiPolygon region =
                intersect(layer.units[pr.first].geometry, layer.units[pr.second].geometry);
            if (area(region) > opts.area_tol) overlaps.emplace_back(pr, std::move(region));
        }
        if (overlaps.empty()) return layer;

        repair_detail::Rtree tree = repair_detail::build_index(layer);
        for (auto& [pr, region] : overlaps) {
            double region_area = area(region);
            if (region_area <= opts.area_tol) continue;

            // Claimants: every unit covering (essentially) the whole region.
            std::vector<std::size_t> claimants;
            for (std::size_t idx : repair_detail::query_box(tree, bounds(region))) {
                double covered = intersection_area(layer.units[idx].geometry, region);
                if (covered >= region_area * (1.0 - 1e-9)) claimants.push_back(idx);
            }
            if (claimants.size() < 2) continue;  // resolved by an earlier subtraction

            std::size_t winner = claimants.front();
            double best = -1.0;
            for (std::size_t idx : claimants) {
                double shared =
                    shared_boundary_length(region, layer.units[idx].geometry, opts.snap_grid);
                if (shared > best ||
                    (shared == best && layer.units[idx].id < layer.units[winner].id)) {
                    best = shared;
                    winner = idx;
                }
            }

            for (std::size_t idx : claimants) {
                if (idx == winner) continue;
                MultiPolygon reduced = subtract(layer.units[idx].geometry, region);
                SnapOutcome snapped = snap_geometry(reduced, opts.snap_grid);
                if (reduced.empty() || snapped.collapsed) {
                    throw RepairFailed("resolve_overlaps: unit '" + layer.units[idx].id +
                                       "' fully swallowed by overlap with '" +
                                       layer.units[winner].id + "'");
                }
                layer.units[idx].geometry = std::move(snapped.geometry);
                if (log) {
                    std::ostringstream os;
                    os << "overlap of area " << region_area << " assigned to '"
                       << layer.units[winner].id << "', subtracted from '"
                       << layer.units[idx].id << "'";
                    log->note(os.str());
                }
            }
        }
    }

    // One final check: the pass cap is a convergence guard, not a tolerance.
    DoctorReport check = doctor(layer, opts.area_tol, opts.snap_grid);
    if (!check.overlaps.empty()) {
        throw RepairFailed("resolve_overlaps: " + std::to_string(check.overlaps.size()) +
                           " overlap(s) remain after " + std::to_string(opts.max_passes) +
                           " passes");
    }
    return layer;
}

/// Merges every gap (bounded uncovered region) into the adjacent unit with
/// the greatest shared boundary. Gaps larger than drop_above are left in
/// place and recorded; gaps with no adjacent unit are recorded as unfillable.
inline GeoLayer fill_gaps(const GeoLayer& input, std::optional<double> drop_above,
                          const RepairOptions& opts = {}, RepairLog* log = nullptr) {
    GeoLayer layer = input;
    DoctorReport report = doctor(layer, opts.area_tol, opts.snap_grid);

    std::vector<GapEntry> all_gaps;
    for (auto& g : report.gaps) all_gaps.push_back(std::move(g));
    for (auto& g : report.holes_outside_coverage) all_gaps.push_back(std::move(g));

    for (auto& gap : all_gaps) {
        if (drop_above && gap.area > *drop_above) {
            if (log) {
                std::ostringstream os;
                os << "gap of area " << gap.area << " left in place (above drop threshold "
                   << *drop_above << ")";
                log->note(os.str());
                log->dropped_gaps.push_back(gap);
            }
            continue;
        }
        if (gap.adjacent_units.empty()) {
            if (log) {
                log->note("gap of area " + std::to_string(gap.area) +
                          " has no adjacent unit; left in place");
                log->unfillable_gaps.push_back(gap);
            }
            continue;
        }
        int target = -1;
        double best = -1.0;
        for (const auto& id : gap.adjacent_units) {
            int idx = layer.unit_index(id);
            double shared =
                shared_boundary_length(gap.region, layer.units[idx].geometry, opts.snap_grid);
            if (shared > best) {
                best = shared;
                target = idx;
            }
        }
        SnapOutcome merged = snap_geometry(
            unite(layer.units[static_cast<std::size_t>(target)].geometry, gap.region),
            opts.snap_grid);
        layer.units[static_cast<std::size_t>(target)].geometry = std::move(merged.geometry);
        if (log) {
            std::ostringstream os;
            os << "gap of area " << gap.area << " merged into '"
               << layer.units[static_cast<std::size_t>(target)].id << "'";
            log->note(os.str());
            log->filled_gap_area += gap.area;
        }
    }
    return layer;
}

struct SmartRepairResult {
    GeoLayer layer;
    DoctorReport report;  // raw post-repair doctor output
    RepairLog log;

    /// True when the only remaining defects are gaps the repair explicitly
    /// left in place (drop threshold). The caller chooses whether that is
    /// acceptable, mirroring the lake-hole situation.
    bool clean_ignoring_dropped() const {
        if (!report.overlaps.empty()) return false;
        auto dropped = [this](const GapEntry& gap) {
            for (const auto& d : log.dropped_gaps) {
                if (intersection_area(gap.region, d.region) >= gap.area * 0.999) return true;
            }
            return false;
        };
        for (const auto& g : report.gaps) {
            if (!dropped(g)) return false;
        }
        for (const auto& g : report.holes_outside_coverage) {
            if (!dropped(g)) return false;
        }
        return true;
    }
};

/// snap -> resolve overlaps -> fill gaps -> doctor. The returned report is
/// the post-repair doctor output; callers treat a non-empty report as fatal
/// unless every remaining entry was deliberately dropped.
inline SmartRepairResult smart_repair(const GeoLayer& input, const RepairOptions& opts = {}) {
    SmartRepairResult result;
    result.log.union_area_before = area(union_all(repair_detail::layer_geometries(input)));

    SnapReport snap_report;
    GeoLayer layer = snap_points(input, opts.snap_grid, &snap_report);
    for (const auto& w : snap_report.warnings) result.log.note(w);

    layer = resolve_overlaps(layer, opts, &result.log);
    layer = fill_gaps(layer, opts.drop_above, opts, &result.log);

    result.report = doctor(layer, opts.area_tol, opts.snap_grid);
    result.log.union_area_after = area(union_all(repair_detail::layer_geometries(layer)));
    result.layer = std::move(layer);
    return result;
}

}  // namespace redistrict
