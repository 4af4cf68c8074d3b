#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "redistrict/errors.hpp"
#include "redistrict/geometry.hpp"

namespace redistrict {

/// Attribute cell. Integers stay integers so population sums are exact;
/// prorated quantities become doubles.
using AttrValue = std::variant<std::int64_t, double, std::string>;

inline bool attr_is_numeric(const AttrValue& v) {
    return !std::holds_alternative<std::string>(v);
}

inline double attr_as_double(const AttrValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&v)) return *d;
    throw MissingColumn("attribute is not numeric");
}

inline std::string attr_to_string(const AttrValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    const double d = std::get<double>(v);
    if (d == static_cast<std::int64_t>(d)) {
        return std::to_string(static_cast<std::int64_t>(d));
    }
    return std::to_string(d);
}

struct GeoUnit {
    std::string id;
    MultiPolygon geometry;
    std::vector<AttrValue> attrs;  // aligned with GeoLayer::columns
};

/// A collection of polygonal units (blocks, precincts, districts, counties)
/// with a shared attribute-column set and a CRS tag like "utm:16N".
struct GeoLayer {
    std::string crs_tag;
    std::vector<std::string> columns;
    std::vector<GeoUnit> units;

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return static_cast<int>(i);
        }
        return -1;
    }

    bool has_column(const std::string& name) const { return column_index(name) >= 0; }

    int require_column(const std::string& name) const {
        int idx = column_index(name);
        if (idx < 0) throw MissingColumn("layer is missing column '" + name + "'");
        return idx;
    }

    /// Appends a column, filling every unit with the given default.
    void add_column(const std::string& name, const AttrValue& fill) {
        if (has_column(name)) {
            throw ConfigError("column '" + name + "' already exists on layer");
        }
        columns.push_back(name);
        for (auto& u : units) u.attrs.push_back(fill);
    }

    void drop_column(const std::string& name) {
        int idx = column_index(name);
        if (idx < 0) return;
        columns.erase(columns.begin() + idx);
        for (auto& u : units) u.attrs.erase(u.attrs.begin() + idx);
    }

    void rename_column(const std::string& from, const std::string& to) {
        int idx = require_column(from);
        if (has_column(to)) {
            throw ConfigError("rename target column '" + to + "' already exists");
        }
        columns[static_cast<std::size_t>(idx)] = to;
    }

    int unit_index(const std::string& id) const {
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (units[i].id == id) return static_cast<int>(i);
        }
        return -1;
    }

    /// Checks unit-id uniqueness and attribute-row widths.
    void validate() const {
        std::unordered_set<std::string> seen;
        for (const auto& u : units) {
            if (!seen.insert(u.id).second) {
                throw InvalidGeometry("duplicate unit id '" + u.id + "' in layer");
            }
            if (u.attrs.size() != columns.size()) {
                throw InvalidGeometry("unit '" + u.id + "' has " +
                                      std::to_string(u.attrs.size()) + " attributes, layer has " +
                                      std::to_string(columns.size()) + " columns");
            }
        }
    }
};

struct SnapReport {
    std::vector<std::string> warnings;          // dropped degenerate rings
    std::vector<std::string> collapsed_units;   // would have vanished entirely
};

/// Rounds every coordinate in the layer to the grid. Degenerate rings are
/// dropped and reported; a unit whose whole geometry vanishes is an error.
inline GeoLayer snap_points(const GeoLayer& layer, double grid, SnapReport* report = nullptr) {
    if (!(grid > 0.0)) throw InvalidGeometry("snap grid must be positive");
    GeoLayer out;
    out.crs_tag = layer.crs_tag;
    out.columns = layer.columns;
    out.units.reserve(layer.units.size());
    for (const auto& u : layer.units) {
        SnapOutcome snapped = snap_geometry(u.geometry, grid);
        if (snapped.collapsed) {
            if (report) report->collapsed_units.push_back(u.id);
            throw GeometryCollapsed("unit '" + u.id + "' collapsed at snap grid " +
                                    std::to_string(grid));
        }
        if (snapped.dropped_rings > 0 && report) {
            report->warnings.push_back("unit '" + u.id + "': dropped " +
                                       std::to_string(snapped.dropped_rings) +
                                       " degenerate ring(s) while snapping");
        }
        out.units.push_back({u.id, std::move(snapped.geometry), u.attrs});
    }
    return out;
}

}  // namespace redistrict
