#pragma once

// Synthetic layers used across the test suites.

#include <string>
#include <vector>

#include "redistrict/geometry.hpp"
#include "redistrict/layer.hpp"

namespace fixtures {

/// nx-by-ny grid of square cells, ids "<prefix><x>_<y>", no attributes.
inline redistrict::GeoLayer grid_layer(int nx, int ny, double cell = 1.0,
                                       const std::string& prefix = "c") {
    redistrict::GeoLayer layer;
    layer.crs_tag = "utm:16N";
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            redistrict::GeoUnit u;
            u.id = prefix + std::to_string(x) + "_" + std::to_string(y);
            u.geometry = redistrict::make_rect(x * cell, y * cell, (x + 1) * cell, (y + 1) * cell);
            layer.units.push_back(std::move(u));
        }
    }
    return layer;
}

/// Replaces a unit's geometry in place.
inline void set_geometry(redistrict::GeoLayer& layer, const std::string& id,
                         redistrict::MultiPolygon g) {
    int idx = layer.unit_index(id);
    layer.units[static_cast<std::size_t>(idx)].geometry = std::move(g);
}

}  // namespace fixtures
