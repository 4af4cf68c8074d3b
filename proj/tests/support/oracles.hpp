#pragma once

// Independent reference computations used as test oracles. Everything here
// is deliberately implemented from first principles, separate from the
// library code paths it checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "redistrict/geometry.hpp"

namespace oracle {

// ---- convex clipping (Sutherland-Hodgman) -----------------------------------

/// Intersection of two convex polygons (vertex lists, ccw, not closed) by
/// clipping the subject against each half-plane of the clip polygon.
inline std::vector<redistrict::Point> convex_clip(std::vector<redistrict::Point> subject,
                                                  const std::vector<redistrict::Point>& clip) {
    using redistrict::Point;
    auto side = [](const Point& a, const Point& b, const Point& p) {
        return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    };
    auto line_intersect = [](const Point& a, const Point& b, const Point& p, const Point& q) {
        double a1 = b.y - a.y, b1 = a.x - b.x, c1 = a1 * a.x + b1 * a.y;
        double a2 = q.y - p.y, b2 = p.x - q.x, c2 = a2 * p.x + b2 * p.y;
        double det = a1 * b2 - a2 * b1;
        return Point{(b2 * c1 - b1 * c2) / det, (a1 * c2 - a2 * c1) / det};
    };

    std::vector<Point> output = std::move(subject);
    std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !output.empty(); ++i) {
        const Point& ca = clip[i];
        const Point& cb = clip[(i + 1) % n];
        std::vector<Point> input = std::move(output);
        output.clear();
        std::size_t m = input.size();
        for (std::size_t j = 0; j < m; ++j) {
            const Point& cur = input[j];
            const Point& prev = input[(j + m - 1) % m];
            bool cur_in = side(ca, cb, cur) >= 0.0;
            bool prev_in = side(ca, cb, prev) >= 0.0;
            if (cur_in) {
                if (!prev_in) output.push_back(line_intersect(ca, cb, prev, cur));
                output.push_back(cur);
            } else if (prev_in) {
                output.push_back(line_intersect(ca, cb, prev, cur));
            }
        }
    }
    return output;
}

inline double polygon_area(const std::vector<redistrict::Point>& pts) {
    double acc = 0.0;
    std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    return std::abs(acc) * 0.5;
}

inline double convex_intersection_area(const std::vector<redistrict::Point>& a,
                                       const std::vector<redistrict::Point>& b) {
    return polygon_area(convex_clip(a, b));
}

// ---- Monte-Carlo area by point-in-polygon sampling ---------------------------

/// Winding-number containment test, independent of the library's even-odd code.
inline bool winding_contains(const redistrict::Ring& ring, double px, double py) {
    int wn = 0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const auto& a = ring[i];
        const auto& b = ring[i + 1];
        double cross = (b.x - a.x) * (py - a.y) - (px - a.x) * (b.y - a.y);
        if (a.y <= py) {
            if (b.y > py && cross > 0.0) ++wn;
        } else {
            if (b.y <= py && cross < 0.0) --wn;
        }
    }
    return wn != 0;
}

inline bool winding_contains(const redistrict::MultiPolygon& g, double px, double py) {
    for (const auto& part : g.parts) {
        if (!winding_contains(part.exterior, px, py)) continue;
        bool in_hole = false;
        for (const auto& h : part.holes) {
            if (winding_contains(h, px, py)) {
                in_hole = true;
                break;
            }
        }
        if (!in_hole) return true;
    }
    return false;
}

inline double monte_carlo_area(const redistrict::MultiPolygon& g, std::size_t samples,
                               std::uint64_t seed) {
    redistrict::Box bb = redistrict::bounds(g);
    std::mt19937_64 gen(seed);
    auto uniform = [&gen](double lo, double hi) {
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    };
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        double px = uniform(bb.min_x, bb.max_x);
        double py = uniform(bb.min_y, bb.max_y);
        if (winding_contains(g, px, py)) ++hits;
    }
    double box_area = (bb.max_x - bb.min_x) * (bb.max_y - bb.min_y);
    return box_area * static_cast<double>(hits) / static_cast<double>(samples);
}

// ---- high-precision transverse Mercator (Krueger series in n) -----------------

/// Forward UTM via the exact-conformal-latitude Krueger series with sixth-order
/// coefficients in the third flattening. Accurate to nanometers; the library's
/// Snyder-form series is checked against this.
inline redistrict::Point krueger_utm(double lon_deg, double lat_deg, int zone) {
    const double a = 6378137.0;
    const double f = 1.0 / 298.257223563;
    const double n = f / (2.0 - f);
    const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
    const double k0 = 0.9996;

    const double big_a = a / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);

    const double alpha[6] = {
        n / 2.0 - 2.0 * n2 / 3.0 + 5.0 * n3 / 16.0 + 41.0 * n4 / 180.0 -
            127.0 * n5 / 288.0 + 7891.0 * n6 / 37800.0,
        13.0 * n2 / 48.0 - 3.0 * n3 / 5.0 + 557.0 * n4 / 1440.0 + 281.0 * n5 / 630.0 -
            1983433.0 * n6 / 1935360.0,
        61.0 * n3 / 240.0 - 103.0 * n4 / 140.0 + 15061.0 * n5 / 26880.0 +
            167603.0 * n6 / 181440.0,
        49561.0 * n4 / 161280.0 - 179.0 * n5 / 168.0 + 6601661.0 * n6 / 7257600.0,
        34729.0 * n5 / 80640.0 - 3418889.0 * n6 / 1995840.0,
        212378941.0 * n6 / 319334400.0};

    const double deg = M_PI / 180.0;
    const double lat = lat_deg * deg;
    const double lon0 = (-183.0 + 6.0 * zone) * deg;
    const double dlon = lon_deg * deg - lon0;

    const double e = std::sqrt(f * (2.0 - f));
    const double t = std::tan(lat);
    const double sigma = std::sinh(e * std::atanh(e * t / std::sqrt(1.0 + t * t)));
    const double tp = t * std::sqrt(1.0 + sigma * sigma) - sigma * std::sqrt(1.0 + t * t);

    const double xi_p = std::atan2(tp, std::cos(dlon));
    const double eta_p = std::asinh(std::sin(dlon) / std::hypot(tp, std::cos(dlon)));

    double xi = xi_p, eta = eta_p;
    for (int j = 1; j <= 6; ++j) {
        xi += alpha[j - 1] * std::sin(2.0 * j * xi_p) * std::cosh(2.0 * j * eta_p);
        eta += alpha[j - 1] * std::cos(2.0 * j * xi_p) * std::sinh(2.0 * j * eta_p);
    }

    redistrict::Point p;
    p.x = k0 * big_a * eta + 500000.0;
    p.y = k0 * big_a * xi;
    if (lat_deg < 0.0) p.y += 10000000.0;
    return p;
}

/// Meridian arc length by adaptive Simpson quadrature of the closed-form
/// integrand; no series involved.
inline double meridian_arc_numeric(double lat_rad) {
    const double a = 6378137.0;
    const double f = 1.0 / 298.257223563;
    const double e2 = f * (2.0 - f);
    auto integrand = [&](double t) {
        double s = std::sin(t);
        return std::pow(1.0 - e2 * s * s, -1.5);
    };
    std::function<double(double, double, double, double, double, double, int)> simpson =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
            int depth) -> double {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        double flm = integrand(lm), frm = integrand(rm);
        double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (depth <= 0 || std::abs(left + right - whole) < 1e-15 * std::abs(left + right)) {
            return left + right;
        }
        return simpson(lo, mid, flo, flm, fmid, left, depth - 1) +
               simpson(mid, hi, fmid, frm, fhi, right, depth - 1);
    };
    if (lat_rad == 0.0) return 0.0;
    double flo = integrand(0.0), fhi = integrand(lat_rad);
    double fmid = integrand(0.5 * lat_rad);
    double whole = lat_rad / 6.0 * (flo + 4.0 * fmid + fhi);
    return a * (1.0 - e2) * simpson(0.0, lat_rad, flo, fmid, fhi, whole, 40);
}

// ---- matrix-tree theorem -------------------------------------------------------

/// Number of spanning trees of a simple graph: determinant of any cofactor of
/// the Laplacian, by Gaussian elimination with partial pivoting.
inline double spanning_tree_count(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 1) return 1.0;
    std::vector<std::vector<double>> lap(n, std::vector<double>(n, 0.0));
    for (auto [u, v] : edges) {
        lap[u][v] -= 1.0;
        lap[v][u] -= 1.0;
        lap[u][u] += 1.0;
        lap[v][v] += 1.0;
    }
    int m = n - 1;
    std::vector<std::vector<double>> mat(m, std::vector<double>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) mat[i][j] = lap[i][j];
    }
    double det = 1.0;
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(mat[r][col]) > std::abs(mat[pivot][col])) pivot = r;
        }
        if (std::abs(mat[pivot][col]) < 1e-12) return 0.0;
        if (pivot != col) {
            std::swap(mat[pivot], mat[col]);
            det = -det;
        }
        det *= mat[col][col];
        for (int r = col + 1; r < m; ++r) {
            double factor = mat[r][col] / mat[col][col];
            for (int c = col; c < m; ++c) mat[r][c] -= factor * mat[col][c];
        }
    }
    return std::round(std::abs(det));
}

// ---- chi-square p-value ---------------------------------------------------------

namespace gamma_detail {

inline double gamma_series_p(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_cf_q(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace gamma_detail

/// Upper-tail p-value of a chi-square statistic with the given degrees of
/// freedom (regularized incomplete gamma Q(dof/2, stat/2)).
inline double chi_square_pvalue(double stat, int dof) {
    if (stat <= 0.0) return 1.0;
    double a = 0.5 * dof;
    double x = 0.5 * stat;
    if (x < a + 1.0) return 1.0 - gamma_detail::gamma_series_p(a, x);
    return gamma_detail::gamma_cf_q(a, x);
}

/// Chi-square statistic for observed counts against uniform expectation.
inline double chi_square_uniform_stat(const std::vector<std::size_t>& counts) {
    std::size_t total = 0;
    for (auto c : counts) total += c;
    double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace oracle
