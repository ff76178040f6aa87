#pragma once

// Comparison of an analytical shock-layer solution with an externally computed
// reference field given as scattered (z, r, rho, p) points.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"
#include "stream_solver.hpp"

namespace shocklayer {

struct ReferencePoint {
    double z = 0.0;
    double r = 0.0;
    double rho = 0.0;
    double p = 0.0;
};

/// Static 2-D k-d tree over point indices.
class KdTree2 {
public:
    KdTree2() = default;

    explicit KdTree2(const std::vector<ReferencePoint>& pts) : pts_(&pts) {
        idx_.resize(pts.size());
        std::iota(idx_.begin(), idx_.end(), std::size_t{0});
        build(0, idx_.size(), 0);
    }

    struct Neighbor {
        std::size_t index;
        double dist2;
    };

    /// Up to k nearest points, closest first; ties broken by coordinates so
    /// the answer does not depend on input order.
    std::vector<Neighbor> nearest(double z, double r, std::size_t k) const {
        std::vector<Neighbor> best;
        best.reserve(k + 1);
        if (!idx_.empty()) search(0, idx_.size(), 0, z, r, k, best);
        return best;
    }

private:
    void build(std::size_t lo, std::size_t hi, int axis) {
        if (hi - lo <= 1) return;
        const std::size_t mid = lo + (hi - lo) / 2;
        std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi,
                         [&](std::size_t a, std::size_t b) { return less(a, b, axis); });
        build(lo, mid, 1 - axis);
        build(mid + 1, hi, 1 - axis);
    }

    double coord(std::size_t i, int axis) const {
        return axis == 0 ? (*pts_)[i].z : (*pts_)[i].r;
    }

    bool less(std::size_t a, std::size_t b, int axis) const {
        const auto& pa = (*pts_)[a];
        const auto& pb = (*pts_)[b];
        return axis == 0 ? std::tie(pa.z, pa.r) < std::tie(pb.z, pb.r)
                         : std::tie(pa.r, pa.z) < std::tie(pb.r, pb.z);
    }

    bool closer(const Neighbor& a, const Neighbor& b) const {
        if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
        return less(a.index, b.index, 0);
    }

    void offer(std::size_t i, double z, double r, std::size_t k,
               std::vector<Neighbor>& best) const {
        const double dz = (*pts_)[i].z - z;
        const double dr = (*pts_)[i].r - r;
        const Neighbor cand{i, dz * dz + dr * dr};
        if (best.size() == k && !closer(cand, best.back())) return;
        auto pos = std::upper_bound(best.begin(), best.end(), cand,
                                    [&](const Neighbor& a, const Neighbor& b) { return closer(a, b); });
        best.insert(pos, cand);
        if (best.size() > k) best.pop_back();
    }

    void search(std::size_t lo, std::size_t hi, int axis, double z, double r, std::size_t k,
                std::vector<Neighbor>& best) const {
        if (lo >= hi) return;
        const std::size_t mid = lo + (hi - lo) / 2;
        const std::size_t i = idx_[mid];
        offer(i, z, r, k, best);
        const double diff = (axis == 0 ? z : r) - coord(i, axis);
        const bool left_first = diff < 0.0;
        if (left_first) search(lo, mid, 1 - axis, z, r, k, best);
        else search(mid + 1, hi, 1 - axis, z, r, k, best);
        if (best.size() < k || diff * diff <= best.back().dist2) {
            if (left_first) search(mid + 1, hi, 1 - axis, z, r, k, best);
            else search(lo, mid, 1 - axis, z, r, k, best);
        }
    }

    const std::vector<ReferencePoint>* pts_ = nullptr;
    std::vector<std::size_t> idx_;
};

struct Interpolated {
    double rho;
    double p;
};

class ReferenceField {
public:
    static constexpr std::size_t kMinPoints = 100;
    static constexpr std::size_t kNeighbors = 4;
    static constexpr double kHullRadius = 0.05;

    explicit ReferenceField(std::vector<ReferencePoint> points) : points_(std::move(points)) {
        if (points_.size() < kMinPoints)
            throw ValidationError("reference field needs at least " + std::to_string(kMinPoints) +
                                  " points, got " + std::to_string(points_.size()));
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& q = points_[i];
            if (!std::isfinite(q.z) || !std::isfinite(q.r))
                throw ValidationError("non-finite coordinate at point " + std::to_string(i));
            if (!(q.rho > 0.0))
                throw ValidationError("rho must be > 0 (point " + std::to_string(i) + ")");
            if (!(q.p > 0.0))
                throw ValidationError("p must be > 0 (point " + std::to_string(i) + ")");
        }
        tree_ = KdTree2(points_);
    }

    // The tree points into points_, so copies must rebuild it.
    ReferenceField(const ReferenceField& o) : points_(o.points_), tree_(points_) {}
    ReferenceField& operator=(const ReferenceField& o) {
        points_ = o.points_;
        tree_ = KdTree2(points_);
        return *this;
    }
    ReferenceField(ReferenceField&& o) noexcept : points_(std::move(o.points_)), tree_(points_) {}
    ReferenceField& operator=(ReferenceField&& o) noexcept {
        points_ = std::move(o.points_);
        tree_ = KdTree2(points_);
        return *this;
    }

    const std::vector<ReferencePoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    bool in_hull(double z, double r) const {
        const auto nn = tree_.nearest(z, r, 1);
        return !nn.empty() && nn.front().dist2 <= kHullRadius * kHullRadius;
    }

    /// Inverse-distance weighting (exponent 2) over the 4 nearest points.
    Interpolated interpolate(double z, double r) const {
        const auto nn = tree_.nearest(z, r, kNeighbors);
        if (nn.empty() || nn.front().dist2 > kHullRadius * kHullRadius)
            throw OutOfHull("no reference point within " + std::to_string(kHullRadius) +
                            " of (" + std::to_string(z) + ", " + std::to_string(r) + ")");
        if (nn.front().dist2 == 0.0) {
            const auto& q = points_[nn.front().index];
            return {q.rho, q.p};
        }
        double wsum = 0.0, rho = 0.0, p = 0.0;
        for (const auto& n : nn) {
            const double w = 1.0 / n.dist2;
            wsum += w;
            rho += w * points_[n.index].rho;
            p += w * points_[n.index].p;
        }
        return {rho / wsum, p / wsum};
    }

private:
    std::vector<ReferencePoint> points_;
    KdTree2 tree_;
};

/// Loads a CSV with at least the columns z, r, rho, p (any order, extra
/// columns ignored), so field files written by this library load as well.
inline ReferenceField load_reference(const std::string& path) {
    const auto table = csv::read_file(path);
    const auto zc = table.column("z");
    const auto rc = table.column("r");
    const auto rhoc = table.column("rho");
    const auto pc = table.column("p");
    if (!zc || !rc || !rhoc || !pc)
        throw ParseError("reference file needs columns z, r, rho, p", 1);
    std::vector<ReferencePoint> pts;
    pts.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const ReferencePoint q{row[*zc], row[*rc], row[*rhoc], row[*pc]};
        if (!(q.rho > 0.0) || !(q.p > 0.0) || !std::isfinite(q.z) || !std::isfinite(q.r))
            throw ValidationError("line " + std::to_string(table.row_lines[i]) +
                                  ": rho and p must be > 0 and coordinates finite");
        pts.push_back(q);
    }
    return ReferenceField(std::move(pts));
}

struct DensityComparison {
    double max_error = 0.0;
    std::size_t compared = 0;
    std::size_t skipped = 0;
};

/// Largest |rho_analytical - rho_reference| over every layer sample inside
/// the reference hull.
inline DensityComparison max_density_error(const std::vector<StationSolution>& solution,
                                           const ReferenceField& field) {
    DensityComparison c;
    for (const auto& st : solution)
        for (const auto& s : st.samples) {
            if (!field.in_hull(s.z, s.r)) {
                ++c.skipped;
                continue;
            }
            c.max_error = std::max(c.max_error, std::abs(s.rho - field.interpolate(s.z, s.r).rho));
            ++c.compared;
        }
    if (c.compared == 0) throw NoOverlap("no layer sample lies inside the reference field");
    return c;
}

struct SurfacePressureComparison {
    double analytical = 0.0;
    double reference = 0.0;
    double error = 0.0;
    std::size_t compared = 0;
    std::size_t skipped = 0;
};

/// Integrated surface pressure along the body, analytical vs the reference
/// pressure interpolated at the same body points. Points outside the hull are
/// dropped from both polylines.
inline SurfacePressureComparison surface_pressure_error(const std::vector<BodyPoint>& body,
                                                        const ReferenceField& field) {
    SurfacePressureComparison c;
    std::vector<BodyPoint> ours, theirs;
    for (const auto& b : body) {
        if (!field.in_hull(b.z, b.r)) {
            ++c.skipped;
            continue;
        }
        ours.push_back(b);
        auto ref = b;
        ref.p_b = field.interpolate(b.z, b.r).p;
        theirs.push_back(ref);
    }
    c.compared = ours.size();
    if (ours.size() < 2) throw NoOverlap("fewer than 2 body points inside the reference field");
    c.analytical = integrated_surface_pressure(ours);
    c.reference = integrated_surface_pressure(theirs);
    c.error = std::abs(c.analytical - c.reference);
    return c;
}

/// Reads a field CSV written by write_field_csv back into station solutions.
/// Only the columns present in the file are restored.
inline std::vector<StationSolution> load_field(const std::string& path) {
    const auto table = csv::read_file(path);
    const char* names[] = {"station", "z", "r", "psi", "p", "rho", "u", "y"};
    std::array<std::size_t, 8> col{};
    for (std::size_t k = 0; k < 8; ++k) {
        const auto c = table.column(names[k]);
        if (!c) throw ParseError(std::string("field file lacks column '") + names[k] + "'", 1);
        col[k] = *c;
    }
    std::vector<StationSolution> out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const double station = row[col[0]];
        if (station < 0.0 || station != std::floor(station))
            throw ParseError("station index must be a non-negative integer",
                             table.row_lines[i]);
        const auto s = static_cast<std::size_t>(station);
        if (s >= out.size()) out.resize(s + 1);
        LayerSample ls;
        ls.z = row[col[1]];
        ls.r = row[col[2]];
        ls.psi = row[col[3]];
        ls.p = row[col[4]];
        ls.rho = row[col[5]];
        ls.u = row[col[6]];
        ls.y = row[col[7]];
        out[s].samples.push_back(ls);
    }
    return out;
}

/// Body polyline implied by a loaded field: the psi = 0 sample of each station.
inline std::vector<BodyPoint> body_from_field(const std::vector<StationSolution>& field) {
    std::vector<BodyPoint> body;
    for (const auto& st : field) {
        if (st.samples.empty()) continue;
        const auto& last = st.samples.back();
        body.push_back({last.z, last.r, last.p, last.y});
    }
    return body;
}

} // namespace shocklayer
