#include "frobstab/profile.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace frobstab {

SlopeProfile::SlopeProfile(std::vector<ProfileBlock> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InputError("profile: must have at least one block");
    for (const auto& b : blocks_)
        if (b.rank < 1) throw InputError("profile: every block rank must be >= 1");
}

std::int64_t SlopeProfile::total_rank() const {
    std::int64_t r = 0;
    for (const auto& b : blocks_) r += b.rank;
    return r;
}

Rational SlopeProfile::total_degree() const {
    Rational d;
    for (const auto& b : blocks_) d += Rational(b.rank) * b.slope;
    return d;
}

bool SlopeProfile::is_normalized() const {
    for (std::size_t i = 1; i < blocks_.size(); ++i)
        if (!(blocks_[i - 1].slope > blocks_[i].slope)) return false;
    return true;
}

SlopeProfile normalize(const SlopeProfile& profile) {
    std::map<Rational, std::int64_t, std::greater<Rational>> by_slope;
    for (const auto& b : profile.blocks()) by_slope[b.slope] += b.rank;
    std::vector<ProfileBlock> blocks;
    blocks.reserve(by_slope.size());
    for (const auto& [slope, rank] : by_slope) blocks.push_back({rank, slope});
    return SlopeProfile(std::move(blocks));
}

ProfileStats profile_stats(const SlopeProfile& profile) {
    const SlopeProfile normal = profile.is_normalized() ? profile : normalize(profile);
    ProfileStats st;
    st.mu = profile.total_degree() / Rational(profile.total_rank());
    st.mu_max = normal.blocks().front().slope;
    st.mu_min = normal.blocks().back().slope;
    st.instability = st.mu_max - st.mu_min;
    return st;
}

HNPolygon make_polygon(std::vector<std::pair<std::int64_t, Rational>> vertices) {
    if (vertices.empty()) throw InputError("polygon: must have at least one vertex");
    if (vertices.front().first != 0 || !vertices.front().second.is_zero())
        throw InputError("polygon: must start at (0, 0)");
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (vertices[i - 1].first >= vertices[i].first)
            throw InputError("polygon: vertex ranks must be strictly increasing");
    HNPolygon poly;
    poly.vertices = std::move(vertices);
    return poly;
}

HNPolygon polygon_of(const SlopeProfile& profile) {
    if (!profile.is_normalized())
        throw NotNormalizedError("polygon_of: profile is not in HN-normal form; normalize it first");
    HNPolygon poly;
    poly.vertices.reserve(profile.blocks().size() + 1);
    poly.vertices.emplace_back(0, Rational(0));
    std::int64_t rank = 0;
    Rational degree;
    for (const auto& b : profile.blocks()) {
        rank += b.rank;
        degree += Rational(b.rank) * b.slope;
        poly.vertices.emplace_back(rank, degree);
    }
    return poly;
}

Rational HNPolygon::height_at(std::int64_t x) const {
    if (x < 0 || x > total_rank()) throw InputError("polygon: height query outside [0, total_rank]");
    auto it = std::lower_bound(vertices.begin(), vertices.end(), x,
                               [](const auto& v, std::int64_t xv) { return v.first < xv; });
    if (it->first == x) return it->second;
    const auto& hi = *it;
    const auto& lo = *std::prev(it);
    // lo.first < x < hi.first; exact linear interpolation
    return lo.second + (hi.second - lo.second) * Rational(x - lo.first, hi.first - lo.first);
}

bool dominates(const HNPolygon& p, const HNPolygon& q) {
    if (p.vertices.empty() || q.vertices.empty())
        throw InputError("dominates: degenerate polygon");
    if (p.total_rank() != q.total_rank())
        throw InputError("dominates: polygons must have equal total rank");
    // Piecewise linearity makes checking the merged vertex ranks exact.
    std::vector<std::int64_t> xs;
    xs.reserve(p.vertices.size() + q.vertices.size());
    for (const auto& v : p.vertices) xs.push_back(v.first);
    for (const auto& v : q.vertices) xs.push_back(v.first);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::int64_t x : xs)
        if (p.height_at(x) < q.height_at(x)) return false;
    return true;
}

bool dominates_same_endpoints(const HNPolygon& p, const HNPolygon& q) {
    return dominates(p, q) && p.total_degree() == q.total_degree();
}

} // namespace frobstab
