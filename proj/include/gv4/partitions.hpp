#pragma once

// Brute-force plane partition enumeration.  A plane partition is a finite
// downward-closed subset of Z^3_{>=0}; these index torus-fixed stable pairs
// on the local elliptic curve, and their counts give the MacMahon
// coefficients.  Used as the independent oracle for the series machinery,
// so this code deliberately shares nothing with qseries.

#include "gv4/qseries.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace gv4 {

using Box = std::array<int, 3>;

struct PlanePartition {
    std::vector<Box> boxes; // sorted colexicographically

    friend bool operator==(const PlanePartition&, const PlanePartition&) = default;
};

namespace detail {

// colex: compare i3, then i2, then i1.  Coordinatewise dominance implies
// colex order, so colex prefixes of a diagram are downward closed.
inline bool colex_less(const Box& a, const Box& b) {
    if (a[2] != b[2])
        return a[2] < b[2];
    if (a[1] != b[1])
        return a[1] < b[1];
    return a[0] < b[0];
}

inline bool contains_box(const std::vector<Box>& sorted, const Box& b) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), b, colex_less);
    return it != sorted.end() && *it == b;
}

inline bool addable(const std::vector<Box>& cur, const Box& c) {
    if (contains_box(cur, c))
        return false;
    for (int axis = 0; axis < 3; ++axis)
        if (c[static_cast<std::size_t>(axis)] > 0) {
            Box p = c;
            --p[static_cast<std::size_t>(axis)];
            if (!contains_box(cur, p))
                return false;
        }
    return true;
}

// Depth-first enumeration adding boxes in strictly increasing colex order.
// Every diagram lists its boxes in exactly one such order, so each is
// visited once; cur stays colex-sorted because new boxes append at the end.
template <class Visit>
void enumerate_partitions(std::vector<Box>& cur, int m, Visit&& visit) {
    if (static_cast<int>(cur.size()) == m) {
        visit(const_cast<const std::vector<Box>&>(cur));
        return;
    }
    std::vector<Box> cands;
    if (cur.empty()) {
        cands.push_back({0, 0, 0});
    } else {
        const Box& last = cur.back();
        for (const Box& b : cur)
            for (int axis = 0; axis < 3; ++axis) {
                Box c = b;
                ++c[static_cast<std::size_t>(axis)];
                if (colex_less(last, c) && addable(cur, c))
                    cands.push_back(c);
            }
        std::sort(cands.begin(), cands.end(), colex_less);
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    }
    for (const Box& c : cands) {
        cur.push_back(c);
        enumerate_partitions(cur, m, visit);
        cur.pop_back();
    }
}

} // namespace detail

inline constexpr int kCountBound = 14;
inline constexpr int kListBound = 10;

inline long count_plane_partitions(int m) {
    if (m < 0 || m > kCountBound)
        throw input_error("count_plane_partitions: size must be between 0 and "
                          + std::to_string(kCountBound));
    long count = 0;
    std::vector<Box> cur;
    detail::enumerate_partitions(cur, m, [&](const std::vector<Box>&) { ++count; });
    return count;
}

inline std::vector<PlanePartition> list_plane_partitions(int m) {
    if (m < 0 || m > kListBound)
        throw input_error("list_plane_partitions: size must be between 0 and "
                          + std::to_string(kListBound));
    std::vector<PlanePartition> out;
    std::vector<Box> cur;
    detail::enumerate_partitions(cur, m,
                                 [&](const std::vector<Box>& boxes) { out.push_back({boxes}); });
    return out;
}

inline bool is_downward_closed(const PlanePartition& p) {
    std::vector<Box> sorted = p.boxes;
    std::sort(sorted.begin(), sorted.end(), detail::colex_less);
    for (const Box& b : sorted)
        for (int axis = 0; axis < 3; ++axis)
            if (b[static_cast<std::size_t>(axis)] > 0) {
                Box q = b;
                --q[static_cast<std::size_t>(axis)];
                if (!detail::contains_box(sorted, q))
                    return false;
            }
    return true;
}

// the local elliptic curve's P0 series: the q^m coefficient counts size-m
// diagrams, which is the enumerative side of the MacMahon identity
inline QSeries p0_local_elliptic_series(long cutoff) {
    if (cutoff < 0 || cutoff > kCountBound)
        throw input_error("p0_local_elliptic_series: cutoff must be between 0 and "
                          + std::to_string(kCountBound));
    QSeries out = QSeries::zero(rank1_lattice(cutoff));
    for (long m = 0; m <= cutoff; ++m)
        out.set({m}, BigRat(count_plane_partitions(static_cast<int>(m))));
    return out;
}

} // namespace gv4
