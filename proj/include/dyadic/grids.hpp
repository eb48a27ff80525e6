#pragma once

#include <cstddef>
#include <mutex>
#include <vector>

#include "dyadic/geometry.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

// A cube of filtration m, generation k (side 2^-k), at lattice position j.
// Its geometry is prod_i [2^-k j_i + o(m,k), 2^-k (j_i + 1) + o(m,k)) where
// o(m,k) is the scalar diagonal offset of that filtration and generation.
struct CubeId {
    int m = 0;
    long k = 0;
    std::vector<Integer> j;

    bool operator==(const CubeId& other) const {
        return m == other.m && k == other.k && j == other.j;
    }
    bool operator<(const CubeId& other) const;
};

struct CubeIdHash {
    std::size_t operator()(const CubeId& id) const;
};

// The n+1 shifted dyadic filtrations of R^n.  Filtration 0 is the standard
// dyadic grid.  Filtration m in 1..n has initial cube [0,1)^n + (m/p) v with
// v = (1,...,1) and p the smallest odd integer > n; its coarser generations
// are produced by the diagonal parent rule (see offset()).
class GridFamily {
public:
    explicit GridFamily(int dimension);

    int dimension() const { return n_; }
    int p() const { return p_; }
    int filtration_count() const { return n_ + 1; }

    // Scalar diagonal offset o(m,k): generation k of filtration m has lower
    // corners at 2^-k j + o(m,k) v.
    //
    // For k >= 0 the offset is m/p.  For k < 0 it is 2^-k a_k / p where a_0 = m
    // and a_{k-1} = (a_k - t p)/2 with t = a_k mod 2.  Each step selects, among
    // the two diagonal parents of the j = 0 cube, the unique one whose shift is
    // an integer multiple of 2^{-k+1}/p; exactly one parity choice works
    // because p is odd, and this is asserted on every step.
    Rational offset(int m, long k) const;

    Box cube_box(const CubeId& id) const;

    // The unique cube of (m, k) containing x: j_i = floor(2^k (x_i - o(m,k))).
    CubeId locate(int m, long k, const Point& x) const;

    // The unique cube at generation k-1 containing id's box.
    CubeId parent(const CubeId& id) const;

    // The 2^n cubes at generation k+1 partitioning id's box.
    std::vector<CubeId> children(const CubeId& id) const;

    // True iff every coordinate of x is an integer multiple of 2^-k/p.  This
    // lattice contains the vertices of all generation-k cubes of every
    // filtration in the family.
    bool in_lattice(const Point& x, long k) const;

private:
    // a_k value for k <= 0 (index |k| into the per-filtration table).
    Integer shift_numerator(int m, long k) const;

    int n_;
    int p_;
    mutable std::mutex memo_mutex_;
    mutable std::vector<std::vector<Integer>> a_memo_;  // [m][|k|], k <= 0
};

}  // namespace dyadic
