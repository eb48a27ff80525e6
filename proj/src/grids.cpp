#include "dyadic/grids.hpp"

#include <stdexcept>

#include "dyadic/errors.hpp"

namespace dyadic {

bool CubeId::operator<(const CubeId& other) const {
    if (m != other.m) return m < other.m;
    if (k != other.k) return k < other.k;
    if (j.size() != other.j.size()) return j.size() < other.j.size();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const int c = cmp(j[i], other.j[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::size_t CubeIdHash::operator()(const CubeId& id) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::size_t>(id.m));
    mix(static_cast<std::size_t>(id.k));
    for (const auto& z : id.j) {
        mix(static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2));
        const std::size_t limbs = mpz_size(z.get_mpz_t());
        const mp_limb_t* data = mpz_limbs_read(z.get_mpz_t());
        for (std::size_t i = 0; i < limbs; ++i) mix(static_cast<std::size_t>(data[i]));
    }
    return h;
}

GridFamily::GridFamily(int dimension) : n_(dimension) {
    if (dimension < 1) throw std::invalid_argument("GridFamily: dimension must be >= 1");
    p_ = (dimension % 2 == 0) ? dimension + 1 : dimension + 2;
    a_memo_.resize(static_cast<std::size_t>(n_) + 1);
    for (int m = 0; m <= n_; ++m) a_memo_[static_cast<std::size_t>(m)] = {Integer(m)};
}

Integer GridFamily::shift_numerator(int m, long k) const {
    const std::size_t depth = static_cast<std::size_t>(-k);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto& table = a_memo_[static_cast<std::size_t>(m)];
    while (table.size() <= depth) {
        const Integer& a = table.back();
        const bool odd = mpz_odd_p(a.get_mpz_t()) != 0;
        Integer next = odd ? (a - p_) : a;
        if (mpz_odd_p(next.get_mpz_t()))
            throw invariant_error("grid offset recursion: no even parent shift");
        Integer other = odd ? a : (a - p_);
        if (mpz_even_p(other.get_mpz_t()))
            throw invariant_error("grid offset recursion: both parent shifts even");
        next /= 2;
        table.push_back(std::move(next));
    }
    return table[depth];
}

Rational GridFamily::offset(int m, long k) const {
    if (m < 0 || m > n_) throw std::invalid_argument("offset: filtration index out of range");
    if (k >= 0) return make_rational(m, p_);
    Integer a = shift_numerator(m, k);
    Integer scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    return make_rational(a * scale, p_);
}

Box GridFamily::cube_box(const CubeId& id) const {
    if (id.j.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("cube_box: dimension mismatch");
    const Rational side = pow2(-id.k);
    const Rational o = offset(id.m, id.k);
    Point lower;
    lower.x.reserve(id.j.size());
    for (const auto& ji : id.j) lower.x.push_back(side * ji + o);
    return Box(std::move(lower), side);
}

CubeId GridFamily::locate(int m, long k, const Point& x) const {
    if (x.dim() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("locate: dimension mismatch");
    const Rational o = offset(m, k);
    const Rational scale = pow2(k);
    CubeId id;
    id.m = m;
    id.k = k;
    id.j.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        id.j.push_back(rational_floor((x[i] - o) * scale));
    return id;
}

CubeId GridFamily::parent(const CubeId& id) const {
    const Box box = cube_box(id);
    return locate(id.m, id.k - 1, box.lower);
}

std::vector<CubeId> GridFamily::children(const CubeId& id) const {
    const Box box = cube_box(id);
    const CubeId base = locate(id.m, id.k + 1, box.lower);
    std::vector<CubeId> out;
    out.reserve(static_cast<std::size_t>(1) << n_);
    for (unsigned long mask = 0; mask < (1ul << n_); ++mask) {
        CubeId child = base;
        for (int i = 0; i < n_; ++i)
            if (mask & (1ul << i)) child.j[static_cast<std::size_t>(i)] += 1;
        out.push_back(std::move(child));
    }
    return out;
}

bool GridFamily::in_lattice(const Point& x, long k) const {
    // x_i in (2^-k/p) Z  <=>  x_i * p * 2^k is an integer.
    const Rational scale = pow2(k) * p_;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (!is_integer(x[i] * scale)) return false;
    }
    return true;
}

}  // namespace dyadic
