#include "dyadic/bruteforce.hpp"

#include <algorithm>
#include <set>

namespace dyadic {

std::vector<CubeId> oracle_maximal_heavy(const DiscreteMeasure& mu, const GridFamily& family,
                                         const Rational& lambda, const Window& window) {
    std::set<CubeId> all;
    for (int m = 0; m <= family.dimension(); ++m) {
        for (const auto& atom : mu.atoms()) {
            CubeId id = family.locate(m, window.k_max, atom.x);
            all.insert(id);
            for (long k = window.k_max; k > window.k_min; --k) {
                id = family.parent(id);
                all.insert(id);
            }
        }
    }

    std::vector<CubeId> heavy;
    std::vector<Box> boxes;
    for (const auto& id : all) {
        const Box box = family.cube_box(id);
        if (mu.box_integral_f(box) > lambda * mu.box_mass(dilate(box, 2))) {
            heavy.push_back(id);
            boxes.push_back(box);
        }
    }

    std::vector<CubeId> maximal;
    for (std::size_t i = 0; i < heavy.size(); ++i) {
        bool top = true;
        for (std::size_t j = 0; j < heavy.size(); ++j) {
            if (i == j) continue;
            if (box_contains_box(boxes[j], boxes[i]) && !(heavy[j] == heavy[i])) {
                top = false;
                break;
            }
        }
        if (top) maximal.push_back(heavy[i]);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

CZDecomposition naive_czd(const DiscreteMeasure& mu, const GridFamily& family,
                          const Rational& lambda, const DoublingParams& params,
                          const RSelector& selector, std::optional<Window> window) {
    if (lambda * mu.total_mass() <= mu.f_l1())
        throw hypothesis_error("naive_czd: level lambda must exceed ||f||_1/||mu||");
    const Window w = window ? *window : maximal_function_window(mu);

    CZDecomposition dec(lambda, params, w);
    dec.level_set.lambda = lambda;
    dec.level_set.overlap.assign(mu.size(), 0);
    for (const auto& id : oracle_maximal_heavy(mu, family, lambda, w)) {
        Box box = family.cube_box(id);
        auto members = mu.atoms_in_box(box);
        for (std::size_t i : members) ++dec.level_set.overlap[i];
        dec.level_set.cubes.push_back(id);
        dec.level_set.boxes.push_back(std::move(box));
        dec.level_set.members.push_back(std::move(members));
    }

    const std::size_t count = dec.level_set.cubes.size();
    dec.g.assign(mu.size(), Rational(0));
    dec.b.assign(mu.size(), Rational(0));
    if (count == 0) {
        for (std::size_t i = 0; i < mu.size(); ++i) dec.g[i] = mu.atoms()[i].f;
        return dec;
    }

    std::vector<CubeId> r_of(count);
    std::vector<Box> r_box;
    for (std::size_t q = 0; q < count; ++q) {
        r_of[q] = selector(mu, family, dec.level_set.cubes[q], params);
        r_box.push_back(family.cube_box(r_of[q]));
    }
    std::vector<std::size_t> order(count);
    for (std::size_t q = 0; q < count; ++q) order[q] = q;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (r_of[a].k != r_of[b].k) return r_of[a].k > r_of[b].k;
        if (!(r_of[a] == r_of[b])) return r_of[a] < r_of[b];
        return dec.level_set.cubes[a] < dec.level_set.cubes[b];
    });

    const Rational bound = params.beta * lambda * 2;
    for (std::size_t q : order) {
        PieceRecord piece;
        piece.q_index = q;
        piece.R = r_of[q];

        // Interference set: earlier pieces whose R meets this one.
        std::vector<std::size_t> interfering;  // indices into dec.pieces
        for (std::size_t s = 0; s < dec.pieces.size(); ++s) {
            if (boxes_intersect(family.cube_box(dec.pieces[s].R), r_box[q]))
                interfering.push_back(s);
        }

        for (std::size_t i : mu.atoms_in_box(r_box[q])) {
            Rational prior(0);
            for (std::size_t s : interfering) {
                const auto& a_s = dec.pieces[s].A;
                if (std::binary_search(a_s.begin(), a_s.end(), i))
                    prior += dec.pieces[s].gamma;
            }
            if (prior <= bound) piece.A.push_back(i);
        }

        Rational target(0);
        for (std::size_t i : dec.level_set.members[q])
            target += mu.atoms()[i].f * mu.atoms()[i].mass / dec.level_set.overlap[i];
        piece.target = target;
        Rational mass_a(0);
        for (std::size_t i : piece.A) mass_a += mu.atoms()[i].mass;
        if (mass_a * 2 < mu.box_mass(r_box[q]))
            throw invariant_error("naive_czd: mu(A) >= mu(R)/2 failed");
        piece.gamma = target / mass_a;
        if (piece.gamma > bound) throw invariant_error("naive_czd: gamma <= 2 beta lambda failed");
        dec.pieces.push_back(std::move(piece));
    }

    for (std::size_t i = 0; i < mu.size(); ++i) {
        Rational phi(0);
        for (const auto& piece : dec.pieces)
            if (std::binary_search(piece.A.begin(), piece.A.end(), i)) phi += piece.gamma;
        const bool covered = dec.level_set.overlap[i] > 0;
        dec.g[i] = (covered ? Rational(0) : mu.atoms()[i].f) + phi;
        dec.b[i] = (covered ? mu.atoms()[i].f : Rational(0)) - phi;
    }
    return dec;
}

}  // namespace dyadic
