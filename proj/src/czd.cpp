#include "dyadic/czd.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace dyadic {

Window maximal_function_window(const DiscreteMeasure& mu) {
    if (mu.size() == 1) return Window{0, 0};
    Window w;
    // Smallest k with 2^-k < min_gap/3.
    const Rational fine = mu.min_sup_gap() / 3;
    w.k_max = -floor_log2(fine);
    while (pow2(-w.k_max) >= fine) ++w.k_max;
    // Largest k with 2^-k >= 2*diam; floor_log2 + 1 always clears it.
    const Rational coarse = mu.sup_diameter() * 2;
    w.k_min = -(floor_log2(coarse) + 1);
    if (w.k_min > w.k_max) throw invariant_error("maximal_function_window: inverted window");
    return w;
}

Rational maximal_function(const DiscreteMeasure& mu, const GridFamily& family,
                          std::size_t atom_index, const Window& window) {
    if (atom_index >= mu.size()) throw std::invalid_argument("maximal_function: bad atom index");
    const Point& x = mu.atoms()[atom_index].x;
    Rational best = mu.f_l1() / mu.total_mass();  // coarse-tail value, see Window
    for (int m = 0; m <= family.dimension(); ++m) {
        for (long k = window.k_min; k <= window.k_max; ++k) {
            const Box box = family.cube_box(family.locate(m, k, x));
            const Rational ratio = mu.box_integral_f(box) / mu.box_mass(dilate(box, 2));
            if (ratio > best) best = ratio;
        }
    }
    return best;
}

Rational maximal_function(const DiscreteMeasure& mu, const GridFamily& family,
                          const Point& x, const Window& window) {
    const auto idx = mu.find_atom(x);
    if (!idx) throw std::invalid_argument("maximal_function: point is not in the support");
    return maximal_function(mu, family, *idx, window);
}

namespace {

struct CubeRec {
    CubeId id;
    Box box;
    std::vector<std::size_t> members;   // sorted atom indices in the cube
    std::vector<std::size_t> members2;  // atoms in the 2-dilate
    Rational int_f;
    Rational mass2;

    CubeRec(CubeId cube, Box geometry) : id(std::move(cube)), box(std::move(geometry)) {}
};

void check_level_hypothesis(const DiscreteMeasure& mu, const Rational& lambda) {
    if (lambda * mu.total_mass() <= mu.f_l1())
        throw hypothesis_error("level lambda must exceed ||f||_1/||mu||");
}

// Every heavy cube, deduplicated to the coarsest member of its
// (filtration, Q-trace, 2Q-trace) class.  All heavy cubes live inside the
// window (see Window), and cubes containing no atom are never heavy, so
// walking each atom's ancestor chain enumerates every candidate.
std::vector<CubeRec> deduped_heavy_records(const DiscreteMeasure& mu, const GridFamily& family,
                                           const Rational& lambda, const Window& window) {
    using Trace = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
    std::vector<CubeRec> kept;
    std::map<Trace, std::size_t> best;  // per filtration, cleared between them

    for (int m = 0; m <= family.dimension(); ++m) {
        best.clear();
        std::map<CubeId, std::vector<std::size_t>> level;
        for (std::size_t i = 0; i < mu.size(); ++i)
            level[family.locate(m, window.k_max, mu.atoms()[i].x)].push_back(i);

        for (long k = window.k_max; k >= window.k_min; --k) {
            for (auto& [id, atoms] : level) {
                std::sort(atoms.begin(), atoms.end());
                CubeRec rec(id, family.cube_box(id));
                rec.members = atoms;
                rec.members2 = mu.atoms_in_box(dilate(rec.box, 2));
                rec.int_f = 0;
                for (std::size_t i : rec.members)
                    rec.int_f += mu.atoms()[i].f * mu.atoms()[i].mass;
                rec.mass2 = 0;
                for (std::size_t i : rec.members2) rec.mass2 += mu.atoms()[i].mass;
                if (rec.int_f > lambda * rec.mass2) {
                    Trace key{rec.members, rec.members2};
                    auto it = best.find(key);
                    if (it == best.end()) {
                        best.emplace(std::move(key), kept.size());
                        kept.push_back(std::move(rec));
                    } else if (rec.id.k < kept[it->second].id.k) {
                        kept[it->second] = std::move(rec);
                    }
                }
            }
            if (k > window.k_min) {
                std::map<CubeId, std::vector<std::size_t>> up;
                for (auto& [id, atoms] : level) {
                    auto& dst = up[family.parent(id)];
                    dst.insert(dst.end(), atoms.begin(), atoms.end());
                }
                level = std::move(up);
            }
        }
    }
    return kept;
}

std::vector<CubeRec> maximal_records(std::vector<CubeRec> recs) {
    std::vector<char> keep(recs.size(), 1);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        for (std::size_t j = 0; j < recs.size(); ++j) {
            if (i == j) continue;
            if (box_contains_box(recs[j].box, recs[i].box) && !(recs[j].id == recs[i].id)) {
                keep[i] = 0;
                break;
            }
        }
    }
    std::vector<CubeRec> out;
    for (std::size_t i = 0; i < recs.size(); ++i)
        if (keep[i]) out.push_back(std::move(recs[i]));
    std::sort(out.begin(), out.end(),
              [](const CubeRec& a, const CubeRec& b) { return a.id < b.id; });
    return out;
}

}  // namespace

std::vector<CubeId> heavy_cubes(const DiscreteMeasure& mu, const GridFamily& family,
                                const Rational& lambda, const Window& window) {
    check_level_hypothesis(mu, lambda);
    auto recs = deduped_heavy_records(mu, family, lambda, window);
    std::vector<CubeId> out;
    out.reserve(recs.size());
    for (auto& r : recs) out.push_back(std::move(r.id));
    std::sort(out.begin(), out.end());
    return out;
}

LevelSet maximal_heavy(const DiscreteMeasure& mu, const GridFamily& family,
                       const Rational& lambda, const Window& window) {
    check_level_hypothesis(mu, lambda);
    auto recs = maximal_records(deduped_heavy_records(mu, family, lambda, window));

    LevelSet ls;
    ls.lambda = lambda;
    ls.overlap.assign(mu.size(), 0);
    for (auto& rec : recs) {
        if (!(rec.int_f > lambda * rec.mass2))
            throw invariant_error("maximal_heavy: selected cube is not heavy");
        for (std::size_t i : rec.members) ++ls.overlap[i];
        ls.cubes.push_back(std::move(rec.id));
        ls.boxes.push_back(std::move(rec.box));
        ls.members.push_back(std::move(rec.members));
    }
    for (int c : ls.overlap) {
        if (c > family.dimension() + 1)
            throw invariant_error("maximal_heavy: atom overlap exceeds n+1");
    }
    return ls;
}

CubeId default_R_selector(const DiscreteMeasure& mu, const GridFamily& family,
                          const CubeId& heavy_cube, const DoublingParams& p) {
    const Box triple = dilate(family.cube_box(heavy_cube), 3);
    CubeId result;
    try {
        result = doubling_ancestor(mu, family, cover_box(family, triple).cube, p);
    } catch (const ascent_stuck&) {
        const Rational step = covering_constant(family.dimension()) * p.alpha;
        Box d = triple;
        const DoublingParams concentric(step, p.beta);
        int guard = 0;
        while (!is_doubling(mu, d, concentric)) {
            d = dilate(d, step);
            if (++guard > 10000)
                throw invariant_error("default_R_selector: concentric dilation never doubles");
        }
        result = cover_box(family, d).cube;
    }
    const Box rbox = family.cube_box(result);
    if (!box_contains_box(rbox, triple))
        throw invariant_error("default_R_selector: result does not contain the triple");
    if (!is_doubling(mu, rbox, p))
        throw invariant_error("default_R_selector: result is not doubling");
    return result;
}

CZDecomposition czd(const DiscreteMeasure& mu, const GridFamily& family,
                    const Rational& lambda, const DoublingParams& params,
                    const RSelector& selector, std::optional<Window> window) {
    check_level_hypothesis(mu, lambda);
    const Window w = window ? *window : maximal_function_window(mu);
    CZDecomposition dec(lambda, params, w);
    dec.level_set = maximal_heavy(mu, family, lambda, w);

    const std::size_t count = dec.level_set.cubes.size();
    const std::size_t natoms = mu.size();
    dec.g.assign(natoms, Rational(0));
    dec.b.assign(natoms, Rational(0));
    if (count == 0) {
        for (std::size_t i = 0; i < natoms; ++i) dec.g[i] = mu.atoms()[i].f;
        return dec;
    }

    std::vector<CubeId> r_of(count);
    std::vector<Box> r_box;
    r_box.reserve(count);
    for (std::size_t q = 0; q < count; ++q) {
        r_of[q] = selector(mu, family, dec.level_set.cubes[q], params);
        r_box.push_back(family.cube_box(r_of[q]));
    }

    // Nondecreasing side(R) = descending k(R); ties broken by R's position
    // and finally by the heavy cube itself so reruns are reproducible.
    std::vector<std::size_t> order(count);
    for (std::size_t q = 0; q < count; ++q) order[q] = q;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (r_of[a].k != r_of[b].k) return r_of[a].k > r_of[b].k;
        if (!(r_of[a] == r_of[b])) return r_of[a] < r_of[b];
        return dec.level_set.cubes[a] < dec.level_set.cubes[b];
    });

    const Rational bound = params.beta * lambda * 2;  // 2 beta lambda
    std::vector<Rational> phi_sum(natoms, Rational(0));
    for (std::size_t q : order) {
        PieceRecord piece;
        piece.q_index = q;
        piece.R = r_of[q];

        Rational target(0);
        for (std::size_t i : dec.level_set.members[q])
            target += mu.atoms()[i].f * mu.atoms()[i].mass / dec.level_set.overlap[i];
        piece.target = target;

        Rational mass_a(0);
        for (std::size_t i : mu.atoms_in_box(r_box[q])) {
            if (phi_sum[i] <= bound) {
                piece.A.push_back(i);
                mass_a += mu.atoms()[i].mass;
            }
        }
        const Rational mass_r = mu.box_mass(r_box[q]);
        if (mass_a * 2 < mass_r)
            throw invariant_error("czd: mu(A) >= mu(R)/2 failed; doubling constants misconfigured");
        piece.gamma = target / mass_a;
        if (piece.gamma > bound)
            throw invariant_error("czd: gamma <= 2 beta lambda failed; constants misconfigured");
        for (std::size_t i : piece.A) phi_sum[i] += piece.gamma;
        dec.pieces.push_back(std::move(piece));
    }

    for (std::size_t i = 0; i < natoms; ++i) {
        const bool covered = dec.level_set.overlap[i] > 0;
        dec.g[i] = (covered ? Rational(0) : mu.atoms()[i].f) + phi_sum[i];
        dec.b[i] = (covered ? mu.atoms()[i].f : Rational(0)) - phi_sum[i];
    }
    return dec;
}

bool same_output(const CZDecomposition& a, const CZDecomposition& b) {
    if (a.lambda != b.lambda) return false;
    if (a.params.alpha != b.params.alpha || a.params.beta != b.params.beta) return false;
    if (!(a.level_set.cubes == b.level_set.cubes)) return false;
    if (!(a.level_set.members == b.level_set.members)) return false;
    if (a.level_set.overlap != b.level_set.overlap) return false;
    if (a.pieces.size() != b.pieces.size()) return false;
    for (std::size_t i = 0; i < a.pieces.size(); ++i) {
        const auto& x = a.pieces[i];
        const auto& y = b.pieces[i];
        if (x.q_index != y.q_index || !(x.R == y.R) || x.gamma != y.gamma ||
            x.A != y.A || x.target != y.target)
            return false;
    }
    return a.g == b.g && a.b == b.b;
}

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

// Aggregates per-item results of one named check, remembering the worst slack.
struct CheckAccum {
    std::string name;
    bool pass = true;
    bool any = false;
    Rational worst;

    explicit CheckAccum(std::string n) : name(std::move(n)) {}

    // Inequality lhs <= rhs: slack = rhs - lhs, negative means failure.
    void le(const Rational& lhs, const Rational& rhs) { note(rhs - lhs, sgn(rhs - lhs) >= 0); }
    // Identity lhs == rhs: slack is minus the deviation, so 0 means exact.
    void eq(const Rational& lhs, const Rational& rhs) {
        note(-rational_abs(lhs - rhs), lhs == rhs);
    }
    void boolean(bool ok) { note(ok ? Rational(0) : Rational(-1), ok); }

    CheckResult result() const {
        return CheckResult{name, pass, any ? to_string(worst) : "vacuous"};
    }

private:
    void note(const Rational& slack, bool ok) {
        if (!ok) pass = false;
        if (!any || slack < worst) worst = slack;
        any = true;
    }
};

}  // namespace

VerificationReport verify_czd(const DiscreteMeasure& mu, const GridFamily& family,
                              const CZDecomposition& dec) {
    const Rational& lambda = dec.lambda;
    const Rational& beta = dec.params.beta;
    const int n = family.dimension();

    CheckAccum a1("gamma <= (2/mu(R)) int_Q f");
    CheckAccum a2("gamma <= 2 beta lambda");
    CheckAccum b_chk("sum phi <= 4 beta lambda pointwise");
    CheckAccum c_chk("A subset of R");
    CheckAccum d_chk("gamma mu(A) == target");
    CheckAccum e_chk("target within [int_Q f/(n+1), int_Q f]");
    CheckAccum f_chk("g + b == f pointwise");
    CheckAccum g_chk("int b_j dmu == 0");
    CheckAccum h_chk("||b||_1 <= 2 ||f||_1");
    CheckAccum i_chk("|g| <= (1 + 4 beta) lambda pointwise");
    CheckAccum j_mass("int_{3R} f <= lambda mu(2S)");
    CheckAccum j_fit("2S inside alpha R");

    std::vector<Rational> phi_sum(mu.size(), Rational(0));
    for (const auto& piece : dec.pieces) {
        const Box r_box = family.cube_box(piece.R);
        const Box& q_box = dec.level_set.boxes[piece.q_index];
        const Rational int_q_f = mu.box_integral_f(q_box);
        const Rational mass_r = mu.box_mass(r_box);

        Rational mass_a(0);
        bool inside = true;
        for (std::size_t i : piece.A) {
            mass_a += mu.atoms()[i].mass;
            if (!r_box.contains(mu.atoms()[i].x)) inside = false;
            phi_sum[i] += piece.gamma;
        }
        c_chk.boolean(inside);
        a1.le(piece.gamma * mass_r, int_q_f * 2);
        a2.le(piece.gamma, beta * lambda * 2);
        d_chk.eq(piece.gamma * mass_a, piece.target);

        Rational target_again(0);
        for (std::size_t i : dec.level_set.members[piece.q_index])
            target_again += mu.atoms()[i].f * mu.atoms()[i].mass /
                            dec.level_set.overlap[i];
        g_chk.eq(target_again - piece.gamma * mass_a, Rational(0));
        e_chk.le(int_q_f, piece.target * (n + 1));
        e_chk.le(piece.target, int_q_f);

        const Box triple_r = dilate(r_box, 3);
        const Box s_box = family.cube_box(cover_box(family, triple_r).cube);
        j_mass.le(mu.box_integral_f(triple_r), lambda * mu.box_mass(dilate(s_box, 2)));
        j_fit.boolean(box_contains_box(dilate(r_box, dec.params.alpha), dilate(s_box, 2)));
    }

    Rational b_l1(0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const auto& atom = mu.atoms()[i];
        b_chk.le(phi_sum[i], beta * lambda * 4);
        f_chk.eq(dec.g[i] + dec.b[i], atom.f);
        i_chk.le(rational_abs(dec.g[i]), (Rational(1) + beta * 4) * lambda);
        b_l1 += rational_abs(dec.b[i]) * atom.mass;
    }
    h_chk.le(b_l1, mu.f_l1() * 2);

    VerificationReport report;
    for (const auto* acc : {&a1, &a2, &b_chk, &c_chk, &d_chk, &e_chk, &f_chk, &g_chk,
                            &h_chk, &i_chk, &j_mass, &j_fit})
        report.checks.push_back(acc->result());
    return report;
}

AnnuliReport annuli_bound_check(const DiscreteMeasure& mu, const GridFamily& family,
                                const Box& q, const CubeId& r, const DoublingParams& p) {
    const Box r_box = family.cube_box(r);
    if (!box_contains_box(r_box, q))
        throw hypothesis_error("annuli_bound_check: Q must lie inside R");

    // No strictly smaller doubling cube of the family may contain Q.
    {
        long k_fine = -floor_log2(q.side);
        if (pow2(-k_fine) < q.side) --k_fine;
        for (int m = 0; m <= family.dimension(); ++m) {
            for (long k = r.k + 1; k <= k_fine; ++k) {
                const Box candidate = family.cube_box(family.locate(m, k, q.lower));
                if (box_contains_box(candidate, q) && is_doubling(mu, candidate, p))
                    throw hypothesis_error(
                        "annuli_bound_check: a smaller doubling cube contains Q");
            }
        }
    }

    const Rational c_star = covering_constant(family.dimension());
    const Rational step = c_star * p.alpha;
    const auto [dn, dd] = growth_exponent(mu.growth_dim());

    const Rational step_pow_lo = pow_directed(step, dn, dd, RoundDir::down);
    const Rational step_pow_hi = pow_directed(step, dn, dd, RoundDir::up);
    if (p.beta <= step_pow_hi)
        throw hypothesis_error("annuli_bound_check: beta must exceed (c_star alpha)^d");

    AnnuliReport report;
    const DoublingParams concentric(step, p.beta);
    std::vector<Box> dilates{q};
    std::vector<Rational> masses{mu.box_mass(q)};
    long n_index = 0;
    for (long j = 1;; ++j) {
        dilates.push_back(dilate(dilates.back(), step));
        masses.push_back(mu.box_mass(dilates.back()));
        if (is_doubling(mu, dilates[static_cast<std::size_t>(j)], concentric)) {
            n_index = j;
            break;
        }
        if (j > 10000) throw invariant_error("annuli_bound_check: no doubling dilate found");
    }
    report.doubling_index = n_index;
    // One more dilate for the nesting check.
    dilates.push_back(dilate(dilates.back(), step));

    report.chain_ok = true;
    for (long j = 0; j < n_index; ++j) {
        if (p.beta * masses[static_cast<std::size_t>(j)] > masses[static_cast<std::size_t>(j) + 1])
            report.chain_ok = false;
    }
    report.nesting_ok =
        box_contains_box(dilate(dilates[static_cast<std::size_t>(n_index)], c_star * 3), r_box) &&
        box_contains_box(dilates[static_cast<std::size_t>(n_index) + 1],
                         dilate(dilates[static_cast<std::size_t>(n_index)], c_star * 3));

    // Certified upper bound on the annuli integral.
    const Point x_q = q.center();
    Rational integral_upper(0);
    for (std::size_t i : mu.atoms_in_box(r_box)) {
        if (q.contains(mu.atoms()[i].x)) continue;
        const Rational dist2 = squared_distance(mu.atoms()[i].x, x_q);
        const Rational denom = pow_directed(dist2, dn, 2 * dd, RoundDir::down);
        if (sgn(denom) <= 0)
            throw invariant_error("annuli_bound_check: zero distance outside Q");
        integral_upper += mu.atoms()[i].mass / denom;
    }

    // Certified lower bound on C_chain * mu(Q_N)/l(Q_N)^d.
    const Rational front = pow_directed(step * 2, dn, dd, RoundDir::down);
    const Rational geometric = p.beta / (p.beta - step_pow_lo);
    const Rational tail = p.beta / step_pow_hi;
    const Rational side_pow = pow_directed(dilates[static_cast<std::size_t>(n_index)].side, dn,
                                           dd, RoundDir::up);
    const Rational rhs_lower =
        front * (geometric + tail) * masses[static_cast<std::size_t>(n_index)] / side_pow;

    report.bound_ok = integral_upper <= rhs_lower;
    report.integral_upper = to_string(integral_upper);
    report.bound_lower = to_string(rhs_lower);
    return report;
}

}  // namespace dyadic
