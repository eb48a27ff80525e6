#include "dyadic/suite.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dyadic/bruteforce.hpp"
#include "dyadic/czo.hpp"
#include "dyadic/generate.hpp"
#include "dyadic/json_io.hpp"

namespace dyadic {

namespace {

constexpr std::uint64_t kSeedBase = 0x5eed0000;

constexpr int kCoverBallsPerDim = 100000;
constexpr int kCzdInstances = 1000;
constexpr int kOracleInstances = 200;
constexpr int kAnnuliInstances = 1000;
constexpr int kWeakInstances = 110;

std::string ratio_str(long double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

CriterionResult criterion_covering() {
    CriterionResult res{1, "covering at controlled scale", true, ""};
    long checked = 0;
    for (int n = 1; n <= 5; ++n) {
        const GridFamily family(n);
        const Rational limit = Rational(2 * family.p());
        SplitMix64 rng(kSeedBase + 101 + static_cast<std::uint64_t>(n));
        for (int i = 0; i < kCoverBallsPerDim; ++i) {
            const Ball ball = random_ball(rng, n);
            const Box rb = circumscribed_box(ball);
            CoverResult cover = cover_ball(family, ball);
            if (!box_contains_box(family.cube_box(cover.cube), rb) || cover.side_ratio > limit) {
                res.pass = false;
                res.detail = "failed at n=" + std::to_string(n) + " trial " + std::to_string(i);
                return res;
            }
            ++checked;
        }
    }
    res.detail = std::to_string(checked) + " balls covered with ratio <= 2p (exact)";
    return res;
}

CriterionResult criterion_optimality() {
    CriterionResult res{2, "n filtrations never suffice", true, ""};
    int witnesses = 0;
    for (int n = 1; n <= 4; ++n) {
        const GridFamily family(n);
        const Rational ratio = Rational(2 * family.p());
        for (int leave_out = 0; leave_out <= n; ++leave_out) {
            std::vector<int> subset;
            for (int m = 0; m <= n; ++m)
                if (m != leave_out) subset.push_back(m);
            auto w = uncovered_witness(family, subset, ratio);
            if (!w || !witness_certificate_holds(family, subset, ratio, w->ball)) {
                res.pass = false;
                res.detail = "no certified witness for n=" + std::to_string(n) +
                             " leaving out filtration " + std::to_string(leave_out);
                return res;
            }
            ++witnesses;
        }
    }
    res.detail = std::to_string(witnesses) + " subsets certified at max ratio 2p";
    return res;
}

CriterionResult criterion_grid_invariants() {
    CriterionResult res{3, "grid, lattice and nesting invariants", true, ""};
    long checks = 0;
    auto fail = [&res](const std::string& what) {
        res.pass = false;
        res.detail = what;
    };
    for (int n = 1; n <= 5 && res.pass; ++n) {
        const GridFamily family(n);
        SplitMix64 rng(kSeedBase + 301 + static_cast<std::uint64_t>(n));
        for (long k = -20; k <= 20 && res.pass; ++k) {
            for (int m = 0; m <= n && res.pass; ++m) {
                // Offset residue: for k < 0, o(m,k) p 2^k is the integer a_k.
                if (k < 0 && !is_integer(family.offset(m, k) * family.p() * pow2(k))) {
                    fail("offset residue failed");
                    break;
                }
                // Distinct filtrations have disjoint vertex sets per axis.
                for (int m2 = 0; m2 < m; ++m2) {
                    if (is_integer((family.offset(m, k) - family.offset(m2, k)) * pow2(k))) {
                        fail("vertex sets of filtrations " + std::to_string(m2) + "," +
                             std::to_string(m) + " collide at k=" + std::to_string(k));
                        break;
                    }
                }
                if (!res.pass) break;

                for (int trial = 0; trial < 3 && res.pass; ++trial) {
                    CubeId id;
                    id.m = m;
                    id.k = k;
                    for (int i = 0; i < n; ++i)
                        id.j.push_back(Integer(trial == 0 ? 0 : rng.int_in(-(1L << 20), 1L << 20)));
                    const Box box = family.cube_box(id);

                    if (!box_contains_box(family.cube_box(family.parent(id)), box)) {
                        fail("nesting failed");
                        break;
                    }
                    // Partition: a random interior point locates back to id and
                    // same-generation neighbors do not contain it.
                    Point x = box.lower;
                    for (auto& c : x.x) c += box.side * rng.unit_fraction(64);
                    if (!(family.locate(m, k, x) == id) || !box.contains(x)) {
                        fail("locate round-trip failed");
                        break;
                    }
                    for (int axis = 0; axis < n; ++axis) {
                        CubeId nb = id;
                        nb.j[static_cast<std::size_t>(axis)] += 1;
                        if (family.cube_box(nb).contains(x)) fail("partition overlap");
                        nb.j[static_cast<std::size_t>(axis)] -= 2;
                        if (family.cube_box(nb).contains(x)) fail("partition overlap");
                    }
                    if (!res.pass) break;
                    // All 2^n corners lie in the lattice (2^-k/p) Z^n.
                    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
                        Point corner = box.lower;
                        for (int i = 0; i < n; ++i)
                            if (mask & (1ul << i)) corner.x[static_cast<std::size_t>(i)] += box.side;
                        if (!family.in_lattice(corner, k)) {
                            fail("corner outside J_k");
                            break;
                        }
                    }
                    // Children partition their parent.
                    const auto kids = family.children(id);
                    if (kids.size() != (1ul << n)) fail("children count");
                    for (const auto& kid : kids) {
                        if (!box_contains_box(box, family.cube_box(kid)) ||
                            !(family.parent(kid) == id)) {
                            fail("children round-trip failed");
                            break;
                        }
                    }
                    checks += 5;
                }
            }
        }
    }
    if (res.pass) res.detail = std::to_string(checks) + " invariant groups, zero failures";
    return res;
}

struct CzdInstance {
    DiscreteMeasure measure;
    Rational lambda;
    DoublingParams params;

    CzdInstance(DiscreteMeasure mu, Rational lam, DoublingParams prm)
        : measure(std::move(mu)), lambda(std::move(lam)), params(std::move(prm)) {}
};

// Deterministic instance i of the decomposition suite (criteria 4 and 8).
CzdInstance make_czd_instance(int i) {
    SplitMix64 rng(kSeedBase + 401 + static_cast<std::uint64_t>(i));
    MeasureSpec spec;
    spec.dimension = 1 + (i % 2);
    spec.atom_count = static_cast<std::size_t>(rng.int_in(20, 200));
    switch (i % 3) {
        case 0:
            spec.layout = MeasureSpec::Layout::scatter;
            break;
        case 1:
            spec.layout = MeasureSpec::Layout::near_line;
            spec.growth_dim = Rational(1);
            break;
        default:
            spec.layout = MeasureSpec::Layout::clustered;
            if (spec.dimension == 2 && i % 5 == 0) spec.growth_dim = make_rational(3, 2);
            break;
    }
    if (i % 17 == 0) spec.allow_zero_f = false;
    DiscreteMeasure mu = make_measure(rng, spec);
    const Rational base = mu.f_l1() / mu.total_mass();
    Rational lambda = sgn(base) > 0 ? base * (Rational(1) + rng.positive_rational(8, 4))
                                    : rng.positive_rational(8, 4);
    DoublingParams params = default_doubling_params(mu.dimension(), mu.growth_dim());
    return CzdInstance(std::move(mu), std::move(lambda), std::move(params));
}

CriterionResult criterion_czd_suite() {
    CriterionResult res{4, "decomposition identities and explicit constants", true, ""};
    long cubes_total = 0;
    long nonempty = 0;
    for (int i = 0; i < kCzdInstances; ++i) {
        try {
            const CzdInstance inst = make_czd_instance(i);
            const GridFamily family(inst.measure.dimension());
            const CZDecomposition dec = czd(inst.measure, family, inst.lambda, inst.params);
            // mu(A) >= mu(R)/2 for every piece, re-checked here on top of the
            // in-construction assertion.
            for (const auto& piece : dec.pieces) {
                Rational mass_a(0);
                for (std::size_t a : piece.A) mass_a += inst.measure.atoms()[a].mass;
                if (mass_a * 2 < inst.measure.box_mass(family.cube_box(piece.R)))
                    throw invariant_error("mu(A) >= mu(R)/2 re-check failed");
            }
            const VerificationReport report = verify_czd(inst.measure, family, dec);
            if (!report.all_pass()) {
                res.pass = false;
                std::string names;
                for (const auto& c : report.checks)
                    if (!c.pass) names += " [" + c.name + "]";
                res.detail = "instance " + std::to_string(i) + " failed:" + names;
                return res;
            }
            cubes_total += static_cast<long>(dec.level_set.cubes.size());
            if (!dec.level_set.cubes.empty()) ++nonempty;
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = "instance " + std::to_string(i) + " threw: " + e.what();
            return res;
        }
    }
    res.detail = std::to_string(kCzdInstances) + " instances verified exactly (" +
                 std::to_string(nonempty) + " with nonempty level sets, " +
                 std::to_string(cubes_total) + " cubes)";
    return res;
}

CriterionResult criterion_oracle_equivalence() {
    CriterionResult res{5, "heavy-cube oracle and level-set identity", true, ""};
    for (int i = 0; i < kOracleInstances; ++i) {
        SplitMix64 rng(kSeedBase + 501 + static_cast<std::uint64_t>(i));
        MeasureSpec spec;
        spec.dimension = 1 + (i % 2);
        spec.atom_count = static_cast<std::size_t>(rng.int_in(2, 30));
        spec.layout = (i % 3 == 0) ? MeasureSpec::Layout::clustered : MeasureSpec::Layout::scatter;
        const DiscreteMeasure mu = make_measure(rng, spec);
        const GridFamily family(mu.dimension());
        const Rational base = mu.f_l1() / mu.total_mass();
        const Rational lambda = sgn(base) > 0
                                    ? base * (Rational(1) + rng.positive_rational(6, 4))
                                    : rng.positive_rational(6, 4);
        const Window window = maximal_function_window(mu);

        const LevelSet ls = maximal_heavy(mu, family, lambda, window);
        const auto oracle = oracle_maximal_heavy(mu, family, lambda, window);
        if (!(ls.cubes == oracle)) {
            res.pass = false;
            res.detail = "maximal heavy cubes differ from oracle at instance " +
                         std::to_string(i);
            return res;
        }
        for (std::size_t a = 0; a < mu.size(); ++a) {
            const bool above = maximal_function(mu, family, a, window) > lambda;
            if (above != (ls.overlap[a] > 0)) {
                res.pass = false;
                res.detail = "level-set identity failed at instance " + std::to_string(i) +
                             " atom " + std::to_string(a);
                return res;
            }
        }
    }
    res.detail = std::to_string(kOracleInstances) + " instances match the oracle exactly";
    return res;
}

CriterionResult criterion_annuli() {
    CriterionResult res{6, "annuli chain and integral bound", true, ""};
    for (int i = 0; i < kAnnuliInstances; ++i) {
        SplitMix64 rng(kSeedBase + 601 + static_cast<std::uint64_t>(i));
        const int n = 1 + (i % 2);
        const bool on_line = i % 3 != 0;
        const Rational d = on_line ? Rational(1)
                                   : (n == 2 && i % 6 == 0 ? make_rational(3, 2) : Rational(n));
        const long target = 1 + static_cast<long>(rng.below(3));
        try {
            const AnnuliInstance inst = make_annuli_instance(rng, n, d, on_line, target);
            const GridFamily family(n);
            const DoublingParams params =
                default_doubling_params(n, inst.measure.growth_dim());
            const CubeId cover = smallest_doubling_cover(inst.measure, family, inst.base, params);
            const AnnuliReport report =
                annuli_bound_check(inst.measure, family, inst.base, cover, params);
            if (!report.all_ok() || report.doubling_index != inst.target_index) {
                res.pass = false;
                res.detail = "instance " + std::to_string(i) + ": chain=" +
                             (report.chain_ok ? "ok" : "FAIL") + " nesting=" +
                             (report.nesting_ok ? "ok" : "FAIL") + " bound=" +
                             (report.bound_ok ? "ok" : "FAIL") + " N=" +
                             std::to_string(report.doubling_index);
                return res;
            }
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = "instance " + std::to_string(i) + " threw: " + e.what();
            return res;
        }
    }
    res.detail = std::to_string(kAnnuliInstances) + " (Q,R) pairs: chain, nesting and bound hold";
    return res;
}

CriterionResult criterion_weak11() {
    CriterionResult res{7, "weak (1,1) statistic stability", true, ""};
    const Kernel kernel = Kernel::cauchy_real();
    std::vector<long double> stats;
    for (int i = 0; i < kWeakInstances; ++i) {
        SplitMix64 rng(kSeedBase + 701 + static_cast<std::uint64_t>(i));
        const std::size_t count = 50 + (static_cast<std::size_t>(i) * 450) / (kWeakInstances - 1);
        const DiscreteMeasure mu = make_lipschitz_graph_measure(rng, count);
        const Rational eps2 = mu.min_squared_gap() / 4;
        // eps = half minimum spacing; only eps^2 enters the truncation test.
        const auto values = apply_truncated_sq(mu, kernel, eps2);
        stats.push_back(weak11_statistic(mu, values, mu.f_l1()));

        if (i % 37 == 0) {
            // Exact invariance under f -> 4f (power-of-two scaling is exact
            // in binary floating point).
            std::vector<Atom> scaled = mu.atoms();
            for (auto& a : scaled) a.f *= 4;
            const DiscreteMeasure mu4(mu.dimension(), mu.growth_dim(), std::move(scaled));
            const auto values4 = apply_truncated_sq(mu4, kernel, eps2);
            if (weak11_statistic(mu4, values4, mu4.f_l1()) != stats.back()) {
                res.pass = false;
                res.detail = "scaling invariance failed at instance " + std::to_string(i);
                return res;
            }
        }
    }
    std::vector<long double> sorted = stats;
    std::sort(sorted.begin(), sorted.end());
    const long double median = sorted[sorted.size() / 2];
    const long double max = sorted.back();
    if (!(median > 0.0L) || max / median >= 10.0L) {
        res.pass = false;
        res.detail = "max/median = " + ratio_str(max / median);
        return res;
    }
    res.detail = std::to_string(kWeakInstances) + " graphs: max/median = " +
                 ratio_str(max / median) + " < 10, scaling exact";
    return res;
}

CriterionResult criterion_window_robustness() {
    CriterionResult res{8, "window enlargement changes nothing", true, ""};
    for (int i = 0; i < kCzdInstances; ++i) {
        try {
            const CzdInstance inst = make_czd_instance(i);
            const GridFamily family(inst.measure.dimension());
            const CZDecomposition base = czd(inst.measure, family, inst.lambda, inst.params);
            Window wide = maximal_function_window(inst.measure);
            wide.k_min -= 5;
            wide.k_max += 5;
            const CZDecomposition widened =
                czd(inst.measure, family, inst.lambda, inst.params, default_R_selector, wide);
            if (!same_output(base, widened)) {
                res.pass = false;
                res.detail = "output changed at instance " + std::to_string(i);
                return res;
            }
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = "instance " + std::to_string(i) + " threw: " + e.what();
            return res;
        }
    }
    res.detail = std::to_string(kCzdInstances) + " instances byte-identical under +-5 window";
    return res;
}

}  // namespace

CriterionResult run_criterion(int index) {
    switch (index) {
        case 1: return criterion_covering();
        case 2: return criterion_optimality();
        case 3: return criterion_grid_invariants();
        case 4: return criterion_czd_suite();
        case 5: return criterion_oracle_equivalence();
        case 6: return criterion_annuli();
        case 7: return criterion_weak11();
        case 8: return criterion_window_robustness();
        default: throw std::invalid_argument("run_criterion: index must be 1..8");
    }
}

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
    std::vector<CriterionResult> results;
    for (int i = 1; i <= 8; ++i) {
        CriterionResult r = run_criterion(i);
        out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.index << ": " << r.name
            << " — " << r.detail << "\n";
        out.flush();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace dyadic
