#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/covering.hpp"
#include "dyadic/measure.hpp"

namespace dyadic {

// Generation window used by the maximal function and the heavy-cube search.
//
// Fine end: 3*2^-k_max is below the minimum atom gap, so a generation-k_max
// cube and its 2-dilate trap single atoms; for every finer cube the averaged
// ratio equals f at the atom, a value already attained at k_max.  Coarse end:
// 2^-k_min is at least twice the support diameter, so the 2-dilate of any
// coarser cube meeting the support carries the whole mass and the ratio is
// at most ||f||_1/||mu|| — which is itself attained in the limit along any
// shifted filtration (their ancestor unions exhaust R^n).  Everything the
// supremum or the level set needs therefore lives inside the window.
struct Window {
    long k_min = 0;
    long k_max = 0;
};

Window maximal_function_window(const DiscreteMeasure& mu);

// The exact value of sup over cubes Q (all filtrations, all generations)
// containing the atom of (1/mu(2Q)) int_Q f dmu.
Rational maximal_function(const DiscreteMeasure& mu, const GridFamily& family,
                          std::size_t atom_index, const Window& window);
Rational maximal_function(const DiscreteMeasure& mu, const GridFamily& family,
                          const Point& x, const Window& window);

// Level set above lambda: the inclusion-maximal heavy cubes, their atom
// membership, and per-atom overlap counts (between 1 and n+1 inside the set).
struct LevelSet {
    Rational lambda;
    std::vector<CubeId> cubes;  // canonical (m,k,j) order
    std::vector<Box> boxes;
    std::vector<std::vector<std::size_t>> members;  // sorted atom indices per cube
    std::vector<int> overlap;                       // per atom; 0 outside the set
};

// All heavy cubes of the window, one representative per (filtration,
// support-trace) class: cubes with identical Q- and 2Q-traces have the same
// averaged ratio, and the class keeps its coarsest member.
std::vector<CubeId> heavy_cubes(const DiscreteMeasure& mu, const GridFamily& family,
                                const Rational& lambda, const Window& window);

LevelSet maximal_heavy(const DiscreteMeasure& mu, const GridFamily& family,
                       const Rational& lambda, const Window& window);

using RSelector = std::function<CubeId(const DiscreteMeasure&, const GridFamily&,
                                       const CubeId&, const DoublingParams&)>;

// Covers the concentric triple of the heavy cube by a cube of the family and
// ascends to its first (alpha,beta)-doubling ancestor.  If the ascent is
// certified stuck (possible only in filtration 0), falls back to covering the
// smallest (c_star alpha, beta)-doubling concentric dilate, whose cover is
// (alpha,beta)-doubling by the dilation chain mu(alpha R') <= mu(c_star
// alpha D) <= beta mu(D) <= beta mu(R').  Both postconditions — the result
// contains the triple and is doubling — are asserted before returning.
CubeId default_R_selector(const DiscreteMeasure& mu, const GridFamily& family,
                          const CubeId& heavy_cube, const DoublingParams& p);

struct PieceRecord {
    std::size_t q_index = 0;  // into LevelSet::cubes
    CubeId R;
    Rational gamma;
    std::vector<std::size_t> A;  // sorted atom indices
    Rational target;             // int_Q f w dmu for this piece
};

struct CZDecomposition {
    Rational lambda;
    DoublingParams params;
    Window window;
    LevelSet level_set;
    std::vector<PieceRecord> pieces;  // processing order: nondecreasing side(R)
    std::vector<Rational> g, b;       // per atom

    CZDecomposition(Rational lam, DoublingParams prm, Window win)
        : lambda(std::move(lam)), params(std::move(prm)), window(win) {}
};

// Output equality irrespective of the window used (window robustness check).
bool same_output(const CZDecomposition& a, const CZDecomposition& b);

CZDecomposition czd(const DiscreteMeasure& mu, const GridFamily& family,
                    const Rational& lambda, const DoublingParams& params,
                    const RSelector& selector = default_R_selector,
                    std::optional<Window> window = std::nullopt);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string slack;  // worst exact slack (inequalities) or deviation (identities)
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

VerificationReport verify_czd(const DiscreteMeasure& mu, const GridFamily& family,
                              const CZDecomposition& dec);

// The annuli estimate behind the choice beta > (c_star alpha)^d: with
// Q_j = (c_star alpha)^j Q and N the first doubling index, verifies the mass
// chain beta mu(Q_j) <= mu(Q_{j+1}) for j < N, the nesting R in 3 c_star Q_N
// in Q_{N+1}, and the certified bound
//   sum_{atoms in R \ Q} mass/|x - x_Q|^d
//     <= (2 c_star alpha)^d (beta/(beta - (c_star alpha)^d)
//                            + beta/(c_star alpha)^d) mu(Q_N)/l(Q_N)^d.
struct AnnuliReport {
    long doubling_index = 0;  // N
    bool chain_ok = false;
    bool nesting_ok = false;
    bool bound_ok = false;
    std::string integral_upper;  // certified upper bound on the annuli integral
    std::string bound_lower;     // certified lower bound on the right-hand side

    bool all_ok() const { return chain_ok && nesting_ok && bound_ok; }
};

AnnuliReport annuli_bound_check(const DiscreteMeasure& mu, const GridFamily& family,
                                const Box& q, const CubeId& r, const DoublingParams& p);

}  // namespace dyadic
