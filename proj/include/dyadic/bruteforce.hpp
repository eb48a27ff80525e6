#pragma once

#include "dyadic/czd.hpp"

namespace dyadic {

// Reference implementations used only to cross-check the main pipeline.
// They are deliberately plain: no trace deduplication, no running sums —
// every quantity is recomputed from its definition.

// Every heavy cube in the window (each atom's full ancestor chain, all
// filtrations), filtered to inclusion-maximal elements by pairwise box
// comparison.
std::vector<CubeId> oracle_maximal_heavy(const DiscreteMeasure& mu, const GridFamily& family,
                                         const Rational& lambda, const Window& window);

// Literal transcription of the inductive construction: the interference set
// S of each piece is formed explicitly from box intersections and the
// partial sums are recomputed from the stored pieces at every step.
CZDecomposition naive_czd(const DiscreteMeasure& mu, const GridFamily& family,
                          const Rational& lambda, const DoublingParams& params,
                          const RSelector& selector = default_R_selector,
                          std::optional<Window> window = std::nullopt);

}  // namespace dyadic
