#pragma once

#include <string>

#include <json.hpp>

#include "dyadic/covering.hpp"
#include "dyadic/czd.hpp"
#include "dyadic/measure.hpp"

namespace dyadic {

using json = nlohmann::json;

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

json point_to_json(const Point& p);
Point point_from_json(const json& j);

// {"m": int, "k": int, "j": [int, ...]}; a position that does not fit a
// 64-bit integer is emitted as a decimal string instead (the loader accepts
// both forms).
json cube_to_json(const CubeId& id);
CubeId cube_from_json(const json& j);

json box_to_json(const Box& b);
Box box_from_json(const json& j);

// {"dimension": n, "growth_dim": "d", "points": [{"x": [...], "mass": "...",
// "f": "..."}]} with all numerics as exact-rational strings.  The loader
// rejects duplicate points, nonpositive masses, and negative f; pass
// allow_signed_f to accept signed densities (for the split driver).
json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const json& j);
json load_json_file(const std::string& path);
DiscreteMeasure load_measure(const std::string& path);

// Raw atoms of a measure file without the f >= 0 restriction.
struct SignedMeasureData {
    int dimension = 0;
    Rational growth_dim;
    std::vector<Atom> atoms;  // f may be negative here
};
SignedMeasureData signed_measure_from_json(const json& j);

json cover_to_json(const CoverResult& c, const GridFamily& family);
json witness_to_json(const WitnessResult& w);

json verification_to_json(const VerificationReport& report);
json annuli_to_json(const AnnuliReport& report);

json decomposition_to_json(const CZDecomposition& dec);
CZDecomposition decomposition_from_json(const json& j, const GridFamily& family);

bool decomposition_equal(const CZDecomposition& a, const CZDecomposition& b);

// Self-contained report artifact: measure + decomposition + verification.
json report_to_json(const DiscreteMeasure& mu, const GridFamily& family,
                    const CZDecomposition& dec, const VerificationReport& verification);

void write_json_file(const std::string& path, const json& j);

}  // namespace dyadic
