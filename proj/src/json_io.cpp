#include "dyadic/json_io.hpp"

#include <fstream>

#include "dyadic/errors.hpp"

namespace dyadic {

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw parse_error("expected a rational (string or integer), got: " + j.dump());
}

json point_to_json(const Point& p) {
    json out = json::array();
    for (const auto& c : p.x) out.push_back(rational_to_json(c));
    return out;
}

Point point_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("expected a coordinate array, got: " + j.dump());
    Point p;
    for (const auto& c : j) p.x.push_back(rational_from_json(c));
    return p;
}

namespace {

json integer_to_json(const Integer& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return Integer(j.get<std::string>(), 10);
    throw parse_error("expected an integer (number or string), got: " + j.dump());
}

}  // namespace

json cube_to_json(const CubeId& id) {
    json jj = json::array();
    for (const auto& z : id.j) jj.push_back(integer_to_json(z));
    return json{{"m", id.m}, {"k", id.k}, {"j", std::move(jj)}};
}

CubeId cube_from_json(const json& j) {
    CubeId id;
    id.m = j.at("m").get<int>();
    id.k = j.at("k").get<long>();
    for (const auto& e : j.at("j")) id.j.push_back(integer_from_json(e));
    return id;
}

json box_to_json(const Box& b) {
    return json{{"lower", point_to_json(b.lower)}, {"side", rational_to_json(b.side)}};
}

Box box_from_json(const json& j) {
    return Box(point_from_json(j.at("lower")), rational_from_json(j.at("side")));
}

json measure_to_json(const DiscreteMeasure& mu) {
    json points = json::array();
    for (const auto& a : mu.atoms()) {
        points.push_back(json{{"x", point_to_json(a.x)},
                              {"mass", rational_to_json(a.mass)},
                              {"f", rational_to_json(a.f)}});
    }
    return json{{"dimension", mu.dimension()},
                {"growth_dim", rational_to_json(mu.growth_dim())},
                {"points", std::move(points)}};
}

SignedMeasureData signed_measure_from_json(const json& j) {
    SignedMeasureData data;
    data.dimension = j.at("dimension").get<int>();
    data.growth_dim = rational_from_json(j.at("growth_dim"));
    for (const auto& e : j.at("points")) {
        Atom a{point_from_json(e.at("x")), rational_from_json(e.at("mass")),
               rational_from_json(e.at("f"))};
        data.atoms.push_back(std::move(a));
    }
    return data;
}

DiscreteMeasure measure_from_json(const json& j) {
    SignedMeasureData data = signed_measure_from_json(j);
    try {
        return DiscreteMeasure(data.dimension, std::move(data.growth_dim),
                               std::move(data.atoms));
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("invalid measure: ") + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

DiscreteMeasure load_measure(const std::string& path) {
    return measure_from_json(load_json_file(path));
}

json cover_to_json(const CoverResult& c, const GridFamily& family) {
    return json{{"cube", cube_to_json(c.cube)},
                {"box", box_to_json(family.cube_box(c.cube))},
                {"k0", c.k0},
                {"side_ratio", rational_to_json(c.side_ratio)}};
}

json witness_to_json(const WitnessResult& w) {
    return json{{"center", point_to_json(w.ball.center)},
                {"radius", rational_to_json(w.ball.radius)},
                {"checked_generations", json{{"k_lo", w.k_lo}, {"k_hi", w.k_hi}}}};
}

json verification_to_json(const VerificationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}});
    return json{{"checks", std::move(checks)}, {"all_pass", report.all_pass()}};
}

json annuli_to_json(const AnnuliReport& report) {
    return json{{"doubling_index", report.doubling_index},
                {"chain_ok", report.chain_ok},
                {"nesting_ok", report.nesting_ok},
                {"bound_ok", report.bound_ok},
                {"integral_upper", report.integral_upper},
                {"bound_lower", report.bound_lower},
                {"all_ok", report.all_ok()}};
}

json decomposition_to_json(const CZDecomposition& dec) {
    json cubes = json::array();
    json members = json::array();
    for (std::size_t i = 0; i < dec.level_set.cubes.size(); ++i) {
        cubes.push_back(cube_to_json(dec.level_set.cubes[i]));
        members.push_back(dec.level_set.members[i]);
    }
    json pieces = json::array();
    for (const auto& p : dec.pieces) {
        pieces.push_back(json{{"q_index", p.q_index},
                              {"R", cube_to_json(p.R)},
                              {"gamma", rational_to_json(p.gamma)},
                              {"A", p.A},
                              {"target", rational_to_json(p.target)}});
    }
    json g = json::array(), b = json::array();
    for (const auto& v : dec.g) g.push_back(rational_to_json(v));
    for (const auto& v : dec.b) b.push_back(rational_to_json(v));
    return json{{"lambda", rational_to_json(dec.lambda)},
                {"alpha", rational_to_json(dec.params.alpha)},
                {"beta", rational_to_json(dec.params.beta)},
                {"window", json{{"k_min", dec.window.k_min}, {"k_max", dec.window.k_max}}},
                {"level_set",
                 json{{"cubes", std::move(cubes)},
                      {"members", std::move(members)},
                      {"overlap", dec.level_set.overlap}}},
                {"pieces", std::move(pieces)},
                {"g", std::move(g)},
                {"b", std::move(b)}};
}

CZDecomposition decomposition_from_json(const json& j, const GridFamily& family) {
    DoublingParams params(rational_from_json(j.at("alpha")), rational_from_json(j.at("beta")));
    Window window{j.at("window").at("k_min").get<long>(), j.at("window").at("k_max").get<long>()};
    CZDecomposition dec(rational_from_json(j.at("lambda")), std::move(params), window);

    dec.level_set.lambda = dec.lambda;
    const json& ls = j.at("level_set");
    for (const auto& c : ls.at("cubes")) {
        CubeId id = cube_from_json(c);
        dec.level_set.boxes.push_back(family.cube_box(id));
        dec.level_set.cubes.push_back(std::move(id));
    }
    dec.level_set.members = ls.at("members").get<std::vector<std::vector<std::size_t>>>();
    dec.level_set.overlap = ls.at("overlap").get<std::vector<int>>();
    if (dec.level_set.members.size() != dec.level_set.cubes.size())
        throw parse_error("decomposition: members/cubes size mismatch");

    for (const auto& p : j.at("pieces")) {
        PieceRecord piece;
        piece.q_index = p.at("q_index").get<std::size_t>();
        piece.R = cube_from_json(p.at("R"));
        piece.gamma = rational_from_json(p.at("gamma"));
        piece.A = p.at("A").get<std::vector<std::size_t>>();
        piece.target = rational_from_json(p.at("target"));
        if (piece.q_index >= dec.level_set.cubes.size())
            throw parse_error("decomposition: piece q_index out of range");
        dec.pieces.push_back(std::move(piece));
    }
    for (const auto& v : j.at("g")) dec.g.push_back(rational_from_json(v));
    for (const auto& v : j.at("b")) dec.b.push_back(rational_from_json(v));
    if (dec.g.size() != dec.b.size() || dec.g.size() != dec.level_set.overlap.size())
        throw parse_error("decomposition: per-atom array size mismatch");
    return dec;
}

bool decomposition_equal(const CZDecomposition& a, const CZDecomposition& b) {
    return a.window.k_min == b.window.k_min && a.window.k_max == b.window.k_max &&
           same_output(a, b);
}

json report_to_json(const DiscreteMeasure& mu, const GridFamily& family,
                    const CZDecomposition& dec, const VerificationReport& verification) {
    return json{{"measure", measure_to_json(mu)},
                {"dimension", family.dimension()},
                {"decomposition", decomposition_to_json(dec)},
                {"verification", verification_to_json(verification)}};
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace dyadic
