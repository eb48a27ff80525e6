// Command-line front end: covering queries, grid dumps, optimality
// witnesses, the Calderon-Zygmund decomposition with its verification
// report, the truncated-operator experiment, and the full verification
// suite.
//
// Exit codes: 0 success, 2 unparsable input, 3 violated hypothesis,
// 4 internal invariant failure (a result that should be impossible).

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/bruteforce.hpp"
#include "dyadic/czo.hpp"
#include "dyadic/generate.hpp"
#include "dyadic/json_io.hpp"
#include "dyadic/suite.hpp"

namespace {

using namespace dyadic;

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw parse_error("empty list: \"" + text + "\"");
    return out;
}

void emit(const json& j, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(output_path, j);
    }
}

struct CzdOptions {
    std::string input;
    std::string output;
    std::string lambda_text;
    std::string alpha_text;
    std::string beta_text;
    bool allow_signed = false;
};

DoublingParams resolve_params(const CzdOptions& opt, int dimension, const Rational& growth) {
    Rational alpha = opt.alpha_text.empty() ? default_alpha(dimension)
                                            : parse_rational(opt.alpha_text);
    Rational beta = opt.beta_text.empty() ? default_beta(dimension, growth)
                                          : parse_rational(opt.beta_text);
    return DoublingParams(std::move(alpha), std::move(beta));
}

json run_czd_on(const DiscreteMeasure& mu, const Rational& lambda, const DoublingParams& params) {
    const GridFamily family(mu.dimension());
    const CZDecomposition dec = czd(mu, family, lambda, params);
    const VerificationReport report = verify_czd(mu, family, dec);
    return report_to_json(mu, family, dec, report);
}

int command_czd(const CzdOptions& opt) {
    const json input = load_json_file(opt.input);
    const Rational lambda = parse_rational(opt.lambda_text);

    if (!opt.allow_signed) {
        const DiscreteMeasure mu = measure_from_json(input);
        const DoublingParams params = resolve_params(opt, mu.dimension(), mu.growth_dim());
        const json artifact = run_czd_on(mu, lambda, params);
        emit(artifact, opt.output);
        return artifact.at("verification").at("all_pass").get<bool>() ? 0 : 4;
    }

    // Signed density: split f into positive and negative parts and decompose
    // each part separately.
    SignedMeasureData data = signed_measure_from_json(input);
    std::vector<Atom> pos = data.atoms, neg = data.atoms;
    for (std::size_t i = 0; i < data.atoms.size(); ++i) {
        const Rational& f = data.atoms[i].f;
        pos[i].f = sgn(f) > 0 ? f : Rational(0);
        neg[i].f = sgn(f) < 0 ? Rational(-f) : Rational(0);
    }
    const DiscreteMeasure mu_pos(data.dimension, data.growth_dim, std::move(pos));
    const DiscreteMeasure mu_neg(data.dimension, data.growth_dim, std::move(neg));
    const DoublingParams params = resolve_params(opt, data.dimension, data.growth_dim);
    json artifact{{"positive_part", run_czd_on(mu_pos, lambda, params)},
                  {"negative_part", run_czd_on(mu_neg, lambda, params)}};
    emit(artifact, opt.output);
    const bool ok =
        artifact.at("positive_part").at("verification").at("all_pass").get<bool>() &&
        artifact.at("negative_part").at("verification").at("all_pass").get<bool>();
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shifted dyadic grids, exact ball covering, and the nondoubling "
                 "Calderon-Zygmund decomposition over finite atomic measures"};
    app.require_subcommand(1);

    // cover
    auto* cover_cmd = app.add_subcommand("cover", "Cover a ball by a cube of the family");
    int cover_dim = 1;
    std::string cover_center = "0", cover_radius = "1", cover_out;
    cover_cmd->add_option("--dim", cover_dim, "Ambient dimension")->required();
    cover_cmd->add_option("--center", cover_center, "Comma-separated rational coordinates")
        ->required();
    cover_cmd->add_option("--radius", cover_radius, "Rational radius")->required();
    cover_cmd->add_option("--output", cover_out, "Write JSON here instead of stdout");

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "Dump cubes of one generation meeting a window");
    int grid_dim = 1, grid_m = 0;
    long grid_k = 0;
    std::string grid_lower = "0", grid_side = "1", grid_out;
    grid_cmd->add_option("--dim", grid_dim)->required();
    grid_cmd->add_option("--m", grid_m, "Filtration index")->required();
    grid_cmd->add_option("--k", grid_k, "Generation")->required();
    grid_cmd->add_option("--window-lower", grid_lower, "Window lower corner (comma rationals)")
        ->required();
    grid_cmd->add_option("--window-side", grid_side, "Window side length")->required();
    grid_cmd->add_option("--output", grid_out);

    // witness
    auto* witness_cmd =
        app.add_subcommand("witness", "Ball no cube of a proper subfamily covers tightly");
    int witness_dim = 1;
    std::vector<int> witness_keep, witness_exclude;
    std::string witness_ratio, witness_out;
    witness_cmd->add_option("--dim", witness_dim)->required();
    witness_cmd->add_option("--keep", witness_keep, "Filtration indices forming the subset");
    witness_cmd->add_option("--exclude", witness_exclude,
                            "Filtrations to drop from the full family");
    witness_cmd->add_option("--max-ratio", witness_ratio, "Side ratio bound (default 2p)");
    witness_cmd->add_option("--output", witness_out);

    // czd
    auto* czd_cmd = app.add_subcommand("czd", "Decompose f = g + b above a level lambda");
    CzdOptions czd_opt;
    czd_cmd->add_option("--input", czd_opt.input, "Measure JSON file")->required();
    czd_cmd->add_option("--lambda", czd_opt.lambda_text, "Level (rational)")->required();
    czd_cmd->add_option("--alpha", czd_opt.alpha_text, "Doubling dilation override");
    czd_cmd->add_option("--beta", czd_opt.beta_text, "Doubling bound override");
    czd_cmd->add_option("--output", czd_opt.output, "Report path");
    czd_cmd->add_flag("--allow-signed", czd_opt.allow_signed,
                      "Accept signed f and decompose both parts");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Re-verify a decomposition report");
    std::string verify_report, verify_out;
    verify_cmd->add_option("--report", verify_report, "Report JSON produced by czd")->required();
    verify_cmd->add_option("--output", verify_out);

    // weak11
    auto* weak_cmd = app.add_subcommand("weak11", "Truncated singular-integral experiment");
    std::string weak_input, weak_kernel = "cauchy_real", weak_eps = "auto", weak_out;
    int weak_trials = 100;
    std::uint64_t weak_seed = 1;
    weak_cmd->add_option("--input", weak_input, "Measure JSON (omit to generate graphs)");
    weak_cmd->add_option("--kernel", weak_kernel, "cauchy_real or riesz:<d>");
    weak_cmd->add_option("--eps", weak_eps, "Truncation radius, or 'auto'");
    weak_cmd->add_option("--trials", weak_trials, "Generated instances when no input");
    weak_cmd->add_option("--seed", weak_seed, "Seed for generated instances");
    weak_cmd->add_option("--output", weak_out);

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "Run the full verification battery");
    std::optional<int> suite_only;
    suite_cmd->add_option("--only", suite_only, "Run a single criterion (1..8)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cover_cmd->parsed()) {
            const GridFamily family(cover_dim);
            Point center(parse_rational_list(cover_center));
            if (center.dim() != static_cast<std::size_t>(cover_dim))
                throw parse_error("center has wrong dimension");
            const Ball ball(std::move(center), parse_rational(cover_radius));
            emit(cover_to_json(cover_ball(family, ball), family), cover_out);
            return 0;
        }

        if (grid_cmd->parsed()) {
            const GridFamily family(grid_dim);
            Point lower(parse_rational_list(grid_lower));
            if (lower.dim() != static_cast<std::size_t>(grid_dim))
                throw parse_error("window lower corner has wrong dimension");
            const Box window(std::move(lower), parse_rational(grid_side));
            const Rational side = pow2(-grid_k);
            const Rational o = family.offset(grid_m, grid_k);
            std::vector<std::pair<Integer, Integer>> ranges;
            Integer count(1);
            for (std::size_t i = 0; i < window.dim(); ++i) {
                // Cubes [side*j + o, side*(j+1) + o) meeting [lo, lo + s).
                Integer first = rational_floor((window.lower[i] - o) / side);
                if (Rational(first + 1) * side + o <= window.lower[i]) ++first;
                Integer last = rational_floor((window.lower[i] + window.side - o) / side);
                if (Rational(last) * side + o >= window.lower[i] + window.side) --last;
                if (last < first) count = 0;
                ranges.emplace_back(first, last);
                if (count != 0) count *= last - first + 1;
            }
            if (count > 100000) throw parse_error("window selects more than 100000 cubes");
            json cubes = json::array();
            std::vector<Integer> j_vec;
            for (const auto& r : ranges) j_vec.push_back(r.first);
            while (count > 0) {
                CubeId id{grid_m, grid_k, j_vec};
                cubes.push_back(json{{"cube", cube_to_json(id)},
                                     {"box", box_to_json(family.cube_box(id))}});
                std::size_t axis = 0;
                while (axis < j_vec.size()) {
                    if (++j_vec[axis] <= ranges[axis].second) break;
                    j_vec[axis] = ranges[axis].first;
                    ++axis;
                }
                if (axis == j_vec.size()) break;
            }
            emit(json{{"m", grid_m}, {"k", grid_k}, {"cubes", std::move(cubes)}}, grid_out);
            return 0;
        }

        if (witness_cmd->parsed()) {
            const GridFamily family(witness_dim);
            std::vector<int> subset;
            if (!witness_keep.empty()) {
                subset = witness_keep;
            } else {
                for (int m = 0; m <= witness_dim; ++m) {
                    if (std::find(witness_exclude.begin(), witness_exclude.end(), m) ==
                        witness_exclude.end())
                        subset.push_back(m);
                }
            }
            const Rational ratio = witness_ratio.empty() ? Rational(2 * family.p())
                                                         : parse_rational(witness_ratio);
            auto w = uncovered_witness(family, subset, ratio);
            if (!w) {
                emit(json{{"found", false},
                          {"reason", "the subset is the full family; every ball is covered"}},
                     witness_out);
                return 0;
            }
            json out = witness_to_json(*w);
            out["found"] = true;
            emit(out, witness_out);
            return 0;
        }

        if (czd_cmd->parsed()) return command_czd(czd_opt);

        if (verify_cmd->parsed()) {
            const json artifact = load_json_file(verify_report);
            const DiscreteMeasure mu = measure_from_json(artifact.at("measure"));
            const GridFamily family(mu.dimension());
            const CZDecomposition dec =
                decomposition_from_json(artifact.at("decomposition"), family);
            const VerificationReport report = verify_czd(mu, family, dec);
            emit(verification_to_json(report), verify_out);
            return report.all_pass() ? 0 : 4;
        }

        if (weak_cmd->parsed()) {
            Kernel kernel = Kernel::cauchy_real();
            if (weak_kernel != "cauchy_real") {
                if (weak_kernel.rfind("riesz:", 0) != 0)
                    throw parse_error("kernel must be cauchy_real or riesz:<d>");
                kernel = Kernel::riesz(parse_rational(weak_kernel.substr(6)));
            }
            auto run_one = [&](const DiscreteMeasure& mu) -> json {
                Rational eps2;
                if (weak_eps == "auto") {
                    eps2 = mu.size() >= 2 ? mu.min_squared_gap() / 4 : Rational(1);
                } else {
                    const Rational e = parse_rational(weak_eps);
                    eps2 = e * e;
                }
                const auto values = apply_truncated_sq(mu, kernel, eps2);
                const long double stat = weak11_statistic(mu, values, mu.f_l1());
                return json{{"atoms", mu.size()}, {"statistic", static_cast<double>(stat)}};
            };
            json trials = json::array();
            if (!weak_input.empty()) {
                trials.push_back(run_one(load_measure(weak_input)));
            } else {
                SplitMix64 rng(weak_seed);
                for (int t = 0; t < weak_trials; ++t) {
                    const std::size_t count = static_cast<std::size_t>(rng.int_in(50, 500));
                    trials.push_back(run_one(make_lipschitz_graph_measure(rng, count)));
                }
            }
            std::vector<double> stats;
            for (const auto& t : trials) stats.push_back(t.at("statistic").get<double>());
            std::sort(stats.begin(), stats.end());
            const json summary{{"min", stats.front()},
                               {"median", stats[stats.size() / 2]},
                               {"max", stats.back()}};
            emit(json{{"trials", std::move(trials)}, {"summary", summary}}, weak_out);
            return 0;
        }

        if (suite_cmd->parsed()) {
            if (suite_only) {
                const CriterionResult r = run_criterion(*suite_only);
                std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.index << ": "
                          << r.name << " — " << r.detail << "\n";
                return r.pass ? 0 : 1;
            }
            const auto results = run_acceptance(std::cout);
            for (const auto& r : results)
                if (!r.pass) return 1;
            return 0;
        }
    } catch (const invariant_error& e) {
        std::cerr << "internal invariant failure (please report): " << e.what() << "\n";
        return 4;
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
