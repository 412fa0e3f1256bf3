#include "elicit/cli.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "elicit/core.hpp"
#include "elicit/duality.hpp"
#include "elicit/errors.hpp"
#include "elicit/json_io.hpp"
#include "elicit/monotone.hpp"
#include "elicit/payments.hpp"
#include "elicit/property.hpp"
#include "elicit/scoring.hpp"

namespace elicit {

namespace {

using json_io::Json;

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;

struct FamilyInput {
    TypeSpace types;
    LinearFamily family;
};

FamilyInput read_family(const std::string& path) {
    const Json j = json_io::read_file(path);
    if (!j.is_object() || !j.contains("types") || !j.contains("family"))
        throw InvalidInput(path + ": expected {\"types\":..,\"family\":..}");
    FamilyInput in{json_io::to_type_space(j.at("types")),
                   LinearFamily(json_io::to_vectors(j.at("family"), "family"))};
    in.family.require_aligned(in.types);
    return in;
}

std::vector<Vector> read_points(const Json& j, const char* key) {
    if (j.is_object()) {
        if (!j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
        return json_io::to_vectors(j.at(key), key);
    }
    return json_io::to_vectors(j, key);
}

ConvexSpec named_or_file(const std::string& g) {
    if (g == "brier") return ConvexSpec::squared_norm();
    if (g == "log") return ConvexSpec::neg_entropy();
    return json_io::to_convex(json_io::read_file(g));
}

std::vector<Vector> report_grid(const std::string& spec, std::size_t outcomes) {
    if (spec.rfind("grid:", 0) == 0) {
        const std::string k = spec.substr(5);
        std::size_t used = 0;
        unsigned long den = 0;
        try {
            den = std::stoul(k, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != k.size() || den == 0) throw InvalidInput("bad grid denominator in " + spec);
        return simplex_lattice(outcomes, den);
    }
    return read_points(json_io::read_file(spec), "reports");
}

std::size_t index_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_unsigned())
        throw InvalidInput(std::string("field \"") + key + "\" must be a nonnegative integer");
    return j.at(key).get<std::size_t>();
}

/// A grid read from an explicit file, else from keys embedded in `fallback`.
const Json& grid_source(const Json& explicit_file, const Json& fallback) {
    return explicit_file.is_null() ? fallback : explicit_file;
}

class Cli {
public:
    Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    void emit(const Json& j) { out_ << json_io::dump(j) << '\n'; }
    int emit_report(const CheckReport& r) {
        emit(json_io::from_report(r));
        return r.passed ? kPass : kNegative;
    }
    double tol() const { return tol_; }

    void add_commands(CLI::App& app);
    int dispatch();

    std::ostream& out_;
    std::ostream& err_;
    double tol_ = kTol;
    std::function<int()> action_;

    // Shared option storage; each subcommand binds only what it uses.
    std::string file_a_;
    std::string file_b_;
    std::string g_;
    std::string reports_ = "grid:10";
    std::string grid_file_;
    std::size_t outcomes_ = 2;
    std::size_t base_ = 0;
    std::size_t target_ = 0;
    std::size_t report_ = 0;
    std::size_t outcome_ = 0;
    std::size_t denominator_ = 20;
    std::vector<std::string> anchors_;
    bool strict_ = false;
    double radius_ = 0.0;
    double alpha_ = 1.0;
    std::vector<double> offset_;
    double eps_ = kSegmentEps;
    double t_ = 0.0;
    double p0_ = 0.0;
};

void Cli::add_commands(CLI::App& app) {
    auto sub = [&](const char* name, const char* help, std::function<int()> fn) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->callback([this, fn] { action_ = fn; });
        return s;
    };

    for (const char* name : {"check-cmon", "check-wmon"}) {
        const bool cyclic = std::string(name) == "check-cmon";
        auto* s = sub(name, cyclic ? "Cyclic monotonicity of a linear family"
                                   : "Weak (pairwise) monotonicity of a linear family",
                      [this, cyclic] {
                          const auto in = read_family(file_a_);
                          return emit_report(cyclic ? check_cmon(in.types, in.family, tol())
                                                    : check_wmon(in.types, in.family, tol()));
                      });
        s->add_option("family", file_a_, "{\"types\":..,\"family\":[[..]]}")->required();
    }

    auto* synth = sub("synth-payments", "Surplus and payments implementing a family", [this] {
        const auto in = read_family(file_a_);
        try {
            const PaymentResult res = rochet_payments(in.types, in.family, base_, tol());
            emit({{"types", json_io::from_type_space(in.types)},
                  {"surplus", res.surplus},
                  {"payments", res.payments},
                  {"base_type", res.base_type},
                  {"score", json_io::from_score_table(res.induced_score(in.family))},
                  {"verification", json_io::from_report(res.verification)}});
            return kPass;
        } catch (const NotImplementable& e) {
            emit({{"error", "not_implementable"}, {"certificate", json_io::from_report(e.certificate)}});
            return kNegative;
        }
    });
    synth->add_option("family", file_a_, "family file")->required();
    synth->add_option("--base", base_, "type whose surplus is fixed at 0");

    auto* rev = sub("rev-interval", "Admissible surplus range at a target type", [this] {
        const auto in = read_family(file_a_);
        std::map<std::size_t, double> anchors;
        for (const auto& a : anchors_) {
            const auto eq = a.find('=');
            if (eq == std::string::npos) throw InvalidInput("anchor must look like idx=value: " + a);
            try {
                anchors[std::stoul(a.substr(0, eq))] = std::stod(a.substr(eq + 1));
            } catch (const std::logic_error&) {
                throw InvalidInput("anchor must look like idx=value: " + a);
            }
        }
        try {
            const auto iv = revenue_interval(in.types, in.family, anchors, target_, tol());
            emit({{"lower", iv.lower}, {"upper", iv.upper}});
            return kPass;
        } catch (const NotImplementable& e) {
            emit({{"error", "not_implementable"}, {"certificate", json_io::from_report(e.certificate)}});
            return kNegative;
        } catch (const InconsistentAnchors& e) {
            emit({{"error", "inconsistent_anchors"}, {"from", e.from}, {"to", e.to}, {"excess", e.excess}});
            return kNegative;
        }
    });
    rev->add_option("family", file_a_, "family file")->required();
    rev->add_option("--anchor", anchors_, "idx=value, repeatable")->required();
    rev->add_option("--target", target_, "target type index")->required();

    for (const char* name : {"check-truthful", "check-local"}) {
        const bool local = std::string(name) == "check-local";
        auto* s = sub(name, local ? "Truthfulness against types within a radius"
                                  : "Truthfulness against every type",
                      [this, local] {
                          const Json j = json_io::read_file(file_a_);
                          if (!j.is_object() || !j.contains("types") || !j.contains("score"))
                              throw InvalidInput(file_a_ + ": expected {\"types\":..,\"score\":..}");
                          const TypeSpace ts = json_io::to_type_space(j.at("types"));
                          const ScoreTable score = json_io::to_score_table(j.at("score"));
                          std::vector<std::size_t> report_of(ts.size());
                          if (j.contains("report_of")) {
                              report_of = j.at("report_of").get<std::vector<std::size_t>>();
                          } else {
                              for (std::size_t i = 0; i < ts.size(); ++i) report_of[i] = i;
                          }
                          if (local) return emit_report(check_local_truthful(score, ts, report_of, radius_, tol()));
                          return emit_report(check_score_pairs(
                              score, ts, report_of, std::numeric_limits<double>::infinity(), tol()));
                      });
        s->add_option("score", file_a_, "{\"types\":..,\"score\":{\"rows\":..}}")->required();
        if (local) s->add_option("--radius", radius_, "neighbourhood radius")->required();
    }

    auto* make = sub("make-score", "Scoring rule table from a convex function", [this] {
        const ConvexSpec g = named_or_file(g_);
        emit(json_io::from_outcome_table(make_scoring_rule(g, report_grid(reports_, outcomes_))));
        return kPass;
    });
    make->add_option("--g", g_, "brier, log, or a convex function file")->required();
    make->add_option("--reports", reports_, "grid:k or a file of reports");
    make->add_option("--outcomes", outcomes_, "outcome count for grid reports");

    auto* proper = sub("check-proper", "Properness of a score table", [this] {
        const OutcomeScoreTable table = json_io::to_outcome_table(json_io::read_file(file_a_));
        std::vector<Vector> beliefs;
        if (file_b_.empty()) {
            for (const auto& r : table.rows()) beliefs.push_back(r.report);
        } else {
            beliefs = read_points(json_io::read_file(file_b_), "beliefs");
        }
        return emit_report(check_proper(table, beliefs, strict_, tol()));
    });
    proper->add_option("table", file_a_, "score table")->required();
    proper->add_option("beliefs", file_b_, "beliefs (defaults to the table's reports)");
    proper->add_flag("--strict", strict_, "also flag ties with other reports");

    auto* score = sub("score", "One entry of a score table", [this] {
        const OutcomeScoreTable table = json_io::to_outcome_table(json_io::read_file(file_a_));
        if (report_ >= table.size() || outcome_ >= table.n_outcomes())
            throw InvalidInput("report or outcome index out of range");
        emit({{"score", json_io::from_extended(table.row(report_).payoffs[outcome_])}});
        return kPass;
    });
    score->add_option("table", file_a_, "score table")->required();
    score->add_option("--report", report_, "row index")->required();
    score->add_option("--outcome", outcome_, "outcome index")->required();

    auto* label = sub("power-label", "Power cell of each point", [this] {
        const PowerDiagram diag = json_io::to_diagram(json_io::read_file(file_a_));
        const Labeling lab = power_cells(diag, read_points(json_io::read_file(file_b_), "points"), tol());
        emit({{"labels", lab.labels}, {"ties", lab.ties}});
        return kPass;
    });
    label->add_option("diagram", file_a_, "{\"sites\":..,\"weights\":..}")->required();
    label->add_option("points", file_b_, "points to label")->required();

    auto* fit = sub("fit-weights", "Weights realizing a labeled sample", [this] {
        const auto sites = read_points(json_io::read_file(file_a_), "sites");
        const WeightFit fw = fit_weights(sites, json_io::to_sample(json_io::read_file(file_b_)), tol());
        if (fw.feasible) {
            emit({{"feasible", true}, {"weights", fw.weights}});
            return kPass;
        }
        Json w = Json::array();
        for (const auto& c : fw.witness) w.push_back({{"sample", c.sample}, {"site", c.site}});
        emit({{"feasible", false}, {"witness", w}});
        return kNegative;
    });
    fit->add_option("sites", file_a_, "site list")->required();
    fit->add_option("sample", file_b_, "{\"points\":..,\"labels\":..}")->required();

    auto* b2p = sub("breg2power", "Power diagram of a Bregman Voronoi diagram", [this] {
        const Json gj = json_io::read_file(file_a_);
        const ConvexSpec g = json_io::to_convex(gj);
        const auto sites = read_points(json_io::read_file(file_b_), "sites");
        if (sites.empty()) throw InvalidInput("no sites given");
        const Json gf = grid_file_.empty() ? Json() : json_io::read_file(grid_file_);
        const Json& src = grid_source(gf, gj);
        const TypeSpace grid = src.is_array() || src.contains("grid")
                                   ? json_io::to_type_space(src.is_array() ? src : src.at("grid"))
                                   : TypeSpace(simplex_lattice(sites.front().size(), denominator_));
        emit(json_io::from_diagram(bregman_to_power(g, sites, grid)));
        return kPass;
    });
    b2p->add_option("g", file_a_, "convex function")->required();
    b2p->add_option("sites", file_b_, "site list")->required();
    b2p->add_option("--grid", grid_file_, "conjugate grid (default: simplex lattice)");
    b2p->add_option("--denominator", denominator_, "simplex lattice denominator");

    auto* dual = sub("duality-check", "Fenchel-Young and quadrangle identities", [this] {
        const ConvexSpec g = json_io::to_convex(json_io::read_file(file_a_));
        const Json grids = json_io::read_file(file_b_);
        if (!grids.is_object() || !grids.contains("grid"))
            throw InvalidInput(file_b_ + ": expected {\"grid\":..,\"duals\":..}");
        const TypeSpace grid = json_io::to_type_space(grids.at("grid"));
        const auto duals = grids.contains("duals") ? json_io::to_vectors(grids.at("duals"), "duals")
                                                   : grid.points();
        return emit_report(check_duality_identities(g, grid, duals, tol()));
    });
    dual->add_option("g", file_a_, "convex function")->required();
    dual->add_option("grids", file_b_, "{\"grid\":..,\"duals\":..}")->required();

    auto* game = sub("game", "Pure equilibria of the elicitation game", [this] {
        const Json gj = json_io::read_file(file_a_);
        const ConvexSpec g = json_io::to_convex(gj);
        const Json gf = file_b_.empty() ? Json() : json_io::read_file(file_b_);
        const Json& src = grid_source(gf, gj);
        if (!src.is_object() || !src.contains("grid"))
            throw InvalidInput("game needs a \"grid\" (in g.json or a grids file)");
        const TypeSpace grid = json_io::to_type_space(src.at("grid"));
        const TypeSpace types = src.contains("types") ? json_io::to_type_space(src.at("types")) : grid;
        const auto duals = src.contains("duals") ? json_io::to_vectors(src.at("duals"), "duals") : grid.points();
        Json eq = Json::array();
        for (const auto& e : elicitation_game_equilibria(g, types, duals, grid, kDualTol))
            eq.push_back({{"d", e.d},
                          {"t", e.t},
                          {"d_index", e.d_index},
                          {"t_index", e.t_index},
                          {"agent_payoff", e.agent_payoff},
                          {"principal_payoff", e.principal_payoff},
                          {"gap", e.gap}});
        emit({{"equilibria", eq}});
        return kPass;
    });
    game->add_option("g", file_a_, "convex function, optionally with grid/types/duals keys")->required();
    game->add_option("grids", file_b_, "{\"grid\":..,\"types\":..,\"duals\":..}");

    auto* homo = sub("homothet", "Rescaled and shifted diagram with the same cells", [this] {
        const PowerDiagram diag = json_io::to_diagram(json_io::read_file(file_a_));
        const Vector offset = offset_.empty() ? Vector(diag.dim(), 0.0) : Vector(offset_);
        emit(json_io::from_diagram(homothet_transform(diag, alpha_, offset)));
        return kPass;
    });
    homo->add_option("diagram", file_a_, "power diagram")->required();
    homo->add_option("--alpha", alpha_, "positive scale")->required();
    homo->add_option("--offset", offset_, "comma-separated shift")->delimiter(',');

    auto* level = sub("level-convexity", "Sandwiched points in a labeled sample", [this] {
        return emit_report(check_level_set_convexity(json_io::to_sample(json_io::read_file(file_a_)), eps_));
    });
    level->add_option("sample", file_a_, "{\"points\":..,\"labels\":..}")->required();
    level->add_option("--eps", eps_, "distance counted as on a segment");

    auto* dec = sub("decision-score", "Decision-market scores", [this] {
        const ConvexSpec g = json_io::to_convex(json_io::read_file(file_a_));
        const Json j = json_io::read_file(file_b_);
        const std::size_t na = index_field(j, "n_actions");
        const std::size_t no = index_field(j, "n_outcomes");
        std::vector<DecisionReport> reports;
        if (!j.contains("reports")) throw InvalidInput("missing field \"reports\"");
        for (const auto& r : j.at("reports"))
            reports.push_back({json_io::to_vector(r.at("q"), "q"), json_io::to_vector(r.at("decision"), "decision")});
        try {
            const DecisionScoreSpec spec = make_decision_score(g, na, no, reports);
            Json rows = Json::array();
            for (const auto& r : spec.rows)
                rows.push_back({{"q", r.report.q},
                                {"decision", r.report.decision},
                                {"scores", r.scores},
                                {"unconstrained", r.unconstrained}});
            emit({{"n_actions", na}, {"n_outcomes", no}, {"rows", rows}});
            return kPass;
        } catch (const UnreachableAction& e) {
            emit({{"error", "unreachable_action"},
                  {"report", e.report},
                  {"action", e.action},
                  {"outcome", e.outcome}});
            return kNegative;
        }
    });
    dec->add_option("g", file_a_, "convex function of the flattened matrix")->required();
    dec->add_option("reports", file_b_, "{\"n_actions\",\"n_outcomes\",\"reports\":[{\"q\",\"decision\"}]}")
        ->required();

    auto* mye = sub("myerson", "Payment for a monotone step allocation", [this] {
        const Json j = json_io::read_file(file_a_);
        if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values"))
            throw InvalidInput(file_a_ + ": expected {\"breakpoints\":..,\"values\":..}");
        const StepAllocation alloc{json_io::to_vector(j.at("breakpoints"), "breakpoints"),
                                   json_io::to_vector(j.at("values"), "values")};
        try {
            emit({{"payment", myerson_payment(alloc, t_, p0_)}});
            return kPass;
        } catch (const NotMonotone& e) {
            emit({{"error", "not_monotone"}, {"first", e.first}, {"second", e.second}});
            return kNegative;
        }
    });
    mye->add_option("allocation", file_a_, "{\"breakpoints\":..,\"values\":..}")->required();
    mye->add_option("--t", t_, "type at which to price")->required();
    mye->add_option("--p0", p0_, "payment at type 0");
}

int Cli::run(const std::vector<std::string>& args) {
    CLI::App app{"Truthful affine scores: construction and verification", "elicit"};
    app.require_subcommand(1);
    std::optional<double> tol_flag;
    app.add_option("--tol", tol_flag, "tolerance (overrides ELICIT_TOL)");
    add_commands(app);

    std::vector<const char*> argv{"elicit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err_, err_);
        return kUsage;
    }

    try {
        if (const char* env = std::getenv("ELICIT_TOL"); env != nullptr && !tol_flag) {
            std::size_t used = 0;
            try {
                tol_ = std::stod(env, &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used == 0 || used != std::string(env).size())
                throw InvalidInput(std::string("ELICIT_TOL is not a number: ") + env);
        }
        if (tol_flag) tol_ = *tol_flag;
        if (!(tol_ > 0.0) || !std::isfinite(tol_)) throw InvalidInput("tolerance must be positive");
        return action_();
    } catch (const Error& e) {
        err_ << "error: " << e.what() << '\n';
    } catch (const Json::exception& e) {
        err_ << "error: malformed input: " << e.what() << '\n';
    }
    return kUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return Cli(out, err).run(args);
}

}  // namespace elicit
