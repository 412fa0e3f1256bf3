#include "elicit/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "elicit/errors.hpp"

namespace elicit::json_io {

namespace {

void write(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            // nlohmann's default object type is an ordered std::map.
            out += '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ',';
                first = false;
                out += Json(k).dump();
                out += ':';
                write(v, out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out += ',';
                write(j[i], out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (std::isnan(x)) throw InvalidInput("cannot serialize NaN");
            if (std::isinf(x)) {
                if (x > 0) throw InvalidInput("cannot serialize +inf");
                out += "\"-inf\"";
                break;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
            out += buf;
            break;
        }
        default:
            out += j.dump();
    }
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InvalidInput(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double to_real(const Json& j, const char* what) {
    if (!j.is_number()) throw InvalidInput(std::string(what) + ": expected a number");
    return j.get<double>();
}

}  // namespace

std::string dump(const Json& j) {
    std::string out;
    write(j, out);
    return out;
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

Vector to_vector(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string(what) + ": expected an array");
    Vector v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(to_real(x, what));
    return v;
}

std::vector<Vector> to_vectors(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string(what) + ": expected an array");
    std::vector<Vector> vs;
    vs.reserve(j.size());
    for (const auto& x : j) vs.push_back(to_vector(x, what));
    return vs;
}

ExtendedReal to_extended(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "-inf") return ExtendedReal::neg_infinity();
    return ExtendedReal(to_real(j, "extended real"));
}

Json from_extended(ExtendedReal x) {
    if (x.is_neg_infinity()) return "-inf";
    return x.value();
}

Json from_vectors(const std::vector<Vector>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(v);
    return out;
}

ConvexSpec to_convex(const Json& j) {
    if (!j.is_object()) throw InvalidInput("convex function: expected an object");
    ConvexSpec g = [&] {
        if (j.contains("maxAffine")) {
            std::vector<AffinePiece> pieces;
            for (const auto& p : field(j, "maxAffine"))
                pieces.push_back({to_vector(field(p, "a"), "slope"), to_real(field(p, "b"), "intercept")});
            return ConvexSpec::max_affine(std::move(pieces));
        }
        const Json& kind = field(j, "analytic");
        if (kind == "squaredNorm") return ConvexSpec::squared_norm();
        if (kind == "negEntropy") return ConvexSpec::neg_entropy();
        throw InvalidInput("unknown analytic form " + kind.dump());
    }();
    if (j.contains("box")) {
        const Json& box = j.at("box");
        g = g.with_box(to_vector(field(box, "lower"), "box"), to_vector(field(box, "upper"), "box"));
    }
    return g;
}

Json from_convex(const ConvexSpec& g) {
    Json out;
    if (const auto* m = g.as_max_affine()) {
        Json pieces = Json::array();
        for (const auto& p : m->pieces) pieces.push_back({{"a", p.slope}, {"b", p.intercept}});
        out["maxAffine"] = pieces;
    } else {
        out["analytic"] = *g.analytic() == AnalyticKind::SquaredNorm ? "squaredNorm" : "negEntropy";
    }
    if (const auto& box = g.hint().box) out["box"] = {{"lower", box->first}, {"upper", box->second}};
    return out;
}

TypeSpace to_type_space(const Json& j) {
    if (j.is_array()) return TypeSpace(to_vectors(j, "type points"));
    TypeSpace ts(to_vectors(field(j, "points"), "type points"));
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != ts.dim())
        throw DimensionMismatch("declared dim disagrees with points");
    return ts;
}

Json from_type_space(const TypeSpace& ts) {
    return {{"dim", ts.dim()}, {"points", from_vectors(ts.points())}};
}

Json from_report(const CheckReport& r) {
    Json ws = Json::array();
    for (const auto& w : r.witnesses)
        ws.push_back({{"indices", w.indices}, {"slack", w.slack}, {"kind", w.kind}});
    Json out{{"passed", r.passed}, {"witnesses", ws}};
    if (!r.metrics.empty()) out["metrics"] = Json(r.metrics);
    if (r.agrees_with_global) out["agrees_with_global"] = *r.agrees_with_global;
    return out;
}

ScoreTable to_score_table(const Json& j) {
    std::vector<ScoreRow> rows;
    for (const auto& r : field(j, "rows"))
        rows.push_back({to_vector(field(r, "linear"), "linear part"), to_extended(field(r, "constant"))});
    return ScoreTable(std::move(rows));
}

Json from_score_table(const ScoreTable& s) {
    Json rows = Json::array();
    for (const auto& r : s.rows()) rows.push_back({{"linear", r.linear}, {"constant", from_extended(r.constant)}});
    return {{"rows", rows}};
}

OutcomeScoreTable to_outcome_table(const Json& j) {
    const auto m = field(j, "n_outcomes").get<std::size_t>();
    std::vector<OutcomeRow> rows;
    for (const auto& r : field(j, "rows")) {
        OutcomeRow row{to_vector(field(r, "report"), "report"), {}};
        for (const auto& x : field(r, "payoffs")) row.payoffs.push_back(to_extended(x));
        rows.push_back(std::move(row));
    }
    return OutcomeScoreTable(m, std::move(rows));
}

Json from_outcome_table(const OutcomeScoreTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows()) {
        Json pay = Json::array();
        for (const auto& x : r.payoffs) pay.push_back(from_extended(x));
        rows.push_back({{"report", r.report}, {"payoffs", pay}});
    }
    return {{"n_outcomes", t.n_outcomes()}, {"rows", rows}};
}

PowerDiagram to_diagram(const Json& j) {
    return PowerDiagram(to_vectors(field(j, "sites"), "sites"), to_vector(field(j, "weights"), "weights"));
}

Json from_diagram(const PowerDiagram& d) {
    return {{"sites", from_vectors(d.sites())}, {"weights", d.weights()}};
}

LabeledSample to_sample(const Json& j) {
    LabeledSample s;
    s.points = to_vectors(field(j, "points"), "sample points");
    for (const auto& l : field(j, "labels")) {
        if (!l.is_number_unsigned()) throw InvalidInput("labels must be nonnegative integers");
        s.labels.push_back(l.get<std::size_t>());
    }
    return s;
}

}  // namespace elicit::json_io
