#include <puiseux/io.hpp>

#include <fstream>

#include <puiseux/expr.hpp>

namespace puiseux::io {

json multi_index_json(const MultiIndex& n) {
    json a = json::array();
    for (int i = 0; i < n.r(); ++i) a.push_back(n[i]);
    return a;
}

MultiIndex multi_index_from(const json& j, int r) {
    if (!j.is_array()) throw error("expected an array of exponents");
    std::vector<std::int64_t> e;
    for (const auto& v : j) e.push_back(v.get<std::int64_t>());
    MultiIndex out(std::move(e));
    if (r > 0 && out.r() != r)
        throw dimension_error("exponent vector has " + std::to_string(out.r()) +
                              " entries, expected " + std::to_string(r));
    return out;
}

ScalarMode deduce_scalar_mode(const json& j) {
    if (j.is_number_integer()) return ScalarMode::rational;
    if (j.is_string()) return deduce_mode(j.get<std::string>());
    if (j.is_object()) {
        if (j.contains("sym")) return ScalarMode::symbolic;
        if (j.contains("product")) {
            for (const auto& f : j.at("product"))
                if (deduce_scalar_mode(f) == ScalarMode::symbolic) return ScalarMode::symbolic;
            return ScalarMode::rational;
        }
    }
    throw error("unrecognized coefficient form: " + j.dump());
}

Scalar scalar_from(const json& j, int r, ScalarMode mode) {
    if (j.is_number_integer())
        return Scalar::integer(mode, mpz_class(static_cast<long>(j.get<std::int64_t>())));
    if (j.is_string()) return parse_scalar(j.get<std::string>(), r, mode);
    if (j.is_object()) {
        if (j.contains("sym")) {
            if (mode != ScalarMode::symbolic)
                throw mode_error("symbolic coefficient in a rational context");
            const long pw = j.value("pow", 1);
            return Scalar::symbol(j.at("sym").get<std::string>()).pow(pw);
        }
        if (j.contains("product")) {
            Scalar acc = Scalar::one(mode);
            for (const auto& f : j.at("product")) acc = acc * scalar_from(f, r, mode);
            return acc;
        }
    }
    throw error("unrecognized coefficient form: " + j.dump());
}

json polynomial_json(const XYPolynomial& p) {
    json terms = json::array();
    for (const auto& [k, c] : p.terms()) {
        json t;
        t["x"] = multi_index_json(k.x);
        t["y"] = k.y;
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    json out;
    out["r"] = p.r();
    out["mode"] = mode_name(p.mode());
    out["terms"] = std::move(terms);
    return out;
}

XYPolynomial polynomial_from(const json& j) {
    const int r = j.at("r").get<int>();
    if (r < 1) throw precondition_error("polynomial: r must be >= 1");
    if (j.contains("poly")) return parse_polynomial(j.at("poly").get<std::string>(), r);
    const auto& terms = j.at("terms");
    ScalarMode mode = ScalarMode::rational;
    if (j.contains("mode"))
        mode = j.at("mode").get<std::string>() == "symbolic" ? ScalarMode::symbolic
                                                             : ScalarMode::rational;
    else
        for (const auto& t : terms)
            if (deduce_scalar_mode(t.at("coeff")) == ScalarMode::symbolic)
                mode = ScalarMode::symbolic;
    XYPolynomial out(r, mode);
    for (const auto& t : terms) {
        const MultiIndex x = multi_index_from(t.at("x"), r);
        const unsigned y = t.at("y").get<unsigned>();
        out.add_term(x, y, scalar_from(t.at("coeff"), r, mode));
    }
    return out;
}

json series_json(const TruncatedSeries& s) {
    json out;
    out["r"] = s.r();
    out["mode"] = mode_name(s.mode());
    if (s.bound()) out["bound"] = multi_index_json(*s.bound());
    json coeffs = json::array();
    for (const auto& [n, c] : s.coeffs()) {
        json e;
        e["n"] = multi_index_json(n);
        e["c"] = c.str();
        coeffs.push_back(std::move(e));
    }
    out["coeffs"] = std::move(coeffs);
    return out;
}

LoadedSeries series_from(const json& j) {
    const int r = j.at("r").get<int>();
    if (r < 1) throw precondition_error("series: r must be >= 1");
    std::vector<SymbolRule> relations;
    if (j.contains("relations")) {
        for (const auto& rel : j.at("relations")) {
            SymbolRule rule;
            rule.sym = intern_symbol(rel.at("sym").get<std::string>());
            rule.pow = rel.at("pow").get<std::uint32_t>();
            const Scalar repl =
                parse_scalar(rel.at("equals").get<std::string>(), r, ScalarMode::symbolic);
            rule.num = repl.sym().num();
            rule.den = repl.sym().den();
            relations.push_back(std::move(rule));
        }
    }
    ScalarMode mode = ScalarMode::rational;
    if (!relations.empty()) mode = ScalarMode::symbolic;
    if (j.contains("mode"))
        mode = j.at("mode").get<std::string>() == "symbolic" ? ScalarMode::symbolic
                                                             : ScalarMode::rational;
    else
        for (const auto& e : j.at("coeffs"))
            if (deduce_scalar_mode(e.at("c")) == ScalarMode::symbolic) mode = ScalarMode::symbolic;
    std::optional<MultiIndex> bound;
    if (j.contains("bound") && !j.at("bound").is_null())
        bound = multi_index_from(j.at("bound"), r);
    TruncatedSeries s(r, mode, bound);
    for (const auto& e : j.at("coeffs"))
        s.set_coeff(multi_index_from(e.at("n"), r), scalar_from(e.at("c"), r, mode));
    return LoadedSeries{std::move(s), std::move(relations)};
}

json shape_json(const wilczynski::SupportShape& s) {
    json out;
    out["r"] = s.r();
    json f = json::array(), g = json::array();
    for (const auto& [i, j2] : s.F()) {
        json e = multi_index_json(i);
        e.push_back(j2);
        f.push_back(std::move(e));
    }
    for (const auto& [i, j2] : s.G()) {
        json e = multi_index_json(i);
        e.push_back(0);
        g.push_back(std::move(e));
    }
    out["F"] = std::move(f);
    out["G"] = std::move(g);
    return out;
}

wilczynski::SupportShape shape_from(const json& j) {
    const int r = j.at("r").get<int>();
    auto readPairs = [&](const json& arr) {
        std::vector<wilczynski::SupportPair> out;
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != static_cast<std::size_t>(r) + 1)
                throw error("shape entry must be [i_1,...,i_r, j]");
            std::vector<std::int64_t> x;
            for (std::size_t t = 0; t + 1 < e.size(); ++t) x.push_back(e[t].get<std::int64_t>());
            out.emplace_back(MultiIndex(std::move(x)), e.back().get<unsigned>());
        }
        return out;
    };
    std::vector<wilczynski::SupportPair> g;
    if (j.contains("G")) g = readPairs(j.at("G"));
    return wilczynski::SupportShape(r, readPairs(j.at("F")), std::move(g));
}

json equation_json(const henselian::HenselianEquation& eq) { return polynomial_json(eq.q()); }

henselian::HenselianEquation equation_from(const json& j) {
    return henselian::HenselianEquation(polynomial_from(j));
}

reduction::RamifiedChart chart_from(const json& j) {
    reduction::RamifiedChart c;
    c.p = j.at("p").get<std::int64_t>();
    c.q.clear();
    for (const auto& v : j.at("q")) c.q.push_back(v.get<std::int64_t>());
    c.n0 = multi_index_from(j.at("n0"), static_cast<int>(c.q.size()) + 1);
    return c;
}

json chart_json(const reduction::RamifiedChart& c) {
    json out;
    out["p"] = c.p;
    out["q"] = json::array();
    for (auto v : c.q) out["q"].push_back(v);
    out["n0"] = multi_index_json(c.n0);
    return out;
}

json reconstruction_json(const wilczynski::ReconstructionResult& r) {
    json out;
    json coeffs = json::array();
    for (const auto& [key, c] : r.coefficients) {
        json e;
        e["i"] = multi_index_json(key.first);
        e["j"] = key.second;
        e["a"] = c.str();
        coeffs.push_back(std::move(e));
    }
    out["coefficients"] = std::move(coeffs);
    out["rank"] = r.rank;
    json rows = json::array();
    for (const auto& k : r.used_minor.rows) rows.push_back(multi_index_json(k));
    json cols = json::array();
    for (const auto& [i, j2] : r.used_minor.cols) {
        json e = multi_index_json(i);
        e.push_back(j2);
        cols.push_back(std::move(e));
    }
    out["minor"] = {{"rows", std::move(rows)}, {"cols", std::move(cols)}};
    out["verified_to_order"] = multi_index_json(r.verified_to_order);
    return out;
}

json verdict_json(const wilczynski::AlgebraicityVerdict& v) {
    json out;
    if (const auto* neg = std::get_if<wilczynski::NotAlgebraicAtDepth>(&v)) {
        out["verdict"] = "NotAlgebraicAtDepth";
        out["depth"] = neg->depth;
        json rows = json::array();
        for (const auto& k : neg->witness.rows) rows.push_back(multi_index_json(k));
        out["witness_rows"] = std::move(rows);
        out["witness_minor"] = neg->witness_value.str();
    } else {
        const auto& pos = std::get<wilczynski::ConsistentWithReconstruction>(v);
        out["verdict"] = "ConsistentWithReconstruction";
        out["reconstruction"] = reconstruction_json(pos.reconstruction);
    }
    return out;
}

json separation_json(const reduction::SeparationOutcome& s) {
    json out;
    if (const auto* sep = std::get_if<reduction::SeparationResult>(&s)) {
        out["verdict"] = "Separated";
        out["k0"] = multi_index_json(sep->k0);
        out["omega0"] = sep->omega0.str();
        out["i_k0"] = multi_index_json(sep->ik0);
    } else if (const auto* poly = std::get_if<reduction::RootIsPolynomial>(&s)) {
        out["verdict"] = "RootIsPolynomial";
        out["k"] = multi_index_json(poly->k);
    } else {
        const auto& bad = std::get<reduction::NotASimpleRoot>(s);
        out["verdict"] = "NotASimpleRoot";
        out["at"] = multi_index_json(bad.at);
        out["reason"] = bad.reason;
    }
    return out;
}

json witness_json(const reduction::EisensteinWitness& w) {
    json out;
    out["delta0"] = w.delta0.get_str();
    out["delta"] = w.delta.get_str();
    out["verified_horizon"] = multi_index_json(w.verified_horizon);
    return out;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

} // namespace puiseux::io
