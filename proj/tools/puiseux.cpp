#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <puiseux/expr.hpp>
#include <puiseux/io.hpp>

using namespace puiseux;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2; // mathematically negative verdict

struct Output {
    std::string path;    // empty = stdout
    std::string format;  // json | text

    void emit(const json& j, const std::string& text) const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw error("cannot write: " + path);
            os = &file;
        }
        if (format == "text")
            *os << text << '\n';
        else
            *os << j.dump(2) << '\n';
    }
};

MultiIndex horizon_from(const std::vector<std::int64_t>& exps, std::int64_t degree, int r) {
    if (!exps.empty()) {
        if (static_cast<int>(exps.size()) != r)
            throw dimension_error("horizon must have r entries");
        return MultiIndex(exps);
    }
    MultiIndex h = MultiIndex::zero(r);
    h[0] = degree;
    return h;
}

TruncatedSeries load_series_installing_relations(const std::string& path) {
    auto loaded = io::series_from(io::read_file(path));
    if (!loaded.relations.empty()) {
        auto rules = symbol_rules();
        for (auto& rel : loaded.relations) rules.push_back(rel);
        set_symbol_rules(std::move(rules));
    }
    return loaded.series;
}

int run_check(const std::string& seriesPath, const std::string& shapePath, bool exhaustive,
              bool reconstructOnly, const Output& out) {
    const TruncatedSeries series = load_series_installing_relations(seriesPath);
    const auto shape = io::shape_from(io::read_file(shapePath));
    wilczynski::ReconstructOptions opts;
    opts.exhaustive_fallback = exhaustive;
    if (reconstructOnly) {
        const auto rec = wilczynski::reconstruct(series, shape, opts);
        const json j = io::reconstruction_json(rec);
        const XYPolynomial p = rec.polynomial(shape.r(), series.mode());
        out.emit(j, "annihilator: " + p.str());
        return kExitOk;
    }
    const auto verdict = wilczynski::check_algebraic(series, shape, opts);
    const json j = io::verdict_json(verdict);
    if (const auto* neg = std::get_if<wilczynski::NotAlgebraicAtDepth>(&verdict)) {
        out.emit(j, "not algebraic at depth " + std::to_string(neg->depth) +
                        "; witness minor = " + neg->witness_value.str());
        return kExitNegative;
    }
    const auto& rec = std::get<wilczynski::ConsistentWithReconstruction>(verdict).reconstruction;
    out.emit(j, "consistent with reconstruction: " +
                    rec.polynomial(shape.r(), series.mode()).str());
    return kExitOk;
}

int run_hensel(const std::string& eqPath, const std::vector<std::int64_t>& horizonExps,
               std::int64_t degree, std::size_t maxTerms, const Output& out) {
    const auto eq = io::equation_from(io::read_file(eqPath));
    const MultiIndex horizon = horizon_from(horizonExps, degree, eq.r());
    henselian::SolveOptions opts;
    opts.max_terms = maxTerms;
    const TruncatedSeries sol = henselian::hensel_solve(eq, horizon, opts);
    out.emit(io::series_json(sol), sol.str());
    return kExitOk;
}

int run_fs(const std::string& eqPath, const std::vector<std::int64_t>& coeff, const Output& out) {
    const auto eq = io::equation_from(io::read_file(eqPath));
    if (static_cast<int>(coeff.size()) != eq.r())
        throw dimension_error("--coeff needs r exponents");
    const Scalar c = henselian::fs_coefficient(eq, MultiIndex(coeff));
    json j;
    j["n"] = io::multi_index_json(MultiIndex(coeff));
    j["c"] = c.str();
    out.emit(j, c.str());
    return kExitOk;
}

int run_fs_uni(const std::string& eqPath, unsigned long n, const Output& out) {
    const XYPolynomial q = io::polynomial_from(io::read_file(eqPath));
    const Scalar c = henselian::fs_univariate(q, n);
    json j;
    j["n"] = n;
    j["c"] = c.str();
    out.emit(j, c.str());
    return kExitOk;
}

int run_reduce(const std::string& polyPath, const std::string& seriesPath,
               const std::vector<std::int64_t>& kExps, std::size_t count, bool bestEffort,
               const Output& out) {
    const XYPolynomial p = io::polynomial_from(io::read_file(polyPath));
    const TruncatedSeries series = load_series_installing_relations(seriesPath);
    const auto sepOutcome = reduction::find_separation(p, series);
    json j;
    j["separation"] = io::separation_json(sepOutcome);
    if (std::holds_alternative<reduction::NotASimpleRoot>(sepOutcome)) {
        out.emit(j, "not a simple root");
        return kExitNegative;
    }
    if (std::holds_alternative<reduction::RootIsPolynomial>(sepOutcome)) {
        out.emit(j, "the series is an exact polynomial root");
        return kExitOk;
    }
    const auto& sep = std::get<reduction::SeparationResult>(sepOutcome);
    if (!kExps.empty()) {
        const MultiIndex k(kExps);
        const auto table = reduction::blm_coefficients(p, series, k, sep);
        json bt = json::array();
        for (const auto& [key, c] : table) {
            json e;
            e["l"] = io::multi_index_json(key.x);
            e["m"] = key.y;
            e["b"] = c.str();
            bt.push_back(std::move(e));
        }
        j["b_table"] = std::move(bt);
        const auto routed = reduction::to_henselian(p, series, k, sep);
        if (const auto* eq = std::get_if<henselian::HenselianEquation>(&routed)) {
            bool agree = table.size() == eq->q().terms().size();
            if (agree)
                for (const auto& [key, c] : eq->q().terms())
                    if (!(table.count(key) && table.at(key) == c)) agree = false;
            j["routes_agree"] = agree;
            if (!agree) throw error("substitution and closed-form coefficient routes disagree");
        } else {
            j["polynomial_root_at"] =
                io::multi_index_json(std::get<reduction::PolynomialRootDetected>(routed).k);
        }
        if (count > 0) {
            reduction::ContinueOptions copts;
            copts.best_effort = bestEffort;
            const auto cont = reduction::continue_coefficients(p, series, k, sep, count, copts);
            if (const auto* coeffs = std::get_if<reduction::Continuation>(&cont)) {
                json cj = json::array();
                for (const auto& [idx, c] : *coeffs) {
                    json e;
                    e["n"] = io::multi_index_json(idx);
                    e["c"] = c.str();
                    cj.push_back(std::move(e));
                }
                j["continuation"] = std::move(cj);
            } else {
                j["polynomial_root_at"] = io::multi_index_json(
                    std::get<reduction::PolynomialRootDetected>(cont).k);
            }
        }
    }
    out.emit(j, j.dump(2));
    return kExitOk;
}

int run_eisenstein(const std::string& seriesPath, std::int64_t dx, unsigned dy,
                   const std::vector<std::int64_t>& horizonExps, std::int64_t degree,
                   const std::string& omega, const std::string& delta0,
                   const std::string& delta, const Output& out) {
    const TruncatedSeries series = load_series_installing_relations(seriesPath);
    const MultiIndex horizon = horizon_from(horizonExps, degree, series.r());
    if (!delta0.empty() || !delta.empty()) {
        if (delta0.empty() || delta.empty())
            throw error("verification needs both --delta0 and --delta");
        const auto bad =
            reduction::verify_eisenstein(series, mpz_class(delta0), mpz_class(delta), horizon);
        json j;
        j["verified"] = !bad.has_value();
        if (bad) j["first_violation"] = io::multi_index_json(*bad);
        out.emit(j, bad ? "violation at " + bad->str() : "verified");
        return bad ? kExitNegative : kExitOk;
    }
    reduction::EisensteinOptions opts;
    if (!omega.empty()) opts.omega = mpz_class(omega);
    const auto witness = reduction::eisenstein_witness(series, dx, dy, horizon, opts);
    out.emit(io::witness_json(witness), "delta0 = " + witness.delta0.get_str() +
                                            ", delta = " + witness.delta.get_str());
    return kExitOk;
}

int run_bounds(std::int64_t dx, unsigned dy, int r, const std::string& shapePath,
               const Output& out) {
    std::optional<wilczynski::SupportShape> shape;
    if (!shapePath.empty()) shape = io::shape_from(io::read_file(shapePath));
    const auto rb = wilczynski::reconstruction_bounds(dx, dy, r, shape);
    const auto pb = reduction::param_ratio_bounds(dx, dy, r);
    json j;
    j["N"] = rb.depth;
    j["D"] = rb.reduced_rows.get_str();
    j["deg_bound_F"] = rb.deg_bound_f.get_str();
    j["deg_bound_G"] = rb.deg_bound_g.get_str();
    j["family_bound"] = rb.family_bound.get_str();
    j["M1"] = pb.m1.get_str();
    j["M2"] = pb.m2.get_str();
    j["k"] = io::multi_index_json(pb.k);
    out.emit(j, "N = " + std::to_string(rb.depth) + ", D = " + rb.reduced_rows.get_str() +
                    ", deg_F <= " + rb.deg_bound_f.get_str() +
                    ", deg_G <= " + rb.deg_bound_g.get_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for algebraicity of truncated multivariate power series"};
    app.require_subcommand(1);

    Output out;
    app.add_option("-o,--output", out.path, "write the result to a file instead of stdout");
    out.format = "json";
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));

    std::string seriesPath, shapePath, eqPath, polyPath, omega, delta0, delta;
    std::vector<std::int64_t> horizonExps, coeffExps, kExps;
    std::int64_t degree = 8, dx = 1;
    unsigned dy = 1;
    unsigned long nIndex = 1;
    int rDim = 1;
    std::size_t maxTerms = 100000, count = 0;
    bool exhaustive = false, bestEffort = false;

    auto* check = app.add_subcommand("check", "decide algebraicity relative to a support shape");
    check->add_option("--series", seriesPath)->required();
    check->add_option("--shape", shapePath)->required();
    check->add_flag("--exhaustive", exhaustive);

    auto* rec = app.add_subcommand("reconstruct", "reconstruct an annihilating polynomial");
    rec->add_option("--series", seriesPath)->required();
    rec->add_option("--shape", shapePath)->required();
    rec->add_flag("--exhaustive", exhaustive);

    auto* hensel = app.add_subcommand("hensel", "solve y = Q(x,y) by grlex iteration");
    hensel->add_option("--eq", eqPath)->required();
    hensel->add_option("--horizon", horizonExps, "horizon exponents (r values)");
    hensel->add_option("--degree", degree, "horizon as a total degree");
    hensel->add_option("--max-terms", maxTerms);

    auto* fs = app.add_subcommand("fs", "closed-form coefficient of the solution");
    fs->add_option("--eq", eqPath)->required();
    fs->add_option("--coeff", coeffExps, "target exponent (r values)")->required();

    auto* fsuni = app.add_subcommand("fs-uni", "classical univariate closed form");
    fsuni->add_option("--eq", eqPath)->required();
    fsuni->add_option("--n", nIndex)->required();

    auto* reduce = app.add_subcommand("reduce", "separation, derived equation, continuation");
    reduce->add_option("--poly", polyPath)->required();
    reduce->add_option("--series", seriesPath)->required();
    reduce->add_option("--k", kExps, "prefix length (r values)");
    reduce->add_option("--count", count, "number of continued coefficients");
    reduce->add_flag("--best-effort", bestEffort);

    auto* eis = app.add_subcommand("eisenstein", "integrality witness for a rational series");
    eis->add_option("--series", seriesPath)->required();
    eis->add_option("--dx", dx)->required();
    eis->add_option("--dy", dy)->required();
    eis->add_option("--horizon", horizonExps);
    eis->add_option("--degree", degree);
    eis->add_option("--omega", omega, "supplied unit when bypassing reconstruction");
    eis->add_option("--delta0", delta0, "verify an existing witness");
    eis->add_option("--delta", delta, "verify an existing witness");

    auto* bounds = app.add_subcommand("bounds", "depth and degree bounds");
    bounds->add_option("--dx", dx)->required();
    bounds->add_option("--dy", dy)->required();
    bounds->add_option("--r", rDim)->required();
    bounds->add_option("--shape", shapePath);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run_check(seriesPath, shapePath, exhaustive, false, out);
        if (*rec) return run_check(seriesPath, shapePath, exhaustive, true, out);
        if (*hensel) return run_hensel(eqPath, horizonExps, degree, maxTerms, out);
        if (*fs) return run_fs(eqPath, coeffExps, out);
        if (*fsuni) return run_fs_uni(eqPath, nIndex, out);
        if (*reduce) return run_reduce(polyPath, seriesPath, kExps, count, bestEffort, out);
        if (*eis)
            return run_eisenstein(seriesPath, dx, dy, horizonExps, degree, omega, delta0, delta,
                                  out);
        if (*bounds) return run_bounds(dx, dy, rDim, shapePath, out);
    } catch (const no_reconstruction_error& e) {
        std::cerr << "verdict: " << e.what() << '\n';
        return kExitNegative;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
