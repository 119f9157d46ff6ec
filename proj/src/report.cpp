#include "ksmap/report.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "ksmap/analytic.hpp"
#include "ksmap/errors.hpp"
#include "ksmap/pairing.hpp"
#include "ksmap/ranks.hpp"

namespace ksmap {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kStages = {"gm", "ks", "ranks", "pairing", "monodromy", "independence", "decompose"};

json strings(const RatMatrix& m, const VarNames& names) { return m.to_strings(names); }

json number(double v, double tol) { return json{{"value", v}, {"tolerance", tol}}; }

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json cmat_json(const CMat& m, double tol) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"tolerance", tol}, {"entries", std::move(rows)}};
}

class Pipeline {
public:
    Pipeline(PencilFile pf, const RunOptions& opts) : pf_(std::move(pf)), names_(pf_.names()) {
        tol_ = opts.tol.value_or(pf_.tolerance.value_or(1e-10));
        truncation_ = opts.truncation.value_or(pf_.truncation.value_or(0));
        degree_bound_ = opts.degree_bound.value_or(pf_.degree_bound.value_or(3));
        samples_ = opts.samples.value_or(pf_.samples.value_or(200));
        seed_ = opts.seed;
        if (!(tol_ > 0.0)) throw InputError("tolerance must be positive");
        if (degree_bound_ < 0) throw InputError("degree bound must be nonnegative");
        if (samples_ < 2) throw InputError("samples must be at least 2");
        pencil_ = validate_pencil(pf_.polynomial, static_cast<int>(pf_.variables.size()));
    }

    int num_params() const { return pencil_.num_params; }
    bool has_endomorphism() const { return pf_.endomorphism.has_value(); }

    json input_echo(const std::string& source) const {
        return json{{"file", source},
                    {"name", pf_.name},
                    {"variables", pf_.variables},
                    {"polynomial", pf_.polynomial.to_string(names_)},
                    {"options",
                     {{"tolerance", tol_},
                      {"truncation", truncation_},
                      {"degree_bound", degree_bound_},
                      {"samples", samples_},
                      {"seed", seed_}}}};
    }

    json pencil_stage() const {
        json factors = json::array();
        for (const auto& q : pencil_.singular_factors) factors.push_back(q.to_string(names_));
        return json{{"genus", pencil_.genus},
                    {"degree", pencil_.fu.degree()},
                    {"num_params", pencil_.num_params},
                    {"discriminant", pencil_.discriminant.to_string(names_)},
                    {"singular_factors", std::move(factors)}};
    }

    json gm_stage() {
        json out;
        json conns = json::array();
        bool regular = true;
        for (const auto& cm : connections()) {
            const bool reg = connection_regular(pencil_, cm.m);
            regular = regular && reg;
            conns.push_back(json{{"parameter", parameter_name(cm.parameter_index)},
                                 {"matrix", strings(cm.m, names_)},
                                 {"regular_singularities", reg}});
        }
        out["connections"] = std::move(conns);
        json checks{{"regular_singularities", regular}};
        if (connections().size() == 2) {
            checks["flat"] = curvature(connections()[0], connections()[1]).is_zero();
        }
        out["checks"] = std::move(checks);
        if (connections().size() == 1) {
            json pf = json::array();
            for (const auto& c : picard_fuchs(connections()[0], 0)) pf.push_back(c.to_string(names_));
            out["picard_fuchs_e1"] = std::move(pf);
        }
        return out;
    }

    json ks_stage() {
        json blocks = json::array();
        std::vector<RatMatrix> ts;
        for (const auto& cm : connections()) {
            RatMatrix t = kodaira_spencer_block(cm);
            blocks.push_back(json{{"parameter", parameter_name(cm.parameter_index)},
                                  {"matrix", strings(t, names_)},
                                  {"status", t.is_zero() ? "zero" : "nonzero"},
                                  {"rank", rank(t)}});
            ts.push_back(std::move(t));
        }
        const int rp = rank_rprime(ts);
        // Specialized ranks at seeded random rational points never exceed the generic rank.
        std::mt19937 rng(seed_);
        std::uniform_int_distribution<int> num(-60, 60), den(1, 9);
        json spec = json::array();
        bool bounded = true, attained = rp == 0;
        for (int trial = 0, found = 0; found < 5 && trial < 100; ++trial) {
            std::array<BigRational, kNumVars> point;
            for (auto& c : point) c = 0;
            json pt = json::array();
            for (int i = 0; i < pencil_.num_params; ++i) {
                BigRational v(num(rng), den(rng));
                v.canonicalize();
                point[param_var(i)] = v;
                pt.push_back(v.get_str());
            }
            if (sgn(pencil_.discriminant.evaluate(point)) == 0) continue;
            int r = 0;
            try {
                RatMatrix cat(pencil_.genus, 0);
                for (const auto& t : ts) {
                    const auto vals = t.evaluate(point);
                    RatMatrix m(t.rows(), t.cols());
                    for (int i = 0; i < t.rows(); ++i)
                        for (int j = 0; j < t.cols(); ++j) m(i, j) = MultiRational(vals[i][j]);
                    cat = cat.cols() == 0 ? m : cat.hconcat(m);
                }
                r = rank(cat);
            } catch (const AlgebraError&) {
                continue;
            }
            ++found;
            bounded = bounded && r <= rp;
            attained = attained || r == rp;
            spec.push_back(json{{"point", std::move(pt)}, {"rank", r}});
        }
        return json{{"blocks", std::move(blocks)},
                    {"r_prime", rp},
                    {"specializations", std::move(spec)},
                    {"checks", {{"specialized_rank_bounded", bounded}, {"generic_rank_attained", attained}}}};
    }

    json ranks_stage() {
        const RankReport r = rank_report(pencil_, connections());
        bool all_zero = true;
        for (const auto& cm : connections()) all_zero = all_zero && kodaira_spencer_block(cm).is_zero();
        json checks{{"chain", r.r_doubleprime <= r.r_prime && r.r_prime <= r.r && r.r <= r.g},
                    {"isotriviality_consistency", (r.r_prime == 0) == (r.r == 0) && (r.r == 0) == all_zero}};
        if (pencil_.num_params == 1) {
            const RatMatrix G = symplectify(cup().J);
            const RatMatrix ts = change_basis(connections()[0].m, G, 0).block(pencil_.genus, 0, pencil_.genus, pencil_.genus);
            checks["quadratic_form_rank_agrees"] = ts.is_symmetric() && quadratic_form_rank(ts) == rank(ts);
        }
        return json{{"g", r.g},
                    {"r", r.r},
                    {"r_prime", r.r_prime},
                    {"r_doubleprime", r.r_doubleprime},
                    {"isotrivial", r.isotrivial},
                    {"d_span_dimension", r.d_span_dimension},
                    {"stabilization_steps", r.stabilization_steps},
                    {"checks", std::move(checks)}};
    }

    json pairing_stage() {
        const CupMatrix& c = cup();
        const int g = pencil_.genus;
        const bool skew = (c.J + c.J.transpose()).is_zero();
        const bool lagrangian = c.J.block(0, 0, g, g).is_zero();
        const bool nondegenerate = !determinant(c.J).is_zero();
        bool horizontal = true, symmetric = true;
        json sym_blocks = json::array();
        const RatMatrix G = symplectify(c.J);
        for (const auto& cm : connections()) {
            horizontal = horizontal && horizontality_defect(c.J, cm).is_zero();
            const RatMatrix ts = change_basis(cm.m, G, cm.parameter_index).block(g, 0, g, g);
            symmetric = symmetric && ts.is_symmetric();
            sym_blocks.push_back(json{{"parameter", parameter_name(cm.parameter_index)}, {"matrix", strings(ts, names_)}});
        }
        return json{{"truncation", c.truncation},
                    {"J", strings(c.J, names_)},
                    {"symplectic_basis_change", strings(G, names_)},
                    {"symplectic_T", std::move(sym_blocks)},
                    {"checks",
                     {{"skew", skew},
                      {"lagrangian", lagrangian},
                      {"nondegenerate", nondegenerate},
                      {"horizontal", horizontal},
                      {"symplectic_T_symmetric", symmetric}}}};
    }

    json monodromy_stage() {
        require_one_parameter("monodromy");
        const MonodromyReport rep = monodromy(pencil_, connections()[0], cup().J, tol_);
        json loops = json::array();
        for (std::size_t i = 0; i < rep.matrices.size(); ++i) {
            const auto& l = rep.plan.loops[i];
            json entry{{"label", l.label}};
            if (!l.at_infinity) entry["around"] = complex_json(l.around);
            entry["matrix"] = cmat_json(rep.matrices[i], tol_);
            entry["trace"] = json{{"value", complex_json(rep.traces[i])}, {"tolerance", tol_}};
            loops.push_back(std::move(entry));
        }
        const int n = 2 * pencil_.genus;
        const bool sympl = rep.symplectic_defect <= tol_;
        const bool prod = rep.product_defect <= tol_;
        json out{{"basepoint", complex_json(rep.plan.basepoint)},
                 {"clearance", rep.plan.clearance},
                 {"loops", std::move(loops)},
                 {"symplectic_defect", number(rep.symplectic_defect, tol_)},
                 {"product_defect", number(rep.product_defect, tol_)},
                 {"error_estimate", number(rep.error_estimate, tol_)},
                 {"algebra_dimension", rep.algebra_dimension},
                 {"irreducible", rep.algebra_dimension == n * n},
                 {"checks", {{"symplectic", sympl}, {"product_identity", prod}}}};
        if (!sympl || !prod) deferred_numeric_ = "monodromy certificates exceed the tolerance";
        return out;
    }

    json independence_stage() {
        require_one_parameter("independence test");
        const IndependenceVerdict v =
            first_kind_independence(pencil_, connections()[0], degree_bound_, samples_, tol_);
        json out{{"verdict", v.independent ? "independent" : "relation_candidate"},
                 {"scope", "relations with polynomial coefficients of degree <= " + std::to_string(degree_bound_)},
                 {"degree_bound", v.degree_bound},
                 {"samples", samples_},
                 {"gap", number(v.gap, tol_)},
                 {"noise_floor", number(v.noise_floor, tol_)}};
        if (!v.independent) {
            out["degree_found"] = v.degree_found;
            auto coeffs = [&](const std::vector<std::vector<cplx>>& c) {
                json a = json::array();
                for (const auto& row : c) {
                    json r = json::array();
                    for (const auto& z : row) r.push_back(complex_json(z));
                    a.push_back(std::move(r));
                }
                return a;
            };
            out["relation"] = json{{"basis", "coefficients of t^0..t^D for Y[., j] and dY[., j], j < g"},
                                   {"tolerance", tol_},
                                   {"Y", coeffs(v.y_coeffs)},
                                   {"dY", coeffs(v.dy_coeffs)}};
        }
        return out;
    }

    json decompose_stage() {
        if (!pf_.endomorphism) throw InputError("no endomorphism given in the pencil file");
        const auto& rows = *pf_.endomorphism;
        const int n = static_cast<int>(rows.size());
        RatMatrix e(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e(i, j) = MultiRational(rows[i][j]);
        const EndoDecomposition d = endo_decompose(pencil_, e, connections());
        VarNames qn = names_;
        qn[kVarX] = "X";
        json factors = json::array();
        for (const auto& f : d.factors) {
            factors.push_back(json{{"factor", f.q.to_string(qn)},
                                   {"component_dim", f.component_dim},
                                   {"shimura_type", {f.r_lambda, f.s_lambda}},
                                   {"ks_rank", f.ks_rank}});
        }
        return json{{"minimal_polynomial", d.minpoly.to_string(qn)},
                    {"factors", std::move(factors)},
                    {"restricted_pem", restricted_pem_check(d)}};
    }

    const std::string& deferred_numeric() const { return deferred_numeric_; }

private:
    std::string parameter_name(int i) const { return names_[param_var(i)]; }

    void require_one_parameter(const std::string& what) const {
        if (pencil_.num_params != 1) throw InputError(what + " requires a one-parameter pencil");
    }

    const std::vector<ConnectionMatrix>& connections() {
        if (cms_.empty()) {
            const int d = std::max(1, pencil_.num_params);
            for (int i = 0; i < d; ++i) cms_.push_back(gauss_manin_matrix(pencil_, i));
        }
        return cms_;
    }

    const CupMatrix& cup() {
        if (!cup_) cup_ = cup_matrix(pencil_, truncation_);
        return *cup_;
    }

    PencilFile pf_;
    VarNames names_;
    double tol_ = 1e-10;
    int truncation_ = 0;
    int degree_bound_ = 3;
    int samples_ = 200;
    unsigned seed_ = 0;
    HyperellipticPencil pencil_;
    std::vector<ConnectionMatrix> cms_;
    std::optional<CupMatrix> cup_;
    std::string deferred_numeric_;
};

std::vector<std::string> stages_for(const std::string& command, const Pipeline& p, const std::string& only) {
    if (command != "analyze") return {command};
    if (!only.empty()) return {only};
    std::vector<std::string> out = {"gm", "ks", "ranks", "pairing"};
    if (p.num_params() == 1) {
        out.push_back("monodromy");
        out.push_back("independence");
    }
    if (p.has_endomorphism()) out.push_back("decompose");
    return out;
}

}  // namespace

bool is_command(const std::string& command) {
    return command == "analyze" || std::find(kStages.begin(), kStages.end(), command) != kStages.end();
}

RunResult run_text(const std::string& command, const std::string& text, const RunOptions& opts,
                   const std::string& source_name) {
    RunResult res;
    json& rep = res.report;
    rep["tool"] = json{{"name", "ksmap"}, {"version", kToolVersion}};
    rep["command"] = command;
    rep["input"] = json{{"file", source_name}};
    json stages = json::object();
    json timing = json::object();
    std::string current = "input";
    auto record_error = [&](const char* kind, const std::string& msg, int code) {
        rep["status"] = "error";
        rep["error"] = json{{"kind", kind}, {"stage", current}, {"message", msg}};
        res.exit_code = code;
    };
    try {
        if (!is_command(command)) throw InputError("unknown command '" + command + "'");
        if (!opts.stage.empty() && std::find(kStages.begin(), kStages.end(), opts.stage) == kStages.end()) {
            throw InputError("unknown stage '" + opts.stage + "'");
        }
        const PencilFile pf = parse_pencil_file(text);
        current = "pencil";
        Pipeline p(pf, opts);
        rep["input"] = p.input_echo(source_name);
        stages["pencil"] = p.pencil_stage();
        const std::map<std::string, std::function<json()>> run_stage = {
            {"gm", [&] { return p.gm_stage(); }},
            {"ks", [&] { return p.ks_stage(); }},
            {"ranks", [&] { return p.ranks_stage(); }},
            {"pairing", [&] { return p.pairing_stage(); }},
            {"monodromy", [&] { return p.monodromy_stage(); }},
            {"independence", [&] { return p.independence_stage(); }},
            {"decompose", [&] { return p.decompose_stage(); }},
        };
        for (const auto& s : stages_for(command, p, opts.stage)) {
            current = s;
            const auto t0 = std::chrono::steady_clock::now();
            stages[s] = run_stage.at(s)();
            timing[s] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
        if (!p.deferred_numeric().empty()) throw NumericInconclusive(p.deferred_numeric());
        rep["status"] = "ok";
        res.exit_code = kExitOk;
    } catch (const InputError& e) {
        record_error("input_error", e.what(), kExitInput);
    } catch (const AlgebraError& e) {
        record_error("input_error", e.what(), kExitInput);
    } catch (const NumericInconclusive& e) {
        record_error("numeric_inconclusive", e.what(), kExitNumeric);
    } catch (const InvariantViolation& e) {
        record_error("invariant_violation", e.what(), kExitInvariant);
    } catch (const std::exception& e) {
        record_error("invariant_violation", e.what(), kExitInvariant);
    }
    rep["stages"] = std::move(stages);
    rep["timing_ms"] = std::move(timing);
    return res;
}

RunResult run_file(const std::string& command, const std::string& path, const RunOptions& opts) {
    std::ifstream in(path);
    if (!in) {
        RunResult res = run_text(command, "", opts, path);
        res.report["status"] = "error";
        res.report["error"] = json{{"kind", "input_error"}, {"stage", "input"}, {"message", "cannot open " + path}};
        res.exit_code = kExitInput;
        return res;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_text(command, ss.str(), opts, path);
}

}  // namespace ksmap
