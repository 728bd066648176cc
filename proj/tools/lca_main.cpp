// lca: batch verifier for the Block-type Lie conformal algebra toolkit.
//
// Exit codes: 0 success, 2 mathematical contract violation, 64 usage error.
// Reports carry no timestamps and iterate in fixed orders, so identical
// configurations produce byte-identical output.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "lca/annihilation.hpp"
#include "lca/biderivations.hpp"
#include "lca/cohomology.hpp"
#include "lca/conformal.hpp"
#include "lca/derivations.hpp"
#include "lca/parallel.hpp"

using json = nlohmann::ordered_json;
using namespace lca;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitContract = 2;
constexpr int kExitUsage = 64;

struct CommonOpts {
    std::string p = "formal";
    std::string format = "text";
    std::string out;
    int jobs = 0;
};

int default_jobs() {
    if (const char* env = std::getenv("LCA_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

AlgebraParams parse_params(const std::string& s) {
    if (s == "formal") return AlgebraParams::formal();
    return AlgebraParams::rational(rat_parse(s));
}

AlgebraParams parse_rational_params(const std::string& s, const char* what) {
    if (s == "formal")
        throw std::invalid_argument(std::string(what) + " needs a concrete rational p");
    return AlgebraParams::rational(rat_parse(s));
}

void emit(const json& report, const CommonOpts& opts, const std::string& text) {
    std::string payload = opts.format == "json" ? report.dump(2) + "\n" : text;
    if (!opts.out.empty()) {
        std::ofstream f(opts.out, std::ios::binary);
        f << payload;
    } else {
        std::cout << payload;
    }
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--p", opts.p, "algebra parameter: rational 'a/b' or 'formal'");
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", opts.out, "write the report to a file instead of stdout");
    cmd->add_option("--jobs,-j", opts.jobs, "worker threads (default: LCA_JOBS or 1)");
}

int run_verify_axioms(const CommonOpts& opts, long max_index) {
    AlgebraParams params = parse_params(opts.p);
    const std::size_t w = static_cast<std::size_t>(max_index) + 1;
    int jobs = opts.jobs > 0 ? opts.jobs : default_jobs();

    std::vector<std::string> skew_fail(w * w);
    parallel_for(w * w, jobs, [&](std::size_t t) {
        GenIndex i = static_cast<GenIndex>(t / w), j = static_cast<GenIndex>(t % w);
        LambdaElement r = check_skew(i, j, params);
        if (!r.is_zero()) skew_fail[t] = r.str();
    });
    std::vector<std::string> jac_fail(w * w * w);
    parallel_for(w * w * w, jobs, [&](std::size_t t) {
        GenIndex i = static_cast<GenIndex>(t / (w * w)), j = static_cast<GenIndex>((t / w) % w),
                 k = static_cast<GenIndex>(t % w);
        LambdaElement r = check_jacobi(i, j, k, params);
        if (!r.is_zero()) jac_fail[t] = r.str();
    });
    SubalgebraReport sub = check_subalgebras(params);

    bool ok = sub.ok();
    json jskew = json::array(), jjac = json::array();
    for (std::size_t t = 0; t < w * w; ++t) {
        json e;
        e["i"] = static_cast<long>(t / w);
        e["j"] = static_cast<long>(t % w);
        e["status"] = skew_fail[t].empty() ? "ok" : skew_fail[t];
        if (!skew_fail[t].empty()) ok = false;
        jskew.push_back(e);
    }
    for (std::size_t t = 0; t < w * w * w; ++t) {
        json e;
        e["i"] = static_cast<long>(t / (w * w));
        e["j"] = static_cast<long>((t / w) % w);
        e["k"] = static_cast<long>(t % w);
        e["status"] = jac_fail[t].empty() ? "ok" : jac_fail[t];
        if (!jac_fail[t].empty()) ok = false;
        jjac.push_back(e);
    }

    json rep;
    rep["schema"] = 1;
    rep["command"] = "verify-axioms";
    rep["p"] = params.str();
    rep["max_index"] = max_index;
    rep["ok"] = ok;
    rep["skew"] = jskew;
    rep["jacobi"] = jjac;
    rep["subalgebras"] = {{"virasoro_ok", sub.virasoro_ok},
                          {"hv_checked", sub.hv_checked},
                          {"hv_ok", sub.hv_ok},
                          {"notes", sub.notes}};

    auto nonzero = [](const std::vector<std::string>& v) {
        return std::count_if(v.begin(), v.end(),
                             [](const std::string& s) { return !s.empty(); });
    };
    std::ostringstream text;
    text << "verify-axioms p=" << params.str() << " max-index=" << max_index << "\n"
         << "  skew: " << w * w << " pairs, " << nonzero(skew_fail)
         << " nonzero residuals\n"
         << "  jacobi: " << w * w * w << " triples, " << nonzero(jac_fail)
         << " nonzero residuals\n"
         << "  virasoro normalization: " << (sub.virasoro_ok ? "ok" : "FAIL") << "\n";
    if (sub.hv_checked)
        text << "  heisenberg-virasoro closure: " << (sub.hv_ok ? "ok" : "FAIL") << "\n";
    text << (ok ? "OK\n" : "CONTRACT VIOLATION\n");

    emit(rep, opts, text.str());
    return ok ? kExitOk : kExitContract;
}

int run_annihilation(const CommonOpts& opts, long max_index, const std::string& table_path) {
    AlgebraParams params = parse_params(opts.p);
    int jobs = opts.jobs > 0 ? opts.jobs : default_jobs();
    AnnGridReport grid = ann_verify_grid(params, max_index, max_index, jobs);

    if (!table_path.empty()) {
        std::ofstream f(table_path, std::ios::binary);
        f << ann_table_csv(params, max_index, max_index);
    }

    json rep;
    rep["schema"] = 1;
    rep["command"] = "annihilation";
    rep["p"] = params.str();
    rep["max_index"] = max_index;
    rep["ok"] = grid.ok();
    rep["pairs_checked"] = grid.checked_pairs;
    rep["triples_checked"] = grid.checked_triples;
    rep["failures"] = grid.failures;

    std::ostringstream text;
    text << "annihilation p=" << params.str() << " max-index=" << max_index << "\n"
         << "  derived-vs-closed + antisymmetry: " << grid.checked_pairs << " pairs\n"
         << "  jacobi: " << grid.checked_triples << " triples\n"
         << "  failures: " << grid.failures.size() << "\n"
         << (grid.ok() ? "OK\n" : "CONTRACT VIOLATION\n");
    for (const auto& f : grid.failures) text << "  " << f << "\n";

    emit(rep, opts, text.str());
    return grid.ok() ? kExitOk : kExitContract;
}

int run_derivations_check(const CommonOpts& opts, long max_index) {
    AlgebraParams params = parse_params(opts.p);
    bool ok = true;
    json checks = json::array();
    std::ostringstream text;
    text << "derivations check p=" << params.str() << " max-index=" << max_index << "\n";

    std::vector<std::pair<std::string, ConformalDerivation>> suite;
    suite.emplace_back("inner(L0)", ConformalDerivation::inner({{0, Poly(1)}}, params));
    suite.emplace_back("inner(d L1)",
                       ConformalDerivation::inner({{1, pvar(Var::Partial)}}, params));
    suite.emplace_back(
        "inner(L2 + d^2 L0)",
        ConformalDerivation::inner(
            {{2, Poly(1)}, {0, pvar(Var::Partial) * pvar(Var::Partial)}}, params));
    if (params.p_is_neg_int())
        suite.emplace_back("outer_dp", ConformalDerivation::outer_dp(params));

    for (const auto& [name, D] : suite) {
        long bad = 0;
        for (GenIndex i = 0; i <= max_index; ++i)
            for (GenIndex j = 0; j <= max_index; ++j)
                if (!check_leibniz(D, i, j).is_zero()) ++bad;
        json e;
        e["derivation"] = name;
        e["pairs"] = (max_index + 1) * (max_index + 1);
        e["nonzero_residuals"] = bad;
        checks.push_back(e);
        text << "  " << name << ": " << bad << " nonzero residuals\n";
        if (bad > 0) ok = false;
    }

    json rep;
    rep["schema"] = 1;
    rep["command"] = "derivations-check";
    rep["p"] = params.str();
    rep["max_index"] = max_index;
    rep["ok"] = ok;
    rep["checks"] = checks;
    text << (ok ? "OK\n" : "CONTRACT VIOLATION\n");
    emit(rep, opts, text.str());
    return ok ? kExitOk : kExitContract;
}

int run_derivations_outer(const CommonOpts& opts, long max_index) {
    AlgebraParams params = parse_rational_params(opts.p, "derivations outer");
    ConformalDerivation dp = ConformalDerivation::outer_dp(params); // rejects p not in Z^-
    long n = std::max<long>(max_index, params.minus_p_index() + 1);
    NonInnernessReport r = non_innerness_certificate(dp, n);

    json rep;
    rep["schema"] = 1;
    rep["command"] = "derivations-outer";
    rep["p"] = params.str();
    rep["max_index"] = n;
    rep["ok"] = r.non_inner();
    rep["obstruction_ok"] = r.obstruction_ok;
    rep["system_infeasible"] = r.system_infeasible;
    rep["notes"] = r.notes;

    std::ostringstream text;
    text << "derivations outer p=" << params.str() << " max-index=" << n << "\n"
         << "  lam=0 obstruction: " << (r.obstruction_ok ? "holds" : "FAILS") << "\n"
         << "  ad(gamma)=D solvable: " << (r.system_infeasible ? "no (non-inner)" : "yes")
         << "\n"
         << (r.non_inner() ? "OK\n" : "CONTRACT VIOLATION\n");
    emit(rep, opts, text.str());
    return r.non_inner() ? kExitOk : kExitContract;
}

int run_derivations_classify(const CommonOpts& opts, long max_index, long max_target,
                             int deg_lambda, int deg_partial) {
    AlgebraParams params = parse_rational_params(opts.p, "derivations classify");
    long n_tgt = max_target;
    if (n_tgt < 0) n_tgt = max_index + 4;
    ClassifyReport r = classify(params, max_index, n_tgt, deg_partial, deg_lambda);

    json rep;
    rep["schema"] = 1;
    rep["command"] = "derivations-classify";
    rep["p"] = r.p;
    rep["N_src"] = r.n_src;
    rep["N_tgt"] = r.n_tgt;
    rep["degrees"] = {{"partial", r.deg_partial}, {"lambda", r.deg_lambda}};
    rep["dim_kernel"] = r.dim_kernel;
    rep["dim_inner"] = r.dim_inner;
    rep["dim_quotient"] = r.dim_quotient;
    rep["dim_quotient_interior"] = r.dim_quotient_interior;
    rep["outer_found"] = r.outer_found;
    rep["edge_suspect_count"] = r.edge_suspect_count;
    rep["matches_classification"] = r.matches_classification;

    std::ostringstream text;
    text << "derivations classify p=" << r.p << " N_src=" << r.n_src << " N_tgt=" << r.n_tgt
         << " deg_partial=" << r.deg_partial << " deg_lambda=" << r.deg_lambda << "\n"
         << "  dim kernel = " << r.dim_kernel << ", dim inner = " << r.dim_inner
         << ", quotient = " << r.dim_quotient << " (interior " << r.dim_quotient_interior
         << ", edge-suspect " << r.edge_suspect_count << ")\n"
         << "  outer class found: " << (r.outer_found ? "yes" : "no") << "\n"
         << (r.matches_classification ? "OK\n" : "CONTRACT VIOLATION\n");
    emit(rep, opts, text.str());
    return r.matches_classification ? kExitOk : kExitContract;
}

int run_biderivations_check(const CommonOpts& opts, long max_index, const std::string& cstr) {
    AlgebraParams params = parse_params(opts.p);
    Rat c = rat_parse(cstr);
    int jobs = opts.jobs > 0 ? opts.jobs : default_jobs();
    bool ok = true;
    json families = json::array();
    std::ostringstream text;
    text << "biderivations check p=" << params.str() << " max-index=" << max_index << "\n";

    auto run_family = [&](const std::string& name, const Biderivation& d) {
        BiderGridReport r = bider_verify_grid(d, max_index, jobs);
        json e;
        e["family"] = name;
        e["pairs"] = r.pairs;
        e["triples"] = r.triples;
        e["quads"] = r.quads;
        e["failures"] = r.failures;
        families.push_back(e);
        text << "  " << name << ": " << r.failures.size() << " failures\n";
        for (std::size_t t = 0; t < r.failures.size() && t < 3; ++t)
            text << "    " << r.failures[t] << "\n";
        if (!r.ok()) ok = false;
    };

    run_family("inner", Biderivation::inner(c, params));
    if (params.p_is_neg_int()) {
        run_family("delta-truncated", Biderivation::delta_truncated(c, params));
        // Value table on the Heisenberg-Virasoro generator pairs.
        Biderivation fam = Biderivation::delta_truncated(c, params);
        GenIndex mp = params.minus_p_index();
        bool table_ok =
            fam.value(0, 0) == bracket_gen(0, 0, params, Var::Lambda).scaled(Poly(c)) &&
            fam.value(0, mp).is_zero() && fam.value(mp, mp).is_zero();
        json e;
        e["family"] = "hv-value-table";
        e["ok"] = table_ok;
        families.push_back(e);
        text << "  hv-value-table: " << (table_ok ? "ok" : "FAIL") << "\n";
        if (!table_ok) ok = false;
    }

    json rep;
    rep["schema"] = 1;
    rep["command"] = "biderivations-check";
    rep["p"] = params.str();
    rep["max_index"] = max_index;
    rep["c"] = rat_str(c);
    rep["ok"] = ok;
    rep["families"] = families;
    text << (ok ? "OK\n" : "CONTRACT VIOLATION\n");
    emit(rep, opts, text.str());
    return ok ? kExitOk : kExitContract;
}

json cocycle_values_json(const TwoCocycle& c) {
    json vals = json::object();
    for (const auto& [key, v] : c.values()) {
        if (key.first > key.second) continue;
        vals["(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")"] =
            v.str();
    }
    return vals;
}

int run_cohomology_named(const CommonOpts& opts, long max_index) {
    AlgebraParams params = parse_rational_params(opts.p, "cohomology named");
    bool ok = true;
    json classes = json::array();
    std::ostringstream text;
    text << "cohomology named p=" << params.str() << " max-index=" << max_index << "\n";

    std::vector<NamedCocycle> applicable = {NamedCocycle::Alpha};
    if (params.two_p_is_neg_int()) {
        applicable.push_back(NamedCocycle::Beta);
        applicable.push_back(NamedCocycle::BetaBar);
    }
    if (params.p_is_minus_one()) applicable.push_back(NamedCocycle::BetaTilde);

    std::vector<TwoCocycle> named;
    for (NamedCocycle which : applicable) {
        TwoCocycle c = named_cocycle(which, params);
        long bad = 0;
        for (GenIndex i = 0; i <= max_index; ++i)
            for (GenIndex j = 0; i + j <= max_index; ++j)
                for (GenIndex k = 0; j + k <= max_index && i + k <= max_index; ++k)
                    if (!cocycle_residual(c, i, j, k).is_zero()) ++bad;
        NontrivialityResult nt = nontriviality(c, max_index);
        json e;
        e["name"] = named_cocycle_name(which);
        e["differential_failures"] = bad;
        e["nontrivial"] = nt.nontrivial;
        e["values"] = cocycle_values_json(c);
        classes.push_back(e);
        text << "  " << named_cocycle_name(which) << ": dc=0 " << (bad == 0 ? "ok" : "FAIL")
             << ", nontrivial " << (nt.nontrivial ? "ok" : "FAIL") << "\n";
        if (bad != 0 || !nt.nontrivial) ok = false;
        named.push_back(c);
    }

    // Joint independence modulo coboundaries when several classes exist.
    bool joint_ok = true;
    if (named.size() > 1) {
        int deg = 3;
        std::vector<std::pair<GenIndex, GenIndex>> pairs;
        for (GenIndex i = 0; i <= max_index; ++i)
            for (GenIndex j = i; i + j <= max_index; ++j) pairs.emplace_back(i, j);
        const std::size_t dim = pairs.size() * (deg + 1);
        auto vec_of = [&](const TwoCocycle& c) {
            QVector v(dim, Rat(0));
            for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
                Poly f = c.value(pairs[pi].first, pairs[pi].second);
                for (const auto& [t, coef] : f.decompose_by(Var::Lambda))
                    v[pi * (deg + 1) + t] = coef.constant_value();
            }
            return v;
        };
        EchelonBasis eb(dim);
        for (GenIndex s = 0; s <= max_index; ++s) {
            CochainMap phi;
            phi.phi[s] = Poly(1);
            eb.insert_dense(
                vec_of(coboundary(phi, RankOneModule::trivial(params), max_index)));
        }
        std::size_t base = eb.rank();
        std::size_t grown = 0;
        for (const auto& c : named)
            if (eb.insert_dense(vec_of(c))) ++grown;
        joint_ok = grown == named.size();
        text << "  joint independence mod coboundaries: rank " << base << " -> " << eb.rank()
             << " (" << (joint_ok ? "ok" : "FAIL") << ")\n";
        if (!joint_ok) ok = false;
    }

    json rep;
    rep["schema"] = 1;
    rep["command"] = "cohomology-named";
    rep["p"] = params.str();
    rep["max_index"] = max_index;
    rep["ok"] = ok;
    rep["classes"] = classes;
    rep["jointly_independent"] = joint_ok;
    text << (ok ? "OK\n" : "CONTRACT VIOLATION\n");
    emit(rep, opts, text.str());
    return ok ? kExitOk : kExitContract;
}

RankOneModule make_module(const std::string& coeffs, const AlgebraParams& params,
                          const std::string& delta, const std::string& alpha,
                          const std::string& beta) {
    if (coeffs == "trivial") return RankOneModule::trivial(params);
    auto opt = [](const std::string& s) -> std::optional<Rat> {
        if (s == "formal") return std::nullopt;
        return rat_parse(s);
    };
    if (coeffs == "m-delta-alpha")
        return RankOneModule::m_delta_alpha(params, opt(delta), opt(alpha));
    if (coeffs == "m-delta-alpha-beta")
        return RankOneModule::m_delta_alpha_beta(params, opt(delta), opt(alpha), opt(beta));
    throw std::invalid_argument("unknown --coeffs kind: " + coeffs);
}

int run_cohomology_solve(const CommonOpts& opts, const std::string& coeffs, long max_index,
                         int deg_lambda, int deg_partial, const std::string& delta,
                         const std::string& alpha, const std::string& beta) {
    AlgebraParams params = parse_rational_params(opts.p, "cohomology solve");
    RankOneModule mod = make_module(coeffs, params, delta, alpha, beta);
    CocycleSolveReport r = cocycle_solver(mod, max_index, deg_lambda, deg_partial);

    // Name interior classes after the distinguished representatives when
    // they match up to a coboundary.
    std::vector<std::pair<std::string, QVector>> named_vecs;
    if (mod.is_trivial()) {
        std::vector<NamedCocycle> all = {NamedCocycle::Alpha};
        if (params.two_p_is_neg_int()) {
            all.push_back(NamedCocycle::Beta);
            all.push_back(NamedCocycle::BetaBar);
        }
        if (params.p_is_minus_one()) all.push_back(NamedCocycle::BetaTilde);
        for (NamedCocycle which : all)
            named_vecs.emplace_back(named_cocycle_name(which),
                                    r.chart.vectorize(named_cocycle(which, params)));
    }

    json classes = json::array();
    for (std::size_t idx = 0; idx < r.interior_reps.size(); ++idx) {
        std::string label = "interior-" + std::to_string(idx);
        for (const auto& [name, nv] : named_vecs) {
            EchelonBasis eb(r.chart.dimension());
            for (const auto& b : r.coboundary_space.basis) eb.insert_dense(b);
            eb.insert_dense(r.interior_reps[idx]);
            if (in_span(nv, eb.subspace()).member && !in_span(nv, r.coboundary_space).member)
                label = name;
        }
        json e;
        e["name_or_index"] = label;
        e["kind"] = "interior";
        e["representative_values"] =
            cocycle_values_json(r.chart.to_cocycle(r.interior_reps[idx]));
        classes.push_back(e);
    }
    for (std::size_t idx = 0; idx < r.edge_reps.size(); ++idx) {
        json e;
        e["name_or_index"] = "edge-" + std::to_string(idx);
        e["kind"] = "edge-suspect";
        e["representative_values"] = cocycle_values_json(r.chart.to_cocycle(r.edge_reps[idx]));
        classes.push_back(e);
    }

    json rep;
    rep["schema"] = 1;
    rep["command"] = "cohomology-solve";
    rep["module_kind"] = r.module_kind;
    rep["p"] = r.p;
    rep["delta"] = r.delta;
    rep["alpha"] = r.alpha;
    rep["beta"] = r.beta;
    rep["N"] = r.N;
    rep["deg_lambda"] = r.deg_lambda;
    rep["deg_partial"] = r.deg_partial;
    rep["dim_cocycles"] = r.dim_cocycles;
    rep["dim_coboundaries"] = r.dim_coboundaries;
    rep["dim_quotient_interior"] = r.dim_quotient_interior;
    rep["dim_quotient_edge"] = r.dim_quotient_edge;
    rep["classes"] = classes;

    std::ostringstream text;
    text << "cohomology solve coeffs=" << r.module_kind << " p=" << r.p << " N=" << r.N
         << " deg_lambda=" << r.deg_lambda << " deg_partial=" << r.deg_partial << "\n"
         << "  dim cocycles = " << r.dim_cocycles
         << ", dim coboundaries = " << r.dim_coboundaries << "\n"
         << "  quotient: interior = " << r.dim_quotient_interior
         << ", edge-suspect = " << r.dim_quotient_edge << "\n";
    for (const auto& e : classes)
        text << "  class " << e["name_or_index"].get<std::string>() << " ["
             << e["kind"].get<std::string>() << "] " << e["representative_values"].dump()
             << "\n";
    text << "OK\n";
    emit(rep, opts, text.str());
    return kExitOk;
}

int run_cohomology_trivialize(const CommonOpts& opts, const std::string& coeffs,
                              long max_index, int count, unsigned long seed,
                              const std::string& delta, const std::string& alpha,
                              const std::string& beta) {
    AlgebraParams params = parse_rational_params(opts.p, "cohomology trivialize");
    if (coeffs == "trivial")
        throw std::invalid_argument("trivialize needs a rank-one coefficient module");
    RankOneModule mod = make_module(coeffs, params, delta, alpha, beta);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    bool ok = true;
    json rounds = json::array();
    for (int t = 0; t < count; ++t) {
        CochainMap psi;
        for (GenIndex i = 0; i <= 3; ++i) {
            Poly f;
            for (int e = 0; e <= 2; ++e) {
                int c = coef(rng);
                if (c != 0) f += Poly(c) * Poly::variable(Var::Partial, e);
            }
            if (!f.is_zero()) psi.phi[i] = f;
        }
        TwoCocycle c = coboundary(psi, mod, max_index);
        TrivializeResult r = trivialize(c, max_index);
        json e;
        e["round"] = t;
        e["success"] = r.success;
        if (!r.success) e["failure"] = r.first_failure;
        rounds.push_back(e);
        if (!r.success) ok = false;
    }

    json rep;
    rep["schema"] = 1;
    rep["command"] = "cohomology-trivialize";
    rep["module_kind"] = mod.kind_name();
    rep["p"] = params.str();
    rep["N"] = max_index;
    rep["rounds"] = count;
    rep["seed"] = seed;
    rep["ok"] = ok;
    rep["results"] = rounds;

    std::ostringstream text;
    text << "cohomology trivialize coeffs=" << mod.kind_name() << " p=" << params.str()
         << " N=" << max_index << " rounds=" << count << "\n"
         << (ok ? "OK: all round-trips closed\n" : "CONTRACT VIOLATION\n");
    emit(rep, opts, text.str());
    return ok ? kExitOk : kExitContract;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for a family of Block-type Lie conformal algebras"};
    app.require_subcommand(1);

    CommonOpts o_axioms, o_ann, o_dcheck, o_douter, o_dclassify, o_bider, o_cnamed,
        o_csolve, o_ctriv;
    long ax_n = 8, ann_n = 6, dchk_n = 8, dout_n = 4, dcls_n = 4, dcls_tgt = -1, bid_n = 6,
         cnm_n = 8, csv_n = 6, ctr_n = 5;
    int dcls_dl = 3, dcls_dp = 3, csv_dl = 4, csv_dp = 3, ctr_count = 20;
    unsigned long ctr_seed = 1;
    std::string ann_table, bid_c = "1";
    std::string csv_coeffs = "trivial", ctr_coeffs = "m-delta-alpha";
    std::string csv_delta = "0", csv_alpha = "1", csv_beta = "0";
    std::string ctr_delta = "1", ctr_alpha = "1", ctr_beta = "1";

    auto* ax = app.add_subcommand("verify-axioms", "skew, jacobi and subalgebra checks");
    add_common(ax, o_axioms);
    ax->add_option("--max-index", ax_n, "index box upper bound");

    auto* ann = app.add_subcommand("annihilation", "annihilation-algebra cross-checks");
    add_common(ann, o_ann);
    ann->add_option("--max-index", ann_n, "index box upper bound");
    ann->add_option("--emit-table", ann_table, "write the structure-constant CSV here");

    auto* der = app.add_subcommand("derivations", "conformal derivation suites");
    der->require_subcommand(1);
    auto* dchk = der->add_subcommand("check", "Leibniz residual grids");
    add_common(dchk, o_dcheck);
    dchk->add_option("--max-index", dchk_n, "index box upper bound");
    auto* dout = der->add_subcommand("outer", "non-innerness certificate for D^p");
    add_common(dout, o_douter);
    dout->add_option("--max-index", dout_n, "certificate range");
    auto* dcls = der->add_subcommand("classify", "truncated derivation-space solver");
    add_common(dcls, o_dclassify);
    dcls->add_option("--max-index", dcls_n, "source truncation N_src");
    dcls->add_option("--max-target", dcls_tgt, "target truncation N_tgt (default N_src+4)");
    dcls->add_option("--deg-lambda", dcls_dl, "lambda-degree bound");
    dcls->add_option("--deg-partial", dcls_dp, "d-degree bound");

    auto* bid = app.add_subcommand("biderivations", "conformal biderivation suites");
    bid->require_subcommand(1);
    auto* bchk = bid->add_subcommand("check", "bilinearity, skew, identity grids");
    add_common(bchk, o_bider);
    bchk->add_option("--max-index", bid_n, "index box upper bound");
    bchk->add_option("--c", bid_c, "scalar of the tested family");

    auto* coh = app.add_subcommand("cohomology", "second-cohomology machinery");
    coh->require_subcommand(1);
    auto* cnm = coh->add_subcommand("named", "distinguished cocycles: dc=0 + nontriviality");
    add_common(cnm, o_cnamed);
    cnm->add_option("--max-index", cnm_n, "pair-sum bound");
    auto* csv = coh->add_subcommand("solve", "truncated cocycle-space solver");
    add_common(csv, o_csolve);
    csv->add_option("--max-index", csv_n, "pair-sum bound N");
    csv->add_option("--deg-lambda", csv_dl, "lambda-degree bound");
    csv->add_option("--deg-partial", csv_dp, "d-degree bound (rank-one modules)");
    csv->add_option("--coeffs", csv_coeffs, "coefficient module")
        ->check(CLI::IsMember({"trivial", "m-delta-alpha", "m-delta-alpha-beta"}));
    csv->add_option("--delta", csv_delta, "module parameter Delta");
    csv->add_option("--alpha", csv_alpha, "module parameter alpha");
    csv->add_option("--beta", csv_beta, "module parameter beta");
    auto* ctr = coh->add_subcommand("trivialize", "coboundary round-trip driver");
    add_common(ctr, o_ctriv);
    ctr->add_option("--max-index", ctr_n, "pair-sum bound N");
    ctr->add_option("--count", ctr_count, "number of random round-trips");
    ctr->add_option("--seed", ctr_seed, "random seed");
    ctr->add_option("--coeffs", ctr_coeffs, "coefficient module")
        ->check(CLI::IsMember({"m-delta-alpha", "m-delta-alpha-beta"}));
    ctr->add_option("--delta", ctr_delta, "module parameter Delta");
    ctr->add_option("--alpha", ctr_alpha, "module parameter alpha");
    ctr->add_option("--beta", ctr_beta, "module parameter beta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (ax->parsed()) return run_verify_axioms(o_axioms, ax_n);
        if (ann->parsed()) return run_annihilation(o_ann, ann_n, ann_table);
        if (der->parsed()) {
            if (dchk->parsed()) return run_derivations_check(o_dcheck, dchk_n);
            if (dout->parsed()) return run_derivations_outer(o_douter, dout_n);
            if (dcls->parsed())
                return run_derivations_classify(o_dclassify, dcls_n, dcls_tgt, dcls_dl,
                                                dcls_dp);
        }
        if (bid->parsed() && bchk->parsed())
            return run_biderivations_check(o_bider, bid_n, bid_c);
        if (coh->parsed()) {
            if (cnm->parsed()) return run_cohomology_named(o_cnamed, cnm_n);
            if (csv->parsed())
                return run_cohomology_solve(o_csolve, csv_coeffs, csv_n, csv_dl, csv_dp,
                                            csv_delta, csv_alpha, csv_beta);
            if (ctr->parsed())
                return run_cohomology_trivialize(o_ctriv, ctr_coeffs, ctr_n, ctr_count,
                                                 ctr_seed, ctr_delta, ctr_alpha, ctr_beta);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    }
    return kExitUsage;
}
