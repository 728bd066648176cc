// Acceptance suite: one criterion per numbered block, one PASS/FAIL line
// each, every check exact (zero tolerance). Criterion 11 needs the CLI
// binary path as argv[1].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lca/annihilation.hpp"
#include "lca/biderivations.hpp"
#include "lca/cohomology.hpp"
#include "lca/conformal.hpp"
#include "lca/derivations.hpp"

using namespace lca;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& label, const std::string& detail,
            double secs) {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << label;
    if (!detail.empty()) os << " -- " << detail;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << " [" << secs << "s]";
    std::cout << os.str() << std::endl;
    if (!pass) ++g_failures;
}

Poly random_dpoly(std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> coef(-3, 3);
    Poly out;
    for (int e = 0; e <= maxdeg; ++e) {
        int c = coef(rng);
        if (c != 0) out += Poly(c) * Poly::variable(Var::Partial, e);
    }
    return out;
}

CochainMap random_cochain(std::mt19937_64& rng, GenIndex max_support, int maxdeg) {
    CochainMap phi;
    for (GenIndex i = 0; i <= max_support; ++i) {
        Poly f = random_dpoly(rng, maxdeg);
        if (!f.is_zero()) phi.phi[i] = f;
    }
    return phi;
}

void criterion1() {
    auto t0 = Clock::now();
    AlgebraParams f = AlgebraParams::formal();
    long bad = 0;
    for (GenIndex i = 0; i <= 8; ++i)
        for (GenIndex j = 0; j <= 8; ++j) {
            if (!check_skew(i, j, f).is_zero()) ++bad;
            for (GenIndex k = 0; k <= 8; ++k)
                if (!check_jacobi(i, j, k, f).is_zero()) ++bad;
        }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << "skew 81 pairs + jacobi 729 triples, formal p, " << bad << " nonzero residuals";
    report(1, bad == 0 && secs < 10.0, "lambda-bracket axioms", d.str(), secs);
}

void criterion2() {
    auto t0 = Clock::now();
    bool ok = check_subalgebras(AlgebraParams::formal()).virasoro_ok;
    for (long pv : {-1L, -2L, -3L}) {
        SubalgebraReport r = check_subalgebras(AlgebraParams::rational(rat(pv)));
        ok = ok && r.virasoro_ok && r.hv_checked && r.hv_ok;
    }
    ok = ok && check_subalgebras(AlgebraParams::rational(rat(2))).virasoro_ok;
    report(2, ok, "virasoro normalization and heisenberg-virasoro closure", "", seconds_since(t0));
}

void criterion3() {
    auto t0 = Clock::now();
    AnnGridReport r = ann_verify_grid(AlgebraParams::formal(), 6, 6, 1);
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << r.checked_pairs << " pairs, " << r.checked_triples << " triples, "
      << r.failures.size() << " failures";
    report(3, r.ok() && secs < 10.0, "annihilation algebra closed vs derived + Lie axioms",
           d.str(), secs);
}

void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (long pv : {-1L, -2L, -3L}) {
        AlgebraParams params = AlgebraParams::rational(rat(pv));
        ConformalDerivation dp = ConformalDerivation::outer_dp(params);
        for (GenIndex i = 0; i <= 8 && ok; ++i)
            for (GenIndex j = 0; j <= 8; ++j)
                if (!check_leibniz(dp, i, j).is_zero()) {
                    ok = false;
                    detail = "leibniz residual nonzero at p=" + std::to_string(pv);
                    break;
                }
        NonInnernessReport cert = non_innerness_certificate(dp, 8);
        if (!cert.non_inner()) {
            ok = false;
            detail = "certificate incomplete at p=" + std::to_string(pv);
        }
        DerivationChart chart{4, 8, 3, 3};
        ClassifyReport cr = classify(params, 4, 8, 3, 3);
        if (in_span(chart.vectorize(dp), cr.inner_space).member) {
            ok = false;
            detail = "outer derivation found inside the truncated inner span";
        }
    }
    report(4, ok, "outer derivation: leibniz + non-innerness certificates", detail,
           seconds_since(t0));
}

void criterion5() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream d;
    struct Case {
        Rat p;
        std::size_t quotient;
    };
    std::vector<Case> cases = {{rat(1), 0},  {rat(2), 0},  {rat(1, 2), 0}, {rat(-1, 2), 0},
                               {rat(-1), 1}, {rat(-2), 1}, {rat(-3), 1}};
    for (const auto& c : cases) {
        auto tp = Clock::now();
        ClassifyReport r = classify(AlgebraParams::rational(c.p), 4, 8, 3, 3);
        double secs = seconds_since(tp);
        bool good = r.dim_quotient_interior == c.quotient && r.matches_classification && secs < 60.0;
        if (c.quotient == 1) good = good && r.outer_found;
        d << "p=" << rat_str(c.p) << ":" << r.dim_quotient_interior
          << (good ? "" : "(MISMATCH)") << " ";
        ok = ok && good;
    }
    report(5, ok, "derivation classification at truncation (N_src=4, N_tgt=8, deg 3)",
           d.str(), seconds_since(t0));
}

void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream d;

    BiderGridReport inner = bider_verify_grid(Biderivation::inner(rat(1), AlgebraParams::formal()), 6, 1);
    if (!inner.ok()) {
        ok = false;
        d << "inner family fails (" << inner.failures.size() << " tuples); ";
    } else {
        d << "inner family: clean on the full grid; ";
    }

    for (long pv : {-1L, -2L, -3L}) {
        AlgebraParams params = AlgebraParams::rational(rat(pv));
        Biderivation fam = Biderivation::delta_truncated(rat(1), params);
        BiderGridReport r = bider_verify_grid(fam, 6, 1);
        if (!r.ok()) {
            ok = false;
            d << "delta-truncated family fails at p=" << pv << " (" << r.failures.size()
              << " tuples, first: " << r.failures.front() << "); ";
        }
        GenIndex mp = params.minus_p_index();
        bool table = fam.value(0, 0) == bracket_gen(0, 0, params, Var::Lambda) &&
                     fam.value(0, mp).is_zero() && fam.value(mp, mp).is_zero();
        if (!table) {
            ok = false;
            d << "hv value table mismatch at p=" << pv << "; ";
        }
    }
    report(6, ok, "biderivation families on the grid <= 6", d.str(), seconds_since(t0));
}

void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream d;

    auto residual_grid = [&](const TwoCocycle& c) {
        for (GenIndex i = 0; i <= 8; ++i)
            for (GenIndex j = 0; i + j <= 8; ++j)
                for (GenIndex k = 0; j + k <= 8 && i + k <= 8; ++k)
                    if (!cocycle_residual(c, i, j, k).is_zero()) return false;
        return true;
    };

    if (!residual_grid(named_cocycle(NamedCocycle::Alpha, AlgebraParams::formal()))) {
        ok = false;
        d << "alpha differential fails with formal p; ";
    }
    for (const Rat& pv : {rat(2), rat(-1, 2), rat(-1), rat(-2)}) {
        AlgebraParams params = AlgebraParams::rational(pv);
        if (!nontriviality(named_cocycle(NamedCocycle::Alpha, params), 8).nontrivial) {
            ok = false;
            d << "alpha trivial at p=" << rat_str(pv) << "; ";
        }
    }
    for (const Rat& pv : {rat(-1, 2), rat(-1), rat(-2)}) {
        AlgebraParams params = AlgebraParams::rational(pv);
        for (NamedCocycle which : {NamedCocycle::Beta, NamedCocycle::BetaBar}) {
            TwoCocycle c = named_cocycle(which, params);
            if (!residual_grid(c) || !nontriviality(c, 8).nontrivial) {
                ok = false;
                d << named_cocycle_name(which) << " fails at p=" << rat_str(pv) << "; ";
            }
        }
    }
    AlgebraParams m1 = AlgebraParams::rational(rat(-1));
    TwoCocycle bt = named_cocycle(NamedCocycle::BetaTilde, m1);
    if (!residual_grid(bt) || !nontriviality(bt, 8).nontrivial) {
        ok = false;
        d << "beta-tilde fails at p=-1; ";
    }

    // Joint independence modulo coboundaries at p = -1 over pair sums <= 8.
    {
        std::vector<std::pair<GenIndex, GenIndex>> pairs;
        for (GenIndex i = 0; i <= 8; ++i)
            for (GenIndex j = i; i + j <= 8; ++j) pairs.emplace_back(i, j);
        const int deg = 3;
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
        for (GenIndex s = 0; s <= 8; ++s) {
            CochainMap phi;
            phi.phi[s] = Poly(1);
            eb.insert_dense(vec_of(coboundary(phi, RankOneModule::trivial(m1), 8)));
        }
        std::size_t grown = 0;
        for (NamedCocycle which : {NamedCocycle::Alpha, NamedCocycle::Beta,
                                   NamedCocycle::BetaBar, NamedCocycle::BetaTilde})
            if (eb.insert_dense(vec_of(named_cocycle(which, m1)))) ++grown;
        if (grown != 4) {
            ok = false;
            d << "only " << grown << " of 4 classes independent mod coboundaries at p=-1; ";
        }
    }
    report(7, ok, "distinguished cocycles: differential, nontriviality, independence",
           d.str(), seconds_since(t0));
}

void criterion8() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream d;
    struct Case {
        Rat p;
        std::size_t interior;
    };
    std::vector<Case> cases = {{rat(2), 1}, {rat(-1, 2), 3}, {rat(-2), 3}, {rat(-1), 4}};
    for (const auto& c : cases) {
        auto tp = Clock::now();
        AlgebraParams params = AlgebraParams::rational(c.p);
        CocycleSolveReport r = cocycle_solver(RankOneModule::trivial(params), 6, 4);
        double secs = seconds_since(tp);
        bool dims = r.dim_quotient_interior == c.interior && secs < 120.0;

        // Representatives must cover the distinguished classes mod coboundaries.
        std::vector<NamedCocycle> expected = {NamedCocycle::Alpha};
        if (params.two_p_is_neg_int()) {
            expected.push_back(NamedCocycle::Beta);
            expected.push_back(NamedCocycle::BetaBar);
        }
        if (params.p_is_minus_one()) expected.push_back(NamedCocycle::BetaTilde);
        EchelonBasis span(r.chart.dimension());
        for (const auto& b : r.coboundary_space.basis) span.insert_dense(b);
        for (const auto& rep : r.interior_reps) span.insert_dense(rep);
        Subspace covered = span.subspace();
        bool named_ok = true;
        for (NamedCocycle which : expected) {
            QVector nv = r.chart.vectorize(named_cocycle(which, params));
            if (!in_span(nv, covered).member || in_span(nv, r.coboundary_space).member)
                named_ok = false;
        }

        d << "p=" << rat_str(c.p) << ": interior=" << r.dim_quotient_interior
          << " (expected " << c.interior << ")"
          << (named_ok ? "" : " named-classes-missing");
        if (!dims) {
            d << " MISMATCH; edge diagnostics: edge classes=" << r.dim_quotient_edge
              << ", extra interior representatives:";
            for (const auto& rep : r.interior_reps) {
                TwoCocycle tc = r.chart.to_cocycle(rep);
                std::ostringstream vals;
                for (const auto& [key, v] : tc.values())
                    if (key.first <= key.second)
                        vals << " (" << key.first << "," << key.second << ")=" << v.str();
                d << " {" << vals.str() << " }";
            }
        }
        d << "; ";
        ok = ok && dims && named_ok;
    }
    report(8, ok, "trivial-coefficient cocycle solver vs expected quotient dims", d.str(),
           seconds_since(t0));
}

void criterion9() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream d;
    std::mt19937_64 rng(91);

    // (a) d(d phi) = 0 with formal Delta, alpha, beta.
    auto dd_zero = [&](const RankOneModule& mod) {
        for (int t = 0; t < 10; ++t) {
            TwoCocycle dphi = coboundary(random_cochain(rng, 3, 2), mod, 8);
            for (GenIndex i = 0; i <= 4; ++i)
                for (GenIndex j = 0; j <= 4; ++j)
                    for (GenIndex k = 0; k <= 4; ++k)
                        if (!cocycle_residual(dphi, i, j, k).is_zero()) return false;
        }
        return true;
    };
    for (long pv : {2L, -2L})
        if (!dd_zero(RankOneModule::m_delta_alpha(AlgebraParams::rational(rat(pv))))) {
            ok = false;
            d << "d(d phi) != 0 over m-delta-alpha at p=" << pv << "; ";
        }
    if (!dd_zero(RankOneModule::m_delta_alpha_beta(AlgebraParams::rational(rat(-1))))) {
        ok = false;
        d << "d(d phi) != 0 over m-delta-alpha-beta; ";
    }

    // (b) trivialize round-trips 20 random psi per module.
    auto roundtrips = [&](const RankOneModule& mod) {
        for (int t = 0; t < 20; ++t) {
            TwoCocycle c = coboundary(random_cochain(rng, 3, 2), mod, 5);
            if (!trivialize(c, 5).success) return false;
        }
        return true;
    };
    for (long pv : {2L, -2L})
        if (!roundtrips(RankOneModule::m_delta_alpha(AlgebraParams::rational(rat(pv)), rat(1),
                                                     rat(1)))) {
            ok = false;
            d << "trivialize round-trip failed over m-delta-alpha at p=" << pv << "; ";
        }
    if (!roundtrips(RankOneModule::m_delta_alpha_beta(AlgebraParams::rational(rat(-1)), rat(1),
                                                      rat(1), rat(1)))) {
        ok = false;
        d << "trivialize round-trip failed over m-delta-alpha-beta; ";
    }

    // (c) solver quotients vanish for alpha = 1, Delta in {0, 1}, N = 5.
    for (const Rat& dv : {rat(0), rat(1)}) {
        for (long pv : {2L, -2L}) {
            CocycleSolveReport r = cocycle_solver(
                RankOneModule::m_delta_alpha(AlgebraParams::rational(rat(pv)), dv, rat(1)), 5,
                4, 3);
            if (r.dim_quotient_interior != 0) {
                ok = false;
                d << "nonzero quotient for m-delta-alpha p=" << pv << " Delta=" << rat_str(dv)
                  << "; ";
            }
        }
        CocycleSolveReport r = cocycle_solver(
            RankOneModule::m_delta_alpha_beta(AlgebraParams::rational(rat(-1)), dv, rat(1),
                                              rat(1)),
            5, 4, 3);
        if (r.dim_quotient_interior != 0) {
            ok = false;
            d << "nonzero quotient for m-delta-alpha-beta Delta=" << rat_str(dv) << "; ";
        }
    }
    double secs = seconds_since(t0);
    report(9, ok && secs < 120.0, "rank-one coefficients: d^2=0, trivialization, H^2=0",
           d.str(), secs);
}

void criterion10() {
    auto t0 = Clock::now();
    bool ok = true;
    RankOneModule mda = RankOneModule::m_delta_alpha(AlgebraParams::formal());
    RankOneModule mdab = RankOneModule::m_delta_alpha_beta(AlgebraParams::rational(rat(-1)));
    for (GenIndex i = 0; i <= 4; ++i)
        for (GenIndex j = 0; j <= 4; ++j) {
            if (!check_module_axioms(mda, i, j).is_zero()) ok = false;
            if (!check_module_axioms(mdab, i, j).is_zero()) ok = false;
        }
    report(10, ok, "module axioms identically in formal parameters", "", seconds_since(t0));
}

struct CliRun {
    std::string args;
    std::string outfile;
};

void criterion11(const std::string& cli) {
    auto t0 = Clock::now();
    if (cli.empty()) {
        report(11, false, "CLI determinism", "no CLI path provided", seconds_since(t0));
        return;
    }
    std::vector<CliRun> suite = {
        {"verify-axioms --p -1 --max-index 4 --format json", "axioms.json"},
        {"verify-axioms --p formal --max-index 4 --format json", "axioms_formal.json"},
        {"annihilation --p formal --max-index 4 --format json", "ann.json"},
        {"derivations check --p -2 --max-index 5 --format json", "dcheck.json"},
        {"derivations classify --p -1 --max-index 4 --format json", "dclassify.json"},
        {"derivations outer --p -2 --max-index 5 --format json", "douter.json"},
        {"biderivations check --p -1 --max-index 4 --format json", "bider.json"},
        {"cohomology named --p -1 --max-index 8 --format json", "named.json"},
        {"cohomology solve --p -1 --coeffs trivial --max-index 6 --format json", "solve.json"},
        {"cohomology solve --p 2 --coeffs m-delta-alpha --delta 1 --alpha 1 --max-index 5 "
         "--format json",
         "msolve.json"},
        {"cohomology trivialize --p -1 --coeffs m-delta-alpha-beta --max-index 5 --format "
         "json",
         "triv.json"},
    };
    bool ok = true;
    std::string detail;
    for (const auto& run : suite) {
        std::string f1 = "/tmp/lca_det_a_" + run.outfile;
        std::string f2 = "/tmp/lca_det_b_" + run.outfile;
        std::string cmd1 = cli + " " + run.args + " --out " + f1 + " 2>/dev/null";
        std::string cmd2 = cli + " " + run.args + " --out " + f2 + " 2>/dev/null";
        int rc1 = std::system(cmd1.c_str());
        int rc2 = std::system(cmd2.c_str());
        auto slurp = [](const std::string& path) {
            std::ifstream f(path, std::ios::binary);
            std::ostringstream ss;
            ss << f.rdbuf();
            return ss.str();
        };
        std::string a = slurp(f1), b = slurp(f2);
        if (a.empty() || a != b || rc1 != rc2) {
            ok = false;
            detail += run.outfile + " differs; ";
        }
        std::remove(f1.c_str());
        std::remove(f2.c_str());
    }
    report(11, ok, "CLI reports byte-identical across runs", detail, seconds_since(t0));
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11(cli);
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
