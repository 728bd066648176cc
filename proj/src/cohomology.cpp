#include "lca/cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lca {

namespace {

const Poly kZero;

Poly opt_poly(const std::optional<Rat>& v, Var formal) {
    return v ? Poly(*v) : Poly::variable(formal);
}

} // namespace

RankOneModule RankOneModule::trivial(const AlgebraParams& params) {
    return RankOneModule(Kind::Trivial, params);
}

RankOneModule RankOneModule::m_delta_alpha(const AlgebraParams& params,
                                           std::optional<Rat> delta,
                                           std::optional<Rat> alpha) {
    RankOneModule m(Kind::MDeltaAlpha, params);
    m.delta_ = delta;
    m.alpha_ = alpha;
    return m;
}

RankOneModule RankOneModule::m_delta_alpha_beta(const AlgebraParams& params,
                                                std::optional<Rat> delta,
                                                std::optional<Rat> alpha,
                                                std::optional<Rat> beta) {
    if (!params.p_is_minus_one())
        throw std::invalid_argument("m_delta_alpha_beta: requires p = -1");
    RankOneModule m(Kind::MDeltaAlphaBeta, params);
    m.delta_ = delta;
    m.alpha_ = alpha;
    m.beta_ = beta;
    return m;
}

Poly RankOneModule::delta_poly() const { return opt_poly(delta_, Var::Delta); }
Poly RankOneModule::alpha_poly() const { return opt_poly(alpha_, Var::Alpha); }
Poly RankOneModule::beta_poly() const { return opt_poly(beta_, Var::Beta); }

Poly RankOneModule::partial_m() const {
    return kind_ == Kind::Trivial ? Poly() : pvar(Var::Partial);
}

Poly RankOneModule::action_poly(GenIndex i, const Poly& arg) const {
    switch (kind_) {
        case Kind::Trivial:
            return Poly();
        case Kind::MDeltaAlpha:
            if (i == 0)
                return params_.p_poly() *
                       (pvar(Var::Partial) + delta_poly() * arg + alpha_poly());
            return Poly();
        case Kind::MDeltaAlphaBeta:
            if (i == 0)
                return -(pvar(Var::Partial) + delta_poly() * arg + alpha_poly());
            if (i == 1) return beta_poly();
            return Poly();
    }
    return Poly();
}

std::string RankOneModule::kind_name() const {
    switch (kind_) {
        case Kind::Trivial: return "trivial";
        case Kind::MDeltaAlpha: return "m-delta-alpha";
        case Kind::MDeltaAlphaBeta: return "m-delta-alpha-beta";
    }
    return "?";
}

Poly module_action(const RankOneModule& mod, GenIndex i, const Poly& m, Var var) {
    Poly shifted = m.substitute(Var::Partial, pvar(Var::Partial) + pvar(var));
    return shifted * mod.action_poly(i, pvar(var));
}

Poly check_module_axioms(const RankOneModule& mod, GenIndex i, GenIndex j) {
    const Poly d = pvar(Var::Partial), lam = pvar(Var::Lambda), mu = pvar(Var::Mu);
    const AlgebraParams& params = mod.params();

    Poly ai = mod.action_poly(i, lam);
    Poly aj = mod.action_poly(j, mu);
    Poly t1 = aj.substitute(Var::Partial, d + lam) * ai;
    Poly t2 = ai.substitute(Var::Partial, d + mu) * aj;
    // [L_i lam L_j]_{lam+mu} gen: algebra d goes to -(lam+mu).
    Poly h = params.affine(i) * (-(lam + mu)) + params.affine(i + j, 2) * lam;
    Poly t3 = h * mod.action_poly(i + j, lam + mu);
    return t1 - t2 - t3;
}

bool CochainMap::is_zero() const {
    for (const auto& [i, f] : phi)
        if (!f.is_zero()) return false;
    return true;
}

Poly TwoCocycle::value(GenIndex i, GenIndex j) const {
    auto it = values_.find({i, j});
    return it == values_.end() ? kZero : it->second;
}

void TwoCocycle::set_raw(GenIndex i, GenIndex j, const Poly& v) {
    if (i < 0 || j < 0) throw std::invalid_argument("TwoCocycle: negative index");
    if (v.contains(Var::Mu) || v.contains(Var::Gamma) || v.contains(Var::Nu))
        throw std::invalid_argument("TwoCocycle: values live in d and lam only");
    if (mod_.is_trivial() && v.contains(Var::Partial))
        throw std::invalid_argument("TwoCocycle: trivial-module values cannot contain d");
    if (v.is_zero())
        values_.erase({i, j});
    else
        values_[{i, j}] = v;
}

void TwoCocycle::set_pair(GenIndex i, GenIndex j, const Poly& v) {
    Poly partner = -v.substitute(Var::Lambda, -pvar(Var::Lambda) - mod_.partial_m());
    if (i == j && partner != v)
        throw std::invalid_argument("TwoCocycle: diagonal value violates skew-symmetry");
    set_raw(i, j, v);
    if (i != j) set_raw(j, i, partner);
}

bool TwoCocycle::skew_consistent() const {
    for (const auto& [key, v] : values_) {
        Poly partner = -v.substitute(Var::Lambda, -pvar(Var::Lambda) - mod_.partial_m());
        if (value(key.second, key.first) != partner) return false;
    }
    return true;
}

Poly cocycle_residual(const TwoCocycle& c, GenIndex i, GenIndex j, GenIndex k) {
    const RankOneModule& mod = c.module();
    const AlgebraParams& params = mod.params();
    const Poly d = pvar(Var::Partial), lam = pvar(Var::Lambda), mu = pvar(Var::Mu),
               nu = pvar(Var::Nu);
    const Poly dm = mod.partial_m();

    // f_{(a,b)}(X, Y): stored value with lam := Y first, then d := X.
    auto val = [&](GenIndex a, GenIndex b, const Poly& X, const Poly& Y) {
        Poly f = c.value(a, b);
        f = f.substitute(Var::Lambda, Y);
        return f.substitute(Var::Partial, X);
    };
    auto h = [&](GenIndex a, GenIndex b, const Poly& X, const Poly& Y) {
        return params.affine(a) * X + params.affine(a + b, 2) * Y;
    };

    Poly res;
    if (!mod.is_trivial()) {
        Poly t1 = val(j, k, d + lam, mu) * mod.action_poly(i, lam);
        Poly t2 = val(i, k, d + mu, lam) * mod.action_poly(j, mu);
        Poly t3 = (val(i, j, d + nu, lam) * mod.action_poly(k, nu))
                      .substitute(Var::Nu, -lam - mu - dm);
        res += t1 - t2 + t3;
    }
    Poly t4 = val(i, j + k, d, lam) * h(j, k, lam + dm, mu);
    Poly t5 = val(j, i + k, d, mu) * h(i, k, mu + dm, lam);
    Poly t6 = (val(k, i + j, d, nu) * h(i, j, nu + dm, lam))
                  .substitute(Var::Nu, -lam - mu - dm);
    res += t4 - t5 + t6;
    return res;
}

TwoCocycle coboundary(const CochainMap& phi, const RankOneModule& mod, GenIndex max_index) {
    const AlgebraParams& params = mod.params();
    const Poly d = pvar(Var::Partial), lam = pvar(Var::Lambda), nu = pvar(Var::Nu);
    const Poly dm = mod.partial_m();

    if (mod.is_trivial()) {
        for (const auto& [s, f] : phi.phi)
            if (!f.is_constant())
                throw std::invalid_argument(
                    "coboundary: trivial-module cochains are constants");
    }

    TwoCocycle c(mod);
    for (GenIndex i = 0; i <= max_index; ++i) {
        for (GenIndex j = 0; j <= max_index; ++j) {
            Poly a = phi.at(j).substitute(Var::Partial, d + lam) * mod.action_poly(i, lam);
            Poly b = (phi.at(i).substitute(Var::Partial, d + nu) * mod.action_poly(j, nu))
                         .substitute(Var::Nu, -lam - dm);
            Poly hsub = params.affine(i) * dm + params.affine(i + j, 2) * lam;
            Poly ph = phi.at(i + j).substitute(Var::Partial, dm);
            c.set_raw(i, j, a - b - hsub * ph);
        }
    }
    return c;
}

std::string named_cocycle_name(NamedCocycle which) {
    switch (which) {
        case NamedCocycle::Alpha: return "alpha";
        case NamedCocycle::Beta: return "beta";
        case NamedCocycle::BetaTilde: return "beta-tilde";
        case NamedCocycle::BetaBar: return "beta-bar";
    }
    return "?";
}

TwoCocycle named_cocycle(NamedCocycle which, const AlgebraParams& params) {
    TwoCocycle c(RankOneModule::trivial(params));
    const Poly lam = pvar(Var::Lambda);
    switch (which) {
        case NamedCocycle::Alpha:
            c.set_pair(0, 0, lam.pow(3));
            break;
        case NamedCocycle::Beta: {
            GenIndex m2p = params.minus_2p_index();
            for (GenIndex i = 0; i <= m2p; ++i) {
                GenIndex j = m2p - i;
                c.set_raw(i, j, params.affine(j));
            }
            break;
        }
        case NamedCocycle::BetaBar: {
            GenIndex m2p = params.minus_2p_index();
            for (GenIndex i = 0; i <= m2p; ++i) {
                GenIndex j = m2p - i;
                if (params.p_is_minus_one() && j == 1) continue;
                c.set_raw(i, j, lam);
            }
            break;
        }
        case NamedCocycle::BetaTilde:
            if (!params.p_is_minus_one())
                throw std::invalid_argument("named_cocycle: beta-tilde requires p = -1");
            c.set_pair(1, 1, lam);
            break;
    }
    return c;
}

NontrivialityResult nontriviality(const TwoCocycle& c, GenIndex N) {
    const RankOneModule& mod = c.module();
    if (!mod.is_trivial())
        throw std::invalid_argument("nontriviality: defined over the trivial module");
    const AlgebraParams& params = mod.params();
    if (params.is_formal())
        throw std::invalid_argument("nontriviality: requires rational p");

    int deg = 1;
    for (const auto& [key, v] : c.values())
        deg = std::max(deg, v.degree(Var::Lambda));

    std::vector<std::pair<GenIndex, GenIndex>> pairs;
    for (GenIndex i = 0; i <= N; ++i)
        for (GenIndex j = i; i + j <= N; ++j) pairs.emplace_back(i, j);
    auto coord = [&](std::size_t pidx, int t) { return pidx * (deg + 1) + t; };
    const std::size_t dim = pairs.size() * (deg + 1);

    QVector cv(dim, Rat(0));
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        Poly v = c.value(pairs[pi].first, pairs[pi].second);
        for (const auto& [t, coefpoly] : v.decompose_by(Var::Lambda)) {
            if (t > deg) throw std::invalid_argument("nontriviality: degree overflow");
            cv[coord(pi, t)] = coefpoly.constant_value();
        }
    }

    // Coboundary columns: d(phi) for phi_s = 1, value -(i+j+2p) lam on
    // pairs with i+j = s.
    std::vector<QVector> columns;
    for (GenIndex s = 0; s <= N; ++s) {
        QVector col(dim, Rat(0));
        Rat coef = -(Rat(s) + Rat(2) * params.p_value());
        for (std::size_t pi = 0; pi < pairs.size(); ++pi)
            if (pairs[pi].first + pairs[pi].second == s) col[coord(pi, 1)] = coef;
        columns.push_back(std::move(col));
    }

    NontrivialityResult out;
    std::optional<QVector> sol = solve_columns(columns, cv);
    if (sol) {
        out.nontrivial = false;
        CochainMap phi;
        for (GenIndex s = 0; s <= N; ++s)
            if ((*sol)[s] != 0) phi.phi[s] = Poly((*sol)[s]);
        out.witness_phi = phi;
        out.note = "trivial: coboundary witness recovered";
    } else {
        out.nontrivial = true;
        SpanResult sr = in_span(cv, span_of(dim, columns));
        out.note = sr.member ? "inconsistent certificate" : "nontrivial: separating functional found";
    }
    return out;
}

CocycleChart CocycleChart::make(const RankOneModule& mod, GenIndex N, int deg_lambda,
                                int deg_partial) {
    CocycleChart ch{mod, N, mod.is_trivial() ? 0 : deg_partial, deg_lambda, {}};
    for (GenIndex i = 0; i <= N; ++i)
        for (GenIndex j = i; i + j <= N; ++j) ch.pairs.emplace_back(i, j);
    return ch;
}

std::size_t CocycleChart::dimension() const {
    return pairs.size() * (deg_partial + 1) * (deg_lambda + 1);
}

std::size_t CocycleChart::pair_offset(GenIndex i, GenIndex j) const {
    auto it = std::find(pairs.begin(), pairs.end(), std::pair(i, j));
    if (it == pairs.end())
        throw std::invalid_argument("CocycleChart: pair outside chart");
    return static_cast<std::size_t>(it - pairs.begin());
}

std::size_t CocycleChart::index(GenIndex i, GenIndex j, int a, int b) const {
    return (pair_offset(i, j) * (deg_partial + 1) + a) * (deg_lambda + 1) + b;
}

QVector CocycleChart::vectorize(const TwoCocycle& c) const {
    QVector v(dimension(), Rat(0));
    for (const auto& [i, j] : pairs) {
        Poly f = c.value(i, j);
        for (const auto& [m, coef] : f.terms()) {
            int a = m[static_cast<int>(Var::Partial)];
            int b = m[static_cast<int>(Var::Lambda)];
            Mono rest = m;
            rest[static_cast<int>(Var::Partial)] = 0;
            rest[static_cast<int>(Var::Lambda)] = 0;
            if (rest != Mono{})
                throw std::invalid_argument("CocycleChart: value has formal parameters");
            if (a > deg_partial || b > deg_lambda)
                throw std::invalid_argument("CocycleChart: value exceeds degree bounds");
            v[index(i, j, a, b)] = coef;
        }
    }
    return v;
}

TwoCocycle CocycleChart::to_cocycle(const QVector& v) const {
    TwoCocycle c(mod);
    for (const auto& [i, j] : pairs) {
        Poly f;
        for (int a = 0; a <= deg_partial; ++a)
            for (int b = 0; b <= deg_lambda; ++b) {
                const Rat& coef = v[index(i, j, a, b)];
                if (coef != 0)
                    f += Poly(coef) * Poly::variable(Var::Partial, a) *
                         Poly::variable(Var::Lambda, b);
            }
        c.set_pair(i, j, f);
    }
    return c;
}

bool CocycleChart::interior_supported(const QVector& v) const {
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        if (pairs[pi].first + pairs[pi].second <= N - 2) continue;
        std::size_t base = pi * (deg_partial + 1) * (deg_lambda + 1);
        for (std::size_t t = 0; t < static_cast<std::size_t>((deg_partial + 1) * (deg_lambda + 1)); ++t)
            if (v[base + t] != 0) return false;
    }
    return true;
}

namespace {

// The truncated coboundary space is the full coboundary space meparametrized
// by phi up to one d-degree above the chart, intersected with the chart:
// leading-coefficient cancellations make some d(phi) with high-degree phi
// land inside the bounds, and missing those inflates the quotient.
struct CoboundarySpace {
    std::vector<CochainMap> phi_basis; // phi with d(phi) inside the chart
    std::vector<QVector> vectors;      // matching chart vectors
};

CoboundarySpace in_chart_coboundaries(const CocycleChart& chart) {
    const RankOneModule& mod = chart.mod;
    int emax = mod.is_trivial() ? 0 : chart.deg_partial + 1;

    std::vector<CochainMap> gens;
    for (GenIndex s = 0; s <= chart.N; ++s)
        for (int e = 0; e <= emax; ++e) {
            CochainMap phi;
            phi.phi[s] = Poly::variable(Var::Partial, static_cast<unsigned>(e));
            gens.push_back(std::move(phi));
        }

    // Wide chart that can hold every generated coboundary.
    CocycleChart wide = CocycleChart::make(mod, chart.N,
                                           std::max(chart.deg_lambda, emax + 2),
                                           chart.deg_partial + 2);
    std::vector<QVector> wide_vecs;
    for (const auto& phi : gens)
        wide_vecs.push_back(wide.vectorize(coboundary(phi, mod, chart.N)));

    // Coordinates of the wide chart that fall outside the solver chart.
    std::vector<std::size_t> outside;
    for (const auto& [i, j] : wide.pairs)
        for (int a = 0; a <= wide.deg_partial; ++a)
            for (int b = 0; b <= wide.deg_lambda; ++b)
                if (a > chart.deg_partial || b > chart.deg_lambda)
                    outside.push_back(wide.index(i, j, a, b));

    QMatrix cut(outside.size(), gens.size());
    for (std::size_t r = 0; r < outside.size(); ++r)
        for (std::size_t c = 0; c < gens.size(); ++c)
            cut.at(r, c) = wide_vecs[c][outside[r]];
    Subspace inside = kernel(cut);

    CoboundarySpace out;
    for (const auto& y : inside.basis) {
        CochainMap phi;
        for (std::size_t c = 0; c < gens.size(); ++c) {
            if (y[c] == 0) continue;
            for (const auto& [s, f] : gens[c].phi) phi.phi[s] += Poly(y[c]) * f;
        }
        out.vectors.push_back(chart.vectorize(coboundary(phi, mod, chart.N)));
        out.phi_basis.push_back(std::move(phi));
    }
    return out;
}

} // namespace

CocycleSolveReport cocycle_solver(const RankOneModule& mod, GenIndex N, int deg_lambda,
                                  int deg_partial) {
    const AlgebraParams& params = mod.params();
    if (params.is_formal())
        throw std::invalid_argument("cocycle_solver: requires rational p");
    if (!mod.is_trivial()) {
        if (!mod.alpha_value() || *mod.alpha_value() == 0)
            throw std::invalid_argument("cocycle_solver: rank-one modules need rational alpha != 0");
        if (!mod.delta_value())
            throw std::invalid_argument("cocycle_solver: rank-one modules need rational Delta");
        if (mod.kind() == RankOneModule::Kind::MDeltaAlphaBeta && !mod.beta_value())
            throw std::invalid_argument("cocycle_solver: m-delta-alpha-beta needs rational beta");
    }
    if (deg_lambda < 1) throw std::invalid_argument("cocycle_solver: deg_lambda >= 1 required");

    CocycleChart chart = CocycleChart::make(mod, N, deg_lambda, deg_partial);
    const std::size_t xdim = chart.dimension();
    const Poly d = pvar(Var::Partial), lam = pvar(Var::Lambda), mu = pvar(Var::Mu),
               nu = pvar(Var::Nu);
    const Poly dm = mod.partial_m();

    ConstraintSink sink(xdim);
    long group = 0;

    // Unknown f_{(u,v)}(X, Y) expanded over the chart, with the reversed
    // orientation rewritten through skew-symmetry.
    auto contribute = [&](long grp, GenIndex u, GenIndex v, const Poly& X, const Poly& Y,
                          const Poly& mult, int sign, bool post_nu) {
        if (mult.is_zero()) return;
        GenIndex a0 = std::min(u, v), b0 = std::max(u, v);
        bool reversed = u > v;
        Poly dm_at_x = mod.is_trivial() ? Poly() : X;
        for (int a = 0; a <= chart.deg_partial; ++a) {
            Poly xa = X.pow(a);
            for (int b = 0; b <= chart.deg_lambda; ++b) {
                Poly val = reversed ? -(xa * (-Y - dm_at_x).pow(b)) : xa * Y.pow(b);
                Poly term = mult * val;
                if (sign < 0) term = -term;
                if (post_nu) term = term.substitute(Var::Nu, -lam - mu - dm);
                sink.add_poly(grp, 0, term, chart.index(a0, b0, a, b));
            }
        }
    };
    auto h = [&](GenIndex a, GenIndex b, const Poly& X, const Poly& Y) {
        return params.affine(a) * X + params.affine(a + b, 2) * Y;
    };

    // Diagonal skew rows: f(d,lam) + f(d,-lam-dM) = 0.
    for (const auto& [i, j] : chart.pairs) {
        if (i != j) continue;
        for (int a = 0; a <= chart.deg_partial; ++a)
            for (int b = 0; b <= chart.deg_lambda; ++b) {
                Poly term = Poly::variable(Var::Partial, a) *
                            (Poly::variable(Var::Lambda, b) + (-lam - dm).pow(b));
                sink.add_poly(group, 0, term, chart.index(i, j, a, b));
            }
        ++group;
    }

    // Differential rows for every ordered triple with i+j+k <= N; all
    // referenced pairs then stay inside the chart.
    for (GenIndex i = 0; i <= N; ++i) {
        for (GenIndex j = 0; i + j <= N; ++j) {
            for (GenIndex k = 0; i + j + k <= N; ++k, ++group) {
                if (!mod.is_trivial()) {
                    contribute(group, j, k, d + lam, mu, mod.action_poly(i, lam), +1, false);
                    contribute(group, i, k, d + mu, lam, mod.action_poly(j, mu), -1, false);
                    contribute(group, i, j, d + nu, lam, mod.action_poly(k, nu), +1, true);
                }
                contribute(group, i, j + k, d, lam, h(j, k, lam + dm, mu), +1, false);
                contribute(group, j, i + k, d, mu, h(i, k, mu + dm, lam), -1, false);
                contribute(group, k, i + j, d, nu, h(i, j, nu + dm, lam), +1, true);
            }
        }
    }

    CocycleSolveReport rep;
    rep.module_kind = mod.kind_name();
    rep.p = params.str();
    rep.delta = mod.is_trivial() ? "-" : (mod.delta_value() ? rat_str(*mod.delta_value()) : "formal");
    rep.alpha = mod.is_trivial() ? "-" : (mod.alpha_value() ? rat_str(*mod.alpha_value()) : "formal");
    rep.beta = mod.kind() == RankOneModule::Kind::MDeltaAlphaBeta
                   ? (mod.beta_value() ? rat_str(*mod.beta_value()) : "formal")
                   : "-";
    rep.N = N;
    rep.deg_lambda = chart.deg_lambda;
    rep.deg_partial = chart.deg_partial;
    rep.chart = chart;

    std::vector<SparseRow> rows = sink.finish();
    rep.kernel_space = kernel_of_sparse_rows(xdim, rows);
    rep.dim_cocycles = rep.kernel_space.dim();

    // Truncated coboundary space (full coboundary space cut to the chart).
    CoboundarySpace cbs = in_chart_coboundaries(chart);
    const std::vector<QVector>& cb_vecs = cbs.vectors;
    rep.coboundary_space = span_of(xdim, cb_vecs);
    rep.dim_coboundaries = rep.coboundary_space.dim();

    rep.dim_quotient = quotient_dim(rep.kernel_space, rep.coboundary_space);

    // Interior classes: kernel elements whose boundary-band support can
    // be cancelled by a coboundary. Solve for (x, y) with x in the
    // kernel and (x - d(phi_y))|edge = 0, then read off x - d(phi_y).
    const std::size_t ydim = cb_vecs.size();
    std::vector<SparseRow> aug_rows = rows; // x-columns keep their ids
    for (std::size_t pi = 0; pi < chart.pairs.size(); ++pi) {
        if (chart.pairs[pi].first + chart.pairs[pi].second <= N - 2) continue;
        std::size_t block = (chart.deg_partial + 1) * (chart.deg_lambda + 1);
        for (std::size_t t = 0; t < block; ++t) {
            std::size_t coord = pi * block + t;
            SparseRow r;
            r.emplace_back(static_cast<int>(coord), Rat(1));
            for (std::size_t y = 0; y < ydim; ++y)
                if (cb_vecs[y][coord] != 0)
                    r.emplace_back(static_cast<int>(xdim + y), -cb_vecs[y][coord]);
            aug_rows.push_back(std::move(r));
        }
    }
    Subspace aug_kernel = kernel_of_sparse_rows(xdim + ydim, aug_rows);

    EchelonBasis interior_mod_cb(xdim);
    for (const auto& v : rep.coboundary_space.basis) interior_mod_cb.insert_dense(v);
    for (const auto& kv : aug_kernel.basis) {
        QVector r(xdim, Rat(0));
        for (std::size_t c = 0; c < xdim; ++c) r[c] = kv[c];
        for (std::size_t y = 0; y < ydim; ++y) {
            const Rat& coef = kv[xdim + y];
            if (coef == 0) continue;
            for (std::size_t c = 0; c < xdim; ++c)
                if (cb_vecs[y][c] != 0) r[c] -= coef * cb_vecs[y][c];
        }
        if (!chart.interior_supported(r))
            throw std::logic_error("cocycle_solver: interior cleanup failed");
        if (interior_mod_cb.insert_dense(r)) rep.interior_reps.push_back(std::move(r));
    }
    rep.dim_quotient_interior = rep.interior_reps.size();
    rep.dim_quotient_edge = rep.dim_quotient - rep.dim_quotient_interior;

    // Edge-suspect classes: what remains of the kernel modulo
    // coboundaries and interior classes.
    Subspace cb_plus_interior = interior_mod_cb.subspace();
    EchelonBasis edge_basis(xdim);
    for (const auto& kv : rep.kernel_space.basis) {
        QVector r = reduce_mod(kv, cb_plus_interior);
        if (edge_basis.insert_dense(r)) rep.edge_reps.push_back(std::move(r));
    }
    return rep;
}

TrivializeResult trivialize(const TwoCocycle& c, GenIndex N) {
    const RankOneModule& mod = c.module();
    if (mod.is_trivial())
        throw std::invalid_argument("trivialize: needs a rank-one coefficient module");
    const AlgebraParams& params = mod.params();
    if (params.is_formal())
        throw std::invalid_argument("trivialize: requires rational p");
    if (!mod.alpha_value() || *mod.alpha_value() == 0)
        throw std::invalid_argument("trivialize: requires rational alpha != 0");

    Rat factor = Rat(1) / (*mod.alpha_value() * params.p_value());

    TrivializeResult out;
    for (GenIndex i = 0; i <= N; ++i) {
        Poly f0 = c.value(0, i).coeff_of(Var::Lambda, 0);
        f0.scale(factor);
        if (!f0.is_zero()) out.phi.phi[i] = f0;
    }

    TwoCocycle dphi = coboundary(out.phi, mod, N);
    out.success = true;
    out.clean_everywhere = true;
    for (GenIndex i = 0; i <= N; ++i) {
        for (GenIndex j = 0; i + j <= N; ++j) {
            Poly r = c.value(i, j) - dphi.value(i, j);
            if (r.is_zero()) continue;
            out.clean_everywhere = false;
            if (i + j <= N - 2) {
                if (out.success) {
                    std::ostringstream os;
                    os << "interior residual at (" << i << "," << j << "): " << r.str();
                    out.first_failure = os.str();
                }
                out.success = false;
            }
        }
    }
    return out;
}

} // namespace lca
