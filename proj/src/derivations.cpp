#include "lca/derivations.hpp"

#include <sstream>
#include <stdexcept>

namespace lca {

ConformalDerivation ConformalDerivation::inner(const std::map<GenIndex, Poly>& gamma,
                                               const AlgebraParams& params) {
    ConformalDerivation d(Kind::Inner, params);
    for (const auto& [k, g] : gamma) {
        if (k < 0) throw std::invalid_argument("inner: negative generator index in gamma");
        if (g.contains(Var::Lambda) || g.contains(Var::Mu) || g.contains(Var::Gamma) ||
            g.contains(Var::Nu))
            throw std::invalid_argument("inner: gamma components must be polynomials in d");
        if (!g.is_zero()) d.gamma_.emplace(k, g);
    }
    return d;
}

ConformalDerivation ConformalDerivation::outer_dp(const AlgebraParams& params) {
    if (!params.p_is_neg_int())
        throw std::invalid_argument("outer_dp: requires rational p in Z^-");
    return ConformalDerivation(Kind::OuterDp, params);
}

ConformalDerivation ConformalDerivation::tabulated(
    const std::map<GenIndex, LambdaElement>& images, const AlgebraParams& params) {
    ConformalDerivation d(Kind::Tabulated, params);
    for (const auto& [i, im] : images)
        if (!im.is_zero()) d.table_.emplace(i, im);
    return d;
}

const std::map<GenIndex, Poly>& ConformalDerivation::gamma() const {
    if (kind_ != Kind::Inner)
        throw std::invalid_argument("gamma: derivation is not inner");
    return gamma_;
}

LambdaElement ConformalDerivation::image(GenIndex j) const {
    switch (kind_) {
        case Kind::Inner: {
            LambdaElement out;
            for (const auto& [k, g] : gamma_) {
                LambdaElement x = LambdaElement::gen(k, g);
                out += bracket(x, LambdaElement::gen(j), params_, Var::Lambda);
            }
            return out;
        }
        case Kind::OuterDp: {
            GenIndex mp = params_.minus_p_index();
            Poly coef = params_.affine(j);
            LambdaElement out;
            out.add(j + mp, coef);
            return out;
        }
        case Kind::Tabulated: {
            auto it = table_.find(j);
            return it == table_.end() ? LambdaElement() : it->second;
        }
    }
    return LambdaElement();
}

LambdaElement ConformalDerivation::apply(const LambdaElement& x) const {
    LambdaElement out;
    Poly shift = pvar(Var::Partial) + pvar(Var::Lambda);
    for (const auto& [i, f] : x.components()) {
        Poly fs = f.substitute(Var::Partial, shift);
        out += image(i).scaled(fs);
    }
    return out;
}

LambdaElement check_leibniz(const ConformalDerivation& D, GenIndex i, GenIndex j) {
    const AlgebraParams& params = D.params();
    const Poly lam = pvar(Var::Lambda), mu = pvar(Var::Mu);

    LambdaElement br = bracket_gen(i, j, params, Var::Mu);
    LambdaElement t1 = D.apply(br);
    LambdaElement t2 = bracket(D.image(i), LambdaElement::gen(j), params, lam + mu);
    LambdaElement t3 = bracket(LambdaElement::gen(i), D.image(j), params, mu);
    return t1 - t2 - t3;
}

std::size_t DerivationChart::dimension() const {
    return static_cast<std::size_t>(n_src + 1) * (n_tgt + 1) * (deg_partial + 1) *
           (deg_lambda + 1);
}

std::size_t DerivationChart::index(GenIndex i, GenIndex k, int a, int b) const {
    return ((static_cast<std::size_t>(i) * (n_tgt + 1) + k) * (deg_partial + 1) + a) *
               (deg_lambda + 1) +
           b;
}

QVector DerivationChart::vectorize(const ConformalDerivation& D) const {
    QVector v(dimension(), Rat(0));
    for (GenIndex i = 0; i <= n_src; ++i) {
        LambdaElement im = D.image(i);
        for (const auto& [k, c] : im.components()) {
            if (k > n_tgt) continue; // clipped by the chart
            for (const auto& [m, coef] : c.terms()) {
                int a = m[static_cast<int>(Var::Partial)];
                int b = m[static_cast<int>(Var::Lambda)];
                Mono rest = m;
                rest[static_cast<int>(Var::Partial)] = 0;
                rest[static_cast<int>(Var::Lambda)] = 0;
                if (rest != Mono{})
                    throw std::invalid_argument(
                        "DerivationChart: image coefficients must be rational in d, lam");
                if (a > deg_partial || b > deg_lambda)
                    throw std::invalid_argument("DerivationChart: image exceeds degree bounds");
                v[index(i, k, a, b)] = coef;
            }
        }
    }
    return v;
}

std::vector<GenIndex> DerivationChart::source_support(const QVector& v) const {
    std::vector<GenIndex> out;
    for (GenIndex i = 0; i <= n_src; ++i) {
        bool nz = false;
        for (GenIndex k = 0; k <= n_tgt && !nz; ++k)
            for (int a = 0; a <= deg_partial && !nz; ++a)
                for (int b = 0; b <= deg_lambda && !nz; ++b)
                    if (v[index(i, k, a, b)] != 0) nz = true;
        if (nz) out.push_back(i);
    }
    return out;
}

NonInnernessReport non_innerness_certificate(const ConformalDerivation& D, GenIndex N,
                                             int gamma_deg) {
    const AlgebraParams& params = D.params();
    NonInnernessReport rep;

    // Part 1: the lam=0 obstruction (meaningful for outer_dp).
    if (D.kind() == ConformalDerivation::Kind::OuterDp) {
        GenIndex mp = params.minus_p_index();
        if (N < mp + 1)
            throw std::invalid_argument("non_innerness_certificate: need N >= -p + 1");
        bool ok = true;
        std::ostringstream note;
        for (GenIndex j = 0; j <= N; ++j) {
            if (j == mp) continue;
            // Only the gamma component at index -p can reach L_{j-p};
            // check its image is divisible by lam for every d-power.
            for (int t = 0; t <= gamma_deg; ++t) {
                Poly g = Poly::variable(Var::Partial, static_cast<unsigned>(t));
                LambdaElement br = bracket(LambdaElement::gen(mp, g),
                                           LambdaElement::gen(j), params, Var::Lambda);
                Poly comp = br.component(j + mp);
                if (!comp.coeff_of(Var::Lambda, 0).is_zero()) ok = false;
            }
            // The outer image at lam=0 is the constant j+p, nonzero here.
            Poly outer_comp = D.image(j).component(j + mp);
            if (outer_comp.coeff_of(Var::Lambda, 0).is_zero()) ok = false;
        }
        rep.obstruction_ok = ok;
        note << "lam=0 obstruction over j <= " << N << (ok ? " holds" : " FAILS");
        rep.notes.push_back(note.str());
    }

    // Part 2: solve ad(gamma) = D exactly on the truncation.
    // Unknowns: gamma = sum_{k <= N} sum_{t <= gamma_deg} c_{k,t} d^t L_k.
    struct RowKey {
        GenIndex src, tgt;
        Mono m;
        bool operator<(const RowKey& o) const {
            if (src != o.src) return src < o.src;
            if (tgt != o.tgt) return tgt < o.tgt;
            return MonoLess{}(m, o.m);
        }
    };
    const GenIndex kmax = N;
    std::vector<std::pair<GenIndex, int>> cols;
    for (GenIndex k = 0; k <= kmax; ++k)
        for (int t = 0; t <= gamma_deg; ++t) cols.emplace_back(k, t);

    std::map<RowKey, std::map<std::size_t, Rat>> rows; // key -> col -> coef
    auto add_entry = [&](GenIndex src, GenIndex tgt, const Poly& poly, std::size_t col) {
        for (const auto& [m, c] : poly.terms()) {
            auto& row = rows[RowKey{src, tgt, m}];
            row[col] += c;
            if (row[col] == 0) row.erase(col);
        }
    };
    std::map<RowKey, Rat> rhs;
    for (GenIndex i = 0; i <= N; ++i) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            auto [k, t] = cols[c];
            Poly g = Poly::variable(Var::Partial, static_cast<unsigned>(t));
            LambdaElement br =
                bracket(LambdaElement::gen(k, g), LambdaElement::gen(i), params, Var::Lambda);
            for (const auto& [tgt, poly] : br.components()) add_entry(i, tgt, poly, c);
        }
        LambdaElement di = D.image(i);
        for (const auto& [tgt, poly] : di.components())
            for (const auto& [m, cf] : poly.terms()) rhs[RowKey{i, tgt, m}] += cf;
    }
    // Assemble [A | b] row coordinates deterministically.
    std::map<RowKey, std::size_t> row_index;
    for (const auto& [k, r] : rows) row_index.emplace(k, 0);
    for (const auto& [k, v] : rhs) row_index.emplace(k, 0);
    std::size_t nrows = 0;
    for (auto& [k, idx] : row_index) idx = nrows++;

    std::vector<QVector> colvecs(cols.size(), QVector(nrows, Rat(0)));
    for (const auto& [key, row] : rows)
        for (const auto& [c, coef] : row) colvecs[c][row_index[key]] = coef;
    QVector b(nrows, Rat(0));
    for (const auto& [key, coef] : rhs) b[row_index[key]] = coef;

    std::optional<QVector> sol = solve_columns(colvecs, b);
    if (sol) {
        rep.system_infeasible = false;
        std::map<GenIndex, Poly> gamma;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if ((*sol)[c] == 0) continue;
            auto [k, t] = cols[c];
            gamma[k] +=
                Poly((*sol)[c]) * Poly::variable(Var::Partial, static_cast<unsigned>(t));
        }
        rep.witness_gamma = gamma;
        rep.notes.push_back("ad(gamma) = D solvable on the truncation; witness recovered");
    } else {
        rep.system_infeasible = true;
        rep.notes.push_back("ad(gamma) = D infeasible on the truncation");
    }
    return rep;
}

ClassifyReport classify(const AlgebraParams& params, GenIndex n_src, GenIndex n_tgt,
                        int deg_partial, int deg_lambda) {
    if (params.is_formal())
        throw std::invalid_argument("classify: requires rational p");
    const Rat& p = params.p_value();
    Rat minus_p = -p;
    Rat gap = minus_p > 0 ? minus_p : Rat(0);
    if (Rat(n_tgt) < Rat(n_src) + gap)
        throw std::invalid_argument("classify: n_tgt must be at least n_src + max(0,-p)");
    if (deg_partial < 1 || deg_lambda < 1)
        throw std::invalid_argument("classify: degree bounds must allow the bracket (>= 1)");

    DerivationChart chart{n_src, n_tgt, deg_partial, deg_lambda};
    const std::size_t dim = chart.dimension();
    ConstraintSink sink(dim);

    // Leibniz residual rows for every pair with i, j, i+j <= n_src,
    // imposed on residual components at target indices <= n_tgt only
    // (components beyond the chart would be false constraints).
    long group = 0;
    for (GenIndex i = 0; i <= n_src; ++i) {
        for (GenIndex j = 0; i + j <= n_src; ++j, ++group) {
            Poly h = params.affine(i) * pvar(Var::Partial) + params.affine(i + j, 2) * pvar(Var::Mu);
            Poly h_shift = h.substitute(Var::Partial, pvar(Var::Partial) + pvar(Var::Lambda));
            Poly lam_mu = pvar(Var::Lambda) + pvar(Var::Mu);
            for (GenIndex k = 0; k <= n_tgt; ++k) {
                for (int a = 0; a <= deg_partial; ++a) {
                    for (int b = 0; b <= deg_lambda; ++b) {
                        Poly base = Poly::variable(Var::Partial, a) * Poly::variable(Var::Lambda, b);
                        // T1: h(d+lam, mu) * D(L_{i+j}), lands on component k.
                        sink.add_poly(group, k, h_shift * base, chart.index(i + j, k, a, b));
                        // T2: -[(D L_i)_{lam+mu} L_j], lands on component k+j.
                        if (k + j <= n_tgt) {
                            Poly f = (-lam_mu).pow(a) * Poly::variable(Var::Lambda, b);
                            Poly br = params.affine(k) * pvar(Var::Partial) +
                                      params.affine(k + j, 2) * lam_mu;
                            sink.add_poly(group, k + j, -(f * br), chart.index(i, k, a, b));
                        }
                        // T3: -[L_i mu (D L_j)], lands on component i+k.
                        if (i + k <= n_tgt) {
                            Poly g = (pvar(Var::Partial) + pvar(Var::Mu)).pow(a) *
                                     Poly::variable(Var::Lambda, b);
                            Poly br = params.affine(i) * pvar(Var::Partial) +
                                      params.affine(i + k, 2) * pvar(Var::Mu);
                            sink.add_poly(group, i + k, -(g * br), chart.index(j, k, a, b));
                        }
                    }
                }
            }
        }
    }

    ClassifyReport rep;
    rep.p = params.str();
    rep.n_src = n_src;
    rep.n_tgt = n_tgt;
    rep.deg_partial = deg_partial;
    rep.deg_lambda = deg_lambda;

    rep.kernel_space = kernel_of_sparse_rows(dim, sink.finish());
    rep.dim_kernel = rep.kernel_space.dim();

    // Truncated inner span: ad(d^t L_k) for k <= n_tgt, t <= deg_lambda - 1.
    std::vector<QVector> inner_vecs;
    for (GenIndex k = 0; k <= n_tgt; ++k) {
        for (int t = 0; t + 1 <= deg_lambda; ++t) {
            std::map<GenIndex, Poly> gamma{
                {k, Poly::variable(Var::Partial, static_cast<unsigned>(t))}};
            inner_vecs.push_back(chart.vectorize(ConformalDerivation::inner(gamma, params)));
        }
    }
    rep.inner_space = span_of(dim, inner_vecs);
    rep.dim_inner = rep.inner_space.dim();

    rep.dim_quotient = quotient_dim(rep.kernel_space, rep.inner_space);

    // Canonical quotient representatives: kernel basis reduced mod the
    // inner span, re-echelonized.
    EchelonBasis q(dim);
    std::vector<QVector> reps;
    for (const auto& kv : rep.kernel_space.basis) {
        QVector r = reduce_mod(kv, rep.inner_space);
        if (q.insert_dense(r)) reps.push_back(std::move(r));
    }
    Subspace qs = q.subspace();
    rep.quotient_reps = qs.basis;

    // Edge labels: a class whose source support lies entirely in the
    // boundary band i > n_src - max(0, -p) may be a truncation artifact.
    for (const auto& r : rep.quotient_reps) {
        std::vector<GenIndex> support = chart.source_support(r);
        bool all_edge = !support.empty();
        for (GenIndex i : support)
            if (Rat(i) <= Rat(n_src) - gap) all_edge = false;
        rep.rep_edge_suspect.push_back(all_edge);
        if (all_edge) ++rep.edge_suspect_count;
    }
    rep.dim_quotient_interior = rep.dim_quotient - rep.edge_suspect_count;

    if (params.p_is_neg_int()) {
        QVector outer_vec = chart.vectorize(ConformalDerivation::outer_dp(params));
        bool outer_in_kernel = in_span(outer_vec, rep.kernel_space).member;
        EchelonBasis ext(dim);
        for (const auto& v : rep.inner_space.basis) ext.insert_dense(v);
        bool outer_not_inner = ext.insert_dense(outer_vec);
        Subspace inner_plus_outer = ext.subspace();
        // Every interior class must be spanned by outer_dp mod inner.
        bool interior_matches = rep.dim_quotient_interior == 1;
        for (std::size_t r = 0; r < rep.quotient_reps.size(); ++r) {
            if (rep.rep_edge_suspect[r]) continue;
            if (!in_span(rep.quotient_reps[r], inner_plus_outer).member)
                interior_matches = false;
        }
        rep.outer_found = outer_in_kernel && outer_not_inner && interior_matches;
        rep.matches_classification = rep.outer_found;
    } else {
        rep.outer_found = false;
        rep.matches_classification = rep.dim_quotient_interior == 0;
    }
    return rep;
}

} // namespace lca
