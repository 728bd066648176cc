#include "lca/biderivations.hpp"

#include <sstream>
#include <stdexcept>

#include "lca/parallel.hpp"

namespace lca {

Biderivation Biderivation::inner(const Rat& c, const AlgebraParams& params) {
    Biderivation d(Kind::InnerC, params);
    d.c_ = c;
    return d;
}

Biderivation Biderivation::delta_truncated(const Rat& c, const AlgebraParams& params) {
    if (!params.p_is_neg_int())
        throw std::invalid_argument("delta_truncated: requires rational p in Z^-");
    Biderivation d(Kind::DeltaTruncated, params);
    d.c_ = c;
    return d;
}

Biderivation Biderivation::tabulated(
    const std::map<std::pair<GenIndex, GenIndex>, LambdaElement>& values,
    const AlgebraParams& params) {
    Biderivation d(Kind::Tabulated, params);
    for (const auto& [key, v] : values)
        if (!v.is_zero()) d.table_.emplace(key, v);
    return d;
}

LambdaElement Biderivation::value(GenIndex i, GenIndex j) const {
    switch (kind_) {
        case Kind::InnerC:
            return bracket_gen(i, j, params_, Var::Lambda).scaled(Poly(c_));
        case Kind::DeltaTruncated:
            if (i + j == params_.minus_p_index()) return LambdaElement();
            return bracket_gen(i, j, params_, Var::Lambda).scaled(Poly(c_));
        case Kind::Tabulated: {
            auto it = table_.find({i, j});
            return it == table_.end() ? LambdaElement() : it->second;
        }
    }
    return LambdaElement();
}

LambdaElement Biderivation::value_ext(GenIndex i, const Poly& f, GenIndex j,
                                      const Poly& g) const {
    Poly fl = f.substitute(Var::Partial, -pvar(Var::Lambda));
    Poly gr = g.substitute(Var::Partial, pvar(Var::Partial) + pvar(Var::Lambda));
    return value(i, j).scaled(fl * gr);
}

BilinearSkewResidual check_bilinear_skew(const Biderivation& d, GenIndex i, GenIndex j) {
    BilinearSkewResidual out;
    const Poly dd = pvar(Var::Partial), lam = pvar(Var::Lambda);
    LambdaElement base = d.value(i, j);
    out.compat_left = d.value_ext(i, dd, j, Poly(1)) + base.scaled(lam);
    out.compat_right = d.value_ext(i, Poly(1), j, dd) - base.scaled(dd + lam);
    out.skew = base + d.value(j, i).substituted(Var::Lambda, -dd - lam);
    return out;
}

LambdaElement check_biderivation(const Biderivation& d, GenIndex i, GenIndex j, GenIndex k) {
    const AlgebraParams& params = d.params();
    const Poly lam = pvar(Var::Lambda), mu = pvar(Var::Mu);

    // d_lam(L_i, h(d,mu) L_{j+k}) = h(d+lam, mu) d_lam(L_i, L_{j+k}).
    Poly h = params.affine(j) * pvar(Var::Partial) + params.affine(j + k, 2) * mu;
    Poly h_shift = h.substitute(Var::Partial, pvar(Var::Partial) + lam);
    LambdaElement t1 = d.value(i, j + k).scaled(h_shift);
    LambdaElement t2 = bracket(d.value(i, j), LambdaElement::gen(k), params, lam + mu);
    LambdaElement t3 = bracket(LambdaElement::gen(j), d.value(i, k), params, mu);
    return t1 - t2 - t3;
}

LambdaElement check_bracket_exchange(const Biderivation& d, GenIndex i, GenIndex j, GenIndex m,
                         GenIndex n) {
    const AlgebraParams& params = d.params();
    const Poly mu = pvar(Var::Mu), gam = pvar(Var::Gamma);

    LambdaElement d_mu_ij = d.value(i, j).substituted(Var::Lambda, mu);
    LambdaElement inner_mn = bracket_gen(m, n, params, Var::Lambda);
    LambdaElement lhs = bracket(d_mu_ij, inner_mn, params, mu + gam);

    LambdaElement br_ij = bracket_gen(i, j, params, Var::Mu);
    LambdaElement rhs = bracket(br_ij, d.value(m, n), params, mu + gam);
    return lhs - rhs;
}

BiderGridReport bider_verify_grid(const Biderivation& d, GenIndex N, int jobs) {
    BiderGridReport rep;
    const std::size_t w = static_cast<std::size_t>(N) + 1;

    std::vector<std::string> pair_fail(w * w);
    parallel_for(w * w, jobs, [&](std::size_t t) {
        GenIndex i = static_cast<GenIndex>(t / w), j = static_cast<GenIndex>(t % w);
        BilinearSkewResidual r = check_bilinear_skew(d, i, j);
        if (!r.ok()) {
            std::ostringstream os;
            os << "bilinear/skew fails at (" << i << "," << j << "): compat_left="
               << r.compat_left.str() << " compat_right=" << r.compat_right.str()
               << " skew=" << r.skew.str();
            pair_fail[t] = os.str();
        }
    });
    rep.pairs = static_cast<long>(w * w);
    for (auto& f : pair_fail)
        if (!f.empty()) rep.failures.push_back(std::move(f));

    std::vector<std::string> triple_fail(w * w * w);
    parallel_for(w * w * w, jobs, [&](std::size_t t) {
        GenIndex i = static_cast<GenIndex>(t / (w * w)), j = static_cast<GenIndex>((t / w) % w),
                 k = static_cast<GenIndex>(t % w);
        LambdaElement r = check_biderivation(d, i, j, k);
        if (!r.is_zero()) {
            std::ostringstream os;
            os << "biderivation identity fails at (" << i << "," << j << "," << k
               << "): " << r.str();
            triple_fail[t] = os.str();
        }
    });
    rep.triples = static_cast<long>(w * w * w);
    for (auto& f : triple_fail)
        if (!f.empty()) rep.failures.push_back(std::move(f));

    std::vector<std::string> quad_fail(w * w * w * w);
    parallel_for(w * w * w * w, jobs, [&](std::size_t t) {
        GenIndex i = static_cast<GenIndex>(t / (w * w * w)),
                 j = static_cast<GenIndex>((t / (w * w)) % w),
                 m = static_cast<GenIndex>((t / w) % w), n = static_cast<GenIndex>(t % w);
        LambdaElement r = check_bracket_exchange(d, i, j, m, n);
        if (!r.is_zero()) {
            std::ostringstream os;
            os << "bracket-exchange identity fails at (" << i << "," << j << "," << m << "," << n
               << "): " << r.str();
            quad_fail[t] = os.str();
        }
    });
    rep.quads = static_cast<long>(w * w * w * w);
    for (auto& f : quad_fail)
        if (!f.empty()) rep.failures.push_back(std::move(f));
    return rep;
}

} // namespace lca
