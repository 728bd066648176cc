#include "lca/annihilation.hpp"

#include <sstream>
#include <stdexcept>

#include "lca/parallel.hpp"

namespace lca {

void AnnElement::add(const AnnGen& g, const Poly& c) {
    if (c.is_zero()) return;
    if (g.i < 0 || g.m < -1)
        throw std::invalid_argument("AnnElement: generator outside basis range");
    auto it = terms_.find(g);
    if (it == terms_.end()) {
        terms_.emplace(g, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AnnElement& AnnElement::operator+=(const AnnElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
}

AnnElement& AnnElement::operator-=(const AnnElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
}

AnnElement AnnElement::scaled(const Poly& f) const {
    AnnElement r;
    for (const auto& [g, c] : terms_) r.add(g, f * c);
    return r;
}

std::string AnnElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")*L[" << g.i << "," << g.m << "]";
        first = false;
    }
    return os.str();
}

LambdaElement kproduct(GenIndex i, GenIndex j, long k, const AlgebraParams& params) {
    if (k < 0) throw std::invalid_argument("kproduct: k must be non-negative");
    LambdaElement br = bracket_gen(i, j, params, Var::Lambda);
    LambdaElement out;
    long kfact = 1;
    for (long t = 2; t <= k; ++t) kfact *= t;
    for (const auto& [idx, c] : br.components())
        out.add(idx, Poly(kfact) * c.coeff_of(Var::Lambda, static_cast<unsigned>(k)));
    return out;
}

AnnElement ann_bracket_closed(const AnnGen& a, const AnnGen& b, const AlgebraParams& params) {
    // ((j+p)(m+1) - (i+p)(n+1)) L_{i+j, m+n}; identically zero when
    // m = n = -1, so the target never leaves the basis range.
    Poly coef = Poly(a.m + 1) * params.affine(b.i) - Poly(b.m + 1) * params.affine(a.i);
    AnnElement out;
    out.add(AnnGen{a.i + b.i, a.m + b.m}, coef);
    return out;
}

AnnElement ann_bracket_closed(const AnnElement& a, const AnnElement& b,
                              const AlgebraParams& params) {
    AnnElement out;
    for (const auto& [ga, ca] : a.terms())
        for (const auto& [gb, cb] : b.terms())
            out += ann_bracket_closed(ga, gb, params).scaled(ca * cb);
    return out;
}

AnnElement ann_bracket_derived(const AnnGen& a, const AnnGen& b, const AlgebraParams& params) {
    const long M = a.m + 1, N = b.m + 1; // both >= 0
    AnnElement out;
    long binom = 1; // C(M, k), updated incrementally
    for (long k = 0; k <= M; ++k) {
        if (k > 0) binom = binom * (M - k + 1) / k;
        LambdaElement kp = kproduct(a.i, b.i, k, params);
        if (kp.is_zero()) continue;
        const long r0 = M + N - k;
        for (const auto& [target, coefpoly] : kp.components()) {
            // Lower f(d) L_target at level r0 via (d x)_(r) = -r x_(r-1).
            for (const auto& [deg, cpoly] : coefpoly.decompose_by(Var::Partial)) {
                long fall = 1;
                long r = r0;
                for (int e = 0; e < deg; ++e) fall *= r--;
                long sign = (deg % 2 == 0) ? 1 : -1;
                long level = r0 - deg;
                if (level < 0 || fall == 0) continue; // symbol below range is zero
                out.add(AnnGen{target, level - 1}, Poly(sign * binom * fall) * cpoly);
            }
        }
    }
    return out;
}

AnnGridReport ann_verify_grid(const AlgebraParams& params, GenIndex max_index, long max_m,
                              int jobs) {
    AnnGridReport rep;
    std::vector<AnnGen> gens;
    for (GenIndex i = 0; i <= max_index; ++i)
        for (long m = -1; m <= max_m; ++m) gens.push_back(AnnGen{i, m});

    const std::size_t ng = gens.size();
    std::vector<std::string> pair_fail(ng * ng);
    parallel_for(ng * ng, jobs, [&](std::size_t t) {
        const AnnGen &a = gens[t / ng], &b = gens[t % ng];
        AnnElement closed = ann_bracket_closed(a, b, params);
        AnnElement derived = ann_bracket_derived(a, b, params);
        std::ostringstream os;
        if (closed != derived) {
            os << "derived mismatch at (" << a.i << "," << a.m << "),(" << b.i << "," << b.m
               << "): closed=" << closed.str() << " derived=" << derived.str();
        }
        AnnElement anti = ann_bracket_closed(b, a, params);
        anti += closed;
        if (!anti.is_zero()) {
            if (os.tellp() > 0) os << "; ";
            os << "antisymmetry fails at (" << a.i << "," << a.m << "),(" << b.i << ","
               << b.m << ")";
        }
        pair_fail[t] = os.str();
    });
    rep.checked_pairs = static_cast<long>(ng * ng);
    for (const auto& f : pair_fail)
        if (!f.empty()) rep.failures.push_back(f);

    std::vector<std::string> triple_fail(ng * ng * ng);
    parallel_for(ng * ng * ng, jobs, [&](std::size_t t) {
        const AnnGen &a = gens[t / (ng * ng)], &b = gens[(t / ng) % ng], &c = gens[t % ng];
        AnnElement ea, eb, ec;
        ea.add(a, Poly(1));
        eb.add(b, Poly(1));
        ec.add(c, Poly(1));
        AnnElement res = ann_bracket_closed(ea, ann_bracket_closed(eb, ec, params), params);
        res -= ann_bracket_closed(ann_bracket_closed(ea, eb, params), ec, params);
        res -= ann_bracket_closed(eb, ann_bracket_closed(ea, ec, params), params);
        if (!res.is_zero()) {
            std::ostringstream os;
            os << "jacobi fails at (" << a.i << "," << a.m << "),(" << b.i << "," << b.m
               << "),(" << c.i << "," << c.m << "): " << res.str();
            triple_fail[t] = os.str();
        }
    });
    rep.checked_triples = static_cast<long>(ng * ng * ng);
    for (const auto& f : triple_fail)
        if (!f.empty()) rep.failures.push_back(f);
    return rep;
}

std::string ann_table_csv(const AlgebraParams& params, GenIndex max_index, long max_m) {
    std::ostringstream os;
    os << "i,m,j,n,coefficient,target_i,target_m\n";
    for (GenIndex i = 0; i <= max_index; ++i)
        for (long m = -1; m <= max_m; ++m)
            for (GenIndex j = 0; j <= max_index; ++j)
                for (long n = -1; n <= max_m; ++n) {
                    AnnElement e = ann_bracket_closed(AnnGen{i, m}, AnnGen{j, n}, params);
                    std::string coef = "0";
                    if (!e.is_zero()) coef = e.terms().begin()->second.str();
                    os << i << "," << m << "," << j << "," << n << ",\"" << coef << "\","
                       << (i + j) << "," << (m + n) << "\n";
                }
    return os.str();
}

} // namespace lca
