#include "lca/conformal.hpp"

#include <sstream>
#include <stdexcept>

namespace lca {

AlgebraParams AlgebraParams::formal() { return AlgebraParams{}; }

AlgebraParams AlgebraParams::rational(const Rat& p) {
    if (p == 0) throw std::invalid_argument("AlgebraParams: p must be nonzero");
    AlgebraParams a;
    a.p_ = p;
    return a;
}

const Rat& AlgebraParams::p_value() const {
    if (!p_) throw std::invalid_argument("AlgebraParams: p is formal");
    return *p_;
}

bool AlgebraParams::p_is_neg_int() const {
    return p_ && rat_is_integer(*p_) && *p_ < 0;
}

bool AlgebraParams::two_p_is_neg_int() const {
    if (!p_) return false;
    Rat twop = Rat(2) * *p_;
    return rat_is_integer(twop) && twop < 0;
}

bool AlgebraParams::p_is_minus_one() const { return p_ && *p_ == Rat(-1); }

Poly AlgebraParams::p_poly() const {
    return p_ ? Poly(*p_) : Poly::variable(Var::P);
}

Poly AlgebraParams::affine(long a, long b) const {
    return Poly(a) + Poly(b) * p_poly();
}

GenIndex AlgebraParams::minus_p_index() const {
    if (!p_is_neg_int())
        throw std::invalid_argument("AlgebraParams: -p is a generator index only for p in Z^-");
    return -rat_to_long(*p_);
}

GenIndex AlgebraParams::minus_2p_index() const {
    if (!two_p_is_neg_int())
        throw std::invalid_argument("AlgebraParams: -2p is a generator index only for 2p in Z^-");
    return rat_to_long(Rat(-2) * *p_);
}

std::string AlgebraParams::str() const {
    return p_ ? rat_str(*p_) : std::string("formal");
}

LambdaElement LambdaElement::gen(GenIndex i, const Poly& coef) {
    LambdaElement e;
    e.add(i, coef);
    return e;
}

Poly LambdaElement::component(GenIndex i) const {
    auto it = comps_.find(i);
    return it == comps_.end() ? Poly() : it->second;
}

void LambdaElement::add(GenIndex i, const Poly& c) {
    if (i < 0) throw std::invalid_argument("LambdaElement: negative generator index");
    if (c.is_zero()) return;
    auto it = comps_.find(i);
    if (it == comps_.end()) {
        comps_.emplace(i, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

LambdaElement& LambdaElement::operator+=(const LambdaElement& o) {
    for (const auto& [i, c] : o.comps_) add(i, c);
    return *this;
}

LambdaElement& LambdaElement::operator-=(const LambdaElement& o) {
    for (const auto& [i, c] : o.comps_) add(i, -c);
    return *this;
}

LambdaElement LambdaElement::operator-() const {
    LambdaElement r;
    for (const auto& [i, c] : comps_) r.comps_.emplace(i, -c);
    return r;
}

LambdaElement LambdaElement::scaled(const Poly& f) const {
    LambdaElement r;
    for (const auto& [i, c] : comps_) r.add(i, f * c);
    return r;
}

LambdaElement LambdaElement::substituted(Var v, const Poly& r) const {
    LambdaElement out;
    for (const auto& [i, c] : comps_) out.add(i, c.substitute(v, r));
    return out;
}

std::string LambdaElement::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : comps_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")*L" << i;
        first = false;
    }
    return os.str();
}

LambdaElement bracket_gen(GenIndex i, GenIndex j, const AlgebraParams& params,
                          const Poly& var_poly) {
    if (i < 0 || j < 0) throw std::invalid_argument("bracket_gen: negative index");
    Poly coef = params.affine(i) * pvar(Var::Partial) + params.affine(i + j, 2) * var_poly;
    return LambdaElement::gen(i + j, coef);
}

LambdaElement bracket_gen(GenIndex i, GenIndex j, const AlgebraParams& params, Var var) {
    if (!(var == Var::Lambda || var == Var::Mu || var == Var::Gamma || var == Var::Nu))
        throw std::invalid_argument("bracket_gen: bracket variable must be lam/mu/gam/nu");
    return bracket_gen(i, j, params, pvar(var));
}

LambdaElement bracket(const LambdaElement& x, const LambdaElement& y,
                      const AlgebraParams& params, const Poly& var_poly) {
    LambdaElement out;
    for (const auto& [i, f] : x.components()) {
        Poly fleft = f.substitute(Var::Partial, -var_poly);
        for (const auto& [j, g] : y.components()) {
            Poly gright = g.substitute(Var::Partial, pvar(Var::Partial) + var_poly);
            LambdaElement b = bracket_gen(i, j, params, var_poly);
            out += b.scaled(fleft * gright);
        }
    }
    return out;
}

LambdaElement bracket(const LambdaElement& x, const LambdaElement& y,
                      const AlgebraParams& params, Var var) {
    return bracket(x, y, params, pvar(var));
}

LambdaElement check_skew(GenIndex i, GenIndex j, const AlgebraParams& params) {
    LambdaElement lhs = bracket_gen(i, j, params, Var::Lambda);
    LambdaElement rhs = bracket_gen(j, i, params, Var::Lambda)
                            .substituted(Var::Lambda, -pvar(Var::Lambda) - pvar(Var::Partial));
    return lhs + rhs;
}

LambdaElement check_jacobi(GenIndex i, GenIndex j, GenIndex k, const AlgebraParams& params) {
    const Poly lam = pvar(Var::Lambda), mu = pvar(Var::Mu);
    LambdaElement li = LambdaElement::gen(i), lj = LambdaElement::gen(j),
                  lk = LambdaElement::gen(k);
    LambdaElement inner_jk = bracket_gen(j, k, params, Var::Mu);
    LambdaElement t1 = bracket(li, inner_jk, params, lam);
    LambdaElement inner_ij = bracket_gen(i, j, params, Var::Lambda);
    LambdaElement t2 = bracket(inner_ij, lk, params, lam + mu);
    LambdaElement inner_ik = bracket_gen(i, k, params, Var::Lambda);
    LambdaElement t3 = bracket(lj, inner_ik, params, mu);
    return t1 - t2 - t3;
}

SubalgebraReport check_subalgebras(const AlgebraParams& params) {
    SubalgebraReport rep;
    const Poly d = pvar(Var::Partial), lam = pvar(Var::Lambda);

    if (params.is_formal()) {
        // p-cleared Virasoro normalization: [L_0 lam L_0] = p(d+2lam)L_0.
        LambdaElement lhs = bracket_gen(0, 0, params, Var::Lambda);
        LambdaElement rhs = LambdaElement::gen(0, params.p_poly() * (d + 2 * lam));
        rep.virasoro_ok = (lhs == rhs);
        rep.notes.push_back("virasoro: p-cleared form checked with formal p");
    } else {
        Rat pinv = Rat(1) / params.p_value();
        LambdaElement x = LambdaElement::gen(0, pconst(pinv));
        LambdaElement lhs = bracket(x, x, params, Var::Lambda);
        LambdaElement rhs = x.scaled(d + 2 * lam);
        rep.virasoro_ok = (lhs == rhs);
    }

    if (params.p_is_neg_int()) {
        rep.hv_checked = true;
        GenIndex mp = params.minus_p_index();
        Rat pinv = Rat(1) / params.p_value();
        std::vector<LambdaElement> gens = {LambdaElement::gen(0, pconst(pinv)),
                                           LambdaElement::gen(mp)};
        bool closed = true;
        for (const auto& a : gens) {
            for (const auto& b : gens) {
                LambdaElement br = bracket(a, b, params, Var::Lambda);
                for (const auto& [idx, c] : br.components()) {
                    if (idx != 0 && idx != mp) closed = false;
                }
            }
        }
        LambdaElement diag = bracket(gens[1], gens[1], params, Var::Lambda);
        bool diag_zero = diag.is_zero();
        rep.hv_ok = closed && diag_zero;
        std::ostringstream os;
        os << "hv: span{p^-1 L0, L" << mp << "} closed=" << (closed ? "yes" : "no")
           << ", [L" << mp << " lam L" << mp << "]=" << diag.str();
        rep.notes.push_back(os.str());
    }
    return rep;
}

} // namespace lca
