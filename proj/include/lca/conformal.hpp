#ifndef LCA_CONFORMAL_HPP
#define LCA_CONFORMAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lca/poly.hpp"
#include "lca/rat.hpp"

namespace lca {

// Generator index i of L_i; the index set is the non-negative integers.
using GenIndex = long;

// The algebra parameter p: either the formal variable or a nonzero
// rational. Branch flags are derived from the value, never stored.
class AlgebraParams {
public:
    static AlgebraParams formal();
    static AlgebraParams rational(const Rat& p);

    bool is_formal() const { return !p_.has_value(); }
    const Rat& p_value() const;

    bool p_is_neg_int() const;     // p in Z^-
    bool two_p_is_neg_int() const; // 2p in Z^-
    bool p_is_minus_one() const;

    // p as a polynomial: the formal variable or a constant.
    Poly p_poly() const;
    // a + b*p as a polynomial.
    Poly affine(long a, long b = 1) const;

    // -p (resp. -2p) as a generator index; rejects non-integral values.
    GenIndex minus_p_index() const;
    GenIndex minus_2p_index() const;

    std::string str() const;

private:
    AlgebraParams() = default;
    std::optional<Rat> p_;
};

// A finite C[lam,...]-combination of generators: index -> coefficient
// polynomial. Zero components are never stored.
class LambdaElement {
public:
    LambdaElement() = default;

    static LambdaElement gen(GenIndex i, const Poly& coef = Poly(1));

    bool is_zero() const { return comps_.empty(); }
    const std::map<GenIndex, Poly>& components() const { return comps_; }
    Poly component(GenIndex i) const;

    void add(GenIndex i, const Poly& c);

    LambdaElement& operator+=(const LambdaElement& o);
    LambdaElement& operator-=(const LambdaElement& o);
    friend LambdaElement operator+(LambdaElement a, const LambdaElement& b) { return a += b; }
    friend LambdaElement operator-(LambdaElement a, const LambdaElement& b) { return a -= b; }
    LambdaElement operator-() const;

    // Multiplies every component by f.
    LambdaElement scaled(const Poly& f) const;
    // Applies Poly::substitute to every component.
    LambdaElement substituted(Var v, const Poly& r) const;

    bool operator==(const LambdaElement& o) const { return comps_ == o.comps_; }
    bool operator!=(const LambdaElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::map<GenIndex, Poly> comps_;
};

// [L_i var L_j] = ((i+p)d + (i+j+2p) var) L_{i+j}. var may be any of
// lam/mu/gam/nu, or an arbitrary polynomial (used for the lam+mu slot
// of nested brackets).
LambdaElement bracket_gen(GenIndex i, GenIndex j, const AlgebraParams& params, Var var);
LambdaElement bracket_gen(GenIndex i, GenIndex j, const AlgebraParams& params,
                          const Poly& var_poly);

// Bracket of two finite combinations x = sum f_i(d,...) L_i,
// y = sum g_j(d,...) L_j, extended by conformal sesquilinearity:
// [f(d)L_i var g(d)L_j] = f(-var) g(d+var) [L_i var L_j]. Variables
// other than d in the coefficients ride along untouched.
LambdaElement bracket(const LambdaElement& x, const LambdaElement& y,
                      const AlgebraParams& params, const Poly& var_poly);
LambdaElement bracket(const LambdaElement& x, const LambdaElement& y,
                      const AlgebraParams& params, Var var);

// Skew-commutativity residual: [L_i lam L_j] + [L_j lam L_i]|{lam := -lam-d}.
LambdaElement check_skew(GenIndex i, GenIndex j, const AlgebraParams& params);

// Jacobi residual:
// [L_i lam [L_j mu L_k]] - [[L_i lam L_j]_{lam+mu} L_k] - [L_j mu [L_i lam L_k]].
LambdaElement check_jacobi(GenIndex i, GenIndex j, GenIndex k, const AlgebraParams& params);

struct SubalgebraReport {
    bool virasoro_ok = false;
    bool hv_checked = false;
    bool hv_ok = false;
    std::vector<std::string> notes;

    bool ok() const { return virasoro_ok && (!hv_checked || hv_ok); }
};

// Virasoro normalization [x lam x] = (d+2lam)x for x = p^{-1}L_0 (for
// formal p the p-cleared identity [L_0 lam L_0] = p(d+2lam)L_0 is
// verified, which is the same statement scaled by p^2). For rational
// p in Z^- additionally checks that span{p^{-1}L_0, L_{-p}} is closed
// under the bracket with [L_{-p} lam L_{-p}] = 0.
SubalgebraReport check_subalgebras(const AlgebraParams& params);

} // namespace lca

#endif
