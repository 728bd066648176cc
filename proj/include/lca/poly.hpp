#ifndef LCA_POLY_HPP
#define LCA_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lca/rat.hpp"

namespace lca {

// Fixed variable alphabet. The first five are bracket/action variables,
// the last four are formal parameters that may be specialized to rationals.
// Nu is reserved for module-action substitution and must never survive
// into a final residual.
enum class Var : int {
    Partial = 0, // the translation generator, rendered "d"
    Lambda  = 1,
    Mu      = 2,
    Gamma   = 3,
    Nu      = 4,
    P       = 5,
    Delta   = 6,
    Alpha   = 7,
    Beta    = 8,
};

inline constexpr int kNumVars = 9;

inline constexpr std::array<const char*, kNumVars> kVarNames = {
    "d", "lam", "mu", "gam", "nu", "p", "Delta", "alpha", "beta"};

inline bool var_is_param(Var v) { return static_cast<int>(v) >= static_cast<int>(Var::P); }

// Dense exponent vector over the 9-variable alphabet.
using Mono = std::array<std::uint16_t, kNumVars>;

int mono_degree(const Mono& m);

// Graded lexicographic order (total degree first, then lex in the
// fixed variable order). This is the canonical term order used for
// storage, iteration, and rendering.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Exact multivariate polynomial over Rat. Canonical form: no stored
// zero coefficients, so equal polynomials have identical term maps.
class Poly {
public:
    using TermMap = std::map<Mono, Rat, MonoLess>;

    Poly() = default;
    explicit Poly(long c);
    explicit Poly(const Rat& c);

    static Poly variable(Var v, unsigned exp = 1);
    static Poly monomial(const Mono& m, const Rat& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // requires is_constant()

    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& scale(const Rat& c);
    friend Poly operator*(const Rat& c, Poly p) { return p.scale(c); }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned k) const;

    bool contains(Var v) const;
    int degree(Var v) const;   // -1 for the zero polynomial
    int total_degree() const;  // -1 for the zero polynomial

    // Simultaneous single-pass substitution v := r (every stored
    // occurrence of v rewritten at once; r may itself contain v, as in
    // the skew substitution lam := -lam-d).
    Poly substitute(Var v, const Poly& r) const;

    // Specializes a formal parameter to a rational constant.
    // Rejects non-parameter variables.
    Poly eval_param(Var v, const Rat& q) const;

    // Coefficient of v^k, with v removed from the result.
    Poly coeff_of(Var v, unsigned k) const;

    // Splits into v-degree -> coefficient polynomial (v removed).
    std::map<int, Poly> decompose_by(Var v) const;

    // Canonical rendering: terms from highest graded-lex monomial down,
    // e.g. "2*d^2*lam - 1/2*mu + 3".
    std::string str() const;

private:
    void add_term(const Mono& m, const Rat& c);
    TermMap terms_;
};

inline Poly operator*(Poly p, long c) { return p.scale(Rat(c)); }
inline Poly operator*(long c, Poly p) { return p.scale(Rat(c)); }

// Convenience constructors used throughout the bracket code.
Poly pvar(Var v);
Poly pconst(long c);
Poly pconst(const Rat& c);

} // namespace lca

#endif
