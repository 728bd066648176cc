#ifndef LCA_ANNIHILATION_HPP
#define LCA_ANNIHILATION_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lca/conformal.hpp"

namespace lca {

// Basis symbol L_{i,m} of the annihilation algebra, i >= 0, m >= -1.
struct AnnGen {
    GenIndex i;
    long m;

    friend bool operator<(const AnnGen& a, const AnnGen& b) {
        return std::pair(a.i, a.m) < std::pair(b.i, b.m);
    }
    friend bool operator==(const AnnGen& a, const AnnGen& b) {
        return a.i == b.i && a.m == b.m;
    }
};

// Finite combination of annihilation generators with coefficients that
// are rationals, or polynomials in p when p is formal.
class AnnElement {
public:
    AnnElement() = default;

    bool is_zero() const { return terms_.empty(); }
    const std::map<AnnGen, Poly>& terms() const { return terms_; }

    void add(const AnnGen& g, const Poly& c);

    AnnElement& operator+=(const AnnElement& o);
    AnnElement& operator-=(const AnnElement& o);
    friend AnnElement operator+(AnnElement a, const AnnElement& b) { return a += b; }
    friend AnnElement operator-(AnnElement a, const AnnElement& b) { return a -= b; }

    AnnElement scaled(const Poly& f) const;

    bool operator==(const AnnElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AnnElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::map<AnnGen, Poly> terms_;
};

// k-th Taylor coefficient (times k!) of [L_i lam L_j] in lam:
// k = 0 -> (i+p) d L_{i+j}, k = 1 -> (i+j+2p) L_{i+j}, k >= 2 -> 0.
LambdaElement kproduct(GenIndex i, GenIndex j, long k, const AlgebraParams& params);

// Closed-form bracket [L_{i,m}, L_{j,n}] =
// ((j+p)(m+1) - (i+p)(n+1)) L_{i+j, m+n}.
AnnElement ann_bracket_closed(const AnnGen& a, const AnnGen& b, const AlgebraParams& params);

// Independent oracle: expands [a_(M), b_(N)] = sum_k C(M,k) (a_(k) b)_(M+N-k)
// from the k-products and the rule (d a)_(n) = -n a_(n-1), under the
// identification L_{i,m} := (L_i)_(m+1); symbols with index below the
// basis range are zero.
AnnElement ann_bracket_derived(const AnnGen& a, const AnnGen& b, const AlgebraParams& params);

// Bilinear extension of the closed bracket.
AnnElement ann_bracket_closed(const AnnElement& a, const AnnElement& b,
                              const AlgebraParams& params);

struct AnnGridReport {
    long checked_pairs = 0;
    long checked_triples = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// closed == derived on the full grid, antisymmetry, and the Jacobi
// identity for the closed bracket; indices i,j <= max_index and
// -1 <= m,n <= max_m.
AnnGridReport ann_verify_grid(const AlgebraParams& params, GenIndex max_index, long max_m,
                              int jobs = 1);

// Structure-constant table, one row per generator pair, deterministic
// order: i, m, j, n, coefficient (polynomial in p), target i+j, target m+n.
std::string ann_table_csv(const AlgebraParams& params, GenIndex max_index, long max_m);

} // namespace lca

#endif
