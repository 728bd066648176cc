#ifndef LCA_BIDERIVATIONS_HPP
#define LCA_BIDERIVATIONS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lca/conformal.hpp"

namespace lca {

// A conformal bilinear skew-symmetric pairing given on generator pairs.
//  - InnerC(c):          d_lam(L_i, L_j) = c [L_i lam L_j].
//  - DeltaTruncated(c):  the same except zero when i+j = -p; requires
//                        rational p in Z^-.
//  - Tabulated:          explicit values, absent pairs are zero.
class Biderivation {
public:
    enum class Kind { InnerC, DeltaTruncated, Tabulated };

    static Biderivation inner(const Rat& c, const AlgebraParams& params);
    static Biderivation delta_truncated(const Rat& c, const AlgebraParams& params);
    static Biderivation tabulated(
        const std::map<std::pair<GenIndex, GenIndex>, LambdaElement>& values,
        const AlgebraParams& params);

    Kind kind() const { return kind_; }
    const AlgebraParams& params() const { return params_; }

    // d_lam(L_i, L_j), bracket parameter lam.
    LambdaElement value(GenIndex i, GenIndex j) const;

    // d_lam(f(d)L_i, g(d)L_j) = f(-lam) g(d+lam) d_lam(L_i, L_j): the
    // unique extension consistent with the two conformal-bilinearity
    // rules.
    LambdaElement value_ext(GenIndex i, const Poly& f, GenIndex j, const Poly& g) const;

private:
    Biderivation(Kind k, const AlgebraParams& p) : kind_(k), params_(p) {}
    Kind kind_;
    AlgebraParams params_;
    Rat c_ = Rat(0);
    std::map<std::pair<GenIndex, GenIndex>, LambdaElement> table_;
};

struct BilinearSkewResidual {
    LambdaElement compat_left;  // d_lam(d x, y) + lam d_lam(x, y)
    LambdaElement compat_right; // d_lam(x, d y) - (d+lam) d_lam(x, y)
    LambdaElement skew;         // d_lam(L_i,L_j) + d_lam(L_j,L_i)|{lam := -d-lam}

    bool ok() const {
        return compat_left.is_zero() && compat_right.is_zero() && skew.is_zero();
    }
};

BilinearSkewResidual check_bilinear_skew(const Biderivation& d, GenIndex i, GenIndex j);

// Residual of the defining identity with x = L_i, y = L_j, z = L_k:
// d_lam(x, [y mu z]) - [(d_lam(x,y))_{lam+mu} z] - [y mu (d_lam(x,z))].
LambdaElement check_biderivation(const Biderivation& d, GenIndex i, GenIndex j, GenIndex k);

// Residual of the derived identity
// [(d_mu(L_i,L_j))_{mu+gam} [L_m lam L_n]] - [[L_i mu L_j]_{mu+gam} d_lam(L_m,L_n)].
LambdaElement check_bracket_exchange(const Biderivation& d, GenIndex i, GenIndex j, GenIndex m,
                         GenIndex n);

struct BiderGridReport {
    long pairs = 0, triples = 0, quads = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Runs all three check families over the index box [0, N].
BiderGridReport bider_verify_grid(const Biderivation& d, GenIndex N, int jobs = 1);

} // namespace lca

#endif
