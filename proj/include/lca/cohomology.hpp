#ifndef LCA_COHOMOLOGY_HPP
#define LCA_COHOMOLOGY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lca/conformal.hpp"
#include "lca/linalg.hpp"

namespace lca {

// Coefficient module for the second cohomology:
//  - Trivial:          C with d and every L_i acting as zero.
//  - MDeltaAlpha:      C[d]v with L_0 lam v = p(d + Delta lam + alpha)v,
//                      L_i lam v = 0 for i >= 1.
//  - MDeltaAlphaBeta:  (p = -1 only) C[d]w with
//                      L_0 lam w = -(d + Delta lam + alpha)w,
//                      L_1 lam w = beta w, L_i lam w = 0 for i >= 2.
// Delta, alpha, beta may be formal or rational.
class RankOneModule {
public:
    enum class Kind { Trivial, MDeltaAlpha, MDeltaAlphaBeta };

    static RankOneModule trivial(const AlgebraParams& params);
    static RankOneModule m_delta_alpha(const AlgebraParams& params,
                                       std::optional<Rat> delta = std::nullopt,
                                       std::optional<Rat> alpha = std::nullopt);
    static RankOneModule m_delta_alpha_beta(const AlgebraParams& params,
                                            std::optional<Rat> delta = std::nullopt,
                                            std::optional<Rat> alpha = std::nullopt,
                                            std::optional<Rat> beta = std::nullopt);

    Kind kind() const { return kind_; }
    const AlgebraParams& params() const { return params_; }
    bool is_trivial() const { return kind_ == Kind::Trivial; }

    Poly delta_poly() const;
    Poly alpha_poly() const;
    Poly beta_poly() const;
    std::optional<Rat> delta_value() const { return delta_; }
    std::optional<Rat> alpha_value() const { return alpha_; }
    std::optional<Rat> beta_value() const { return beta_; }

    // d^M as a polynomial in the module variable: 0 for Trivial, d else.
    Poly partial_m() const;

    // Action polynomial A_i(d, arg): L_i arg (gen) = A_i(d, arg) gen.
    Poly action_poly(GenIndex i, const Poly& arg) const;

    std::string kind_name() const;

private:
    RankOneModule(Kind k, const AlgebraParams& p) : kind_(k), params_(p) {}
    Kind kind_;
    AlgebraParams params_;
    std::optional<Rat> delta_, alpha_, beta_;
};

// L_i var (m(d) gen) = m(d + var) A_i(d, var) gen.
Poly module_action(const RankOneModule& mod, GenIndex i, const Poly& m, Var var);

// Residual of a_lam(b_mu gen) - b_mu(a_lam gen) - [a_lam b]_{lam+mu} gen
// with a = L_i, b = L_j.
Poly check_module_axioms(const RankOneModule& mod, GenIndex i, GenIndex j);

// A C[d]-module homomorphism A -> M: phi(L_i) = phi_i(d) * gen
// (constants for the trivial module).
struct CochainMap {
    std::map<GenIndex, Poly> phi;

    Poly at(GenIndex i) const {
        auto it = phi.find(i);
        return it == phi.end() ? Poly() : it->second;
    }
    bool is_zero() const;
};

// A 2-lambda-bracket on generator pairs with coefficients in mod:
// value(i,j) is the coefficient polynomial of the module generator,
// in lam for Trivial and in (d, lam) for the rank-one modules. Values
// are stored for both orientations; constructors keep skew-symmetry.
class TwoCocycle {
public:
    explicit TwoCocycle(const RankOneModule& mod) : mod_(mod) {}

    const RankOneModule& module() const { return mod_; }

    Poly value(GenIndex i, GenIndex j) const;
    const std::map<std::pair<GenIndex, GenIndex>, Poly>& values() const { return values_; }

    // Sets value(i,j) and value(j,i) via skew-symmetry. For i == j the
    // value must satisfy f = -f|{lam := -lam-dM}.
    void set_pair(GenIndex i, GenIndex j, const Poly& v);
    // Raw set of one orientation (solver internals, negative controls).
    void set_raw(GenIndex i, GenIndex j, const Poly& v);

    // Skew audit over all stored pairs.
    bool skew_consistent() const;

private:
    RankOneModule mod_;
    std::map<std::pair<GenIndex, GenIndex>, Poly> values_;
};

// Six-term differential residual (three-term for Trivial) of (D3) with
// a = L_i, b = L_j, z = L_k. Zero exactly when c is a cocycle at this
// triple. The  z_{-lam-mu-dM} action is expanded with the fresh
// variable nu and substituted afterwards.
Poly cocycle_residual(const TwoCocycle& c, GenIndex i, GenIndex j, GenIndex k);

// The exact 2-cocycle d(phi), materialized on all pairs i, j <= max_index.
TwoCocycle coboundary(const CochainMap& phi, const RankOneModule& mod, GenIndex max_index);

enum class NamedCocycle { Alpha, Beta, BetaTilde, BetaBar };

std::string named_cocycle_name(NamedCocycle which);

// Distinguished representatives over the trivial module:
//   alpha:     {L_0 lam L_0} = lam^3 (any p)
//   beta:      {L_i lam L_j} = j+p on i+j = -2p        (2p in Z^-)
//   beta-bar:  {L_i lam L_j} = lam on i+j = -2p,
//              except value 0 at (1,1) when p = -1     (2p in Z^-)
//   beta-tilde:{L_1 lam L_1} = lam                     (p = -1)
TwoCocycle named_cocycle(NamedCocycle which, const AlgebraParams& params);

struct NontrivialityResult {
    bool nontrivial = false;
    std::optional<CochainMap> witness_phi; // trivializing phi when trivial
    std::string note;
};

// Decides whether c (over the trivial module) is a coboundary when
// restricted to pairs with i+j <= N.
NontrivialityResult nontriviality(const TwoCocycle& c, GenIndex N);

// Coordinate chart for truncated 2-cocycles: stored pairs i <= j with
// i+j <= N, monomial exponents d^a lam^b, a <= deg_partial (0 for the
// trivial module), b <= deg_lambda.
struct CocycleChart {
    RankOneModule mod;
    GenIndex N;
    int deg_partial, deg_lambda;

    std::vector<std::pair<GenIndex, GenIndex>> pairs; // i <= j, i+j <= N

    static CocycleChart make(const RankOneModule& mod, GenIndex N, int deg_lambda,
                             int deg_partial);
    std::size_t dimension() const;
    std::size_t pair_offset(GenIndex i, GenIndex j) const;
    std::size_t index(GenIndex i, GenIndex j, int a, int b) const;
    QVector vectorize(const TwoCocycle& c) const;
    TwoCocycle to_cocycle(const QVector& v) const;
    // true if v has support only on pairs with i+j <= N-2.
    bool interior_supported(const QVector& v) const;
};

struct CocycleSolveReport {
    std::string module_kind, p, delta, alpha, beta;
    GenIndex N = 0;
    int deg_lambda = 0, deg_partial = 0;
    std::size_t dim_cocycles = 0;
    std::size_t dim_coboundaries = 0;
    std::size_t dim_quotient = 0;
    std::size_t dim_quotient_interior = 0;
    std::size_t dim_quotient_edge = 0;
    Subspace kernel_space;
    Subspace coboundary_space;
    std::vector<QVector> interior_reps; // edge-free representatives
    std::vector<QVector> edge_reps;
    CocycleChart chart =
        CocycleChart{RankOneModule::trivial(AlgebraParams::formal()), 0, 0, 0, {}};
    std::vector<std::string> notes;
};

// Solves the truncated cocycle conditions exactly and compares with the
// truncated coboundary space. Quotient classes that can be pushed off
// the boundary band i+j > N-2 by a coboundary are reported as interior
// with an edge-free representative; the rest are edge-suspect. Requires
// rational p and rational module parameters with alpha != 0 for the
// rank-one kinds.
CocycleSolveReport cocycle_solver(const RankOneModule& mod, GenIndex N, int deg_lambda,
                                  int deg_partial = 3);

struct TrivializeResult {
    CochainMap phi;
    bool success = false;       // c - d(phi) = 0 on all interior pairs
    bool clean_everywhere = false; // ... and on every stored pair
    std::string first_failure;
};

// Constructs phi(L_i) = (alpha p)^{-1} value(0,i)|_{lam=0} from the
// (0,i) values of c and verifies c - d(phi) on pairs with i+j <= N
// (interior: i+j <= N-2). Requires a rank-one module with rational
// nonzero alpha and rational p.
TrivializeResult trivialize(const TwoCocycle& c, GenIndex N);

} // namespace lca

#endif
