#ifndef LCA_DERIVATIONS_HPP
#define LCA_DERIVATIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lca/conformal.hpp"
#include "lca/linalg.hpp"

namespace lca {

// A conformal derivation D_lam given by its images on generators.
//  - Inner(gamma):  D_lam(L_j) = [gamma_lam L_j], gamma a finite
//    combination sum g_k(d) L_k.
//  - OuterDp:       D_lam(L_j) = (j+p) L_{j-p}; requires p in Z^-.
//  - Tabulated:     explicit image table, absent entries are zero.
class ConformalDerivation {
public:
    enum class Kind { Inner, OuterDp, Tabulated };

    static ConformalDerivation inner(const std::map<GenIndex, Poly>& gamma,
                                     const AlgebraParams& params);
    static ConformalDerivation outer_dp(const AlgebraParams& params);
    static ConformalDerivation tabulated(const std::map<GenIndex, LambdaElement>& images,
                                         const AlgebraParams& params);

    Kind kind() const { return kind_; }
    const AlgebraParams& params() const { return params_; }
    const std::map<GenIndex, Poly>& gamma() const;

    // D_lam(L_j).
    LambdaElement image(GenIndex j) const;

    // D_lam(f(d)L_i) = f(d+lam) D_lam(L_i), extended linearly.
    LambdaElement apply(const LambdaElement& x) const;

private:
    explicit ConformalDerivation(Kind k, const AlgebraParams& p) : kind_(k), params_(p) {}
    Kind kind_;
    AlgebraParams params_;
    std::map<GenIndex, Poly> gamma_;
    std::map<GenIndex, LambdaElement> table_;
};

// Leibniz residual
// D_lam[L_i mu L_j] - [(D_lam L_i)_{lam+mu} L_j] - [L_i mu (D_lam L_j)].
LambdaElement check_leibniz(const ConformalDerivation& D, GenIndex i, GenIndex j);

struct NonInnernessReport {
    bool obstruction_ok = false;  // lam=0 obstruction holds for every j <= N, j != -p
    bool system_infeasible = false; // ad(gamma) = D has no solution on the truncation
    std::optional<std::map<GenIndex, Poly>> witness_gamma; // solution when feasible
    std::vector<std::string> notes;

    bool non_inner() const { return obstruction_ok && system_infeasible; }
};

// For D = outer_dp: certifies non-innerness two ways. The lam=0
// obstruction: the L_{j-p}-component of any inner image of L_j is
// divisible by lam (only the gamma component at L_{-p} can reach index
// j-p, and [g(d)L_{-p} lam L_j] = g(-lam)(j+p) lam L_{j-p}), while the
// outer image is the nonzero constant (j+p). The linear system
// ad(gamma) = D over gamma supported on indices <= N with d-degree
// <= gamma_deg is solved exactly and reported infeasible. For an inner
// D the same routine returns the witness gamma instead.
NonInnernessReport non_innerness_certificate(const ConformalDerivation& D, GenIndex N,
                                             int gamma_deg = 3);

struct ClassifyReport {
    std::string p;
    GenIndex n_src = 0, n_tgt = 0;
    int deg_partial = 0, deg_lambda = 0;
    std::size_t dim_kernel = 0;
    std::size_t dim_inner = 0;
    std::size_t dim_quotient = 0;
    std::size_t edge_suspect_count = 0;
    std::size_t dim_quotient_interior = 0;
    bool outer_found = false;      // quotient is spanned by outer_dp mod inner
    bool matches_classification = false;  // branch expectation holds at this truncation
    Subspace kernel_space;
    Subspace inner_space;
    std::vector<QVector> quotient_reps; // reduced mod inner, canonical order
    std::vector<bool> rep_edge_suspect;
};

// Truncated coordinate chart for derivation solving: unknowns are the
// coefficients of d^a lam^b in component k of D(L_i), i <= n_src,
// k <= n_tgt, a <= deg_partial, b <= deg_lambda.
struct DerivationChart {
    GenIndex n_src, n_tgt;
    int deg_partial, deg_lambda;

    std::size_t dimension() const;
    std::size_t index(GenIndex i, GenIndex k, int a, int b) const;
    // Vector of a derivation restricted to the chart (images clipped to
    // the chart's target range; rejects degree overflow).
    QVector vectorize(const ConformalDerivation& D) const;
    // Source indices with a nonzero image in v.
    std::vector<GenIndex> source_support(const QVector& v) const;
};

// Re-derives the derivation-space classification at a truncation: imposes the
// Leibniz residuals for all i, j with i, j, i+j <= n_src on unknowns in
// the chart, compares the kernel with the truncated inner span, and for
// p in Z^- with the span extended by outer_dp. Requires rational p and
// n_tgt >= n_src + max(0, -p).
ClassifyReport classify(const AlgebraParams& params, GenIndex n_src, GenIndex n_tgt,
                        int deg_partial = 3, int deg_lambda = 3);

} // namespace lca

#endif
