#ifndef LCA_LINALG_HPP
#define LCA_LINALG_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "lca/poly.hpp"
#include "lca/rat.hpp"

namespace lca {

using QVector = std::vector<Rat>;

// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<int, Rat>>;

class QMatrix {
public:
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}

    static QMatrix from_rows(const std::vector<QVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    QVector row(std::size_t r) const;
    QVector apply(const QVector& x) const; // matrix * x

private:
    std::size_t rows_, cols_;
    std::vector<Rat> entries_;
};

// Row space in reduced echelon form: pivot entries are 1, pivot columns
// are zero elsewhere, rows ordered by pivot column. The representation
// is canonical, so two runs over the same input produce identical bases.
struct Subspace {
    std::size_t ambient = 0;
    std::vector<QVector> basis;

    std::size_t dim() const { return basis.size(); }
};

struct SpanResult {
    bool member = false;
    QVector coords;      // coordinates in the subspace basis when member
    QVector functional;  // a vector orthogonal to the subspace with
                         // nonzero pairing against v when not member
};

// Incremental fraction-free row reduction over the integers (rows kept
// primitive: content divided out, sign normalized), with the final basis
// presented over Q with unit pivots. Pivoting is deterministic: the
// pivot of a new row is its first nonzero column after full reduction.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t ambient) : n_(ambient) {}

    std::size_t ambient() const { return n_; }
    std::size_t rank() const { return rows_.size(); }

    // Returns true if the row was independent (rank grew).
    bool insert(const SparseRow& row);
    bool insert_dense(const QVector& row);

    // Fully reduces v against the basis; returns the residual.
    QVector reduce(const QVector& v) const;

    Subspace subspace() const;

private:
    struct Row {
        int pivot;
        std::vector<mpz_class> v;
    };
    static void make_primitive(std::vector<mpz_class>& v);
    std::size_t n_;
    std::vector<Row> rows_; // sorted by pivot column
};

QMatrix identity_matrix(std::size_t n);

std::size_t rank(const QMatrix& m);

// Exact null space basis in reduced echelon form.
Subspace kernel(const QMatrix& m);
Subspace kernel_of_sparse_rows(std::size_t cols, const std::vector<SparseRow>& rows);

// Row space of m in reduced echelon form.
Subspace row_space(const QMatrix& m);
Subspace span_of(std::size_t ambient, const std::vector<QVector>& vectors);

// Membership with certificate: coordinates on success, a separating
// functional on failure.
SpanResult in_span(const QVector& v, const Subspace& space);

// dim(space) - dim(sub); throws std::invalid_argument with a witness
// description if sub is not contained in space.
std::size_t quotient_dim(const Subspace& space, const Subspace& sub);

// Canonical representative of v modulo sub (v reduced against the basis).
QVector reduce_mod(const QVector& v, const Subspace& sub);

// One exact solution x of sum_c x[c] * columns[c] = rhs, if any.
std::optional<QVector> solve_columns(const std::vector<QVector>& columns, const QVector& rhs);

Rat dot(const QVector& a, const QVector& b);

// Accumulates linear constraint rows for the truncated solvers. A row is
// keyed by (group, slot, monomial): every distinct key is one scalar
// equation, columns are the solver unknowns. finish() drops zero rows,
// normalizes, dedupes, and returns rows in deterministic key order.
class ConstraintSink {
public:
    explicit ConstraintSink(std::size_t cols) : cols_(cols) {}

    void add(long group, long slot, const Mono& mono, std::size_t col, const Rat& c);

    // Adds every (mono over the given value poly) coefficient of `value`
    // times nothing — helper: contribution of unknown `col` equal to
    // `value` inside constraint `group`/`slot`.
    void add_poly(long group, long slot, const Poly& value, std::size_t col);

    std::size_t cols() const { return cols_; }
    std::vector<SparseRow> finish() const;

private:
    using Key = std::tuple<long, long, Mono>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
            if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
            return MonoLess{}(std::get<2>(a), std::get<2>(b));
        }
    };
    std::size_t cols_;
    std::map<Key, std::map<int, Rat>, KeyLess> rows_;
};

} // namespace lca

#endif
