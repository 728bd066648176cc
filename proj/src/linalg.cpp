#include "lca/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lca {

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("QMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QVector QMatrix::row(std::size_t r) const {
    QVector out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = at(r, j);
    return out;
}

QVector QMatrix::apply(const QVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("QMatrix::apply: size mismatch");
    QVector out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * x[j];
    return out;
}

QMatrix identity_matrix(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

void EchelonBasis::make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) {
        if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g == 0) return;
    int lead_sign = 0;
    for (const auto& x : v) {
        if (x != 0) {
            lead_sign = sgn(x);
            break;
        }
    }
    if (lead_sign < 0) g = -g;
    if (g != 1)
        for (auto& x : v)
            if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

bool EchelonBasis::insert(const SparseRow& row) {
    // Clear denominators into a dense integer row.
    mpz_class lcm = 1;
    for (const auto& [c, q] : row)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> w(n_, mpz_class(0));
    for (const auto& [c, q] : row) {
        if (c < 0 || static_cast<std::size_t>(c) >= n_)
            throw std::invalid_argument("EchelonBasis: column out of range");
        w[c] = q.get_num() * (lcm / q.get_den());
    }

    // Forward reduction against existing pivot rows; the content is
    // divided out periodically to keep the cross-multiplication factors
    // from compounding.
    int steps = 0;
    for (const auto& r : rows_) {
        const mpz_class& a = w[r.pivot];
        if (a == 0) continue;
        const mpz_class& b = r.v[r.pivot];
        mpz_class f1 = b, f2 = a;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g != 0 && g != 1) {
            mpz_divexact(f1.get_mpz_t(), f1.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(f2.get_mpz_t(), f2.get_mpz_t(), g.get_mpz_t());
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (r.v[j] == 0) {
                if (f1 != 1) w[j] *= f1;
            } else {
                w[j] = w[j] * f1 - r.v[j] * f2;
            }
        }
        if (++steps % 16 == 0) make_primitive(w);
    }
    make_primitive(w);

    int pivot = -1;
    for (std::size_t j = 0; j < n_; ++j) {
        if (w[j] != 0) {
            pivot = static_cast<int>(j);
            break;
        }
    }
    if (pivot < 0) return false;

    // Back-reduce existing rows so the basis stays fully reduced.
    for (auto& r : rows_) {
        const mpz_class& a = r.v[pivot];
        if (a == 0) continue;
        const mpz_class& b = w[pivot];
        mpz_class f1 = b, f2 = a;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g != 0 && g != 1) {
            mpz_divexact(f1.get_mpz_t(), f1.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(f2.get_mpz_t(), f2.get_mpz_t(), g.get_mpz_t());
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (w[j] == 0) {
                if (f1 != 1) r.v[j] *= f1;
            } else {
                r.v[j] = r.v[j] * f1 - w[j] * f2;
            }
        }
        make_primitive(r.v);
    }

    Row nr{pivot, std::move(w)};
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                [](const Row& r, int p) { return r.pivot < p; });
    rows_.insert(pos, std::move(nr));
    return true;
}

bool EchelonBasis::insert_dense(const QVector& row) {
    SparseRow s;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) s.emplace_back(static_cast<int>(j), row[j]);
    if (row.size() != n_) throw std::invalid_argument("EchelonBasis: dimension mismatch");
    return insert(s);
}

QVector EchelonBasis::reduce(const QVector& v) const {
    if (v.size() != n_) throw std::invalid_argument("EchelonBasis::reduce: dimension mismatch");
    QVector w = v;
    for (const auto& r : rows_) {
        if (w[r.pivot] == 0) continue;
        Rat f = w[r.pivot] / Rat(r.v[r.pivot]);
        for (std::size_t j = 0; j < n_; ++j)
            if (r.v[j] != 0) w[j] -= f * Rat(r.v[j]);
    }
    return w;
}

Subspace EchelonBasis::subspace() const {
    Subspace s;
    s.ambient = n_;
    s.basis.reserve(rows_.size());
    for (const auto& r : rows_) {
        QVector q(n_, Rat(0));
        Rat inv = Rat(1) / Rat(r.v[r.pivot]);
        for (std::size_t j = 0; j < n_; ++j)
            if (r.v[j] != 0) q[j] = Rat(r.v[j]) * inv;
        s.basis.push_back(std::move(q));
    }
    return s;
}

std::size_t rank(const QMatrix& m) {
    EchelonBasis eb(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) eb.insert_dense(m.row(i));
    return eb.rank();
}

namespace {

// Pivot columns of an RREF basis (pivot = first nonzero of each row).
std::vector<int> pivot_columns(const Subspace& s) {
    std::vector<int> pivots;
    for (const auto& row : s.basis) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] != 0) {
                pivots.push_back(static_cast<int>(j));
                break;
            }
        }
    }
    return pivots;
}

Subspace kernel_from_echelon(std::size_t cols, const EchelonBasis& eb) {
    Subspace rs = eb.subspace();
    std::vector<int> pivots = pivot_columns(rs);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;

    EchelonBasis keb(cols);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector k(cols, Rat(0));
        k[f] = Rat(1);
        for (std::size_t i = 0; i < rs.basis.size(); ++i)
            k[pivots[i]] = -rs.basis[i][f];
        keb.insert_dense(k);
    }
    return keb.subspace();
}

} // namespace

Subspace kernel(const QMatrix& m) {
    EchelonBasis eb(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) eb.insert_dense(m.row(i));
    return kernel_from_echelon(m.cols(), eb);
}

Subspace kernel_of_sparse_rows(std::size_t cols, const std::vector<SparseRow>& rows) {
    EchelonBasis eb(cols);
    for (const auto& r : rows) eb.insert(r);
    return kernel_from_echelon(cols, eb);
}

Subspace row_space(const QMatrix& m) {
    EchelonBasis eb(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) eb.insert_dense(m.row(i));
    return eb.subspace();
}

Subspace span_of(std::size_t ambient, const std::vector<QVector>& vectors) {
    EchelonBasis eb(ambient);
    for (const auto& v : vectors) eb.insert_dense(v);
    return eb.subspace();
}

SpanResult in_span(const QVector& v, const Subspace& space) {
    if (v.size() != space.ambient)
        throw std::invalid_argument("in_span: dimension mismatch");
    std::vector<int> pivots = pivot_columns(space);
    QVector w = v;
    QVector coords(space.dim(), Rat(0));
    for (std::size_t i = 0; i < space.basis.size(); ++i) {
        const Rat& c = w[pivots[i]];
        if (c == 0) continue;
        coords[i] = c;
        Rat f = c;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (space.basis[i][j] != 0) w[j] -= f * space.basis[i][j];
    }
    SpanResult res;
    int lead = -1;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] != 0) {
            lead = static_cast<int>(j);
            break;
        }
    }
    if (lead < 0) {
        res.member = true;
        res.coords = std::move(coords);
        return res;
    }
    res.member = false;
    // Functional vanishing on the subspace, nonzero on v: dual vector of
    // the non-pivot column `lead` w.r.t. the RREF basis.
    QVector fn(space.ambient, Rat(0));
    fn[lead] = Rat(1);
    for (std::size_t i = 0; i < space.basis.size(); ++i)
        fn[pivots[i]] = -space.basis[i][lead];
    res.functional = std::move(fn);
    return res;
}

std::size_t quotient_dim(const Subspace& space, const Subspace& sub) {
    if (space.ambient != sub.ambient)
        throw std::invalid_argument("quotient_dim: ambient dimension mismatch");
    for (std::size_t i = 0; i < sub.basis.size(); ++i) {
        SpanResult r = in_span(sub.basis[i], space);
        if (!r.member) {
            std::ostringstream os;
            os << "quotient_dim: subspace basis vector " << i
               << " is not contained in the ambient space";
            throw std::invalid_argument(os.str());
        }
    }
    return space.dim() - sub.dim();
}

QVector reduce_mod(const QVector& v, const Subspace& sub) {
    if (v.size() != sub.ambient)
        throw std::invalid_argument("reduce_mod: dimension mismatch");
    std::vector<int> pivots = pivot_columns(sub);
    QVector w = v;
    for (std::size_t i = 0; i < sub.basis.size(); ++i) {
        const Rat c = w[pivots[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (sub.basis[i][j] != 0) w[j] -= c * sub.basis[i][j];
    }
    return w;
}

std::optional<QVector> solve_columns(const std::vector<QVector>& columns, const QVector& rhs) {
    const std::size_t n = rhs.size();
    const std::size_t m = columns.size();
    QMatrix a(n, m + 1);
    for (std::size_t c = 0; c < m; ++c) {
        if (columns[c].size() != n)
            throw std::invalid_argument("solve_columns: column size mismatch");
        for (std::size_t r = 0; r < n; ++r) a.at(r, c) = columns[c][r];
    }
    for (std::size_t r = 0; r < n; ++r) a.at(r, m) = -rhs[r];
    Subspace ker = kernel(a);
    for (const auto& kv : ker.basis) {
        if (kv[m] == 0) continue;
        Rat inv = Rat(1) / kv[m];
        QVector x(m, Rat(0));
        for (std::size_t c = 0; c < m; ++c) x[c] = kv[c] * inv;
        return x;
    }
    return std::nullopt;
}

Rat dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

void ConstraintSink::add(long group, long slot, const Mono& mono, std::size_t col, const Rat& c) {
    if (c == 0) return;
    if (col >= cols_) throw std::invalid_argument("ConstraintSink: column out of range");
    auto& row = rows_[Key{group, slot, mono}];
    auto it = row.find(static_cast<int>(col));
    if (it == row.end()) {
        row.emplace(static_cast<int>(col), c);
    } else {
        it->second += c;
        if (it->second == 0) row.erase(it);
    }
}

void ConstraintSink::add_poly(long group, long slot, const Poly& value, std::size_t col) {
    for (const auto& [m, c] : value.terms()) add(group, slot, m, col, c);
}

std::vector<SparseRow> ConstraintSink::finish() const {
    // Dedupe after normalizing each row to a primitive integer vector
    // with positive leading entry; keep first occurrence in key order.
    std::set<SparseRow> seen;
    std::vector<SparseRow> out;
    for (const auto& [key, row] : rows_) {
        if (row.empty()) continue;
        mpz_class lcm = 1;
        for (const auto& [c, q] : row)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
        mpz_class gcd = 0;
        std::vector<std::pair<int, mpz_class>> ints;
        ints.reserve(row.size());
        for (const auto& [c, q] : row) {
            mpz_class z = q.get_num() * (lcm / q.get_den());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), z.get_mpz_t());
            ints.emplace_back(c, std::move(z));
        }
        if (sgn(ints.front().second) < 0) gcd = -gcd;
        SparseRow norm;
        norm.reserve(ints.size());
        for (auto& [c, z] : ints) {
            mpz_class d;
            mpz_divexact(d.get_mpz_t(), z.get_mpz_t(), gcd.get_mpz_t());
            norm.emplace_back(c, Rat(d));
        }
        if (seen.insert(norm).second) out.push_back(std::move(norm));
    }
    return out;
}

} // namespace lca
