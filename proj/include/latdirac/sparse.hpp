#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "latdirac/errors.hpp"
#include "latdirac/rational.hpp"

namespace latdirac {

/// Sparse rational vector: (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

namespace vec {

inline Rational get(const SparseVec& v, int i) {
    auto it = std::lower_bound(v.begin(), v.end(), i,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != v.end() && it->first == i) return it->second;
    return Rational();
}

/// out = a + c*b, merged in index order. Zero results dropped.
inline SparseVec add_scaled(const SparseVec& a, const Rational& c, const SparseVec& b) {
    if (c.is_zero()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational val = c * b[j].second;
            if (!val.is_zero()) out.emplace_back(b[j].first, val);
            ++j;
        } else {
            Rational val = a[i].second + c * b[j].second;
            if (!val.is_zero()) out.emplace_back(a[i].first, val);
            ++i, ++j;
        }
    }
    return out;
}

inline void scale(SparseVec& v, const Rational& c) {
    if (c.is_zero()) {
        v.clear();
        return;
    }
    for (auto& [i, x] : v) x *= c;
}

/// Scale so entries are coprime integers and the first nonzero is positive.
/// Row scaling is free for anything that only cares about the row space;
/// it keeps intermediate numerators from growing during elimination.
inline void make_primitive(SparseVec& v) {
    if (v.empty()) return;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& [i, x] : v) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), x.den().get_mpz_t());
        den_lcm = l;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), x.num().get_mpz_t());
        num_gcd = g;
    }
    if (num_gcd == 0) num_gcd = 1;
    Rational c{mpq_class(den_lcm, num_gcd)}; // positive by construction
    if (v.front().second.sgn() < 0) c = -c;
    scale(v, c);
}

inline Rational dot(const SparseVec& a, const SparseVec& b) {
    Rational r;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) ++i;
        else if (b[j].first < a[i].first) ++j;
        else r += a[i++].second * b[j++].second;
    }
    return r;
}

inline SparseVec from_entries(std::vector<std::pair<int, Rational>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
    SparseVec out;
    for (auto& [i, x] : entries) {
        if (!out.empty() && out.back().first == i) out.back().second += x;
        else out.emplace_back(i, x);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& p) { return p.second.is_zero(); }),
              out.end());
    return out;
}

} // namespace vec

/// Sparse rational matrix. Rows hold sorted (col, value) pairs; explicit
/// zeros are never stored and indices are range-checked on access.
class SparseMatrix {
  public:
    SparseMatrix() : nr_(0), nc_(0) {}
    SparseMatrix(int nrows, int ncols) : nr_(nrows), nc_(ncols), rows_(nrows) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.rows_[i].emplace_back(i, rat(1));
        return m;
    }

    int nrows() const { return nr_; }
    int ncols() const { return nc_; }

    const SparseVec& row(int i) const { return rows_.at(i); }

    Rational get(int i, int j) const {
        check(i, j);
        return vec::get(rows_[i], j);
    }

    void set(int i, int j, const Rational& v) {
        check(i, j);
        auto& r = rows_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const auto& p, int k) { return p.first < k; });
        if (it != r.end() && it->first == j) {
            if (v.is_zero()) r.erase(it);
            else it->second = v;
        } else if (!v.is_zero()) {
            r.insert(it, {j, v});
        }
    }

    void add(int i, int j, const Rational& v) {
        if (v.is_zero()) return;
        check(i, j);
        auto& r = rows_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const auto& p, int k) { return p.first < k; });
        if (it != r.end() && it->first == j) {
            it->second += v;
            if (it->second.is_zero()) r.erase(it);
        } else {
            r.insert(it, {j, v});
        }
    }

    void set_row(int i, SparseVec r) {
        rows_.at(i) = std::move(r);
    }

    size_t nnz() const {
        size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(nc_, nr_);
        for (int i = 0; i < nr_; ++i)
            for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace_back(i, v);
        return t;
    }

    SparseMatrix mul(const SparseMatrix& o) const {
        if (nc_ != o.nr_) throw DimensionMismatch("matrix product shape");
        SparseMatrix out(nr_, o.nc_);
        for (int i = 0; i < nr_; ++i) {
            std::map<int, Rational> acc;
            for (const auto& [k, v] : rows_[i])
                for (const auto& [j, w] : o.rows_[k]) acc[j] += v * w;
            SparseVec r;
            for (auto& [j, v] : acc)
                if (!v.is_zero()) r.emplace_back(j, v);
            out.rows_[i] = std::move(r);
        }
        return out;
    }

    SparseVec apply(const SparseVec& x) const {
        std::map<int, Rational> acc;
        for (int i = 0; i < nr_; ++i) {
            Rational v = vec::dot(rows_[i], x);
            if (!v.is_zero()) acc[i] = v;
        }
        SparseVec out;
        for (auto& [i, v] : acc) out.emplace_back(i, v);
        return out;
    }

    bool operator==(const SparseMatrix& o) const {
        return nr_ == o.nr_ && nc_ == o.nc_ && rows_ == o.rows_;
    }

  private:
    void check(int i, int j) const {
        if (i < 0 || i >= nr_ || j < 0 || j >= nc_)
            throw DimensionMismatch("matrix index out of range");
    }

    int nr_, nc_;
    std::vector<SparseVec> rows_;

    friend struct EchelonForm;
};

/// Row-echelon reduction with the fixed pivot rule: the lowest-index
/// still-active row wins, and within it the lowest-index eligible column.
/// Rows are rescaled to primitive integer vectors after every update
/// (fraction-free elimination with content reduction), which keeps
/// intermediate numerators bounded by minor growth.
struct EchelonForm {
    std::vector<SparseVec> rows;            // working rows, original order
    std::vector<std::pair<int, int>> pivots; // (row, col) in pivot order
    int ncols = 0;
    int pivot_limit = 0; // columns >= limit are carried along, never pivoted

    static EchelonForm compute(const SparseMatrix& m, int pivot_limit = -1) {
        return compute(std::vector<SparseVec>(m.rows_.begin(), m.rows_.end()), m.ncols(),
                       pivot_limit);
    }

    static EchelonForm compute(std::vector<SparseVec> rows, int ncols, int pivot_limit = -1) {
        EchelonForm e;
        e.rows = std::move(rows);
        e.ncols = ncols;
        e.pivot_limit = pivot_limit < 0 ? ncols : pivot_limit;
        const int n = static_cast<int>(e.rows.size());
        std::vector<bool> done(n, false);
        for (auto& r : e.rows) vec::make_primitive(r);
        while (true) {
            int pr = -1, pc = -1;
            for (int i = 0; i < n; ++i) {
                if (done[i] || e.rows[i].empty()) continue;
                int c = e.rows[i].front().first;
                if (c >= e.pivot_limit) continue;
                pr = i;
                pc = c;
                break;
            }
            if (pr < 0) break;
            done[pr] = true;
            e.pivots.emplace_back(pr, pc);
            const Rational piv = vec::get(e.rows[pr], pc);
            for (int i = 0; i < n; ++i) {
                if (i == pr || done[i]) continue;
                Rational x = vec::get(e.rows[i], pc);
                if (x.is_zero()) continue;
                e.rows[i] = vec::add_scaled(e.rows[i], -(x / piv), e.rows[pr]);
                vec::make_primitive(e.rows[i]);
            }
        }
        return e;
    }

    int rank() const { return static_cast<int>(pivots.size()); }

    /// Back-eliminate so each pivot column is 1 at its pivot and 0 elsewhere.
    void reduce() {
        for (auto& [r, c] : pivots) {
            Rational piv = vec::get(rows[r], c);
            vec::scale(rows[r], rat(1) / piv);
        }
        // pivots processed right-to-left by column
        auto order = pivots;
        std::sort(order.begin(), order.end(),
                  [](const auto& a, const auto& b) { return a.second > b.second; });
        for (const auto& [r, c] : order) {
            for (auto& [r2, c2] : pivots) {
                if (r2 == r) continue;
                Rational x = vec::get(rows[r2], c);
                if (x.is_zero()) continue;
                rows[r2] = vec::add_scaled(rows[r2], -x, rows[r]);
            }
        }
    }
};

inline int rank(const SparseMatrix& m) { return EchelonForm::compute(m).rank(); }

/// Basis of the right null space, canonical: the reduced-echelon basis in
/// which each free column carries a unit entry.
inline std::vector<SparseVec> nullspace(const SparseMatrix& m) {
    EchelonForm e = EchelonForm::compute(m);
    e.reduce();
    std::vector<std::pair<int, int>> piv = e.pivots; // sort by column
    std::sort(piv.begin(), piv.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<bool> is_pivot_col(m.ncols(), false);
    for (const auto& [r, c] : piv) is_pivot_col[c] = true;
    std::vector<SparseVec> basis;
    for (int f = 0; f < m.ncols(); ++f) {
        if (is_pivot_col[f]) continue;
        std::vector<std::pair<int, Rational>> entries;
        entries.emplace_back(f, rat(1));
        for (const auto& [r, c] : piv) {
            Rational x = vec::get(e.rows[r], f);
            if (!x.is_zero()) entries.emplace_back(c, -x);
        }
        basis.push_back(vec::from_entries(std::move(entries)));
    }
    return basis;
}

/// Null space computed with a caller-chosen column priority: columns earlier
/// in `order` are preferred as pivots, so basis vectors carry their unit
/// entries on the *latest*-priority columns. Used to canonicalize constraint
/// combinations so derived constraints keep the unit coefficient.
inline std::vector<SparseVec> nullspace_with_priority(const SparseMatrix& m,
                                                      const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != m.ncols())
        throw DimensionMismatch("column priority size");
    std::vector<int> inv(order.size());
    for (size_t k = 0; k < order.size(); ++k) inv[order[k]] = static_cast<int>(k);
    SparseMatrix p(m.nrows(), m.ncols());
    for (int i = 0; i < m.nrows(); ++i) {
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [j, v] : m.row(i)) entries.emplace_back(inv[j], v);
        p.set_row(i, vec::from_entries(std::move(entries)));
    }
    auto permuted = nullspace(p);
    std::vector<SparseVec> out;
    for (const auto& b : permuted) {
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [j, v] : b) entries.emplace_back(order[j], v);
        out.push_back(vec::from_entries(std::move(entries)));
    }
    return out;
}

namespace detail {

/// Connected components of the nonzero pattern (row index i ~ column index j
/// for every stored entry), for block-diagonal splitting.
inline std::vector<int> pattern_components(const SparseMatrix& m) {
    const int n = m.nrows();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < n; ++i)
        for (const auto& [j, v] : m.row(i)) {
            if (j >= n) continue;
            int a = find(i), b = find(j);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = find(i);
    return comp;
}

} // namespace detail

/// Exact inverse. The pattern is split into connected components first, so a
/// block-diagonal matrix (the usual shape of per-site bracket blocks) costs
/// one small elimination per block.
inline SparseMatrix invert(const SparseMatrix& m) {
    if (m.nrows() != m.ncols()) throw SingularMatrix("inverse of non-square matrix");
    const int n = m.nrows();
    auto comp = detail::pattern_components(m);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[comp[i]].push_back(i);
    SparseMatrix out(n, n);
    for (const auto& [root, idx] : groups) {
        const int k = static_cast<int>(idx.size());
        std::vector<int> local(n, -1);
        for (int a = 0; a < k; ++a) local[idx[a]] = a;
        // [A | I] with pivots restricted to the A block
        std::vector<SparseVec> rows(k);
        for (int a = 0; a < k; ++a) {
            std::vector<std::pair<int, Rational>> entries;
            for (const auto& [j, v] : m.row(idx[a])) {
                if (local[j] < 0) throw SingularMatrix("inconsistent block split");
                entries.emplace_back(local[j], v);
            }
            entries.emplace_back(k + a, rat(1));
            rows[a] = vec::from_entries(std::move(entries));
        }
        EchelonForm e = EchelonForm::compute(std::move(rows), 2 * k, k);
        if (e.rank() < k) throw SingularMatrix("matrix is singular");
        e.reduce();
        for (const auto& [r, c] : e.pivots) {
            for (const auto& [j, v] : e.rows[r]) {
                if (j < k) continue;
                out.set(idx[c], idx[j - k], v);
            }
        }
    }
    return out;
}

/// True iff v is a rational combination of the given rows; decided by
/// comparing rank(rows) with rank(rows + v).
inline bool span_contains(const std::vector<SparseVec>& rows, const SparseVec& v, int dim) {
    for (const auto& r : rows)
        if (!r.empty() && r.back().first >= dim)
            throw DimensionMismatch("span row longer than dimension");
    if (!v.empty() && v.back().first >= dim) throw DimensionMismatch("vector longer than dimension");
    EchelonForm base = EchelonForm::compute(std::vector<SparseVec>(rows), dim);
    auto extended = rows;
    extended.push_back(v);
    EchelonForm ext = EchelonForm::compute(std::move(extended), dim);
    return base.rank() == ext.rank();
}

/// Canonical basis of linear dependencies among the given rows: the left
/// kernel of the stacked matrix, RREF-canonicalized.
inline std::vector<SparseVec> left_kernel(const std::vector<SparseVec>& rows, int dim) {
    const int n = static_cast<int>(rows.size());
    std::vector<SparseVec> work(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, Rational>> entries(rows[i].begin(), rows[i].end());
        entries.emplace_back(dim + i, rat(1));
        work[i] = vec::from_entries(std::move(entries));
    }
    EchelonForm e = EchelonForm::compute(std::move(work), dim + n, dim);
    std::vector<bool> pivotal(n, false);
    for (const auto& [r, c] : e.pivots) pivotal[r] = true;
    std::vector<SparseVec> deps;
    for (int i = 0; i < n; ++i) {
        if (pivotal[i]) continue;
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [j, v] : e.rows[i]) {
            if (j < dim) throw SingularMatrix("left kernel reduction incomplete");
            entries.emplace_back(j - dim, v);
        }
        deps.push_back(vec::from_entries(std::move(entries)));
    }
    // canonicalize the dependency basis itself
    EchelonForm canon = EchelonForm::compute(std::move(deps), n);
    canon.reduce();
    std::vector<SparseVec> out;
    std::vector<std::pair<int, int>> piv = canon.pivots;
    std::sort(piv.begin(), piv.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (const auto& [r, c] : piv) out.push_back(canon.rows[r]);
    return out;
}

/// Incrementally maintained row space with canonical reduction. Used by the
/// consistency loop to decide "already weakly zero" exactly.
class IncrementalSpan {
  public:
    explicit IncrementalSpan(int dim) : dim_(dim) {}

    /// Reduce v against the current span. Empty result means v is contained.
    SparseVec reduce(SparseVec v) const {
        for (const auto& [c, row] : pivots_) {
            Rational x = vec::get(v, c);
            if (!x.is_zero()) v = vec::add_scaled(v, -x, row);
        }
        return v;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    /// Add v; returns the canonical residual actually inserted (leading
    /// coefficient 1), or an empty vector if v was already in the span.
    SparseVec add(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return v;
        vec::scale(v, rat(1) / v.front().second);
        pivots_[v.front().first] = v;
        return v;
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    int dim() const { return dim_; }

  private:
    int dim_;
    std::map<int, SparseVec> pivots_; // pivot col -> normalized row
};

/// Greedy deterministic selection of an index subset S of an antisymmetric
/// matrix with M[S,S] invertible and |S| = rank(M). Pairs are taken
/// first-come in index order and removed by a symplectic Schur update.
inline std::vector<int> skew_nondegenerate_subset(const SparseMatrix& m) {
    if (m.nrows() != m.ncols()) throw DimensionMismatch("skew selection needs square matrix");
    const int n = m.nrows();
    std::vector<SparseVec> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = m.row(i);
    std::vector<bool> done(n, false);
    std::vector<int> selected;
    while (true) {
        int pr = -1, pc = -1;
        for (int i = 0; i < n && pr < 0; ++i) {
            if (done[i]) continue;
            for (const auto& [j, v] : rows[i]) {
                if (done[j]) continue;
                pr = i;
                pc = j;
                break;
            }
        }
        if (pr < 0) break;
        selected.push_back(pr);
        selected.push_back(pc);
        done[pr] = done[pc] = true;
        const Rational piv = vec::get(rows[pr], pc); // M[pr,pc] != 0
        // Schur update: M'[i,j] = M[i,j] - (M[i,pc] M[pr,j] - M[i,pr] M[pc,j]) / piv
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            Rational a = vec::get(rows[i], pc); // M[i,pc]
            Rational b = vec::get(rows[i], pr); // M[i,pr]
            if (a.is_zero() && b.is_zero()) continue;
            if (!a.is_zero()) rows[i] = vec::add_scaled(rows[i], -(a / piv), rows[pr]);
            if (!b.is_zero()) rows[i] = vec::add_scaled(rows[i], b / piv, rows[pc]);
        }
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

} // namespace latdirac
