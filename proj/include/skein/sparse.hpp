#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace skein {

// Sparse vector: entries sorted by index, no stored zeros.
template <class F>
struct SparseVec {
    std::vector<std::pair<int, F>> ent;

    SparseVec() = default;

    static SparseVec unit(int i, F c = F::one()) {
        SparseVec v;
        if (!c.is_zero()) v.ent.push_back({i, c});
        return v;
    }

    bool is_zero() const { return ent.empty(); }
    int nnz() const { return static_cast<int>(ent.size()); }

    F at(int i) const {
        auto it = std::lower_bound(ent.begin(), ent.end(), i,
                                   [](const auto& e, int k) { return e.first < k; });
        return (it != ent.end() && it->first == i) ? it->second : F::zero();
    }

    void set(int i, F c) {
        auto it = std::lower_bound(ent.begin(), ent.end(), i,
                                   [](const auto& e, int k) { return e.first < k; });
        if (it != ent.end() && it->first == i) {
            if (c.is_zero()) ent.erase(it);
            else it->second = c;
        } else if (!c.is_zero()) {
            ent.insert(it, {i, c});
        }
    }

    // this += c * o
    void axpy(F c, const SparseVec& o) {
        if (c.is_zero() || o.ent.empty()) return;
        std::vector<std::pair<int, F>> out;
        out.reserve(ent.size() + o.ent.size());
        size_t i = 0, j = 0;
        while (i < ent.size() || j < o.ent.size()) {
            if (j == o.ent.size() || (i < ent.size() && ent[i].first < o.ent[j].first)) {
                out.push_back(ent[i++]);
            } else if (i == ent.size() || o.ent[j].first < ent[i].first) {
                F val = c * o.ent[j].second;
                if (!val.is_zero()) out.push_back({o.ent[j].first, val});
                ++j;
            } else {
                F val = ent[i].second + c * o.ent[j].second;
                if (!val.is_zero()) out.push_back({ent[i].first, val});
                ++i;
                ++j;
            }
        }
        ent = std::move(out);
    }

    void scale(F c) {
        if (c.is_zero()) {
            ent.clear();
            return;
        }
        for (auto& e : ent) e.second = e.second * c;
    }

    SparseVec remapped(const std::vector<int>& index_map) const {
        SparseVec out;
        out.ent.reserve(ent.size());
        for (const auto& [i, c] : ent) out.ent.push_back({index_map[i], c});
        std::sort(out.ent.begin(), out.ent.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    bool operator==(const SparseVec& o) const { return ent == o.ent; }
};

template <class F>
F dot(const SparseVec<F>& a, const SparseVec<F>& b) {
    F acc = F::zero();
    size_t i = 0, j = 0;
    while (i < a.ent.size() && j < b.ent.size()) {
        if (a.ent[i].first < b.ent[j].first) ++i;
        else if (b.ent[j].first < a.ent[i].first) ++j;
        else acc = acc + a.ent[i++].second * b.ent[j++].second;
    }
    return acc;
}

// Row-major sparse matrix over an exact field. Rows index the target,
// columns the source: (A*x)[r] = sum_c A[r][c] x[c].
template <class F>
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row_[i].ent.push_back({i, F::one()});
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const SparseVec<F>& row(int r) const { return row_[r]; }
    SparseVec<F>& row_mut(int r) { return row_[r]; }

    F at(int r, int c) const { return row_[r].at(c); }
    void set(int r, int c, F v) { row_[r].set(c, v); }
    void add(int r, int c, F v) { row_[r].set(c, row_[r].at(c) + v); }

    bool is_zero() const {
        for (const auto& r : row_)
            if (!r.ent.empty()) return false;
        return true;
    }

    int nnz() const {
        int n = 0;
        for (const auto& r : row_) n += r.nnz();
        return n;
    }

    SparseVec<F> apply(const SparseVec<F>& x) const {
        // Column-oriented accumulation over the entries of x.
        SparseVec<F> acc;
        for (const auto& [c, v] : x.ent) acc.axpy(v, column(c));
        return acc;
    }

    SparseVec<F> column(int c) const {
        SparseVec<F> out;
        for (int r = 0; r < rows_; ++r) {
            F v = row_[r].at(c);
            if (!v.is_zero()) out.ent.push_back({r, v});
        }
        return out;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : row_[r].ent) t.row_[c].ent.push_back({r, v});
        return t;
    }

    SparseMatrix operator*(const SparseMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("SparseMatrix: shape mismatch in product");
        SparseMatrix out(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [k, v] : row_[r].ent) out.row_[r].axpy(v, o.row_[k]);
        return out;
    }

    SparseMatrix operator+(const SparseMatrix& o) const {
        check_same_shape(o);
        SparseMatrix out = *this;
        for (int r = 0; r < rows_; ++r) out.row_[r].axpy(F::one(), o.row_[r]);
        return out;
    }

    SparseMatrix operator-(const SparseMatrix& o) const {
        check_same_shape(o);
        SparseMatrix out = *this;
        for (int r = 0; r < rows_; ++r) out.row_[r].axpy(-F::one(), o.row_[r]);
        return out;
    }

    bool operator==(const SparseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
    }

private:
    void check_same_shape(const SparseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("SparseMatrix: shape mismatch");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<SparseVec<F>> row_;
};

// Row echelon working state. Pivots are chosen by the Markowitz-style
// (row fill) * (column fill) score; exact arithmetic means any nonzero
// entry is a valid pivot.
template <class F>
struct Echelon {
    SparseMatrix<F> mat;          // row-reduced copy
    std::vector<int> pivot_col;   // per reduced row, -1 if zero row
    int rank = 0;
};

template <class F>
Echelon<F> row_reduce(SparseMatrix<F> a) {
    const int rows = a.rows(), cols = a.cols();
    Echelon<F> e;
    std::vector<bool> row_done(rows, false);
    std::vector<int> col_pivot_row(cols, -1);
    int rank = 0;
    for (;;) {
        // pick pivot among not-done rows: minimize (nnz(row)-1)*(col count-1)
        std::vector<int> col_count(cols, 0);
        for (int r = 0; r < rows; ++r)
            if (!row_done[r])
                for (const auto& [c, v] : a.row(r).ent) ++col_count[c];
        long best = -1;
        int br = -1, bc = -1;
        for (int r = 0; r < rows; ++r) {
            if (row_done[r] || a.row(r).ent.empty()) continue;
            for (const auto& [c, v] : a.row(r).ent) {
                long score = static_cast<long>(a.row(r).nnz() - 1) * (col_count[c] - 1);
                if (best < 0 || score < best || (score == best && (r < br || (r == br && c < bc)))) {
                    best = score;
                    br = r;
                    bc = c;
                }
            }
        }
        if (br < 0) break;
        F piv = a.at(br, bc);
        F inv = piv.inverse();
        a.row_mut(br).scale(inv);
        for (int r = 0; r < rows; ++r) {
            if (r == br) continue;
            F v = a.at(r, bc);
            if (!v.is_zero()) a.row_mut(r).axpy(-v, a.row(br));
        }
        row_done[br] = true;
        col_pivot_row[bc] = br;
        ++rank;
    }
    e.mat = std::move(a);
    e.rank = rank;
    e.pivot_col.assign(rows, -1);
    for (int c = 0; c < cols; ++c)
        if (col_pivot_row[c] >= 0) e.pivot_col[col_pivot_row[c]] = c;
    return e;
}

template <class F>
int rank(const SparseMatrix<F>& a) {
    return row_reduce(a).rank;
}

// Basis of ker(a) as sparse column vectors.
template <class F>
std::vector<SparseVec<F>> kernel_basis(const SparseMatrix<F>& a) {
    Echelon<F> e = row_reduce(a);
    const int cols = a.cols();
    std::vector<int> pivot_row_of_col(cols, -1);
    for (int r = 0; r < e.mat.rows(); ++r)
        if (e.pivot_col[r] >= 0) pivot_row_of_col[e.pivot_col[r]] = r;
    std::vector<SparseVec<F>> out;
    for (int c = 0; c < cols; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        SparseVec<F> v = SparseVec<F>::unit(c);
        for (int r = 0; r < e.mat.rows(); ++r) {
            if (e.pivot_col[r] < 0) continue;
            F coef = e.mat.at(r, c);
            if (!coef.is_zero()) v.set(e.pivot_col[r], -coef);
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Solves A x = b if consistent; returns false otherwise.
template <class F>
bool solve(const SparseMatrix<F>& a, const SparseVec<F>& b, SparseVec<F>& x_out) {
    // Augment and reduce.
    SparseMatrix<F> aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        aug.row_mut(r) = a.row(r);
        F v = b.at(r);
        if (!v.is_zero()) aug.row_mut(r).ent.push_back({a.cols(), v});
    }
    Echelon<F> e = row_reduce(aug);
    SparseVec<F> x;
    for (int r = 0; r < e.mat.rows(); ++r) {
        if (e.pivot_col[r] < 0) continue;
        if (e.pivot_col[r] == a.cols()) return false;  // pivot in RHS column: inconsistent
        F rhs = e.mat.at(r, a.cols());
        if (!rhs.is_zero()) x.set(e.pivot_col[r], rhs);
    }
    // Free variables are set to zero.
    x_out = std::move(x);
    return true;
}

}  // namespace skein
