#ifndef SUPERKAC_SPARSE_HPP
#define SUPERKAC_SPARSE_HPP

#include "superkac/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superkac {

/// Sparse rational vector: (index, value) pairs, sorted by index, no explicit
/// zeros. The building block of every matrix and chain in the engine.
class SparseVector {
public:
    using Entry = std::pair<int, Rational>;

    SparseVector() = default;

    static SparseVector unit(int index) {
        SparseVector v;
        v.entries_.emplace_back(index, Rational(1));
        return v;
    }

    static SparseVector from_entries(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        SparseVector v;
        for (auto& [i, val] : entries) {
            if (val.is_zero()) continue;
            if (!v.entries_.empty() && v.entries_.back().first == i)
                throw std::invalid_argument("SparseVector: duplicate index");
            v.entries_.emplace_back(i, std::move(val));
        }
        return v;
    }

    /// from_entries variant that accumulates duplicate indices.
    static SparseVector from_entries_summed(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        SparseVector v;
        for (auto& [i, val] : entries) {
            if (!v.entries_.empty() && v.entries_.back().first == i) {
                v.entries_.back().second += val;
                if (v.entries_.back().second.is_zero()) v.entries_.pop_back();
                continue;
            }
            if (!val.is_zero()) v.entries_.emplace_back(i, std::move(val));
        }
        return v;
    }

    static SparseVector from_dense(const std::vector<Rational>& dense) {
        SparseVector v;
        for (int i = 0; i < static_cast<int>(dense.size()); ++i)
            if (!dense[i].is_zero()) v.entries_.emplace_back(i, dense[i]);
        return v;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    Rational at(int index) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                                   [](const Entry& e, int i) { return e.first < i; });
        if (it != entries_.end() && it->first == index) return it->second;
        return Rational(0);
    }

    void push_back(int index, Rational value) {
        if (value.is_zero()) return;
        if (!entries_.empty() && entries_.back().first >= index)
            throw std::invalid_argument("SparseVector: push_back out of order");
        entries_.emplace_back(index, std::move(value));
    }

    void scale(const Rational& c) {
        if (c.is_zero()) {
            entries_.clear();
            return;
        }
        for (auto& [i, v] : entries_) v *= c;
    }

    /// *this += c * other  (merge of two sorted lists)
    void axpy(const Rational& c, const SparseVector& other) {
        if (c.is_zero() || other.empty()) return;
        std::vector<Entry> out;
        out.reserve(entries_.size() + other.entries_.size());
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() || b != other.entries_.end()) {
            if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == entries_.end() || b->first < a->first) {
                Rational v = c * b->second;
                if (!v.is_zero()) out.emplace_back(b->first, std::move(v));
                ++b;
            } else {
                Rational v = a->second + c * b->second;
                if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
                ++a;
                ++b;
            }
        }
        entries_ = std::move(out);
    }

    std::vector<Rational> to_dense(int size) const {
        std::vector<Rational> d(static_cast<std::size_t>(size), Rational(0));
        for (const auto& [i, v] : entries_) {
            if (i < 0 || i >= size) throw std::out_of_range("SparseVector: index out of range");
            d[static_cast<std::size_t>(i)] = v;
        }
        return d;
    }

    /// Remaps indices through `f` (must be strictly monotone on the support).
    template <typename F>
    SparseVector remap(F&& f) const {
        SparseVector v;
        for (const auto& [i, val] : entries_) v.entries_.emplace_back(f(i), val);
        return v;
    }

    friend bool operator==(const SparseVector& a, const SparseVector& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<Entry> entries_;
};

/// Sparse matrix over the rationals, stored column-major. No stored zeros,
/// no duplicate coordinates, all indices in bounds.
class SparseRationalMatrix {
public:
    SparseRationalMatrix() : rows_(0) {}
    SparseRationalMatrix(int n_rows, int n_cols) : rows_(n_rows), cols_(static_cast<std::size_t>(n_cols)) {
        if (n_rows < 0 || n_cols < 0) throw std::invalid_argument("matrix: negative dimension");
    }

    using Triplet = std::tuple<int, int, Rational>;

    static SparseRationalMatrix from_triplets(int n_rows, int n_cols, const std::vector<Triplet>& ts) {
        SparseRationalMatrix m(n_rows, n_cols);
        std::vector<std::vector<SparseVector::Entry>> per_col(static_cast<std::size_t>(n_cols));
        for (const auto& [r, c, v] : ts) {
            if (r < 0 || r >= n_rows || c < 0 || c >= n_cols)
                throw std::out_of_range("matrix: triplet out of bounds");
            per_col[static_cast<std::size_t>(c)].emplace_back(r, v);
        }
        for (int c = 0; c < n_cols; ++c)
            m.cols_[static_cast<std::size_t>(c)] = SparseVector::from_entries(std::move(per_col[static_cast<std::size_t>(c)]));
        return m;
    }

    /// from_triplets variant that accumulates duplicate coordinates.
    static SparseRationalMatrix from_triplets_summed(int n_rows, int n_cols, const std::vector<Triplet>& ts) {
        SparseRationalMatrix m(n_rows, n_cols);
        std::vector<std::vector<SparseVector::Entry>> per_col(static_cast<std::size_t>(n_cols));
        for (const auto& [r, c, v] : ts) {
            if (r < 0 || r >= n_rows || c < 0 || c >= n_cols)
                throw std::out_of_range("matrix: triplet out of bounds");
            per_col[static_cast<std::size_t>(c)].emplace_back(r, v);
        }
        for (int c = 0; c < n_cols; ++c)
            m.cols_[static_cast<std::size_t>(c)] =
                SparseVector::from_entries_summed(std::move(per_col[static_cast<std::size_t>(c)]));
        return m;
    }

    static SparseRationalMatrix identity(int n) {
        SparseRationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.cols_[static_cast<std::size_t>(i)] = SparseVector::unit(i);
        return m;
    }

    static SparseRationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows) {
        int n_rows = static_cast<int>(rows.size());
        int n_cols = n_rows == 0 ? 0 : static_cast<int>(rows[0].size());
        SparseRationalMatrix m(n_rows, n_cols);
        for (int r = 0; r < n_rows; ++r) {
            if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != n_cols)
                throw std::invalid_argument("matrix: ragged dense input");
            for (int c = 0; c < n_cols; ++c) m.add_entry(r, c, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
        m.sort_columns();
        return m;
    }

    int n_rows() const { return rows_; }
    int n_cols() const { return static_cast<int>(cols_.size()); }

    const SparseVector& column(int c) const { return cols_.at(static_cast<std::size_t>(c)); }

    void set_column(int c, SparseVector v) {
        if (!v.empty() && v.entries().back().first >= rows_)
            throw std::out_of_range("matrix: column entry out of range");
        cols_.at(static_cast<std::size_t>(c)) = std::move(v);
    }

    void append_column(SparseVector v) {
        if (!v.empty() && v.entries().back().first >= rows_)
            throw std::out_of_range("matrix: column entry out of range");
        cols_.push_back(std::move(v));
    }

    Rational at(int r, int c) const { return column(c).at(r); }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& c : cols_) n += c.nnz();
        return n;
    }

    bool is_zero() const {
        for (const auto& c : cols_)
            if (!c.empty()) return false;
        return true;
    }

    SparseRationalMatrix transpose() const {
        std::vector<Triplet> ts;
        ts.reserve(nnz());
        for (int c = 0; c < n_cols(); ++c)
            for (const auto& [r, v] : column(c).entries()) ts.emplace_back(c, r, v);
        return from_triplets(n_cols(), rows_, ts);
    }

    SparseVector apply(const SparseVector& x) const {
        SparseVector y;
        for (const auto& [c, v] : x.entries()) {
            if (c < 0 || c >= n_cols()) throw std::out_of_range("matrix: apply out of range");
            y.axpy(v, column(c));
        }
        return y;
    }

    friend SparseRationalMatrix operator*(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
        if (a.n_cols() != b.n_rows()) throw std::invalid_argument("matrix: product shape mismatch");
        SparseRationalMatrix m(a.rows_, b.n_cols());
        for (int c = 0; c < b.n_cols(); ++c) m.cols_[static_cast<std::size_t>(c)] = a.apply(b.column(c));
        return m;
    }

    friend SparseRationalMatrix operator+(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.n_cols() != b.n_cols())
            throw std::invalid_argument("matrix: sum shape mismatch");
        SparseRationalMatrix m = a;
        for (int c = 0; c < b.n_cols(); ++c) m.cols_[static_cast<std::size_t>(c)].axpy(Rational(1), b.column(c));
        return m;
    }

    friend SparseRationalMatrix operator-(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.n_cols() != b.n_cols())
            throw std::invalid_argument("matrix: difference shape mismatch");
        SparseRationalMatrix m = a;
        for (int c = 0; c < b.n_cols(); ++c) m.cols_[static_cast<std::size_t>(c)].axpy(Rational(-1), b.column(c));
        return m;
    }

    SparseRationalMatrix scaled(const Rational& c) const {
        SparseRationalMatrix m = *this;
        for (auto& col : m.cols_) col.scale(c);
        return m;
    }

    friend bool operator==(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_;
    }

private:
    void add_entry(int r, int c, const Rational& v) {
        if (v.is_zero()) return;
        pending_.emplace_back(r, c, v);
    }
    void sort_columns() {
        std::vector<std::vector<SparseVector::Entry>> per_col(cols_.size());
        for (auto& [r, c, v] : pending_) per_col[static_cast<std::size_t>(c)].emplace_back(r, std::move(v));
        pending_.clear();
        for (std::size_t c = 0; c < cols_.size(); ++c) cols_[c] = SparseVector::from_entries(std::move(per_col[c]));
    }

    int rows_;
    std::vector<SparseVector> cols_;
    std::vector<Triplet> pending_;
};

} // namespace superkac

#endif
