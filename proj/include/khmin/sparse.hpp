#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "khmin/rational.hpp"

namespace khmin {

// Sparse matrix over Q. Rows are kept as ordered column->value maps; a column
// index mirrors which rows touch each column so elimination can walk both
// directions. No zero entry is ever stored.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows), col_rows_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rational& v) {
        check(r, c);
        auto& row = row_[r];
        auto it = row.find(c);
        if (is_zero(v)) {
            if (it != row.end()) {
                row.erase(it);
                col_rows_[c].erase(r);
            }
            return;
        }
        if (it == row.end()) {
            row.emplace(c, v);
            col_rows_[c].insert(r);
        } else {
            it->second = v;
        }
    }

    void add(int r, int c, const Rational& v) {
        if (is_zero(v)) return;
        check(r, c);
        auto& row = row_[r];
        auto it = row.find(c);
        if (it == row.end()) {
            row.emplace(c, v);
            col_rows_[c].insert(r);
        } else {
            it->second += v;
            if (is_zero(it->second)) {
                row.erase(it);
                col_rows_[c].erase(r);
            }
        }
    }

    Rational get(int r, int c) const {
        check(r, c);
        auto it = row_[r].find(c);
        return it == row_[r].end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& row(int r) const { return row_[r]; }
    const std::set<int>& rows_in_col(int c) const { return col_rows_[c]; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : row_) n += r.size();
        return n;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : row_[r]) t.set(c, r, v);
        return t;
    }

    SparseMatrix operator*(const SparseMatrix& other) const {
        if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
        SparseMatrix out(rows_, other.cols_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [k, v] : row_[r])
                for (const auto& [c, w] : other.row_[k]) out.add(r, c, v * w);
        return out;
    }

    bool operator==(const SparseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && row_ == other.row_;
    }

    bool is_zero_matrix() const {
        for (const auto& r : row_)
            if (!r.empty()) return false;
        return true;
    }

    // Exact rank over Q. Destructive elimination on a working copy; pivots are
    // chosen by the Markowitz rule (minimal (row_weight-1)*(col_weight-1)),
    // ties broken toward sparser rows, which keeps fill-in low on the very
    // sparse matrices coming out of cube complexes.
    int rank() const {
        SparseMatrix work(*this);
        int rank = 0;
        std::vector<bool> row_done(rows_, false), col_done(cols_, false);
        while (true) {
            int best_r = -1, best_c = -1;
            long best_cost = -1;
            std::size_t best_row_weight = 0;
            for (int r = 0; r < work.rows_; ++r) {
                if (row_done[r] || work.row_[r].empty()) continue;
                const std::size_t rw = work.row_[r].size();
                for (const auto& [c, v] : work.row_[r]) {
                    (void)v;
                    const std::size_t cw = work.col_rows_[c].size();
                    const long cost = static_cast<long>(rw - 1) * static_cast<long>(cw - 1);
                    if (best_cost < 0 || cost < best_cost ||
                        (cost == best_cost && rw < best_row_weight)) {
                        best_cost = cost;
                        best_row_weight = rw;
                        best_r = r;
                        best_c = c;
                        if (cost == 0) break;
                    }
                }
                if (best_cost == 0) break;
            }
            if (best_r < 0) break;
            work.eliminate_pivot(best_r, best_c);
            row_done[best_r] = true;
            col_done[best_c] = true;
            ++rank;
        }
        return rank;
    }

    // dim ker = cols - rank
    int nullity() const { return cols_ - rank(); }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
    }

    void eliminate_pivot(int pr, int pc) {
        const Rational pivot = row_[pr].at(pc);
        const std::vector<int> hit(col_rows_[pc].begin(), col_rows_[pc].end());
        for (int r : hit) {
            if (r == pr) continue;
            const Rational factor = row_[r].at(pc) / pivot;
            for (const auto& [c, v] : row_[pr]) add(r, c, -factor * v);
        }
        // clear pivot row and column so they are never revisited
        const std::vector<std::pair<int, Rational>> prow(row_[pr].begin(), row_[pr].end());
        for (const auto& [c, v] : prow) {
            (void)v;
            set(pr, c, Rational(0));
        }
        const std::vector<int> pcol(col_rows_[pc].begin(), col_rows_[pc].end());
        for (int r : pcol) set(r, pc, Rational(0));
    }

    int rows_ = 0, cols_ = 0;
    std::vector<std::map<int, Rational>> row_;
    std::vector<std::set<int>> col_rows_;
};

}  // namespace khmin
