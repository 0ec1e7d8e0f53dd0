#pragma once

// Sparse row echelon forms over QScalar or ModScalar. Columns are integers;
// the pivot of a row is its largest column.

#include <map>
#include <vector>

#include "qqinv/qfield.hpp"

namespace qqinv {

template <class F>
using SparseVec = std::map<int, F>;

template <class F>
void add_entry(SparseVec<F>& y, int c, const F& v) {
    if (v.is_zero()) return;
    auto it = y.find(c);
    if (it == y.end()) {
        y.emplace(c, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) y.erase(it);
}

template <class F>
void axpy(SparseVec<F>& y, const F& a, const SparseVec<F>& x) {
    for (const auto& [c, v] : x) {
        auto it = y.find(c);
        if (it == y.end()) {
            y.emplace(c, a * v);
            continue;
        }
        it->second += a * v;
        if (it->second.is_zero()) y.erase(it);
    }
}

template <class F>
class SparseRREF {
public:
    /// Adds a row to the span; returns true when the rank grew.
    bool insert(SparseVec<F> row) {
        while (!row.empty()) {
            const int p = row.rbegin()->first;
            auto it = rows_.find(p);
            if (it == rows_.end()) break;
            const F c = -row.rbegin()->second;
            axpy(row, c, it->second);
            row.erase(p);
        }
        if (row.empty()) return false;
        const F inv = row.rbegin()->second.inverse();
        if (!inv.is_one())
            for (auto& [c, v] : row) v *= inv;
        rows_.emplace(row.rbegin()->first, std::move(row));
        reduced_ = false;
        return true;
    }

    /// Eliminates every pivot column from all other rows.
    void back_substitute() {
        if (reduced_) return;
        for (auto& [p, row] : rows_) {
            std::vector<int> hits;
            for (const auto& [c, v] : row)
                if (c != p && rows_.count(c)) hits.push_back(c);
            for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
                auto f = row.find(*it);
                if (f == row.end()) continue;
                const F c = -f->second;
                axpy(row, c, rows_.at(*it));
                row.erase(*it);
            }
        }
        reduced_ = true;
    }

    /// Remainder of v modulo the span; requires back_substitute().
    SparseVec<F> reduce(const SparseVec<F>& v) const {
        SparseVec<F> out = v;
        for (const auto& [c, x] : v) {
            auto it = rows_.find(c);
            if (it == rows_.end()) continue;
            auto f = out.find(c);
            if (f == out.end()) continue;
            const F a = -f->second;
            axpy(out, a, it->second);
            out.erase(c);
        }
        return out;
    }

    /// True when v lies in the span (does not need back substitution).
    bool contains(SparseVec<F> v) const {
        while (!v.empty()) {
            const int p = v.rbegin()->first;
            auto it = rows_.find(p);
            if (it == rows_.end()) return false;
            const F c = -v.rbegin()->second;
            axpy(v, c, it->second);
            v.erase(p);
        }
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(int c) const { return rows_.count(c) != 0; }
    const std::map<int, SparseVec<F>>& rows() const { return rows_; }
    bool reduced() const { return reduced_; }

    friend bool operator==(const SparseRREF& a, const SparseRREF& b) { return a.rows_ == b.rows_; }

private:
    std::map<int, SparseVec<F>> rows_;
    bool reduced_ = true;
};

/// Basis of the nullspace of the linear map whose rows are given, over
/// columns 0..ncols-1. Vectors are returned with a free-variable 1.
inline std::vector<SparseVec<QScalar>> nullspace(const std::vector<SparseVec<QScalar>>& rows, int ncols) {
    using F = QScalar;
    SparseRREF<F> e;
    for (const auto& r : rows) e.insert(r);
    e.back_substitute();
    std::vector<SparseVec<F>> out;
    for (int c = 0; c < ncols; ++c) {
        if (e.is_pivot(c)) continue;
        SparseVec<F> v;
        v.emplace(c, F(1));
        for (const auto& [p, row] : e.rows()) {
            auto it = row.find(c);
            if (it != row.end()) v.emplace(p, -it->second);
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace qqinv
