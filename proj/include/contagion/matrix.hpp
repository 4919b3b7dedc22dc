#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "contagion/types.hpp"

namespace contagion {

// Symmetric non-negative contact matrix. Off-diagonal entries are stored
// sparsely per row (both directions, sorted by column); the diagonal holds
// the per-individual recover coefficient (0 once dead).
class ContactMatrix {
public:
    struct Entry {
        std::uint32_t col;
        double w;
    };

    ContactMatrix() = default;
    explicit ContactMatrix(std::uint32_t n) : diag_(n, 0.0), rows_(n) {}

    std::uint32_t order() const { return static_cast<std::uint32_t>(diag_.size()); }

    double diagonal(std::uint32_t i) const { return diag_[i]; }
    void set_diagonal(std::uint32_t i, double v) { diag_[i] = v; }

    const std::vector<Entry>& row(std::uint32_t i) const { return rows_[i]; }

    double at(std::uint32_t i, std::uint32_t j) const {
        if (i == j) return diag_[i];
        const auto& r = rows_[i];
        auto it = lower_bound(r, j);
        return (it != r.end() && it->col == j) ? it->w : 0.0;
    }

    // Sets both (i,j) and (j,i); w == 0 removes the entry.
    void set(std::uint32_t i, std::uint32_t j, double w) {
        if (i == j) {
            diag_[i] = w;
            return;
        }
        set_half(i, j, w);
        set_half(j, i, w);
    }

    std::size_t degree(std::uint32_t i) const { return rows_[i].size(); }

    std::size_t edge_count() const {
        std::size_t half = 0;
        for (const auto& r : rows_) half += r.size();
        return half / 2;
    }

    // y = A x. Output distinct from input.
    void multiply(const std::vector<double>& x, std::vector<double>& y) const {
        const std::uint32_t n = order();
        if (x.size() != n) throw ConfigError("matrix/vector dimension mismatch");
        y.assign(n, 0.0);
        for (std::uint32_t i = 0; i < n; ++i) {
            double acc = diag_[i] * x[i];
            for (const Entry& e : rows_[i]) acc += e.w * x[e.col];
            y[i] = acc;
        }
    }

    double max_row_sum() const {
        double best = 0.0;
        for (std::uint32_t i = 0; i < order(); ++i) {
            double s = diag_[i];
            for (const Entry& e : rows_[i]) s += e.w;
            if (s > best) best = s;
        }
        return best;
    }

    // Clears row i and column i including the diagonal (dead individuals).
    void zero_row_col(std::uint32_t i) {
        diag_[i] = 0.0;
        for (const Entry& e : rows_[i]) erase_half(e.col, i);
        rows_[i].clear();
    }

    // Removes the off-diagonal row/column of i, returning the removed
    // entries (quarantine keeps the diagonal so the isolated still decay).
    std::vector<Entry> detach_off_diagonal(std::uint32_t i) {
        std::vector<Entry> out = std::move(rows_[i]);
        rows_[i].clear();
        for (const Entry& e : out) erase_half(e.col, i);
        return out;
    }

    void scale_off_diagonal(double f) {
        for (auto& r : rows_)
            for (Entry& e : r) e.w *= f;
    }

    bool symmetric() const {
        for (std::uint32_t i = 0; i < order(); ++i)
            for (const Entry& e : rows_[i])
                if (at(e.col, i) != e.w) return false;
        return true;
    }

    bool non_negative() const {
        for (double d : diag_)
            if (d < 0.0) return false;
        for (const auto& r : rows_)
            for (const Entry& e : r)
                if (e.w < 0.0) return false;
        return true;
    }

    bool operator==(const ContactMatrix& o) const {
        if (diag_ != o.diag_) return false;
        for (std::uint32_t i = 0; i < order(); ++i) {
            if (rows_[i].size() != o.rows_[i].size()) return false;
            for (std::size_t k = 0; k < rows_[i].size(); ++k)
                if (rows_[i][k].col != o.rows_[i][k].col ||
                    rows_[i][k].w != o.rows_[i][k].w)
                    return false;
        }
        return true;
    }

private:
    static std::vector<Entry>::const_iterator lower_bound(
        const std::vector<Entry>& r, std::uint32_t j) {
        std::size_t lo = 0, hi = r.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (r[mid].col < j)
                lo = mid + 1;
            else
                hi = mid;
        }
        return r.begin() + static_cast<std::ptrdiff_t>(lo);
    }

    void set_half(std::uint32_t i, std::uint32_t j, double w) {
        auto& r = rows_[i];
        auto it = r.begin() + (lower_bound(r, j) - r.cbegin());
        if (it != r.end() && it->col == j) {
            if (w == 0.0)
                r.erase(it);
            else
                it->w = w;
        } else if (w != 0.0) {
            r.insert(it, Entry{j, w});
        }
    }

    void erase_half(std::uint32_t i, std::uint32_t j) {
        auto& r = rows_[i];
        auto it = r.begin() + (lower_bound(r, j) - r.cbegin());
        if (it != r.end() && it->col == j) r.erase(it);
    }

    std::vector<double> diag_;
    std::vector<std::vector<Entry>> rows_;
};

}  // namespace contagion
