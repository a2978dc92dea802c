#include "rpforge/smith.hpp"

#include <algorithm>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace rpforge {

namespace {

using boost::multiprecision::abs;

// Smallest |entry| in the block [t.., t..], or {-1, -1}.
std::pair<int, int> smallest_entry(const DenseIntMatrix& a, std::size_t t) {
    std::pair<int, int> best{-1, -1};
    BigInt best_abs;
    for (std::size_t i = t; i < a.size(); ++i)
        for (std::size_t j = t; j < a[i].size(); ++j) {
            if (a[i][j] == 0) continue;
            BigInt v = abs(a[i][j]);
            if (best.first < 0 || v < best_abs) {
                best = {static_cast<int>(i), static_cast<int>(j)};
                best_abs = std::move(v);
                if (best_abs == 1) return best;
            }
        }
    return best;
}

void swap_cols(DenseIntMatrix& a, std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
}

using SparseRow = std::vector<std::pair<int, BigInt>>;

const BigInt* find_entry(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

std::int64_t mod(std::int64_t x, std::int64_t p) {
    x %= p;
    return x < 0 ? x + p : x;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
    // Fermat: a^(p-2) mod p.
    std::int64_t result = 1, base = mod(a, p);
    for (std::int64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = static_cast<std::int64_t>((__int128)result * base % p);
        base = static_cast<std::int64_t>((__int128)base * base % p);
    }
    return result;
}

} // namespace

DenseIntMatrix SparseIntMatrix::to_dense() const {
    DenseIntMatrix d(rows, std::vector<BigInt>(cols, 0));
    for (int c = 0; c < cols; ++c)
        for (const auto& [r, v] : columns[c]) d[r][c] = v;
    return d;
}

SmithResult smith_normal_form(DenseIntMatrix a) {
    SmithResult out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a.front().size() : 0;
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("ragged matrix");

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        auto [pi, pj] = smallest_entry(a, t);
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        swap_cols(a, t, pj);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survives; make it the pivot.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) bi = i, bj = t;
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) bi = t, bj = j;
                std::swap(a[t], a[bi]);
                swap_cols(a, t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        out.invariants.push_back(abs(a[t][t]));
    }
    return out;
}

SmithResult smith_normal_form(const SparseIntMatrix& m) {
    std::vector<SparseRow> rows(m.rows);
    std::vector<std::vector<int>> col_rows(m.cols);
    for (int c = 0; c < m.cols; ++c) {
        for (const auto& [r, v] : m.columns[c]) {
            if (v == 0) continue;
            rows[r].emplace_back(c, BigInt(v));
            col_rows[c].push_back(r);
        }
    }
    std::vector<char> row_alive(m.rows, 1), col_alive(m.cols, 1);

    std::vector<int> order(m.cols);
    for (int c = 0; c < m.cols; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return col_rows[x].size() < col_rows[y].size(); });

    std::size_t unit_pivots = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int c : order) {
            if (!col_alive[c]) continue;
            // Live rows with a nonzero in column c (col_rows is maintained lazily).
            std::vector<int> live;
            for (int r : col_rows[c])
                if (row_alive[r] && find_entry(rows[r], c)) live.push_back(r);
            std::sort(live.begin(), live.end());
            live.erase(std::unique(live.begin(), live.end()), live.end());
            col_rows[c] = live;
            if (live.empty()) {
                col_alive[c] = 0;
                continue;
            }
            int pivot = -1;
            for (int r : live) {
                const BigInt* v = find_entry(rows[r], c);
                if (abs(*v) == 1 && (pivot < 0 || rows[r].size() < rows[pivot].size())) pivot = r;
            }
            if (pivot < 0) continue;

            const BigInt pivot_sign = *find_entry(rows[pivot], c);
            const SparseRow prow = rows[pivot];
            for (int r : live) {
                if (r == pivot) continue;
                const BigInt factor = *find_entry(rows[r], c) * pivot_sign;
                SparseRow merged;
                merged.reserve(rows[r].size() + prow.size());
                auto x = rows[r].begin(), xe = rows[r].end();
                auto y = prow.begin(), ye = prow.end();
                while (x != xe || y != ye) {
                    if (y == ye || (x != xe && x->first < y->first)) {
                        merged.push_back(std::move(*x++));
                    } else if (x == xe || y->first < x->first) {
                        merged.emplace_back(y->first, -factor * y->second);
                        col_rows[y->first].push_back(r);
                        ++y;
                    } else {
                        BigInt v = x->second - factor * y->second;
                        if (v != 0) merged.emplace_back(x->first, std::move(v));
                        ++x;
                        ++y;
                    }
                }
                rows[r] = std::move(merged);
            }
            row_alive[pivot] = 0;
            col_alive[c] = 0;
            ++unit_pivots;
            progress = true;
        }
    }

    // Residual block.
    std::vector<int> live_rows, live_cols;
    std::vector<int> col_index(m.cols, -1);
    for (int r = 0; r < m.rows; ++r) {
        if (!row_alive[r]) continue;
        bool any = false;
        for (const auto& [c, v] : rows[r])
            if (col_alive[c] && v != 0) any = true;
        if (any) live_rows.push_back(r);
    }
    for (int r : live_rows)
        for (const auto& [c, v] : rows[r])
            if (col_alive[c] && col_index[c] < 0) {
                col_index[c] = static_cast<int>(live_cols.size());
                live_cols.push_back(c);
            }
    DenseIntMatrix rest(live_rows.size(), std::vector<BigInt>(live_cols.size(), 0));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& [c, v] : rows[live_rows[i]])
            if (col_alive[c]) rest[i][col_index[c]] = v;
    spdlog::trace("smith: {} unit pivots, residual {}x{}", unit_pivots, live_rows.size(),
                  live_cols.size());

    SmithResult out;
    out.invariants.assign(unit_pivots, BigInt(1));
    for (auto& d : smith_normal_form(std::move(rest)).invariants) out.invariants.push_back(d);
    return out;
}

std::size_t rank_mod_prime(const SparseIntMatrix& m, std::int64_t p) {
    if (p < 2) throw std::invalid_argument("modulus must be a prime >= 2");
    using Column = std::vector<std::pair<int, std::int64_t>>;
    std::vector<int> owner(m.rows, -1);
    std::vector<Column> reduced(m.cols);
    std::size_t rank = 0;
    for (int c = 0; c < m.cols; ++c) {
        Column col;
        for (const auto& [r, v] : m.columns[c])
            if (std::int64_t x = mod(v, p)) col.emplace_back(r, x);
        while (!col.empty()) {
            const int low = col.back().first;
            const int o = owner[low];
            if (o < 0) {
                owner[low] = c;
                ++rank;
                break;
            }
            const Column& pc = reduced[o];
            const std::int64_t factor =
                static_cast<std::int64_t>((__int128)col.back().second * inverse_mod(pc.back().second, p) % p);
            Column next;
            next.reserve(col.size() + pc.size());
            auto x = col.cbegin();
            auto y = pc.cbegin();
            while (x != col.cend() || y != pc.cend()) {
                if (y == pc.cend() || (x != col.cend() && x->first < y->first)) {
                    next.push_back(*x++);
                } else if (x == col.cend() || y->first < x->first) {
                    next.emplace_back(y->first, mod(-(__int128)factor * y->second % p, p));
                    ++y;
                } else {
                    const std::int64_t v = mod(x->second - (std::int64_t)((__int128)factor * y->second % p), p);
                    if (v) next.emplace_back(x->first, v);
                    ++x;
                    ++y;
                }
            }
            col = std::move(next);
        }
        reduced[c] = std::move(col);
    }
    return rank;
}

} // namespace rpforge
