#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <arres/rational.hpp>

namespace arres {

using Vec = std::vector<Rational>;

/// Dense rational matrix, row-major. Queries only; elimination lives in the
/// free functions below.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows, Vec(cols)) {}

    static Mat from_rows(std::vector<Vec> rows) {
        Mat m;
        m.rows_ = std::move(rows);
        m.check_rectangular();
        return m;
    }

    static Mat from_columns(const std::vector<Vec>& cols) {
        Mat m;
        if (cols.empty()) return m;
        const std::size_t r = cols.front().size();
        for (const auto& c : cols)
            if (c.size() != r) throw domain_error("matrix: ragged columns");
        m.rows_.assign(r, Vec(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < r; ++i) m.rows_[i][j] = cols[j][i];
        return m;
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = Rational(1);
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
    const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    Rational& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
    const Vec& row(std::size_t i) const { return rows_[i]; }

    friend bool operator==(const Mat& a, const Mat& b) { return a.rows_ == b.rows_; }

private:
    void check_rectangular() const {
        for (const auto& r : rows_)
            if (r.size() != cols()) throw domain_error("matrix: ragged rows");
    }

    std::vector<Vec> rows_;
};

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw domain_error("dot: size mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec mat_vec(const Mat& m, const Vec& x) {
    if (m.cols() != x.size()) throw domain_error("mat_vec: size mismatch");
    Vec y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) y[i] = dot(m.row(i), x);
    return y;
}

namespace detail {

// Clears denominators row by row so elimination can run over the integers.
// Returns the integer matrix plus the product of the row scale factors.
inline std::vector<std::vector<mpz_class>> clear_denominators(
    const std::vector<Vec>& rows, mpz_class& scale_product) {
    scale_product = 1;
    std::vector<std::vector<mpz_class>> z;
    z.reserve(rows.size());
    for (const auto& row : rows) {
        mpz_class l(1);
        for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.den().get_mpz_t());
        std::vector<mpz_class> zr;
        zr.reserve(row.size());
        for (const auto& e : row) zr.push_back(e.num() * (l / e.den()));
        scale_product *= l;
        z.push_back(std::move(zr));
    }
    return z;
}

} // namespace detail

/// Rank of the span of the given vectors, exact. Fraction-free (Bareiss)
/// elimination over the integers after clearing row denominators; pivot is
/// the first nonzero entry by row index.
inline int rank(const std::vector<Vec>& vs) {
    if (vs.empty()) return 0;
    const std::size_t n = vs.size(), d = vs.front().size();
    for (const auto& v : vs)
        if (v.size() != d) throw domain_error("rank: ragged input");
    mpz_class ignored;
    auto z = detail::clear_denominators(vs, ignored);
    std::size_t r = 0;
    mpz_class prev(1);
    for (std::size_t c = 0; c < d && r < n; ++c) {
        std::size_t p = r;
        while (p < n && z[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(z[p], z[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < d; ++j)
                z[i][j] = (z[i][j] * z[r][c] - z[i][c] * z[r][j]) / prev;
            z[i][c] = 0;
        }
        prev = z[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

/// Exact determinant by fraction-free elimination. Throws on non-square input.
inline Rational det(const Mat& m) {
    if (m.rows() != m.cols()) throw domain_error("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    std::vector<Vec> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(m.row(i));
    mpz_class scale;
    auto z = detail::clear_denominators(rows, scale);
    int sign = 1;
    mpz_class prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && z[p][k] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != k) {
            std::swap(z[p], z[k]);
            sign = -sign;
        }
        if (k + 1 == n) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                z[i][j] = (z[i][j] * z[k][k] - z[i][k] * z[k][j]) / prev;
            z[i][k] = 0;
        }
        prev = z[k][k];
    }
    return Rational(sign * z[n - 1][n - 1], scale);
}

/// Some exact solution x of a·x = b, or nullopt when the system is
/// inconsistent. Free variables are set to zero; when a is invertible the
/// result is the unique solution. Gauss-Jordan with first-nonzero pivoting.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    const std::size_t n = a.rows(), k = a.cols();
    if (b.size() != n) throw domain_error("solve: rhs size mismatch");
    std::vector<Vec> aug(n, Vec(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = a.at(i, j);
        aug[i][k] = b[i];
    }
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col)
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < n; ++col) {
        std::size_t p = row;
        while (p < n && aug[p][col].is_zero()) ++p;
        if (p == n) continue;
        std::swap(aug[p], aug[row]);
        const Rational piv = aug[row][col];
        for (std::size_t j = col; j <= k; ++j) aug[row][j] /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || aug[i][col].is_zero()) continue;
            const Rational f = aug[i][col];
            for (std::size_t j = col; j <= k; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (!aug[i][k].is_zero()) return std::nullopt;
    Vec x(k);
    for (const auto& [r, c] : pivots) x[c] = aug[r][k];
    return x;
}

/// True iff v lies in the span of vs.
inline bool in_span(const std::vector<Vec>& vs, const Vec& v) {
    if (vs.empty()) {
        for (const auto& e : v)
            if (!e.is_zero()) return false;
        return true;
    }
    auto ext = vs;
    ext.push_back(v);
    return rank(ext) == rank(vs);
}

} // namespace arres
