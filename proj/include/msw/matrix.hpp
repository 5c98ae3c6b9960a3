#pragma once

// Dense exact matrices over a field policy, with the elimination routines the
// rest of the engine is built on: RREF with kernel extraction, determinant,
// inverse, and symmetric congruence diagonalization.

#include "msw/field.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace msw {

template <class F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix() : field_(), rows_(0), cols_(0) {}
    Matrix(F field, int rows, int cols)
        : field_(field), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, field.zero()) {}

    static Matrix identity(F field, int n) {
        Matrix m(field, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }
    static Matrix from_rows(F field, std::vector<std::vector<Elem>> rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows[0].size()) : 0;
        Matrix m(field, r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c) throw std::domain_error("ragged matrix");
            for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Elem& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Elem& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t i = 0; i < a_.size(); ++i)
            if (!field_.eq(a_[i], o.a_[i])) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::domain_error("matrix product shape mismatch");
        Matrix c(field_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Elem& x = (*this)(i, k);
                if (field_.is_zero(x)) continue;
                for (int j = 0; j < o.cols_; ++j)
                    c(i, j) = field_.add(c(i, j), field_.mul(x, o(k, j)));
            }
        return c;
    }
    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix c = *this;
        for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = field_.add(c.a_[i], o.a_[i]);
        return c;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix c = *this;
        for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = field_.sub(c.a_[i], o.a_[i]);
        return c;
    }
    Matrix negated() const {
        Matrix c = *this;
        for (auto& x : c.a_) x = field_.neg(x);
        return c;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!field_.is_zero(x)) return false;
        return true;
    }
    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (!field_.eq((*this)(i, j), (*this)(j, i))) return false;
        return true;
    }

    Matrix block(int r0, int c0, int r, int c) const {
        Matrix b(field_, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(int r0, int c0, const Matrix& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("matrix shape mismatch");
    }
    F field_;
    int rows_, cols_;
    std::vector<Elem> a_;
};

template <class F>
struct RrefResult {
    int rank = 0;
    std::vector<int> pivot_cols;
    Matrix<F> reduced;
    std::vector<std::vector<typename F::Elem>> kernel;  // column vectors annihilated by M
};

template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
    const F& K = m.field();
    Matrix<F> a = m;
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!K.is_zero(a(i, c))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pr, j));
        auto iv = K.inv(a(r, c));
        for (int j = 0; j < a.cols(); ++j) a(r, j) = K.mul(iv, a(r, j));
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || K.is_zero(a(i, c))) continue;
            auto f = a(i, c);
            for (int j = 0; j < a.cols(); ++j) a(i, j) = K.sub(a(i, j), K.mul(f, a(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    RrefResult<F> out{r, piv, a, {}};
    std::vector<bool> is_piv(a.cols(), false);
    for (int c : piv) is_piv[c] = true;
    for (int c = 0; c < a.cols(); ++c) {
        if (is_piv[c]) continue;
        std::vector<typename F::Elem> v(a.cols(), K.zero());
        v[c] = K.one();
        for (int i = 0; i < static_cast<int>(piv.size()); ++i) v[piv[i]] = K.neg(a(i, c));
        out.kernel.push_back(std::move(v));
    }
    return out;
}

template <class F>
int rank(const Matrix<F>& m) { return rref(m).rank; }

template <class F>
typename F::Elem det(const Matrix<F>& m) {
    if (m.rows() != m.cols()) throw std::domain_error("det: not square");
    const F& K = m.field();
    Matrix<F> a = m;
    auto d = K.one();
    for (int c = 0; c < a.cols(); ++c) {
        int pr = -1;
        for (int i = c; i < a.rows(); ++i)
            if (!K.is_zero(a(i, c))) { pr = i; break; }
        if (pr < 0) return K.zero();
        if (pr != c) {
            for (int j = 0; j < a.cols(); ++j) std::swap(a(c, j), a(pr, j));
            d = K.neg(d);
        }
        d = K.mul(d, a(c, c));
        auto iv = K.inv(a(c, c));
        for (int i = c + 1; i < a.rows(); ++i) {
            if (K.is_zero(a(i, c))) continue;
            auto f = K.mul(a(i, c), iv);
            for (int j = c; j < a.cols(); ++j) a(i, j) = K.sub(a(i, j), K.mul(f, a(c, j)));
        }
    }
    return d;
}

template <class F>
std::optional<Matrix<F>> try_inverse(const Matrix<F>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const F& K = m.field();
    int n = m.rows();
    Matrix<F> aug(K, n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix<F>::identity(K, n));
    auto r = rref(aug);
    for (int i = 0; i < n; ++i)
        if (i >= static_cast<int>(r.pivot_cols.size()) || r.pivot_cols[i] != i) return std::nullopt;
    return r.reduced.block(0, n, n, n);
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
    auto inv = try_inverse(m);
    if (!inv) throw std::domain_error("inverse: singular matrix");
    return *inv;
}

template <class F>
struct CongruenceDiagonalization {
    std::vector<typename F::Elem> diagonal;
    Matrix<F> transform;  // invertible C with C^T S C diagonal
};

// Symmetric Gaussian congruence. Pivots on a nonzero diagonal entry when one
// exists; otherwise uses the char!=2 move of adding row+column j into k to
// manufacture one.
template <class F>
CongruenceDiagonalization<F> congruence_diagonalize(const Matrix<F>& s) {
    if (!s.is_symmetric()) throw std::domain_error("congruence_diagonalize: not symmetric");
    const F& K = s.field();
    int n = s.rows();
    Matrix<F> a = s;
    Matrix<F> c = Matrix<F>::identity(K, n);  // tracks column operations
    for (int k = 0; k < n; ++k) {
        if (K.is_zero(a(k, k))) {
            int swap_j = -1, add_j = -1;
            for (int t = k + 1; t < n; ++t) {
                if (swap_j < 0 && !K.is_zero(a(t, t))) swap_j = t;
                if (add_j < 0 && !K.is_zero(a(k, t))) add_j = t;
            }
            if (swap_j >= 0) {
                int j = swap_j;
                for (int i = 0; i < n; ++i) std::swap(a(i, k), a(i, j));
                for (int i = 0; i < n; ++i) std::swap(a(k, i), a(j, i));
                for (int i = 0; i < n; ++i) std::swap(c(i, k), c(i, j));
            } else if (add_j >= 0) {
                int j = add_j;
                for (int i = 0; i < n; ++i) a(i, k) = K.add(a(i, k), a(i, j));
                for (int i = 0; i < n; ++i) a(k, i) = K.add(a(k, i), a(j, i));
                for (int i = 0; i < n; ++i) c(i, k) = K.add(c(i, k), c(i, j));
            } else {
                continue;  // row k is zero on and after the diagonal: radical direction
            }
        }
        auto iv = K.inv(a(k, k));
        for (int t = 0; t < n; ++t) {
            if (t == k || K.is_zero(a(k, t))) continue;
            auto f = K.mul(a(k, t), iv);
            for (int i = 0; i < n; ++i) a(i, t) = K.sub(a(i, t), K.mul(f, a(i, k)));
            for (int i = 0; i < n; ++i) a(t, i) = K.sub(a(t, i), K.mul(f, a(k, i)));
            for (int i = 0; i < n; ++i) c(i, t) = K.sub(c(i, t), K.mul(f, c(i, k)));
        }
    }
    std::vector<typename F::Elem> diag;
    diag.reserve(n);
    for (int i = 0; i < n; ++i) diag.push_back(a(i, i));
    return {std::move(diag), std::move(c)};
}

}  // namespace msw
