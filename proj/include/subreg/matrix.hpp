#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subreg/field.hpp"
#include "subreg/poly.hpp"

namespace subreg {

/// Dense matrix over an exact field. All entries share the matrix's field.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, FieldPtr f)
        : rows_(rows), cols_(cols), f_(std::move(f)),
          e_(static_cast<std::size_t>(rows) * cols, ExactScalar(Rat(0), nullptr)) {
        for (auto& x : e_) x = ExactScalar(Rat(0), f_);
    }
    static Mat zero(int rows, int cols, const FieldPtr& f) { return Mat(rows, cols, f); }
    static Mat identity(int n, const FieldPtr& f) {
        Mat m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = ExactScalar(Rat(1), f);
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<Rat>>& rows, const FieldPtr& f) {
        int r = rows.size();
        int c = r ? rows[0].size() : 0;
        Mat m(r, c, f);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c) throw DomainError("ragged matrix rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = ExactScalar(rows[i][j], f);
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return f_; }

    ExactScalar& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const ExactScalar& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        a.require_shape(b.rows_, b.cols_);
        Mat r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        a.require_shape(b.rows_, b.cols_);
        Mat r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch in product");
        FieldPtr f = a.f_ ? a.f_ : b.f_;
        Mat r(a.rows_, b.cols_, f);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const ExactScalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
            }
        return r;
    }
    friend Mat operator*(const ExactScalar& s, const Mat& a) {
        Mat r = a;
        for (auto& x : r.e_) x = s * x;
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != b.e_[i]) return false;
        return true;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat transpose() const {
        Mat r(cols_, rows_, f_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Mat col(int j) const {
        Mat r(rows_, 1, f_);
        for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
        return r;
    }

    static Mat hstack(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_) throw DomainError("hstack row mismatch");
        Mat r(a.rows_, a.cols_ + b.cols_, a.f_ ? a.f_ : b.f_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
            for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
        }
        return r;
    }

    /// Reduced row echelon form; returns pivot column indices.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int sel = -1;
            for (int i = row; i < rows_; ++i)
                if (!at(i, col).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0) continue;
            if (sel != row)
                for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
            ExactScalar inv = at(row, col).inverse();
            for (int j = 0; j < cols_; ++j) at(row, j) = inv * at(row, j);
            for (int i = 0; i < rows_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                ExactScalar factor = at(i, col);
                for (int j = 0; j < cols_; ++j)
                    at(i, j) = at(i, j) - factor * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        Mat m = *this;
        return static_cast<int>(m.rref().size());
    }

    /// Columns spanning the kernel (echelonized free-variable basis).
    Mat kernel() const {
        Mat m = *this;
        std::vector<int> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int p : pivots) is_pivot[p] = true;
        std::vector<int> free;
        for (int j = 0; j < cols_; ++j)
            if (!is_pivot[j]) free.push_back(j);
        Mat K(cols_, static_cast<int>(free.size()), f_);
        for (std::size_t k = 0; k < free.size(); ++k) {
            int fc = free[k];
            K.at(fc, static_cast<int>(k)) = ExactScalar(Rat(1), f_);
            for (std::size_t r = 0; r < pivots.size(); ++r)
                K.at(pivots[r], static_cast<int>(k)) = -m.at(static_cast<int>(r), fc);
        }
        return K;
    }

    /// One solution of A x = b, if consistent.
    std::optional<Mat> solve(const Mat& b) const {
        if (b.rows_ != rows_) throw DomainError("solve shape mismatch");
        Mat aug = hstack(*this, b);
        std::vector<int> pivots = aug.rref();
        for (int p : pivots)
            if (p >= cols_) return std::nullopt;  // pivot in the rhs block
        Mat x(cols_, b.cols_, f_ ? f_ : b.f_);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            for (int j = 0; j < b.cols_; ++j)
                x.at(pivots[r], j) = aug.at(static_cast<int>(r), cols_ + j);
        return x;
    }

    std::optional<Mat> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        auto x = solve(identity(rows_, f_));
        if (!x) return std::nullopt;
        if ((*this) * (*x) != identity(rows_, f_)) return std::nullopt;
        return x;
    }

    ExactScalar det() const {
        if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
        Mat m = *this;
        ExactScalar d(Rat(1), f_);
        for (int col = 0; col < cols_; ++col) {
            int sel = -1;
            for (int i = col; i < rows_; ++i)
                if (!m.at(i, col).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0) return ExactScalar(Rat(0), f_);
            if (sel != col) {
                for (int j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(col, j));
                d = -d;
            }
            d = d * m.at(col, col);
            ExactScalar inv = m.at(col, col).inverse();
            for (int i = col + 1; i < rows_; ++i) {
                if (m.at(i, col).is_zero()) continue;
                ExactScalar factor = m.at(i, col) * inv;
                for (int j = col; j < cols_; ++j)
                    m.at(i, j) = m.at(i, j) - factor * m.at(col, j);
            }
        }
        return d;
    }

    /// Evaluates a rational polynomial at a square matrix.
    static Mat poly_eval(const Polynomial& p, const Mat& a) {
        if (a.rows_ != a.cols_) throw DomainError("polynomial of a non-square matrix");
        Mat acc = Mat::zero(a.rows_, a.cols_, a.f_);
        int last = p.degree();
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            for (int i = it->first; i < last; ++i) acc = acc * a;
            last = it->first;
            Mat c = identity(a.rows_, a.f_);
            acc = acc + ExactScalar(it->second, a.f_) * c;
        }
        for (int i = 0; i < last; ++i) acc = acc * a;
        return acc;
    }

    /// Characteristic polynomial coefficients (ascending, in the field) via
    /// the Faddeev-LeVerrier recurrence.
    std::vector<ExactScalar> char_poly() const {
        if (rows_ != cols_) throw DomainError("characteristic polynomial of a non-square matrix");
        int n = rows_;
        std::vector<ExactScalar> c(n + 1, ExactScalar(Rat(0), f_));
        c[n] = ExactScalar(Rat(1), f_);
        Mat m = Mat::zero(n, n, f_);
        for (int k = 1; k <= n; ++k) {
            m = (*this) * m + c[n - k + 1] * identity(n, f_);
            Mat am = (*this) * m;
            ExactScalar tr(Rat(0), f_);
            for (int i = 0; i < n; ++i) tr = tr + am.at(i, i);
            c[n - k] = -(tr / ExactScalar(Rat(k), f_));
        }
        return c;
    }

    std::string str() const {
        std::string out = "[";
        for (int i = 0; i < rows_; ++i) {
            if (i) out += "; ";
            for (int j = 0; j < cols_; ++j) {
                if (j) out += " ";
                out += at(i, j).str();
            }
        }
        return out + "]";
    }

private:
    void require_shape(int r, int c) const {
        if (rows_ != r || cols_ != c) throw DomainError("matrix shape mismatch");
    }
    int rows_, cols_;
    FieldPtr f_;
    std::vector<ExactScalar> e_;
};

/// Echelonized basis of the column space.
inline Mat column_space_basis(const Mat& m) {
    Mat t = m.transpose();
    std::vector<int> pivots = t.rref();
    Mat basis(m.rows(), static_cast<int>(pivots.size()), m.field());
    int keep = 0;
    for (int i = 0; i < t.rows(); ++i) {
        bool nonzero = false;
        for (int j = 0; j < t.cols(); ++j)
            if (!t.at(i, j).is_zero()) nonzero = true;
        if (!nonzero) continue;
        for (int j = 0; j < t.cols(); ++j) basis.at(j, keep) = t.at(i, j);
        ++keep;
    }
    return basis;
}

/// Does every column of v lie in the column space of basis?
inline bool columns_contained(const Mat& basis, const Mat& v) {
    if (v.cols() == 0) return true;
    if (basis.cols() == 0) return v.is_zero();
    return basis.solve(v).has_value();
}

}  // namespace subreg
