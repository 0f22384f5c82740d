#ifndef JETCAL_MATRIX_HPP
#define JETCAL_MATRIX_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "jetcal/poly.hpp"

namespace jetcal {

/// Hard guard for dense eliminations (desk-scale artifact).
constexpr std::size_t kMaxMatrixColumns = 20000;

/// Dense matrix over an exact entry type (Scalar or Poly). Entries
/// carry their own field, so constructors take a zero prototype.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, const T& zero)
        : rows_(rows), cols_(cols), a_(rows * cols, zero), zero_(zero)
    {
        if (cols > kMaxMatrixColumns || rows > kMaxMatrixColumns)
            throw Error("matrix dimension guard exceeded");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const T& zero() const { return zero_; }

    T& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    static Mat identity(std::size_t n, const T& one, const T& zero)
    {
        Mat m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    Mat operator+(const Mat& o) const
    {
        require_shape(o.rows_, o.cols_);
        Mat r(*this);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = r.a_[k] + o.a_[k];
        return r;
    }

    Mat operator-(const Mat& o) const
    {
        require_shape(o.rows_, o.cols_);
        Mat r(*this);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = r.a_[k] - o.a_[k];
        return r;
    }

    Mat operator*(const Mat& o) const
    {
        if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
        Mat r(rows_, o.cols_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& v = at(i, k);
                if (v == zero_) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + v * o.at(k, j);
            }
        return r;
    }

    Mat scaled(const T& c) const
    {
        Mat r(*this);
        for (auto& v : r.a_) v = v * c;
        return r;
    }

    Mat operator-() const
    {
        Mat r(*this);
        for (auto& v : r.a_) v = -v;
        return r;
    }

    Mat transposed() const
    {
        Mat r(cols_, rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool operator==(const Mat& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const
    {
        for (const auto& v : a_)
            if (!(v == zero_)) return false;
        return true;
    }

    std::vector<T> apply(const std::vector<T>& x) const
    {
        if (x.size() != cols_) throw Error("matrix apply shape mismatch");
        std::vector<T> y(rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] = y[i] + at(i, j) * x[j];
        return y;
    }

    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> c(rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

private:
    void require_shape(std::size_t r, std::size_t c) const
    {
        if (rows_ != r || cols_ != c) throw Error("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
    T zero_{};
};

using SMat = Mat<Scalar>;
using PMat = Mat<Poly>;

template <class T>
Mat<T> kronecker(const Mat<T>& a, const Mat<T>& b)
{
    Mat<T> r(a.rows() * b.rows(), a.cols() * b.cols(), a.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == a.zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

SMat smat_zero(std::size_t rows, std::size_t cols, ScalarField f);
SMat smat_identity(std::size_t n, ScalarField f);
PMat pmat_zero(std::size_t rows, std::size_t cols, std::uint32_t d, ScalarField f);
PMat pmat_identity(std::size_t n, std::uint32_t d, ScalarField f);
/// Entry-wise promotion of a scalar matrix to constant polynomials.
PMat pmat_from_smat(const SMat& m, std::uint32_t d);
/// Requires every entry constant.
SMat smat_from_pmat(const PMat& m);

// -- exact linear algebra over the field --------------------------------

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(SMat& m);
std::size_t rank(const SMat& m);
/// Columns span ker(m).
SMat kernel_basis(const SMat& m);
/// Columns span im(m); columns are a maximal independent subset image.
SMat image_basis(const SMat& m);
/// Solve m x = b; empty when inconsistent.
std::optional<std::vector<Scalar>> solve(const SMat& m, const std::vector<Scalar>& b);
/// Does the column span of sub lie inside the column span of space?
bool subspace_contains(const SMat& space, const SMat& sub);
bool subspace_equal(const SMat& a, const SMat& b);
SMat concat_cols(const SMat& a, const SMat& b);

// -- exponent enumeration (shared by jets and degree truncation) --------

std::vector<Exp> exponents_up_to(std::uint32_t d, std::uint32_t max_deg);
std::vector<Exp> exponents_of_degree(std::uint32_t d, std::uint32_t n);
/// C(max_deg + d, d), the count of exponents_up_to.
std::size_t monomial_count(std::uint32_t d, std::uint32_t max_deg);

// -- degree-truncation embedding (k-linearization) ----------------------

/// The k-linear matrix of an O-linear-or-differential map between free
/// modules, restricted to polynomial coefficients of degree <= deg_in on
/// the source and expanded on degree <= deg_out monomials of the target.
/// `apply_column` must return the image of x^beta * e_j as a polynomial
/// vector of length rank_out. Throws if the image overflows deg_out.
SMat klinearize(std::uint32_t d, ScalarField f, std::size_t rank_in, std::size_t rank_out,
                std::uint32_t deg_in, std::uint32_t deg_out,
                const std::function<std::vector<Poly>(const Exp&, std::size_t)>& apply_column);

/// Same, for a plain polynomial matrix acting by multiplication.
SMat klinearize_pmat(const PMat& m, std::uint32_t deg_in, std::uint32_t deg_out);

/// Coordinates of a polynomial vector in the degree-truncated space used
/// by klinearize (monomial index major, component minor).
std::vector<Scalar> truncated_coords(const std::vector<Poly>& v, std::uint32_t deg_bound);

} // namespace jetcal

#endif
