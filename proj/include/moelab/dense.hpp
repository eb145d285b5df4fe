#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "moelab/errors.hpp"

namespace moelab {

using cplx = std::complex<double>;

// Row-major dense complex matrix for the small measure/eigenvalue work.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
    DenseMatrix(int rows, int cols, std::initializer_list<cplx> values);

    static DenseMatrix identity(int n);
    static DenseMatrix zero(int n) { return DenseMatrix(n, n); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cplx& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    DenseMatrix dagger() const;
    DenseMatrix conjugate() const;
    cplx trace() const;

    DenseMatrix& operator+=(const DenseMatrix& rhs);
    DenseMatrix& operator-=(const DenseMatrix& rhs);
    DenseMatrix& operator*=(cplx s);

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, cplx s) { return a *= s; }
    friend DenseMatrix operator*(cplx s, DenseMatrix a) { return a *= s; }
    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

    double max_abs() const;
    double max_abs_diff(const DenseMatrix& other) const;
    bool is_hermitian(double tol) const;

    // Aligned "re+im i" table for CLI debug output.
    std::string to_string(int precision = 6) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

// Block transpose over one tensor factor of an (dA*dB) x (dA*dB) matrix.
enum class Subsystem { A, B };
DenseMatrix partial_transpose(const DenseMatrix& m, int dim_a, int dim_b, Subsystem which);

// Determinant via LU with partial pivoting (validation helper).
cplx determinant(const DenseMatrix& m);

}  // namespace moelab
