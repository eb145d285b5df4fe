#include "moelab/dense.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace moelab {

DenseMatrix::DenseMatrix(int rows, int cols, std::initializer_list<cplx> values)
    : DenseMatrix(rows, cols) {
    if (values.size() != data_.size())
        throw shape_error("DenseMatrix: initializer size does not match rows*cols");
    std::copy(values.begin(), values.end(), data_.begin());
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::dagger() const {
    DenseMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
}

DenseMatrix DenseMatrix::conjugate() const {
    DenseMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
}

cplx DenseMatrix::trace() const {
    if (!square()) throw shape_error("trace: matrix not square");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw shape_error("operator+=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw shape_error("operator-=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw shape_error("operator*: inner dimensions differ");
    DenseMatrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
        for (int k = 0; k < a.cols_; ++k) {
            const cplx ark = a.at(r, k);
            if (ark == cplx(0.0)) continue;
            for (int c = 0; c < b.cols_; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    return out;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw shape_error("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

bool DenseMatrix::is_hermitian(double tol) const {
    if (!square()) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = r; c < cols_; ++c)
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    return true;
}

std::string DenseMatrix::to_string(int precision) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision);
    const int w = precision + 5;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            const cplx v = at(r, c);
            os << std::setw(w) << v.real() << (v.imag() < 0 ? " - " : " + ")
               << std::setw(w - 2) << std::abs(v.imag()) << "i";
            if (c + 1 < cols_) os << "  ";
        }
        os << '\n';
    }
    return os.str();
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ra = 0; ra < a.rows(); ++ra)
        for (int ca = 0; ca < a.cols(); ++ca) {
            const cplx f = a.at(ra, ca);
            if (f == cplx(0.0)) continue;
            for (int rb = 0; rb < b.rows(); ++rb)
                for (int cb = 0; cb < b.cols(); ++cb)
                    out.at(ra * b.rows() + rb, ca * b.cols() + cb) = f * b.at(rb, cb);
        }
    return out;
}

DenseMatrix partial_transpose(const DenseMatrix& m, int dim_a, int dim_b, Subsystem which) {
    if (!m.square() || m.rows() != dim_a * dim_b)
        throw shape_error("partial_transpose: matrix is not (dA*dB) square");
    DenseMatrix out(m.rows(), m.cols());
    for (int a1 = 0; a1 < dim_a; ++a1)
        for (int b1 = 0; b1 < dim_b; ++b1)
            for (int a2 = 0; a2 < dim_a; ++a2)
                for (int b2 = 0; b2 < dim_b; ++b2) {
                    const cplx v = m.at(a1 * dim_b + b1, a2 * dim_b + b2);
                    if (which == Subsystem::B)
                        out.at(a1 * dim_b + b2, a2 * dim_b + b1) = v;
                    else
                        out.at(a2 * dim_b + b1, a1 * dim_b + b2) = v;
                }
    return out;
}

cplx determinant(const DenseMatrix& m) {
    if (!m.square()) throw shape_error("determinant: matrix not square");
    const int n = m.rows();
    DenseMatrix lu = m;
    cplx det = 1.0;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::abs(lu.at(k, k));
        for (int r = k + 1; r < n; ++r)
            if (std::abs(lu.at(r, k)) > best) {
                best = std::abs(lu.at(r, k));
                pivot = r;
            }
        if (best == 0.0) return 0.0;
        if (pivot != k) {
            for (int c = 0; c < n; ++c) std::swap(lu.at(k, c), lu.at(pivot, c));
            det = -det;
        }
        det *= lu.at(k, k);
        for (int r = k + 1; r < n; ++r) {
            const cplx f = lu.at(r, k) / lu.at(k, k);
            for (int c = k; c < n; ++c) lu.at(r, c) -= f * lu.at(k, c);
        }
    }
    return det;
}

}  // namespace moelab
