#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace ahm {

using Real = double;
using Complex = std::complex<double>;

using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr Complex I{0.0, 1.0};

// Dense rank-3 / rank-4 tables of frame components. Dimensions are tiny
// (m <= 4), so a flat vector with computed strides is all we need.
template <class T>
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(int d0, int d1, int d2)
        : d_{d0, d1, d2}, a_(static_cast<size_t>(d0) * d1 * d2, T{}) {}

    T& operator()(int i, int j, int k) { return a_[idx(i, j, k)]; }
    const T& operator()(int i, int j, int k) const { return a_[idx(i, j, k)]; }

    int dim(int axis) const { return d_[axis]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }
    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    friend Tensor3 operator+(Tensor3 a, const Tensor3& b) {
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Tensor3 operator-(Tensor3 a, const Tensor3& b) {
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend Tensor3 operator*(double s, Tensor3 a) {
        for (auto& v : a.a_) v *= s;
        return a;
    }
    friend Tensor3 operator/(Tensor3 a, double s) {
        for (auto& v : a.a_) v /= s;
        return a;
    }

private:
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(i) * d_[1] + j) * d_[2] + k;
    }
    int d_[3] = {0, 0, 0};
    std::vector<T> a_;
};

template <class T>
class Tensor4 {
public:
    Tensor4() = default;
    Tensor4(int d0, int d1, int d2, int d3)
        : d_{d0, d1, d2, d3},
          a_(static_cast<size_t>(d0) * d1 * d2 * d3, T{}) {}

    T& operator()(int i, int j, int k, int l) { return a_[idx(i, j, k, l)]; }
    const T& operator()(int i, int j, int k, int l) const {
        return a_[idx(i, j, k, l)];
    }

    int dim(int axis) const { return d_[axis]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    size_t idx(int i, int j, int k, int l) const {
        return ((static_cast<size_t>(i) * d_[1] + j) * d_[2] + k) * d_[3] + l;
    }
    int d_[4] = {0, 0, 0, 0};
    std::vector<T> a_;
};

using Tensor3c = Tensor3<Complex>;
using Tensor4c = Tensor4<Complex>;

}  // namespace ahm
