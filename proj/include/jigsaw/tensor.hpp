#pragma once

// Dense row-major tensor plus a thin BLAS GEMM shim. The scalar type is a
// template parameter: training runs in float, gradient checks instantiate
// the same code in double.

#include <cblas.h>

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jigsaw {

template <class T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> v;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)), v(numel_of(shape), T(0)) {}
    Tensor(std::initializer_list<int> s) : Tensor(std::vector<int>(s)) {}

    static std::size_t numel_of(const std::vector<int>& s) {
        std::size_t n = 1;
        for (int d : s) {
            if (d < 0) throw std::invalid_argument("Tensor: negative dimension");
            n *= static_cast<std::size_t>(d);
        }
        return n;
    }

    std::size_t numel() const { return v.size(); }
    int dim(int i) const { return shape.at(static_cast<std::size_t>(i)); }
    int ndim() const { return static_cast<int>(shape.size()); }

    T* data() { return v.data(); }
    const T* data() const { return v.data(); }

    // NCHW accessor; only for tests and small paths, hot loops index manually.
    T& at4(int n, int c, int h, int w) {
        return v[((static_cast<std::size_t>(n) * shape[1] + c) * shape[2] + h) * shape[3] + w];
    }
    const T& at4(int n, int c, int h, int w) const {
        return const_cast<Tensor*>(this)->at4(n, c, h, w);
    }

    void fill(T x) { std::fill(v.begin(), v.end(), x); }

    void reshape(std::vector<int> s) {
        if (numel_of(s) != v.size()) throw std::invalid_argument("Tensor::reshape: element count mismatch");
        shape = std::move(s);
    }

    bool same_shape(const std::vector<int>& s) const { return shape == s; }

    std::string shape_str() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
        os << ")";
        return os.str();
    }
};

template <class T>
Tensor<T> zeros_like(const Tensor<T>& t) {
    return Tensor<T>(t.shape);
}

// C(m,n) = alpha * op(A) * op(B) + beta * C, row-major.
inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha,
                 const float* a, int lda, const float* b, int ldb, float beta, float* c, int ldc) {
    cblas_sgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans, trans_b ? CblasTrans : CblasNoTrans,
                m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha,
                 const double* a, int lda, const double* b, int ldb, double beta, double* c, int ldc) {
    cblas_dgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans, trans_b ? CblasTrans : CblasNoTrans,
                m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

}  // namespace jigsaw
