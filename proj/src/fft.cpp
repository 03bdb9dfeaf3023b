#include "nv/fft.hpp"

#include <cmath>

namespace nv {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_2_3_smooth(int n) {
    while (n % 2 == 0) n /= 2;
    while (n % 3 == 0) n /= 3;
    return n == 1;
}
}  // namespace

Fft::Fft(int n) : n_(n), fast_(is_2_3_smooth(n)) {
    tw_fwd_.resize(n_);
    tw_inv_.resize(n_);
    for (int k = 0; k < n_; ++k) {
        const double a = 2.0 * kPi * k / n_;
        tw_fwd_[k] = {std::cos(a), -std::sin(a)};
        tw_inv_[k] = {std::cos(a), std::sin(a)};
    }
}

void Fft::recurse(const std::complex<double>* x, std::complex<double>* X, int n, int stride,
                  int sign) const {
    using C = std::complex<double>;
    if (n == 1) {
        X[0] = x[0];
        return;
    }
    const auto& tw = (sign < 0) ? tw_fwd_ : tw_inv_;
    const int root = n_ / n;  // twiddle stride in the master table
    if (n % 2 == 0) {
        const int h = n / 2;
        recurse(x, X, h, 2 * stride, sign);
        recurse(x + stride, X + h, h, 2 * stride, sign);
        for (int k = 0; k < h; ++k) {
            const C e = X[k];
            const C o = X[k + h] * tw[static_cast<std::size_t>(k) * root];
            X[k] = e + o;
            X[k + h] = e - o;
        }
        return;
    }
    // n divisible by 3
    const int h = n / 3;
    recurse(x, X, h, 3 * stride, sign);
    recurse(x + stride, X + h, h, 3 * stride, sign);
    recurse(x + 2 * stride, X + 2 * h, h, 3 * stride, sign);
    const C w3 = (sign < 0) ? C(-0.5, -0.8660254037844386467637)
                            : C(-0.5, 0.8660254037844386467637);
    const C w3sq = std::conj(w3);  // w3² on the unit circle
    for (int k = 0; k < h; ++k) {
        const C a = X[k];
        const C b = X[k + h] * tw[static_cast<std::size_t>(k) * root];
        const C c = X[k + 2 * h] * tw[(static_cast<std::size_t>(k) * 2 * root) % n_];
        X[k] = a + b + c;
        X[k + h] = a + w3 * b + w3sq * c;
        X[k + 2 * h] = a + w3sq * b + w3 * c;
    }
}

void Fft::forward(const std::complex<double>* x, std::complex<double>* X) const {
    if (fast_) {
        recurse(x, X, n_, 1, -1);
        return;
    }
    for (int p = 0; p < n_; ++p) {
        std::complex<double> acc(0.0);
        for (int k = 0; k < n_; ++k)
            acc += x[k] * tw_fwd_[(static_cast<std::size_t>(p) * k) % n_];
        X[p] = acc;
    }
}

void Fft::inverse(const std::complex<double>* X, std::complex<double>* x) const {
    if (fast_) {
        recurse(X, x, n_, 1, +1);
    } else {
        for (int k = 0; k < n_; ++k) {
            std::complex<double> acc(0.0);
            for (int p = 0; p < n_; ++p)
                acc += X[p] * tw_inv_[(static_cast<std::size_t>(k) * p) % n_];
            x[k] = acc;
        }
    }
    const double inv = 1.0 / n_;
    for (int k = 0; k < n_; ++k) x[k] *= inv;
}

}  // namespace nv
