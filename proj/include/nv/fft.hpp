#pragma once

// Minimal complex FFT for lengths 2^a · 3^b (the grid's angular sizes),
// recursive mixed-radix decimation with a cached twiddle table. Falls back
// to the O(n²) matrix transform for other lengths.

#include <complex>
#include <vector>

namespace nv {

class Fft {
  public:
    explicit Fft(int n);

    bool fast() const { return fast_; }
    int size() const { return n_; }

    // X[p] = Σ_k x[k] e^{-2πi pk/n}
    void forward(const std::complex<double>* x, std::complex<double>* X) const;
    // x[k] = (1/n) Σ_p X[p] e^{+2πi pk/n}
    void inverse(const std::complex<double>* X, std::complex<double>* x) const;

  private:
    void recurse(const std::complex<double>* x, std::complex<double>* X, int n, int stride,
                 int sign) const;

    int n_;
    bool fast_;
    std::vector<std::complex<double>> tw_fwd_, tw_inv_;  // e^{∓2πi k/n}, k < n
};

}  // namespace nv
