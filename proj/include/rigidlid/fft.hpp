#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace rigidlid {
namespace detail {

/// Real<->half-complex transform pair for one grid size.  FFTW plan creation
/// is not thread-safe, so it runs under a global lock; execution on the
/// per-workspace buffers is lock-free.  Plans use FFTW_ESTIMATE: plan choice
/// is then deterministic, which keeps emitted data bitwise reproducible.
class FftWorkspace {
  public:
    explicit FftWorkspace(std::size_t n) : n_(n), spec_(n / 2 + 1) {
        real_ = fftw_alloc_real(n_);
        cplx_ = fftw_alloc_complex(n_ / 2 + 1);
        std::lock_guard<std::mutex> lk(planner_mutex());
        fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_, cplx_, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), cplx_, real_, FFTW_ESTIMATE);
    }

    ~FftWorkspace() {
        std::lock_guard<std::mutex> lk(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(real_);
        fftw_free(cplx_);
    }

    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;

    /// Forward transform with 1/n normalization, so spec()[j] is the Fourier
    /// coefficient of mode j of the trigonometric interpolant.
    const std::vector<std::complex<double>>& forward(const std::vector<double>& in) {
        for (std::size_t i = 0; i < n_; ++i) real_[i] = in[i];
        fftw_execute(fwd_);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t j = 0; j <= n_ / 2; ++j)
            spec_[j] = std::complex<double>(cplx_[j][0] * scale, cplx_[j][1] * scale);
        return spec_;
    }

    std::vector<std::complex<double>>& spec() { return spec_; }

    void inverse(std::vector<double>& out) {
        for (std::size_t j = 0; j <= n_ / 2; ++j) {
            cplx_[j][0] = spec_[j].real();
            cplx_[j][1] = spec_[j].imag();
        }
        fftw_execute(inv_);
        out.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = real_[i];
    }

    std::size_t size() const { return n_; }

  private:
    static std::mutex& planner_mutex() {
        static std::mutex m;
        return m;
    }

    std::size_t n_;
    std::vector<std::complex<double>> spec_;
    double* real_;
    fftw_complex* cplx_;
    fftw_plan fwd_, inv_;
};

/// One workspace per transform size per thread; concurrent sweep workers get
/// independent buffers.
inline FftWorkspace& workspace_for(std::size_t n) {
    thread_local std::map<std::size_t, FftWorkspace> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.try_emplace(n, n).first;
    return it->second;
}

}  // namespace detail
}  // namespace rigidlid
