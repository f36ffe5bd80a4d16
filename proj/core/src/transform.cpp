#include "hns/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace hns {

namespace {

int read_thread_cap() {
    const char* env = std::getenv("HN_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    return static_cast<int>(v);
}

// One cached plan pair per (d, n). FFTW_ESTIMATE keeps plan selection
// deterministic, which the bit-identical-trace contract depends on.
class FftContext {
public:
    FftContext(int d, int n) : d_(d), n_(n) {
        count_ = 1;
        for (int i = 0; i < d; ++i) count_ *= static_cast<std::size_t>(n);
        buf_ = fftw_alloc_complex(count_);
        int dims[3] = {n, n, n};
        forward_ = fftw_plan_dft(d, dims, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft(d, dims, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!forward_ || !backward_) throw std::runtime_error("FFTW plan creation failed");
    }

    ~FftContext() {
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
        fftw_free(buf_);
    }

    FftContext(const FftContext&) = delete;
    FftContext& operator=(const FftContext&) = delete;

    void forward(const std::vector<double>& phys, std::vector<Complex>& coeffs) {
        std::lock_guard<std::mutex> lock(mu_);
        for (std::size_t i = 0; i < count_; ++i) {
            buf_[i][0] = phys[i];
            buf_[i][1] = 0.0;
        }
        fftw_execute(forward_);
        coeffs.resize(count_);
        const double scale = 1.0 / static_cast<double>(count_);
        for (std::size_t i = 0; i < count_; ++i)
            coeffs[i] = Complex{buf_[i][0] * scale, buf_[i][1] * scale};
    }

    void backward(const std::vector<Complex>& coeffs, std::vector<double>& phys,
                  double* max_imag) {
        std::lock_guard<std::mutex> lock(mu_);
        for (std::size_t i = 0; i < count_; ++i) {
            buf_[i][0] = coeffs[i].real();
            buf_[i][1] = coeffs[i].imag();
        }
        fftw_execute(backward_);
        phys.resize(count_);
        double worst = 0.0;
        for (std::size_t i = 0; i < count_; ++i) {
            phys[i] = buf_[i][0];
            worst = std::max(worst, std::abs(buf_[i][1]));
        }
        if (max_imag) *max_imag = worst;
    }

private:
    int d_, n_;
    std::size_t count_ = 0;
    fftw_complex* buf_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
    std::mutex mu_;
};

FftContext& context_for(const WavenumberLattice& lat) {
    static std::mutex registry_mu;
    static std::map<std::pair<int, int>, std::unique_ptr<FftContext>> registry;
    static int threads = [] {
        const int cap = read_thread_cap();
        if (cap > 1) {
            fftw_init_threads();
            fftw_plan_with_nthreads(cap);
        }
        return cap;
    }();
    (void)threads;

    std::lock_guard<std::mutex> lock(registry_mu);
    const auto key = std::make_pair(lat.dim(), lat.modes_per_dim());
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::make_unique<FftContext>(key.first, key.second)).first;
    return *it->second;
}

} // namespace

int transform_thread_count() { return read_thread_cap(); }

void forward_component(const WavenumberLattice& lat, const std::vector<double>& phys,
                       std::vector<Complex>& coeffs) {
    if (phys.size() != lat.mode_count())
        throw std::invalid_argument("forward_component: sample grid does not match lattice");
    context_for(lat).forward(phys, coeffs);
}

void inverse_component(const WavenumberLattice& lat, const std::vector<Complex>& coeffs,
                       std::vector<double>& phys, double* max_imag) {
    if (coeffs.size() != lat.mode_count())
        throw std::invalid_argument("inverse_component: coefficient array does not match lattice");
    context_for(lat).backward(coeffs, phys, max_imag);
}

SpectralField forward_transform(const PhysicalField& u) {
    SpectralField out(u.lattice);
    if (u.comp.size() != static_cast<std::size_t>(u.lattice.dim()))
        throw std::invalid_argument("forward_transform: component count does not match lattice");
    for (std::size_t c = 0; c < u.comp.size(); ++c)
        forward_component(u.lattice, u.comp[c], out.comp[c]);
    out.sanitize();
    return out;
}

PhysicalField inverse_transform(const SpectralField& f, double* max_imag) {
    PhysicalField out(f.lattice);
    double worst = 0.0;
    for (std::size_t c = 0; c < f.comp.size(); ++c) {
        double mi = 0.0;
        inverse_component(f.lattice, f.comp[c], out.comp[c], &mi);
        worst = std::max(worst, mi);
    }
    if (max_imag) *max_imag = worst;
    return out;
}

} // namespace hns
