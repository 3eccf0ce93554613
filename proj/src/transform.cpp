#include "qgk/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace qgk {
namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// FFTW's planner is not thread-safe; execution of an existing plan is.
// Plans are made on fftw_malloc'd arrays, so they may only be executed on
// equally aligned ones (see Workspace).
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    PlanPair get(std::size_t m) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(m); it != plans_.end()) return it->second;
        const int mi = static_cast<int>(m);
        double* real = fftw_alloc_real(m * m);
        fftw_complex* cplx = fftw_alloc_complex(m * (m / 2 + 1));
        PlanPair p;
        p.r2c = fftw_plan_dft_r2c_2d(mi, mi, real, cplx, FFTW_ESTIMATE);
        p.c2r = fftw_plan_dft_c2r_2d(mi, mi, cplx, real, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
        fftw_free(real);
        fftw_free(cplx);
        plans_.emplace(m, p);
        return p;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() {
        fftw_init_threads();
        fftw_plan_with_nthreads(fft_threads());
    }
    ~PlanCache() {
        for (auto& [m, p] : plans_) {
            fftw_destroy_plan(p.r2c);
            fftw_destroy_plan(p.c2r);
        }
    }

    std::mutex mutex_;
    std::map<std::size_t, PlanPair> plans_;
};

// Per-thread aligned scratch for one lattice size.
struct Workspace {
    std::size_t m = 0;
    double* real = nullptr;
    Complex* half = nullptr;

    ~Workspace() { release(); }
    void release() {
        fftw_free(real);
        fftw_free(half);
        real = nullptr;
        half = nullptr;
    }
    void reserve(std::size_t size) {
        if (size == m) return;
        release();
        m = size;
        real = fftw_alloc_real(m * m);
        half = reinterpret_cast<Complex*>(fftw_alloc_complex(m * (m / 2 + 1)));
    }
    [[nodiscard]] std::size_t half_size() const { return m * (m / 2 + 1); }
};

Workspace& workspace(std::size_t m) {
    thread_local Workspace ws;
    ws.reserve(m);
    return ws;
}

// real -> half, both in the workspace.
void execute_r2c(std::size_t m, Workspace& ws) {
    const auto plan = PlanCache::instance().get(m);
    fftw_execute_dft_r2c(plan.r2c, ws.real, reinterpret_cast<fftw_complex*>(ws.half));
}

// half -> real, both in the workspace; half is destroyed.
void execute_c2r(std::size_t m, Workspace& ws) {
    const auto plan = PlanCache::instance().get(m);
    fftw_execute_dft_c2r(plan.c2r, reinterpret_cast<fftw_complex*>(ws.half), ws.real);
}

}  // namespace

int fft_threads() {
    if (const char* env = std::getenv("QGK_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
        if (v == 0) return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    return 1;
}

SpectralField forward_transform(const RealField& f) {
    if (!f.all_finite()) throw ValidationError("forward_transform: non-finite sample");
    const GridSpec& grid = f.grid();
    const std::size_t n = grid.n;
    const std::size_t hc = n / 2 + 1;
    Workspace& ws = workspace(n);
    std::copy(f.samples().begin(), f.samples().end(), ws.real);
    execute_r2c(n, ws);
    const Complex* half = ws.half;

    SpectralField out(grid);
    const double scale = 1.0 / static_cast<double>(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t mi = (n - i) % n;
        for (std::size_t j = 0; j < hc; ++j) {
            const Complex c = half[i * hc + j] * scale;
            out.at_slot(i, j) = c;
            out.at_slot(mi, (n - j) % n) = std::conj(c);
        }
    }
    out.at_slot(0, 0) = Complex(out.at_slot(0, 0).real(), 0.0);
    return out;
}

RealField inverse_transform(const SpectralField& u) {
    const std::size_t n = u.grid().n;
    const std::size_t hc = n / 2 + 1;
    Workspace& ws = workspace(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < hc; ++j) ws.half[i * hc + j] = u.at_slot(i, j);
    execute_c2r(n, ws);
    std::vector<double> real(ws.real, ws.real + n * n);
    return RealField(u.grid(), std::move(real));
}

namespace detail {

std::size_t product_lattice(const GridSpec& grid) {
    return grid.dealias == DealiasPolicy::three_halves_padding ? 3 * grid.n / 2 : grid.n;
}

void synthesize(const SpectralField& u, std::size_t m, std::vector<double>& out) {
    const GridSpec& grid = u.grid();
    const std::size_t n = grid.n;
    const int kmax = static_cast<int>(n / 2) - 1;
    const std::size_t hc = m / 2 + 1;
    Workspace& ws = workspace(m);
    Complex* half = ws.half;
    std::fill(half, half + ws.half_size(), Complex{});
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
        const std::size_t src_i = grid.slot_of(k1);
        const std::size_t dst_i = static_cast<std::size_t>((k1 + static_cast<int>(m)) % static_cast<int>(m));
        for (int k2 = 0; k2 <= kmax; ++k2) {
            half[dst_i * hc + static_cast<std::size_t>(k2)] = u.at_slot(src_i, static_cast<std::size_t>(k2));
        }
    }
    execute_c2r(m, ws);
    out.assign(ws.real, ws.real + m * m);
}

SpectralField analyze(const std::vector<double>& samples, std::size_t m, const GridSpec& grid) {
    if (samples.size() != m * m) throw ValidationError("analyze: sample count does not match the lattice");
    Workspace& ws = workspace(m);
    std::copy(samples.begin(), samples.end(), ws.real);
    execute_r2c(m, ws);
    const Complex* half = ws.half;
    const std::size_t n = grid.n;
    const int kmax = static_cast<int>(n / 2) - 1;
    const std::size_t hc = m / 2 + 1;
    const double scale = 1.0 / static_cast<double>(m * m);
    SpectralField out(grid);
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
        const std::size_t src_i = static_cast<std::size_t>((k1 + static_cast<int>(m)) % static_cast<int>(m));
        for (int k2 = 0; k2 <= kmax; ++k2) {
            const Complex c = half[src_i * hc + static_cast<std::size_t>(k2)] * scale;
            out.at(k1, k2) = c;
            out.at(-k1, -k2) = std::conj(c);
        }
    }
    // Column k2 = 0 is visited from both sides; the later write also rewrites
    // its mirror, so the result is exactly Hermitian.
    out.at(0, 0) = Complex(out.at(0, 0).real(), 0.0);
    return out;
}

}  // namespace detail
}  // namespace qgk
