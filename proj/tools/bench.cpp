// Serial vs OpenMP timings for the two hot kernels: Dirichlet convolution and
// batched functional evaluation (the optimizer's inner loop).

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "moll/functional.hpp"
#include "moll/nt.hpp"
#include "moll/optimize.hpp"

using clk = std::chrono::steady_clock;

static double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel paths fall back to serial\n");
#endif

    {
        const std::int64_t N = 2000000;
        moll::nt::ArithTable t = moll::nt::build_table(N, 2);
        std::vector<double> f(t.lambda);
        std::vector<double> g(t.lambda);

        auto t0 = clk::now();
        auto serial = moll::nt::dirichlet_convolve_serial(f, g);
        double ms_serial = ms_since(t0);

        t0 = clk::now();
        auto par = moll::nt::dirichlet_convolve(f, g);
        double ms_par = ms_since(t0);

        double maxdev = 0.0;
        for (std::size_t i = 0; i < serial.size(); ++i)
            maxdev = std::max(maxdev, std::abs(serial[i] - par[i]));
        std::printf("dirichlet_convolve N=%lld: serial %.1f ms, parallel %.1f ms (x%.2f), dev %.1e\n",
                    static_cast<long long>(N), ms_serial, ms_par, ms_serial / ms_par, maxdev);
    }

    {
        moll::SearchSpace sp;
        sp.p1_degree = 4;
        sp.pl_degrees = {2, 2};
        sp.q_odd_terms = 3;
        const int n = sp.dim();
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> gauss(0.0, 0.2);
        const int batch = 512;
        std::vector<std::vector<double>> pts(batch, std::vector<double>(n));
        for (auto& p : pts) {
            for (int d = 0; d < n - 1; ++d) p[d] = gauss(rng);
            p[n - 1] = 1.2;
        }

        std::vector<double> out_serial(batch), out_par(batch);
        auto t0 = clk::now();
        for (int i = 0; i < batch; ++i) out_serial[i] = moll::objective_kappa(sp, pts[i]);
        double ms_serial = ms_since(t0);

        t0 = clk::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < batch; ++i) out_par[i] = moll::objective_kappa(sp, pts[i]);
        double ms_par = ms_since(t0);

        double maxdev = 0.0;
        for (int i = 0; i < batch; ++i)
            if (std::isfinite(out_serial[i]))
                maxdev = std::max(maxdev, std::abs(out_serial[i] - out_par[i]));
        std::printf("eval_total batch %d: serial %.1f ms, parallel %.1f ms (x%.2f), dev %.1e\n",
                    batch, ms_serial, ms_par, ms_serial / ms_par, maxdev);
    }
    return 0;
}
