// Timing comparison between the serial reference kernels and the parallel
// production paths: matrix product, exhaustive pair scans, group averaging
// (naive enumeration vs the power-basis factorization) and the Jacobi SVD.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hsstab/corner.hpp"
#include "hsstab/group.hpp"
#include "hsstab/kernels.hpp"
#include "hsstab/rep.hpp"
#include "hsstab/rng.hpp"
#include "hsstab/svd.hpp"

using namespace hsstab;

namespace {

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

double time_call(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const double t0 = now();
    for (int r = 0; r < reps; ++r) fn();
    return (now() - t0) / reps;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.4f ms %10.4f ms %7.2fx\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel);
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main() {
    set_threads(0 == max_threads() ? 1 : max_threads());
    const int threads = max_threads();
    std::printf("kernel benchmark, %d thread(s)\n", threads);
    std::printf("%-34s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        Rng rng(1);
        Matrix a = random_gaussian_matrix(160, 160, rng);
        Matrix b = random_gaussian_matrix(160, 160, rng);
        const double serial = time_call([&] { ref::multiply(a, b); }, 5);
        const double parallel = time_call([&] { multiply(a, b); }, 5);
        row("multiply 160x160", serial, parallel);
    }

    {
        GroupPtr h = GroupTable::heisenberg(5);
        IrrepCatalog cat = irreps(h);
        const UnitaryRep* pi = nullptr;
        for (const auto& r : cat.irreps)
            if (r.dim == 5) pi = &r;
        CornerOptions opts;
        opts.check_irreducible = false;
        ApproxRep psi = corner_eps_rep(*pi, opts);
        auto scan = [&] { measure_defect(*h, *psi.images, ScanOptions{}); };
        set_threads(1);
        const double serial = time_call(scan, 3);
        set_threads(threads);
        const double parallel = time_call(scan, 3);
        row("defect scan heisenberg:5 (125^2)", serial, parallel);
    }

    {
        GroupPtr h = GroupTable::heisenberg(5);
        IrrepCatalog cat = irreps(h);
        const UnitaryRep* pi = nullptr;
        for (const auto& r : cat.irreps)
            if (r.dim == 5) pi = &r;
        Rng rng(2);
        Matrix x = random_gaussian_matrix(5, 5, rng);
        const double naive =
            time_call([&] { ref::averaged_conjugation(*h, *pi->images, *pi->images, x); }, 10);
        const double factored =
            time_call([&] { averaged_conjugation(*h, *pi->images, *pi->images, x); }, 10);
        row("group average heisenberg:5", naive, factored);
    }

    {
        Rng rng(3);
        Matrix a = random_gaussian_matrix(1200, 300, rng);
        auto factor = [&] { svd_values(a); };
        set_threads(1);
        const double serial = time_call(factor, 3);
        set_threads(threads);
        const double parallel = time_call(factor, 3);
        row("jacobi svd values 1200x300", serial, parallel);
    }

    return 0;
}
