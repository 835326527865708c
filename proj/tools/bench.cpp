// Timing comparison of the serial and OpenMP paths: Jacobi sweeps on dense
// Laplacians and FED census batches. Not part of the test suite.
#include <chrono>
#include <cstdio>

#include "spectree/families.hpp"
#include "spectree/fiedler.hpp"
#include "spectree/linalg.hpp"

using namespace spectree;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench_eigen(int n) {
    Tree t = generate(FamilySpec::random_pruefer(n, 42));
    SymMatrix L = laplacian(t);

    JacobiOptions serial;
    serial.threads = 1;
    auto t0 = std::chrono::steady_clock::now();
    auto s1 = sym_eigen(L, serial);
    double ts = seconds(t0);

    JacobiOptions par;
    par.threads = 4;
    t0 = std::chrono::steady_clock::now();
    auto s2 = sym_eigen(L, par);
    double tp = seconds(t0);

    double max_diff = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = std::abs(s1.values[i] - s2.values[i]);
        if (d > max_diff) max_diff = d;
    }
    std::printf("jacobi n=%4d  serial %8.3f ms  omp(4) %8.3f ms  speedup %5.2fx  max|dv| %g\n",
                n, ts * 1e3, tp * 1e3, ts / tp, max_diff);
}

void bench_census(int count, int size) {
    CensusSpec spec;
    spec.exhaustive = false;
    spec.count = count;
    spec.size = size;
    spec.seed = 7;

    spec.jobs = 1;
    auto t0 = std::chrono::steady_clock::now();
    auto r1 = fed_census(spec);
    double ts = seconds(t0);

    spec.jobs = 4;
    t0 = std::chrono::steady_clock::now();
    auto r2 = fed_census(spec);
    double tp = seconds(t0);

    bool same = census_csv(r1, "x") == census_csv(r2, "x");
    std::printf("census %d x n=%d  serial %8.3f ms  omp(4) %8.3f ms  speedup %5.2fx  identical=%d\n",
                count, size, ts * 1e3, tp * 1e3, ts / tp, same ? 1 : 0);
}

} // namespace

int main() {
    for (int n : {64, 128, 256, 384}) bench_eigen(n);
    bench_census(500, 30);
    bench_census(200, 60);
    return 0;
}
