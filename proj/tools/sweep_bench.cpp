// Timing comparison of the parallel corridor-sweep kernel against the serial
// reference, with an exact row-by-row equality check.

#include "epn/metric.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

using namespace epn;

namespace {

double run_ms(bool parallel, const ModelFamily& fam, const std::vector<double>& grid,
              std::vector<SweepRow>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = parallel ? corridor_sweep(fam, grid) : corridor_sweep_serial(fam, grid);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int steps = argc > 1 ? std::atoi(argv[1]) : 2000;
    if (steps < 2) steps = 2;

    auto fam = ModelFamily::toy7();
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) grid[i] = 0.999 * i / (steps - 1);

    std::vector<SweepRow> serial_rows, parallel_rows;
    double serial_ms = run_ms(false, fam, grid, serial_rows);
    double parallel_ms = run_ms(true, fam, grid, parallel_rows);

    bool identical = serial_rows.size() == parallel_rows.size();
    for (size_t i = 0; identical && i < serial_rows.size(); ++i)
        identical = serial_rows[i].t == parallel_rows[i].t &&
                    serial_rows[i].eigenvalues == parallel_rows[i].eigenvalues &&
                    serial_rows[i].min_gap == parallel_rows[i].min_gap &&
                    serial_rows[i].theta_min_eig == parallel_rows[i].theta_min_eig &&
                    serial_rows[i].is_real == parallel_rows[i].is_real;

    std::printf("grid points: %d\n", steps);
    std::printf("serial:   %.1f ms\n", serial_ms);
    std::printf("parallel: %.1f ms\n", parallel_ms);
    std::printf("speedup:  %.2fx\n", serial_ms / parallel_ms);
    std::printf("rows identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
