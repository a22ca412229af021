// Times the grid kernels in both execution modes and checks that the OpenMP
// path reproduces the serial reference bit-for-bit.
#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "burgers/registry.hpp"
#include "burgers/verify.hpp"

using namespace burgers;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const ExampleEntry& entry(const char* id) {
    for (const auto& e : example_registry()) {
        if (e.id == id) return e;
    }
    std::fprintf(stderr, "missing registry entry %s\n", id);
    std::exit(1);
}

void report(const char* kernel, const char* grid, double serial_ms, double omp_ms,
            bool identical) {
    std::printf("%-18s %-12s %10.1f %10.1f %8.2fx   %s\n", kernel, grid, serial_ms, omp_ms,
                serial_ms / omp_ms, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n\n");
#endif
    std::printf("%-18s %-12s %10s %10s %9s\n", "kernel", "grid", "serial/ms", "omp/ms",
                "speedup");

    {
        const ExampleEntry& e = entry("ex3.4-exp");
        Solver solver(e.problem);
        auto xs = linspace(1.2, 3.0, 65);
        auto ts = linspace(0.1, 1.0, 65);
        Field serial, parallel;
        double ts_ms = time_ms([&] {
            serial = solve_field(solver, xs, ts, {BranchSelect::single_only, Execution::serial});
        });
        double tp_ms = time_ms([&] {
            parallel =
                solve_field(solver, xs, ts, {BranchSelect::single_only, Execution::openmp});
        });
        report("solve_field", "65x65", ts_ms, tp_ms, bit_equal(serial.u, parallel.u));
    }
    {
        const ExampleEntry& e = entry("ex2.2-lambertw");
        Field field = expression_field(e.closed_form, e.problem.params,
                                       linspace(1.0, 3.0, 1201), linspace(0.1, 0.9, 1201),
                                       Execution::serial);
        ResidualReport serial, parallel;
        double ts_ms = time_ms(
            [&] { serial = residual_field(e.problem, field, 1e-4, Execution::serial); });
        double tp_ms = time_ms(
            [&] { parallel = residual_field(e.problem, field, 1e-4, Execution::openmp); });
        report("residual_field", "1201x1201", ts_ms, tp_ms,
               bit_equal(serial.residuals, parallel.residuals));
    }
    {
        const ExampleEntry& e = entry("ex2.2-lambertw");
        auto xs = linspace(1.0, 3.0, 801);
        auto ts = linspace(0.1, 0.9, 801);
        Field serial, parallel;
        double ts_ms = time_ms([&] {
            serial = expression_field(e.closed_form, e.problem.params, xs, ts,
                                      Execution::serial);
        });
        double tp_ms = time_ms([&] {
            parallel = expression_field(e.closed_form, e.problem.params, xs, ts,
                                        Execution::openmp);
        });
        report("expression_field", "801x801", ts_ms, tp_ms, bit_equal(serial.u, parallel.u));
    }
    return 0;
}
