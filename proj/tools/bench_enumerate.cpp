// Timing comparison between the serial reference kernels and the
// OpenMP-parallel ones: rank-4 solution enumeration and the unipotency
// equivalence sweep.
//
//   ./slk_bench [--bound B] [--sweep-bound B] [--threads T]

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "slk/diophantine.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
    std::int64_t bound = 12;
    std::int64_t sweep_bound = 4;
    int threads = 0;
    for (int i = 1; i < argc; i++) {
        std::string a = argv[i];
        if (a == "--bound" && i + 1 < argc) bound = std::stoll(argv[++i]);
        else if (a == "--sweep-bound" && i + 1 < argc) sweep_bound = std::stoll(argv[++i]);
        else if (a == "--threads" && i + 1 < argc) threads = std::stoi(argv[++i]);
        else {
            std::cerr << "usage: slk_bench [--bound B] [--sweep-bound B] [--threads T]\n";
            return 1;
        }
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    (void)threads;
    std::cout << "openmp: disabled at build time\n";
#endif

    size_t count_serial = 0, count_parallel = 0;
    double t_serial = timed([&] { count_serial = slk::enumerate_rank4_serial(bound).size(); });
    double t_parallel = timed([&] { count_parallel = slk::enumerate_rank4(bound).size(); });
    std::cout << "enumerate_rank4 bound=" << bound << ": " << count_serial << " solutions\n"
              << "  serial:   " << t_serial << " s\n"
              << "  parallel: " << t_parallel << " s  (speedup " << t_serial / t_parallel
              << "x)\n";
    if (count_serial != count_parallel) {
        std::cerr << "MISMATCH: serial and parallel solution counts differ\n";
        return 1;
    }

    std::uint64_t bad_serial = 0, bad_parallel = 0;
    double s_serial =
        timed([&] { bad_serial = slk::sweep_unipotency_equivalence_serial(sweep_bound); });
    double s_parallel = timed([&] { bad_parallel = slk::sweep_unipotency_equivalence(sweep_bound); });
    std::cout << "unipotency sweep bound=" << sweep_bound << ": " << bad_serial
              << " violations\n"
              << "  serial:   " << s_serial << " s\n"
              << "  parallel: " << s_parallel << " s  (speedup " << s_serial / s_parallel
              << "x)\n";
    if (bad_serial != bad_parallel) {
        std::cerr << "MISMATCH: serial and parallel sweep results differ\n";
        return 1;
    }
    return 0;
}
