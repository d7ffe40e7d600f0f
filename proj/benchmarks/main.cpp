#include <benchmark/benchmark.h>

// The distro's static benchmark_main archive carries LTO bytecode tied to a
// different compiler build, so the entry point lives here.
BENCHMARK_MAIN();
