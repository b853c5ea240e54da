// Times the OpenMP counting kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ffdecomp/bounds.hpp"
#include "ffdecomp/counting.hpp"
#include "ffdecomp/mvar.hpp"
#include "ffdecomp/text.hpp"

namespace {

template <class F>
double seconds(int reps, F&& fn, std::uint64_t& sink)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        sink += fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, std::uint64_t a, std::uint64_t b)
{
    std::printf("%-18s serial %10.4f s   parallel %10.4f s   speedup %6.2fx   %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, a == b ? "match" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"counting kernel benchmark"};
    std::string field = "2^8";
    int degree = 4;
    int reps = 3;
    std::uint64_t seed = 1;
    app.add_option("--field", field, "field descriptor");
    app.add_option("--degree", degree, "total degree of the random curve");
    app.add_option("--reps", reps, "repetitions per kernel");
    app.add_option("--seed", seed, "seed");
    CLI11_PARSE(app, argc, argv);

    const auto fp = ffd::parse_field(field);
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("field %s (q = %llu), %d thread(s)\n", fp->descriptor().c_str(),
                static_cast<unsigned long long>(fp->order()), threads);

    auto rng = ffd::instance_rng(seed, fp->order(), 0);
    const ffd::BiPoly F = ffd::random_bipoly(fp, degree, rng);
    const ffd::RatFun f = ffd::parse_ratfun(fp, "(X^4+X+1)/(X^2+X)");
    const ffd::RatFun g = ffd::parse_ratfun(fp, "X^3+X");
    const ffd::MRatFun fm = ffd::parse_mratfun(fp, "X1*X2+X1", 2);

    std::uint64_t sink = 0;
    std::uint64_t a = 0, b = 0;
    double s = 0, p = 0;

    s = seconds(reps, [&] { return a = ffd::count_affine_serial(F); }, sink);
    p = seconds(reps, [&] { return b = ffd::count_affine(F); }, sink);
    row("count_affine", s, p, a, b);

    s = seconds(reps, [&] { return a = ffd::count_projective_serial(F); }, sink);
    p = seconds(reps, [&] { return b = ffd::count_projective(F); }, sink);
    row("count_projective", s, p, a, b);

    s = seconds(reps, [&] { return a = ffd::count_pairs_serial(f, g); }, sink);
    p = seconds(reps, [&] { return b = ffd::count_pairs(f, g); }, sink);
    row("count_pairs", s, p, a, b);

    try {
        s = seconds(reps, [&] { return a = ffd::count_pairs_mv_serial(fm, g); }, sink);
        p = seconds(reps, [&] { return b = ffd::count_pairs_mv(fm, g); }, sink);
        row("count_pairs_mv", s, p, a, b);
    } catch (const ffd::LimitExceeded& e) {
        std::printf("%-18s skipped: %s\n", "count_pairs_mv", e.what());
    }

    std::printf("checksum %llu\n", static_cast<unsigned long long>(sink));
    return 0;
}
