#include "ffdecomp/counting.hpp"

#include <string>

#include "ffdecomp/limits.hpp"

namespace ffd {

void check_grid(std::uint64_t q, std::size_t n)
{
    const std::uint64_t cap = limits().max_order;
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (size > cap / q)
            throw LimitExceeded("grid of size " + std::to_string(q) + "^" + std::to_string(n)
                                + " exceeds the configured limit");
        size *= q;
    }
}

namespace {

std::uint64_t grid_size(std::uint64_t q, std::size_t n)
{
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < n; ++i)
        s *= q;
    return s;
}

void unpack(std::uint64_t idx, std::uint64_t q, std::vector<Elem>& point)
{
    for (auto& c : point) {
        c = Elem{static_cast<std::uint32_t>(idx % q)};
        idx /= q;
    }
}

} // namespace

std::uint64_t count_affine(const MPoly& F)
{
    const std::uint64_t q = F.F().order();
    const std::size_t n = F.nvars();
    check_grid(q, n);
    if (F.is_zero())
        return grid_size(q, n);
    if (n == 0)
        return 0;
    const auto outer = static_cast<std::int64_t>(grid_size(q, n - 1));
    std::uint64_t total = 0;
#pragma omp parallel
    {
        std::vector<Elem> prefix(n - 1);
#pragma omp for reduction(+ : total) schedule(dynamic, 16)
        for (std::int64_t i = 0; i < outer; ++i) {
            unpack(static_cast<std::uint64_t>(i), q, prefix);
            Poly u = F.specialize_last(prefix);
            total += u.is_zero() ? q : count_roots(u);
        }
    }
    return total;
}

std::uint64_t count_affine_serial(const MPoly& F)
{
    const std::uint64_t q = F.F().order();
    const std::size_t n = F.nvars();
    check_grid(q, n);
    const std::uint64_t size = grid_size(q, n);
    std::vector<Elem> pt(n);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < size; ++i) {
        unpack(i, q, pt);
        total += F.eval(pt).v == 0;
    }
    return total;
}

std::uint64_t count_projective(const BiPoly& F)
{
    if (F.nvars() != 2)
        throw InvalidArgument("count_projective expects a bivariate polynomial");
    if (F.is_zero())
        throw InvalidArgument("count_projective of the zero polynomial");
    const MPoly H = homogenize(F);
    const std::uint64_t q = F.F().order();
    std::uint64_t at_infinity = 0;
    // line Z = 0: representatives (x : 1 : 0) and (1 : 0 : 0)
    for (std::uint64_t i = 0; i < q; ++i) {
        const Elem pt[3] = {Elem{static_cast<std::uint32_t>(i)}, F.F().one(), F.F().zero()};
        at_infinity += H.eval(pt).v == 0;
    }
    const Elem corner[3] = {F.F().one(), F.F().zero(), F.F().zero()};
    at_infinity += H.eval(corner).v == 0;
    return count_affine(F) + at_infinity;
}

std::uint64_t count_projective_serial(const BiPoly& F)
{
    if (F.nvars() != 2)
        throw InvalidArgument("count_projective expects a bivariate polynomial");
    if (F.is_zero())
        throw InvalidArgument("count_projective of the zero polynomial");
    const MPoly H = homogenize(F);
    const Field& f = F.F();
    const std::uint64_t q = f.order();
    check_grid(q, 2);
    std::uint64_t total = 0;
    for (std::uint64_t x = 0; x < q; ++x) {
        for (std::uint64_t y = 0; y < q; ++y) {
            const Elem pt[3] = {Elem{static_cast<std::uint32_t>(x)}, Elem{static_cast<std::uint32_t>(y)}, f.one()};
            total += H.eval(pt).v == 0;
        }
        const Elem pt[3] = {Elem{static_cast<std::uint32_t>(x)}, f.one(), f.zero()};
        total += H.eval(pt).v == 0;
    }
    const Elem corner[3] = {f.one(), f.zero(), f.zero()};
    total += H.eval(corner).v == 0;
    return total;
}

std::uint64_t count_pairs(const RatFun& f, const RatFun& g)
{
    if (!f.field()->same_as(*g.field()))
        throw DomainError("f and g over different fields");
    const std::uint64_t q = f.field()->order();
    check_grid(q, 1);
    const auto gv = value_table(g);
    std::vector<std::uint64_t> hist(q + 1, 0);
    for (auto v : gv)
        ++hist[v];
    const auto fv = value_table(f);
    const auto n = static_cast<std::int64_t>(q);
    std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::int64_t x = 0; x < n; ++x)
        total += hist[fv[x]];
    return total;
}

std::uint64_t count_pairs_serial(const RatFun& f, const RatFun& g)
{
    if (!f.field()->same_as(*g.field()))
        throw DomainError("f and g over different fields");
    const std::uint64_t q = f.field()->order();
    check_grid(q, 2);
    std::uint64_t total = 0;
    for (std::uint64_t x = 0; x < q; ++x) {
        const PointOrInf fx = rat_eval(f, Elem{static_cast<std::uint32_t>(x)});
        for (std::uint64_t y = 0; y < q; ++y)
            total += fx == rat_eval(g, Elem{static_cast<std::uint32_t>(y)});
    }
    return total;
}

} // namespace ffd
