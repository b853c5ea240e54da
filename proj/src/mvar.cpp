#include "ffdecomp/mvar.hpp"

#include <algorithm>
#include <string>

#include "ffdecomp/counting.hpp"
#include "ffdecomp/limits.hpp"

namespace ffd {

int MRatFun::degree() const
{
    return std::max({num_.total_degree(), den_.total_degree(), 0});
}

MRatFun mrat_make(const MPoly& a, const MPoly& b)
{
    if (b.is_zero())
        throw InvalidArgument("zero denominator");
    if (a.nvars() != b.nvars())
        throw InvalidArgument("numerator and denominator have different arity");
    if (!a.field()->same_as(*b.field()))
        throw DomainError("numerator and denominator over different fields");
    if (a.is_zero())
        return MRatFun(a, MPoly::constant(a.field(), a.nvars(), a.F().one()));
    const MPoly g = mgcd(a, b);
    MPoly n = a, d = b;
    if (!g.is_constant()) {
        n = *exact_div(a, g);
        d = *exact_div(b, g);
    }
    const Elem s = d.F().inv(d.lead().second);
    return MRatFun(n.scale(s), d.scale(s));
}

MRatFun mrat_make(const MPoly& a)
{
    return mrat_make(a, MPoly::constant(a.field(), a.nvars(), a.F().one()));
}

MRatFun mrat_from(const RatFun& f)
{
    return mrat_make(MPoly::from_poly(f.num(), 1, 0), MPoly::from_poly(f.den(), 1, 0));
}

std::optional<PointOrInf> mrat_eval(const MRatFun& f, std::span<const Elem> x)
{
    if (x.size() != f.nvars())
        throw InvalidArgument("point has " + std::to_string(x.size()) + " coordinates, expected "
                              + std::to_string(f.nvars()));
    const Elem a = f.num().eval(x), b = f.den().eval(x);
    if (b.v != 0)
        return PointOrInf::finite(f.field()->div(a, b));
    if (a.v != 0)
        return PointOrInf::infinity();
    return std::nullopt;
}

namespace {

void unpack(std::uint64_t idx, std::uint64_t q, std::vector<Elem>& pt)
{
    for (auto& c : pt) {
        c = Elem{static_cast<std::uint32_t>(idx % q)};
        idx /= q;
    }
}

std::uint64_t grid(std::uint64_t q, std::size_t n)
{
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < n; ++i)
        s *= q;
    return s;
}

void require_same_field(const MRatFun& f, const RatFun& g)
{
    if (!f.field()->same_as(*g.field()))
        throw DomainError("f and g over different fields");
}

std::vector<std::uint64_t> histogram(const RatFun& g)
{
    const std::uint64_t q = g.field()->order();
    std::vector<std::uint64_t> hist(q + 1, 0);
    for (auto v : value_table(g))
        ++hist[v];
    return hist;
}

} // namespace

std::uint64_t undefined_count(const MRatFun& f)
{
    const std::uint64_t q = f.field()->order();
    const std::size_t n = f.nvars();
    check_grid(q, n);
    const auto size = static_cast<std::int64_t>(grid(q, n));
    std::uint64_t total = 0;
#pragma omp parallel
    {
        std::vector<Elem> pt(n);
#pragma omp for reduction(+ : total) schedule(static)
        for (std::int64_t i = 0; i < size; ++i) {
            unpack(static_cast<std::uint64_t>(i), q, pt);
            total += !mrat_eval(f, pt).has_value();
        }
    }
    return total;
}

std::uint64_t count_pairs_mv(const MRatFun& f, const RatFun& g)
{
    require_same_field(f, g);
    const std::uint64_t q = f.field()->order();
    const std::size_t n = f.nvars();
    check_grid(q, n + 1);
    const auto hist = histogram(g);
    const auto size = static_cast<std::int64_t>(grid(q, n));
    std::uint64_t total = 0;
#pragma omp parallel
    {
        std::vector<Elem> pt(n);
#pragma omp for reduction(+ : total) schedule(static)
        for (std::int64_t i = 0; i < size; ++i) {
            unpack(static_cast<std::uint64_t>(i), q, pt);
            if (auto v = mrat_eval(f, pt))
                total += hist[v->index(q)];
        }
    }
    return total;
}

std::uint64_t count_pairs_mv_serial(const MRatFun& f, const RatFun& g)
{
    require_same_field(f, g);
    const std::uint64_t q = f.field()->order();
    const std::size_t n = f.nvars();
    check_grid(q, n + 1);
    const std::uint64_t size = grid(q, n);
    std::vector<Elem> pt(n);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < size; ++i) {
        unpack(i, q, pt);
        const auto v = mrat_eval(f, pt);
        if (!v)
            continue;
        for (std::uint64_t y = 0; y < q; ++y)
            total += *v == rat_eval(g, Elem{static_cast<std::uint32_t>(y)});
    }
    return total;
}

DecompReport check_T41(const MRatFun& f, const RatFun& g, const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw InvalidArgument("epsilon must satisfy 0 < eps <= 1");
    if (f.is_constant() || g.is_constant())
        throw InvalidArgument("f and g must be nonconstant rational functions");
    require_same_field(f, g);
    const std::uint64_t q = f.field()->order();
    const std::size_t n = f.nvars();

    DecompReport r;
    r.q = q;
    r.n = static_cast<int>(n);
    r.d = f.degree();
    r.delta = g.degree();
    r.epsilon = eps;

    const BigInt dd = r.d + r.delta;
    const Rational c(39, 5);
    r.cond_iii.threshold = c * c * c * Rational(ipow(dd, 13)) / ipow(eps, 6);
    r.cond_iii.cubed = true;
    r.cond_iii.pass = Rational(ipow(BigInt(q), 3)) >= r.cond_iii.threshold;

    r.pair_count = count_pairs_mv(f, g);
    r.pair_threshold = Rational(ipow(BigInt(q), static_cast<unsigned>(n))) * (Rational(r.delta / 2) + eps);
    r.pair_pass = Rational(r.pair_count) >= r.pair_threshold;

    // diagnostics in the univariate shape: image containment and small fibers of g
    const auto hist = histogram(g);
    const std::uint64_t g_inf = rat_eval(g, PointOrInf::infinity()).index(q);
    const auto delta = static_cast<std::uint64_t>(r.delta);
    std::uint64_t exc = 0;
    for (std::uint64_t a = 0; a < q; ++a)
        exc += 2 * hist[rat_eval(g, Elem{static_cast<std::uint32_t>(a)}).index(q)] <= delta;
    exc += 2 * hist[g_inf] <= delta;
    r.cond_ii.exceptions = exc;
    r.cond_ii.budget = 8 * static_cast<std::uint64_t>(r.d + r.delta);
    r.cond_ii.pass = exc <= r.cond_ii.budget;

    check_grid(q, n);
    const std::uint64_t size = grid(q, n);
    std::vector<Elem> pt(n);
    r.cond_i = true;
    for (std::uint64_t i = 0; i < size && r.cond_i; ++i) {
        unpack(i, q, pt);
        if (auto v = mrat_eval(f, pt)) {
            const std::uint64_t idx = v->index(q);
            r.cond_i = hist[idx] > 0 || idx == g_inf;
        }
    }

    r.hypotheses_hold = r.pair_pass && r.cond_iii.pass;
    return r;
}

namespace {

// U = sum p_i N^i D^{delta-i}, V = sum q_i N^i D^{delta-i}
std::pair<MPoly, MPoly> compose_parts(const RatFun& g, const MPoly& N, const MPoly& D)
{
    const int delta = g.degree();
    const FieldPtr& fp = N.field();
    const std::size_t n = N.nvars();
    std::vector<MPoly> np{MPoly::constant(fp, n, fp->one())}, dp{MPoly::constant(fp, n, fp->one())};
    for (int i = 1; i <= delta; ++i) {
        np.push_back(np.back() * N);
        dp.push_back(dp.back() * D);
    }
    MPoly U(fp, n), V(fp, n);
    for (int i = 0; i <= delta; ++i) {
        const MPoly t = np[i] * dp[delta - i];
        U = U + t.scale(g.num().coeff(i));
        V = V + t.scale(g.den().coeff(i));
    }
    return {U, V};
}

} // namespace

MRatFun mrat_compose(const RatFun& g, const MRatFun& h)
{
    require_same_field(h, g);
    auto [U, V] = compose_parts(g, h.num(), h.den());
    if (V.is_zero())
        throw DomainError("composition has a vanishing denominator");
    return mrat_make(U, V);
}

bool verify_h_mv(const MRatFun& f, const RatFun& g, const MRatFun& h)
{
    if (f.nvars() != h.nvars() || !f.field()->same_as(*g.field()) || !f.field()->same_as(*h.field()))
        return false;
    auto [U, V] = compose_parts(g, h.num(), h.den());
    if (V.is_zero())
        return false;
    return f.num() * V == f.den() * U;
}

bool mrat_less(const MRatFun& a, const MRatFun& b)
{
    if (!(a.num() == b.num()))
        return mpoly_less(a.num(), b.num());
    return mpoly_less(a.den(), b.den());
}

namespace {

std::vector<MPoly> normalized_divisors(const MPoly& c, int max_deg)
{
    const FieldPtr& fp = c.field();
    std::vector<MPoly> out{MPoly::constant(fp, c.nvars(), fp->one())};
    if (c.is_constant())
        return out;
    const MFactorization fac = kronecker_factor(c);
    for (const auto& f : fac.factors) {
        const std::size_t base = out.size();
        for (std::size_t i = 0; i < base; ++i) {
            MPoly acc = out[i];
            for (int m = 1; m <= f.multiplicity; ++m) {
                if (acc.total_degree() + f.poly.total_degree() > max_deg)
                    break;
                acc = acc * f.poly;
                out.push_back(acc);
            }
        }
    }
    return out;
}

} // namespace

std::optional<MRatFun> find_h_mv(const MRatFun& f, const RatFun& g)
{
    if (f.is_constant() || g.is_constant())
        throw InvalidArgument("f and g must be nonconstant rational functions");
    require_same_field(f, g);
    const int d = f.degree(), delta = g.degree();
    const std::size_t n = f.nvars();
    if (d + delta > limits().max_mv_degree_sum)
        throw LimitExceeded("d + delta = " + std::to_string(d + delta) + " exceeds the search envelope of "
                            + std::to_string(limits().max_mv_degree_sum));
    if (n > static_cast<std::size_t>(limits().max_mv_vars))
        throw LimitExceeded(std::to_string(n) + " variables exceed the search envelope of "
                            + std::to_string(limits().max_mv_vars));
    // deg g(h) = delta deg h holds in any number of variables
    if (d % delta != 0)
        return std::nullopt;
    const int e = d / delta;
    const FieldPtr& fp = f.field();
    const Field& F = *fp;

    std::vector<MPoly> c;
    for (int j = 0; j <= delta; ++j)
        c.push_back(f.num().scale(g.den().coeff(j)) - f.den().scale(g.num().coeff(j)));
    if (c.front().is_zero() || c.back().is_zero())
        return std::nullopt;

    const auto num_divs = normalized_divisors(c.front(), e);
    const auto den_divs = normalized_divisors(c.back(), e);

    const std::uint64_t q = F.order();
    check_grid(q, n);
    const std::uint64_t size = grid(q, n);

    std::optional<MRatFun> best;
    std::vector<Elem> pt(n);
    for (const auto& n0 : num_divs) {
        for (const auto& d0 : den_divs) {
            if (std::max(n0.total_degree(), d0.total_degree()) != e)
                continue;
            if (!mgcd(n0, d0).is_constant())
                continue;
            std::vector<MPoly> basis;
            {
                std::vector<MPoly> np{MPoly::constant(fp, n, F.one())}, dp{MPoly::constant(fp, n, F.one())};
                for (int j = 1; j <= delta; ++j) {
                    np.push_back(np.back() * n0);
                    dp.push_back(dp.back() * d0);
                }
                for (int j = 0; j <= delta; ++j)
                    basis.push_back(c[j] * np[j] * dp[delta - j]);
            }

            std::vector<Elem> proposals;
            bool specialized = false;
            for (std::uint64_t i = 0; i < size && !specialized; ++i) {
                unpack(i, q, pt);
                const Elem n_x = n0.eval(pt), d_x = d0.eval(pt);
                if (c.back().eval(pt).v == 0 || d_x.v == 0 || n_x.v == 0)
                    continue;
                specialized = true;
                const Elem ratio = F.div(n_x, d_x);
                std::vector<Elem> lam(delta + 1);
                Elem rp = F.one();
                for (int j = 0; j <= delta; ++j) {
                    lam[j] = F.mul(c[j].eval(pt), rp);
                    rp = F.mul(rp, ratio);
                }
                for (Elem root : roots(Poly(fp, lam)))
                    if (root.v != 0)
                        proposals.push_back(root);
            }
            if (!specialized)
                for (std::uint64_t i = 1; i < q; ++i)
                    proposals.push_back(F.element(i));

            for (Elem lambda : proposals) {
                MPoly s(fp, n);
                Elem lp = F.one();
                for (int j = 0; j <= delta; ++j) {
                    s = s + basis[j].scale(lp);
                    lp = F.mul(lp, lambda);
                }
                if (!s.is_zero())
                    continue;
                MRatFun h = mrat_make(n0.scale(lambda), d0);
                if (!best || mrat_less(h, *best))
                    best = h;
            }
        }
    }
    return best;
}

} // namespace ffd
