#include "ffdecomp/decomp.hpp"

#include <algorithm>
#include <set>

#include "ffdecomp/limits.hpp"

namespace ffd {

namespace {

void require_nonconstant(const RatFun& f, const RatFun& g)
{
    if (f.is_constant() || g.is_constant())
        throw InvalidArgument("f and g must be nonconstant rational functions");
    if (!f.field()->same_as(*g.field()))
        throw DomainError("f and g over different fields");
}

// Shared scan behind check_T1 and check_T31.
DecompReport scan(const RatFun& f, const RatFun& g)
{
    require_nonconstant(f, g);
    const std::uint64_t q = f.field()->order();
    check_grid(q, 1);

    DecompReport r;
    r.q = q;
    r.d = f.degree();
    r.delta = g.degree();

    const auto gv = value_table(g);
    const auto fv = value_table(f);
    std::vector<std::uint64_t> hist(q + 1, 0);
    for (auto v : gv)
        ++hist[v];
    const std::uint64_t g_inf = rat_eval(g, PointOrInf::infinity()).index(q);

    // (i): every f(x) is attained by g somewhere on F_q u {inf}
    r.cond_i = std::all_of(fv.begin(), fv.end(),
                           [&](std::uint32_t v) { return hist[v] > 0 || v == g_inf; });

    // (ii): 2 |fiber| <= delta marks an exception
    const auto delta = static_cast<std::uint64_t>(r.delta);
    std::uint64_t exc = 0;
    for (auto v : gv)
        exc += 2 * hist[v] <= delta;
    exc += 2 * hist[g_inf] <= delta;
    r.cond_ii.exceptions = exc;
    r.cond_ii.budget = 8 * static_cast<std::uint64_t>(r.d + r.delta);
    r.cond_ii.pass = exc <= r.cond_ii.budget;

    std::uint64_t pairs = 0;
    for (auto v : fv)
        pairs += hist[v];
    r.pair_count = pairs;
    return r;
}

// Monic divisors of c of degree <= max_deg, from its factorization.
std::vector<Poly> monic_divisors(const Poly& c, int max_deg)
{
    const Factorization fac = factor(c);
    std::vector<Poly> out{Poly::constant(c.field(), c.F().one())};
    for (const auto& pf : fac.factors) {
        const std::size_t base = out.size();
        for (std::size_t i = 0; i < base; ++i) {
            Poly acc = out[i];
            for (int m = 1; m <= pf.multiplicity; ++m) {
                if (acc.degree() + pf.poly.degree() > max_deg)
                    break;
                acc = acc * pf.poly;
                out.push_back(acc);
            }
        }
    }
    return out;
}

} // namespace

DecompReport check_T1(const RatFun& f, const RatFun& g)
{
    DecompReport r = scan(f, g);
    const BigInt dd = r.d + r.delta;
    r.cond_iii.threshold = Rational(ipow(dd, 4));
    r.cond_iii.pass = Rational(r.q) >= r.cond_iii.threshold;
    // (floor(delta/2) + 1)(q - d |Y2|), the bound (i) and (ii) force on the pair count
    const BigInt floor_half = r.delta / 2;
    r.pair_threshold = Rational((floor_half + 1) * (BigInt(r.q) - BigInt(r.d) * r.cond_ii.exceptions));
    r.pair_pass = Rational(r.pair_count) >= r.pair_threshold;
    r.hypotheses_hold = r.cond_i && r.cond_ii.pass && r.cond_iii.pass;
    return r;
}

DecompReport check_T31(const RatFun& f, const RatFun& g, const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw InvalidArgument("epsilon must satisfy 0 < eps <= 1");
    DecompReport r = scan(f, g);
    r.epsilon = eps;
    const BigInt dd = r.d + r.delta;
    r.cond_iii.threshold = Rational(ipow(dd, 4)) / (eps * eps);
    r.cond_iii.pass = Rational(r.q) >= r.cond_iii.threshold;
    r.pair_threshold = Rational(r.q) * (Rational(r.delta / 2) + eps);
    r.pair_pass = Rational(r.pair_count) >= r.pair_threshold;
    r.hypotheses_hold = r.pair_pass && r.cond_iii.pass;
    return r;
}

std::optional<RatFun> find_h(const RatFun& f, const RatFun& g)
{
    require_nonconstant(f, g);
    const int d = f.degree(), delta = g.degree();
    if (d % delta != 0)
        return std::nullopt;
    const int e = d / delta;
    const FieldPtr& fp = f.field();
    const Field& F = *fp;

    // F(X, Y) = sum_j c_j(X) Y^j with c_j = A q_j - B p_j
    std::vector<Poly> c;
    for (int j = 0; j <= delta; ++j)
        c.push_back(f.num().scale(g.den().coeff(j)) - f.den().scale(g.num().coeff(j)));
    if (c.front().is_zero() || c.back().is_zero())
        return std::nullopt;

    const auto num_divs = monic_divisors(c.front(), e);
    const auto den_divs = monic_divisors(c.back(), e);

    std::optional<RatFun> best;
    for (const auto& n0 : num_divs) {
        for (const auto& d0 : den_divs) {
            if (std::max(n0.degree(), d0.degree()) != e)
                continue;
            if (gcd(n0, d0).degree() != 0)
                continue;
            // D0^{delta-j} N0^j
            std::vector<Poly> basis;
            {
                std::vector<Poly> np{Poly::constant(fp, F.one())}, dp{Poly::constant(fp, F.one())};
                for (int j = 1; j <= delta; ++j) {
                    np.push_back(np.back() * n0);
                    dp.push_back(dp.back() * d0);
                }
                for (int j = 0; j <= delta; ++j)
                    basis.push_back(c[j] * np[j] * dp[delta - j]);
            }

            // propose lambda from one specialization; verify every proposal symbolically
            std::vector<Elem> proposals;
            bool specialized = false;
            for (std::uint64_t i = 0; i < F.order() && !specialized; ++i) {
                const Elem x0 = F.element(i);
                const Elem n_x = n0.eval(x0), d_x = d0.eval(x0);
                if (c.back().eval(x0).v == 0 || d_x.v == 0 || n_x.v == 0)
                    continue;
                specialized = true;
                const Elem ratio = F.div(n_x, d_x);
                std::vector<Elem> lam(delta + 1);
                Elem rp = F.one();
                for (int j = 0; j <= delta; ++j) {
                    lam[j] = F.mul(c[j].eval(x0), rp);
                    rp = F.mul(rp, ratio);
                }
                for (Elem root : roots(Poly(fp, lam)))
                    if (root.v != 0)
                        proposals.push_back(root);
            }
            if (!specialized) {
                for (std::uint64_t i = 1; i < F.order(); ++i)
                    proposals.push_back(F.element(i));
            }
            for (Elem lambda : proposals) {
                Poly s(fp);
                Elem lp = F.one();
                for (int j = 0; j <= delta; ++j) {
                    s = s + basis[j].scale(lp);
                    lp = F.mul(lp, lambda);
                }
                if (!s.is_zero())
                    continue;
                RatFun h = rat_make(n0.scale(lambda), d0);
                if (!best || ratfun_less(h, *best))
                    best = h;
            }
        }
    }
    return best;
}

void attach_search(DecompReport& report, const RatFun& f, const RatFun& g)
{
    report.h = find_h(f, g);
    report.verified = report.h && rat_compose(g, *report.h) == f;
}

FiberDiagnostics small_fiber_diagnostics(const RatFun& g)
{
    if (g.is_constant())
        throw InvalidArgument("g must be nonconstant");
    const std::uint64_t q = g.field()->order();
    check_grid(q, 1);
    FiberDiagnostics r;
    r.delta = g.degree();
    const auto delta = static_cast<std::uint64_t>(r.delta);
    const auto gv = value_table(g);
    std::vector<std::uint64_t> hist(q + 1, 0);
    for (auto v : gv)
        ++hist[v];
    std::set<std::uint64_t> vs;
    for (std::uint64_t a = 0; a < q; ++a) {
        if (2 * hist[gv[a]] <= delta) {
            r.y2_finite.push_back(Elem{static_cast<std::uint32_t>(a)});
            vs.insert(gv[a]);
        }
    }
    r.y2_infinity = 2 * hist[rat_eval(g, PointOrInf::infinity()).index(q)] <= delta;
    r.v_set.assign(vs.begin(), vs.end());
    const std::uint64_t y2 = r.y2_finite.size(), v = r.v_set.size();
    r.sandwich_holds = v <= y2 && 2 * y2 <= delta * v;
    return r;
}

std::uint64_t image_miss_count(const RatFun& f, const RatFun& g)
{
    if (!f.field()->same_as(*g.field()))
        throw DomainError("f and g over different fields");
    const std::uint64_t q = f.field()->order();
    check_grid(q, 1);
    std::vector<char> attained(q + 1, 0);
    for (auto v : value_table(g))
        attained[v] = 1;
    std::uint64_t miss = 0;
    for (auto v : value_table(f))
        miss += !attained[v];
    return miss;
}

ProxyCheck check_small_fiber_proxy(const RatFun& f, const RatFun& g, std::uint64_t max_small_fiber,
                                   std::uint64_t max_image_miss)
{
    ProxyCheck r;
    r.small_fiber_count = small_fiber_diagnostics(g).y2_finite.size();
    r.image_miss = image_miss_count(f, g);
    r.small_fiber_pass = r.small_fiber_count <= max_small_fiber;
    r.image_pass = r.image_miss <= max_image_miss;
    return r;
}

std::vector<Elem> fp_span(const Field& field, const std::vector<Elem>& gens)
{
    std::set<Elem> span{field.zero()};
    for (Elem v : gens) {
        if (span.count(v))
            continue;
        std::set<Elem> next;
        for (Elem u : span) {
            for (std::uint64_t c = 0; c < field.p(); ++c)
                next.insert(field.add(u, field.mul(field.from_int(static_cast<std::int64_t>(c)), v)));
        }
        span = std::move(next);
    }
    return {span.begin(), span.end()};
}

namespace {

constexpr std::size_t kMaxSubspace = std::size_t{1} << 14;

void require_moebius(const RatFun& phi)
{
    if (phi.degree() != 1)
        throw InvalidArgument("Moebius map must have degree 1");
}

struct FamilyBuilder {
    const FieldPtr& fp;

    RatFun operator()(const family::ArtinSchreier& a) const
    {
        const Field& F = *fp;
        std::uint64_t r = 1;
        int j = 0;
        while (r < a.r) {
            r *= F.p();
            ++j;
        }
        if (r != a.r || j == 0)
            throw InvalidArgument("r = " + std::to_string(a.r) + " is not a power of p = " + std::to_string(F.p()));
        if (F.k() % j != 0)
            throw InvalidArgument("F_" + std::to_string(a.r) + " is not a subfield of F_" + std::to_string(F.order()));
        Poly g = Poly::monomial(fp, F.one(), static_cast<int>(a.r)) - Poly::x(fp);
        return rat_make(g);
    }

    RatFun operator()(const family::Subspace& s) const
    {
        for (Elem e : s.spanning)
            if (e.v >= fp->order())
                throw InvalidArgument("subspace generator outside the field");
        auto u = fp_span(*fp, s.spanning);
        if (u.size() > kMaxSubspace)
            throw LimitExceeded("subspace too large for an explicit product");
        return rat_make(Poly::from_roots(fp, u));
    }

    RatFun operator()(const family::Power& p) const
    {
        if (p.d < 1 || (fp->order() - 1) % static_cast<std::uint64_t>(p.d) != 0)
            throw InvalidArgument("power map X^" + std::to_string(p.d) + " requires d | q - 1");
        return rat_make(Poly::monomial(fp, fp->one(), p.d));
    }

    RatFun operator()(const family::MoebiusPre& m) const
    {
        require_moebius(m.phi);
        return rat_compose(m.g, m.phi);
    }

    RatFun operator()(const family::MoebiusPost& m) const
    {
        require_moebius(m.phi);
        return rat_compose(m.phi, m.g);
    }
};

} // namespace

RatFun gen_g_family(const GFamily& kind, const FieldPtr& field)
{
    return std::visit(FamilyBuilder{field}, kind);
}

} // namespace ffd
