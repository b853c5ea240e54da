#include "ffdecomp/ratfun.hpp"

#include <algorithm>
#include <cassert>

namespace ffd {

RatFun::RatFun(const FieldPtr& field)
    : num_(Poly::x(field)), den_(Poly::constant(field, field->one()))
{}

RatFun rat_make(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw InvalidArgument("rational function with zero denominator");
    if (!a.field()->same_as(*b.field()))
        throw DomainError("numerator and denominator over different fields");
    if (a.is_zero())
        return RatFun(a, Poly::constant(b.field(), b.F().one()));
    Poly g = gcd(a, b);
    Poly n = a / g, d = b / g;
    Elem s = d.F().inv(d.lead());
    return RatFun(n.scale(s), d.scale(s));
}

PointOrInf rat_eval(const RatFun& f, PointOrInf x)
{
    const Field& F = *f.field();
    if (x.is_infinity()) {
        const int dn = f.num().degree(), dd = f.den().degree();
        if (dn > dd)
            return PointOrInf::infinity();
        if (dn < dd)
            return PointOrInf::finite(F.zero());
        return PointOrInf::finite(F.div(f.num().lead(), f.den().lead()));
    }
    Elem d = f.den().eval(x.value());
    Elem n = f.num().eval(x.value());
    if (d.v == 0) {
        assert(n.v != 0 && "reduced rational function cannot have a common zero");
        return PointOrInf::infinity();
    }
    return PointOrInf::finite(F.div(n, d));
}

RatFun rat_compose(const RatFun& g, const RatFun& h)
{
    const FieldPtr& fp = g.field();
    if (!fp->same_as(*h.field()))
        throw DomainError("composition of functions over different fields");
    const int delta = g.degree();
    // D^{delta-i} N^i for i = 0..delta
    std::vector<Poly> n_pow{Poly::constant(fp, fp->one())};
    std::vector<Poly> d_pow{Poly::constant(fp, fp->one())};
    for (int i = 1; i <= delta; ++i) {
        n_pow.push_back(n_pow.back() * h.num());
        d_pow.push_back(d_pow.back() * h.den());
    }
    Poly u(fp), v(fp);
    for (int i = 0; i <= delta; ++i) {
        Poly t = n_pow[i] * d_pow[delta - i];
        u = u + t.scale(g.num().coeff(i));
        v = v + t.scale(g.den().coeff(i));
    }
    if (v.is_zero())
        throw DomainError("composition is the constant infinity");
    return rat_make(u, v);
}

std::vector<Elem> fiber(const RatFun& g, PointOrInf v)
{
    const Field& F = *g.field();
    if (v.is_infinity())
        return roots(g.den());
    Poly t = g.num() - g.den().scale(v.value());
    if (t.is_zero())
        return F.elements();
    return roots(t);
}

std::vector<std::uint32_t> value_table(const RatFun& f)
{
    const Field& F = *f.field();
    const auto q = static_cast<std::int64_t>(F.order());
    std::vector<std::uint32_t> out(q);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < q; ++i) {
        Elem x{static_cast<std::uint32_t>(i)};
        Elem d = f.den().eval(x);
        out[i] = d.v == 0 ? static_cast<std::uint32_t>(q) : F.div(f.num().eval(x), d).v;
    }
    return out;
}

std::vector<std::uint32_t> value_table_serial(const RatFun& f)
{
    const std::uint64_t q = f.field()->order();
    std::vector<std::uint32_t> out(q);
    for (std::uint64_t i = 0; i < q; ++i)
        out[i] = static_cast<std::uint32_t>(rat_eval(f, Elem{static_cast<std::uint32_t>(i)}).index(q));
    return out;
}

bool ratfun_less(const RatFun& a, const RatFun& b)
{
    auto an = a.num().coeffs(), bn = b.num().coeffs();
    if (!std::equal(an.begin(), an.end(), bn.begin(), bn.end()))
        return std::lexicographical_compare(an.begin(), an.end(), bn.begin(), bn.end());
    auto ad = a.den().coeffs(), bd = b.den().coeffs();
    return std::lexicographical_compare(ad.begin(), ad.end(), bd.begin(), bd.end());
}

} // namespace ffd
