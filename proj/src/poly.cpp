#include "ffdecomp/poly.hpp"

#include <algorithm>
#include <random>

namespace ffd {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs))
{
    trim();
}

Poly Poly::constant(FieldPtr field, Elem c)
{
    return Poly(std::move(field), std::vector<Elem>{c});
}

Poly Poly::x(FieldPtr field)
{
    return Poly(std::move(field), std::vector<Elem>{Elem{0}, Elem{1}});
}

Poly Poly::monomial(FieldPtr field, Elem c, int e)
{
    std::vector<Elem> v(e + 1);
    v[e] = c;
    return Poly(std::move(field), std::move(v));
}

Poly Poly::from_roots(FieldPtr field, std::span<const Elem> rts)
{
    Poly r = constant(field, field->one());
    for (Elem a : rts)
        r = r * Poly(field, {field->neg(a), field->one()});
    return r;
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().v == 0)
        c_.pop_back();
}

void Poly::check(const Poly& o) const
{
    if (!field_->same_as(*o.field_))
        throw DomainError("polynomials over different fields");
}

Elem Poly::eval(Elem x) const
{
    const Field& f = *field_;
    Elem acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = f.add(f.mul(acc, x), *it);
    return acc;
}

Poly Poly::monic() const
{
    if (c_.empty() || is_monic())
        return *this;
    return scale(field_->inv(lead()));
}

Poly Poly::derivative() const
{
    std::vector<Elem> d(c_.size() > 1 ? c_.size() - 1 : 0);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = field_->mul(field_->from_int(static_cast<std::int64_t>(i % field_->p())), c_[i]);
    return Poly(field_, std::move(d));
}

Poly Poly::scale(Elem s) const
{
    std::vector<Elem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = field_->mul(c_[i], s);
    return Poly(field_, std::move(r));
}

Poly Poly::shift(int e) const
{
    if (is_zero())
        return *this;
    std::vector<Elem> r(e, Elem{});
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(field_, std::move(r));
}

Poly Poly::operator+(const Poly& o) const
{
    check(o);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = field_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const
{
    check(o);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = field_->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return Poly(field_, std::move(r));
}

Poly Poly::operator-() const
{
    std::vector<Elem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = field_->neg(c_[i]);
    return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const
{
    check(o);
    if (is_zero() || o.is_zero())
        return Poly(field_);
    const Field& f = *field_;
    std::vector<Elem> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].v == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(c_[i], o.c_[j]));
    }
    return Poly(field_, std::move(r));
}

Poly Poly::operator/(const Poly& o) const
{
    return divrem(*this, o).first;
}

Poly Poly::operator%(const Poly& o) const
{
    return divrem(*this, o).second;
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw DomainError("polynomial division by zero");
    if (!a.field()->same_as(*b.field()))
        throw DomainError("polynomials over different fields");
    const Field& f = b.F();
    if (a.degree() < b.degree())
        return {Poly(a.field()), a};
    std::vector<Elem> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    std::vector<Elem> q(a.degree() - db + 1);
    const Elem inv_lead = f.inv(b.lead());
    auto bc = b.coeffs();
    for (int i = a.degree() - db; i >= 0; --i) {
        Elem t = f.mul(r[i + db], inv_lead);
        q[i] = t;
        if (t.v == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            r[i + j] = f.sub(r[i + j], f.mul(t, bc[j]));
    }
    r.resize(db);
    return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod)
{
    Poly result = Poly::constant(mod.field(), mod.F().one()) % mod;
    Poly b = base % mod;
    while (e) {
        if (e & 1)
            result = (result * b) % mod;
        e >>= 1;
        if (e)
            b = (b * b) % mod;
    }
    return result;
}

Poly compose(const Poly& p, const Poly& h)
{
    Poly acc(p.field());
    auto pc = p.coeffs();
    for (auto it = pc.rbegin(); it != pc.rend(); ++it)
        acc = acc * h + Poly::constant(p.field(), *it);
    return acc;
}

bool poly_less(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i))
            return a.coeff(i) < b.coeff(i);
    return false;
}

namespace {

// b(X) with every coefficient replaced by its p-th root and X^{p i} -> X^i.
Poly pth_root_poly(const Poly& a)
{
    const Field& f = a.F();
    const auto p = static_cast<int>(f.p());
    std::vector<Elem> r(a.degree() / p + 1);
    for (int i = 0; i <= a.degree(); i += p)
        r[i / p] = f.pth_root(a.coeff(i));
    return Poly(a.field(), std::move(r));
}

std::mt19937_64 seeded_rng(const Poly& a)
{
    // FNV-1a over the coefficients: reproducible splitting for equal inputs
    std::uint64_t h = 1469598103934665603ULL;
    for (Elem c : a.coeffs()) {
        h ^= c.v;
        h *= 1099511628211ULL;
    }
    h ^= a.F().order();
    return std::mt19937_64(h);
}

Poly random_poly(const FieldPtr& f, int below_degree, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint64_t> dist(0, f->order() - 1);
    std::vector<Elem> c(below_degree);
    for (auto& e : c)
        e = Elem{static_cast<std::uint32_t>(dist(rng))};
    return Poly(f, std::move(c));
}

// Frobenius-fixed part: X^{q^i} computed by iterating x -> x^q mod m.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& sqfree_monic)
{
    std::vector<std::pair<Poly, int>> out;
    Poly f = sqfree_monic;
    const std::uint64_t q = f.F().order();
    const Poly x = Poly::x(f.field());
    Poly h = x % f;
    for (int i = 1; 2 * i <= f.degree(); ++i) {
        h = powmod(h, q, f);
        Poly g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0)
        out.emplace_back(f, f.degree());
    return out;
}

// Splits a monic square-free product of irreducibles of common degree d.
void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out)
{
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const Field& F = f.F();
    const std::uint64_t q = F.order();
    Poly split(f.field());
    while (true) {
        Poly a = random_poly(f.field(), f.degree(), rng);
        if (a.degree() < 1)
            continue;
        Poly b(f.field());
        if (F.p() == 2) {
            // absolute trace F_{q^d} -> F_2
            const int steps = F.k() * d;
            Poly t = a % f;
            b = t;
            for (int i = 1; i < steps; ++i) {
                t = (t * t) % f;
                b = b + t;
            }
        } else {
            // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
            Poly t = a % f, norm = t;
            for (int i = 1; i < d; ++i) {
                t = powmod(t, q, f);
                norm = (norm * t) % f;
            }
            b = powmod(norm, (q - 1) / 2, f) - Poly::constant(f.field(), F.one());
        }
        split = gcd(b, f);
        if (split.degree() > 0 && split.degree() < f.degree())
            break;
    }
    equal_degree(split, d, rng, out);
    equal_degree(f / split, d, rng, out);
}

} // namespace

std::vector<PolyFactor> squarefree_factorization(const Poly& monic)
{
    std::vector<PolyFactor> out;
    if (monic.degree() < 1)
        return out;
    const auto p = static_cast<int>(monic.F().p());
    Poly c = gcd(monic, monic.derivative());
    Poly w = monic / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0)
            out.push_back({z, i});
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        for (auto& [s, m] : squarefree_factorization(pth_root_poly(c)))
            out.push_back({s, m * p});
    }
    return out;
}

Factorization factor(const Poly& a)
{
    if (a.is_zero())
        throw InvalidArgument("cannot factor the zero polynomial");
    Factorization result{a.lead(), {}};
    auto rng = seeded_rng(a);
    for (auto& [s, m] : squarefree_factorization(a.monic())) {
        for (auto& [g, d] : distinct_degree(s)) {
            std::vector<Poly> parts;
            equal_degree(g, d, rng, parts);
            for (auto& part : parts)
                result.factors.push_back({part, m});
        }
    }
    // merge equal factors coming from different square-free layers
    std::sort(result.factors.begin(), result.factors.end(),
              [](const PolyFactor& x, const PolyFactor& y) { return poly_less(x.poly, y.poly); });
    std::vector<PolyFactor> merged;
    for (auto& pf : result.factors) {
        if (!merged.empty() && merged.back().poly == pf.poly)
            merged.back().multiplicity += pf.multiplicity;
        else
            merged.push_back(pf);
    }
    result.factors = std::move(merged);
    return result;
}

bool is_irreducible(const Poly& a)
{
    const int n = a.degree();
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    const Poly f = a.monic();
    const std::uint64_t q = f.F().order();
    const Poly x = Poly::x(f.field());

    std::vector<int> prime_divs;
    for (int d = 2, m = n; d <= m; ++d) {
        if (m % d == 0) {
            prime_divs.push_back(d);
            while (m % d == 0)
                m /= d;
        }
    }
    // frob[i] = X^{q^i} mod f
    std::vector<Poly> frob{x % f};
    for (int i = 1; i <= n; ++i)
        frob.push_back(powmod(frob.back(), q, f));
    if (!(frob[n] == x % f))
        return false;
    for (int r : prime_divs)
        if (gcd(frob[n / r] - x, f).degree() != 0)
            return false;
    return true;
}

std::vector<Elem> roots(const Poly& a)
{
    if (a.is_zero())
        throw InvalidArgument("roots of the zero polynomial");
    std::vector<Elem> out;
    if (a.degree() < 1)
        return out;
    const Field& F = a.F();
    const Poly f = a.monic();
    if (F.order() <= 64) {
        for (Elem x : F.elements())
            if (f.eval(x).v == 0)
                out.push_back(x);
        return out;
    }
    const Poly x = Poly::x(f.field());
    Poly g = gcd(powmod(x, F.order(), f) - x, f);
    if (g.degree() < 1)
        return out;
    std::vector<Poly> lin;
    auto rng = seeded_rng(g);
    equal_degree(g, 1, rng, lin);
    for (auto& l : lin)
        out.push_back(F.neg(l.coeff(0)));
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_roots(const Poly& a)
{
    if (a.is_zero())
        throw InvalidArgument("roots of the zero polynomial");
    if (a.degree() < 1)
        return 0;
    const Field& F = a.F();
    if (F.order() <= 16) {
        std::size_t n = 0;
        for (std::uint64_t i = 0; i < F.order(); ++i)
            n += a.eval(F.element(i)).v == 0;
        return n;
    }
    const Poly f = a.monic();
    const Poly x = Poly::x(f.field());
    return static_cast<std::size_t>(std::max(0, gcd(powmod(x, F.order(), f) - x, f).degree()));
}

} // namespace ffd
