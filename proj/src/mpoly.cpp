#include "ffdecomp/mpoly.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "ffdecomp/limits.hpp"

namespace ffd {

MPoly MPoly::constant(FieldPtr field, std::size_t nvars, Elem c)
{
    MPoly r(std::move(field), nvars);
    r.add_term(Monomial(nvars, 0), c);
    return r;
}

MPoly MPoly::var(FieldPtr field, std::size_t nvars, std::size_t i)
{
    Monomial e(nvars, 0);
    e.at(i) = 1;
    MPoly r(field, nvars);
    r.add_term(e, field->one());
    return r;
}

MPoly MPoly::term(FieldPtr field, Elem c, Monomial e)
{
    MPoly r(std::move(field), e.size());
    r.add_term(e, c);
    return r;
}

MPoly MPoly::from_poly(const Poly& p, std::size_t nvars, std::size_t i)
{
    MPoly r(p.field(), nvars);
    Monomial e(nvars, 0);
    for (int d = 0; d <= p.degree(); ++d) {
        e[i] = static_cast<std::uint32_t>(d);
        r.add_term(e, p.coeff(d));
    }
    return r;
}

void MPoly::check(const MPoly& o) const
{
    if (nvars_ != o.nvars_)
        throw DomainError("polynomials in different numbers of variables");
    if (!field_->same_as(*o.field_))
        throw DomainError("polynomials over different fields");
}

bool MPoly::is_constant() const
{
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

int MPoly::total_degree() const
{
    int d = kZeroDegree;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (auto x : e)
            s += static_cast<int>(x);
        d = std::max(d, s);
    }
    return d;
}

int MPoly::degree(std::size_t var) const
{
    int d = kZeroDegree;
    for (const auto& [e, c] : terms_)
        d = std::max(d, static_cast<int>(e[var]));
    return d;
}

Elem MPoly::coeff(const Monomial& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Elem{} : it->second;
}

void MPoly::add_term(const Monomial& e, Elem c)
{
    if (e.size() != nvars_)
        throw DomainError("monomial arity mismatch");
    if (c.v == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second = field_->add(it->second, c);
        if (it->second.v == 0)
            terms_.erase(it);
    }
}

Elem MPoly::eval(std::span<const Elem> point) const
{
    if (point.size() != nvars_)
        throw DomainError("evaluation point arity mismatch");
    const Field& f = *field_;
    Elem acc{};
    for (const auto& [e, c] : terms_) {
        Elem t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i])
                t = f.mul(t, f.pow_u(point[i], e[i]));
        acc = f.add(acc, t);
    }
    return acc;
}

Poly MPoly::specialize_last(std::span<const Elem> prefix) const
{
    if (nvars_ == 0 || prefix.size() + 1 != nvars_)
        throw DomainError("specialization arity mismatch");
    const Field& f = *field_;
    std::vector<Elem> c(std::max(degree(nvars_ - 1), 0) + 1);
    for (const auto& [e, coef] : terms_) {
        Elem t = coef;
        for (std::size_t i = 0; i + 1 < nvars_; ++i)
            if (e[i])
                t = f.mul(t, f.pow_u(prefix[i], e[i]));
        c[e.back()] = f.add(c[e.back()], t);
    }
    return Poly(field_, std::move(c));
}

Poly MPoly::to_poly(std::size_t var) const
{
    std::vector<Elem> c(std::max(degree(var), 0) + 1);
    for (const auto& [e, coef] : terms_) {
        for (std::size_t i = 0; i < nvars_; ++i)
            if (i != var && e[i])
                throw DomainError("polynomial is not univariate in the requested variable");
        c[e[var]] = coef;
    }
    return Poly(field_, std::move(c));
}

MPoly MPoly::scale(Elem s) const
{
    MPoly r(field_, nvars_);
    if (s.v == 0)
        return r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), e, field_->mul(c, s));
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const
{
    check(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const
{
    check(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, field_->neg(c));
    return r;
}

MPoly MPoly::operator-() const
{
    return scale(field_->neg(field_->one()));
}

MPoly MPoly::operator*(const MPoly& o) const
{
    check(o);
    MPoly r(field_, nvars_);
    Monomial m(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i)
                m[i] = ea[i] + eb[i];
            r.add_term(m, field_->mul(ca, cb));
        }
    }
    return r;
}

MPoly MPoly::pow(unsigned e) const
{
    MPoly r = constant(field_, nvars_, field_->one());
    MPoly b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

MPoly MPoly::normalized() const
{
    if (terms_.empty() || lead().second == field_->one())
        return *this;
    return scale(field_->inv(lead().second));
}

MPoly MPoly::permuted(std::span<const std::size_t> perm) const
{
    if (perm.size() != nvars_)
        throw DomainError("permutation arity mismatch");
    MPoly r(field_, nvars_);
    Monomial m(nvars_);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < nvars_; ++i)
            m[i] = e[perm[i]];
        r.add_term(m, c);
    }
    return r;
}

MPoly MPoly::with_nvars(std::size_t n) const
{
    if (n < nvars_)
        throw DomainError("cannot drop variables");
    MPoly r(field_, n);
    for (const auto& [e, c] : terms_) {
        Monomial m = e;
        m.resize(n, 0);
        r.terms_.emplace(std::move(m), c);
    }
    return r;
}

bool mpoly_less(const MPoly& a, const MPoly& b)
{
    const int da = a.total_degree(), db = b.total_degree();
    if (da != db)
        return da < db;
    // compare term lists from the lex-greatest term down
    auto ia = a.terms().rbegin(), ib = b.terms().rbegin();
    for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
        if (ia->first != ib->first)
            return ia->first < ib->first;
        if (ia->second != ib->second)
            return ia->second < ib->second;
    }
    return a.size() < b.size();
}

std::optional<MPoly> exact_div(const MPoly& a, const MPoly& b)
{
    if (b.is_zero())
        throw DomainError("multivariate division by zero");
    const std::size_t n = a.nvars();
    MPoly q(a.field(), n);
    if (a.is_zero())
        return q;
    const Field& f = a.F();
    // deg_i(a / b) = deg_i a - deg_i b bounds every quotient term
    std::vector<int> cap(n);
    for (std::size_t i = 0; i < n; ++i) {
        cap[i] = a.degree(i) - b.degree(i);
        if (cap[i] < 0)
            return std::nullopt;
    }
    const auto& [lb, lc] = b.lead();
    const Elem lc_inv = f.inv(lc);
    MPoly r = a;
    Monomial t(n);
    while (!r.is_zero()) {
        const auto& [lr, cr] = r.lead();
        for (std::size_t i = 0; i < n; ++i) {
            if (lr[i] < lb[i] || static_cast<int>(lr[i] - lb[i]) > cap[i])
                return std::nullopt;
            t[i] = lr[i] - lb[i];
        }
        const Elem c = f.mul(cr, lc_inv);
        q.add_term(t, c);
        r = r - MPoly::term(a.field(), c, t) * b;
    }
    return q;
}

std::vector<MPoly> coeffs_in_last(const MPoly& a)
{
    const std::size_t n = a.nvars();
    if (n == 0)
        throw DomainError("no variable to split off");
    std::vector<MPoly> out(std::max(a.degree(n - 1), 0) + 1, MPoly(a.field(), n - 1));
    for (const auto& [e, c] : a.terms()) {
        Monomial m(e.begin(), e.end() - 1);
        out[e.back()].add_term(m, c);
    }
    return out;
}

MPoly from_coeffs_in_last(const std::vector<MPoly>& c)
{
    if (c.empty())
        throw DomainError("empty coefficient list");
    const std::size_t n = c.front().nvars() + 1;
    MPoly r(c.front().field(), n);
    for (std::size_t j = 0; j < c.size(); ++j) {
        for (const auto& [e, coef] : c[j].terms()) {
            Monomial m = e;
            m.push_back(static_cast<std::uint32_t>(j));
            r.add_term(m, coef);
        }
    }
    return r;
}

namespace {

using RecPoly = std::vector<MPoly>;

void trim(RecPoly& p)
{
    while (p.size() > 1 && p.back().is_zero())
        p.pop_back();
}

bool rec_zero(const RecPoly& p)
{
    return p.size() == 1 && p[0].is_zero();
}

MPoly content(const RecPoly& p)
{
    MPoly g(p.front().field(), p.front().nvars());
    for (const auto& c : p) {
        g = mgcd(g, c);
        if (g.is_constant() && !g.is_zero())
            break;
    }
    return g;
}

RecPoly divide_coeffs(const RecPoly& p, const MPoly& d)
{
    RecPoly out;
    out.reserve(p.size());
    for (const auto& c : p)
        out.push_back(*exact_div(c, d));
    return out;
}

// lc(b)^{deg a - deg b + 1} a mod b over the coefficient ring
RecPoly prem(RecPoly a, const RecPoly& b)
{
    const int db = static_cast<int>(b.size()) - 1;
    const MPoly& lb = b.back();
    int e = static_cast<int>(a.size()) - 1 - db + 1;
    while (!rec_zero(a) && static_cast<int>(a.size()) - 1 >= db) {
        const int da = static_cast<int>(a.size()) - 1;
        MPoly t = a.back();
        for (auto& c : a)
            c = c * lb;
        for (int j = 0; j <= db; ++j)
            a[da - db + j] = a[da - db + j] - t * b[j];
        a.pop_back();
        if (a.empty())
            a.push_back(MPoly(lb.field(), lb.nvars()));
        trim(a);
        --e;
    }
    if (e > 0) {
        MPoly s = lb.pow(static_cast<unsigned>(e));
        for (auto& c : a)
            c = c * s;
    }
    return a;
}

} // namespace

MPoly mgcd(const MPoly& a, const MPoly& b)
{
    if (a.nvars() != b.nvars())
        throw DomainError("gcd of polynomials in different numbers of variables");
    if (a.is_zero())
        return b.normalized();
    if (b.is_zero())
        return a.normalized();
    const std::size_t n = a.nvars();
    if (n == 0 || a.is_constant() || b.is_constant())
        return MPoly::constant(a.field(), n, a.F().one());

    RecPoly ra = coeffs_in_last(a), rb = coeffs_in_last(b);
    MPoly ca = content(ra), cb = content(rb);
    MPoly c = mgcd(ca, cb);
    RecPoly pa = divide_coeffs(ra, ca), pb = divide_coeffs(rb, cb);
    if (pa.size() < pb.size())
        std::swap(pa, pb);
    RecPoly g;
    while (true) {
        if (rec_zero(pb)) {
            g = pa;
            break;
        }
        if (pb.size() == 1) {
            g = RecPoly{MPoly::constant(a.field(), n - 1, a.F().one())};
            break;
        }
        RecPoly r = prem(pa, pb);
        pa = std::move(pb);
        if (rec_zero(r)) {
            pb = std::move(r);
        } else {
            pb = divide_coeffs(r, content(r));
        }
    }
    MPoly prim = from_coeffs_in_last(divide_coeffs(g, content(g)));
    return (c.with_nvars(n) * prim).normalized();
}

MPoly homogenize(const MPoly& a)
{
    const int d = a.total_degree();
    const std::size_t n = a.nvars();
    MPoly r(a.field(), n + 1);
    for (const auto& [e, c] : a.terms()) {
        Monomial m = e;
        int s = 0;
        for (auto x : e)
            s += static_cast<int>(x);
        m.push_back(static_cast<std::uint32_t>(d - s));
        r.add_term(m, c);
    }
    return r;
}

MPoly embed(const MPoly& a, const FieldExtension& ext)
{
    if (!a.field()->same_as(*ext.base()))
        throw DomainError("embedding from the wrong base field");
    MPoly r(ext.ext(), a.nvars());
    for (const auto& [e, c] : a.terms())
        r.add_term(e, ext.embed(c));
    return r;
}

std::optional<MPoly> restrict_coeffs(const MPoly& a, const FieldExtension& ext)
{
    MPoly r(ext.base(), a.nvars());
    for (const auto& [e, c] : a.terms()) {
        auto b = ext.restrict(c);
        if (!b)
            return std::nullopt;
        r.add_term(e, *b);
    }
    return r;
}

BiPoly build_F(const RatFun& f, const RatFun& g)
{
    if (f.is_constant() || g.is_constant())
        throw InvalidArgument("build_F requires nonconstant f and g");
    if (!f.field()->same_as(*g.field()))
        throw DomainError("f and g over different fields");
    auto ax = MPoly::from_poly(f.num(), 2, 0), bx = MPoly::from_poly(f.den(), 2, 0);
    auto py = MPoly::from_poly(g.num(), 2, 1), qy = MPoly::from_poly(g.den(), 2, 1);
    return ax * qy - bx * py;
}

namespace {

struct KroneckerMap {
    std::vector<std::uint64_t> weight;
    std::vector<std::uint64_t> radix;

    explicit KroneckerMap(const MPoly& a)
    {
        std::uint64_t w = 1;
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            weight.push_back(w);
            radix.push_back(static_cast<std::uint64_t>(std::max(a.degree(i), 0)) + 1);
            w *= radix.back();
        }
    }

    Poly image(const MPoly& a) const
    {
        std::uint64_t top = 0;
        for (const auto& [e, c] : a.terms()) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < e.size(); ++i)
                s += e[i] * weight[i];
            top = std::max(top, s);
        }
        std::vector<Elem> coeffs(a.is_zero() ? 0 : top + 1);
        for (const auto& [e, c] : a.terms()) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < e.size(); ++i)
                s += e[i] * weight[i];
            coeffs[s] = c;
        }
        return Poly(a.field(), std::move(coeffs));
    }

    // Inverse on the box deg_i < radix_i (last variable unbounded).
    MPoly decode(const Poly& u, std::size_t nvars) const
    {
        MPoly r(u.field(), nvars);
        Monomial m(nvars);
        for (int d = 0; d <= u.degree(); ++d) {
            if (u.coeff(d).v == 0)
                continue;
            std::uint64_t t = static_cast<std::uint64_t>(d);
            for (std::size_t i = 0; i + 1 < nvars; ++i) {
                m[i] = static_cast<std::uint32_t>(t % radix[i]);
                t /= radix[i];
            }
            m[nvars - 1] = static_cast<std::uint32_t>(t);
            r.add_term(m, u.coeff(d));
        }
        return r;
    }
};

struct Candidate {
    const Poly* poly;
    int degree;
    int available;
};

// Depth-first search over sub-multisets of univariate factors whose degrees sum
// to `target`; stops at the first decoded candidate dividing `rem`.
std::optional<MPoly> search_divisor(const std::vector<Candidate>& cands, std::size_t idx, int target,
                                    const Poly& acc, const KroneckerMap& km, const MPoly& rem,
                                    const std::vector<int>& deg_caps)
{
    if (target == 0) {
        MPoly cand = km.decode(acc, rem.nvars());
        for (std::size_t i = 0; i < deg_caps.size(); ++i)
            if (cand.degree(i) > deg_caps[i])
                return std::nullopt;
        if (exact_div(rem, cand))
            return cand.normalized();
        return std::nullopt;
    }
    if (idx == cands.size())
        return std::nullopt;
    const auto& c = cands[idx];
    Poly prod = acc;
    for (int use = 0; use <= c.available && use * c.degree <= target; ++use) {
        if (use > 0)
            prod = prod * *c.poly;
        if (auto hit = search_divisor(cands, idx + 1, target - use * c.degree, prod, km, rem, deg_caps))
            return hit;
    }
    return std::nullopt;
}

} // namespace

MFactorization kronecker_factor(const MPoly& a)
{
    if (a.is_zero())
        throw InvalidArgument("cannot factor the zero polynomial");
    if (a.total_degree() > limits().max_factor_degree)
        throw LimitExceeded("total degree " + std::to_string(a.total_degree())
                            + " exceeds the factorization limit "
                            + std::to_string(limits().max_factor_degree));
    MFactorization out{a.lead().second, {}};
    MPoly rem = a.normalized();
    const KroneckerMap km(rem);

    while (!rem.is_constant()) {
        const Poly image = km.image(rem);
        const Factorization uf = factor(image);
        std::vector<Candidate> cands;
        for (const auto& pf : uf.factors)
            cands.push_back({&pf.poly, pf.poly.degree(), pf.multiplicity});
        std::vector<int> caps(rem.nvars());
        for (std::size_t i = 0; i < caps.size(); ++i)
            caps[i] = rem.degree(i);

        std::optional<MPoly> found;
        const Poly one = Poly::constant(rem.field(), rem.F().one());
        for (int t = 1; 2 * t <= image.degree() && !found; ++t)
            found = search_divisor(cands, 0, t, one, km, rem, caps);
        if (!found) {
            out.factors.push_back({rem, 1});
            break;
        }
        int mult = 0;
        while (auto qd = exact_div(rem, *found)) {
            rem = qd->normalized();
            ++mult;
            if (rem.is_constant())
                break;
        }
        out.factors.push_back({*found, mult});
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const MFactor& x, const MFactor& y) { return mpoly_less(x.poly, y.poly); });
    return out;
}

MPoly expand(const MFactorization& fac)
{
    if (fac.factors.empty())
        throw DomainError("empty factorization");
    const auto& first = fac.factors.front().poly;
    MPoly r = MPoly::constant(first.field(), first.nvars(), fac.unit);
    for (const auto& f : fac.factors)
        r = r * f.poly.pow(static_cast<unsigned>(f.multiplicity));
    return r;
}

const FieldExtension& cached_extension(const FieldPtr& base, int r)
{
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, std::unique_ptr<FieldExtension>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(base->descriptor() + "/" + std::to_string(base->modulus().size()), r);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FieldExtension>(extend_field(base, r))).first;
    return *it->second;
}

bool is_absolutely_irreducible(const MPoly& p)
{
    const int d = p.total_degree();
    if (d < 1)
        throw InvalidArgument("absolute irreducibility of a constant");
    if (d == 1)
        return true;
    for (int r = 2, m = d; r <= m; ++r) {
        if (m % r)
            continue;
        while (m % r == 0)
            m /= r;
        const auto& ext = cached_extension(p.field(), r);
        auto fac = kronecker_factor(embed(p, ext));
        if (fac.factors.size() != 1 || fac.factors.front().multiplicity != 1)
            return false;
    }
    return true;
}

} // namespace ffd
