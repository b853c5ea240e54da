#include "ffdecomp/field.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_map>

#include "ffdecomp/limits.hpp"
#include "ffdecomp/poly.hpp"

namespace ffd {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

std::uint64_t checked_order(std::uint64_t p, int k)
{
    const std::uint64_t cap = limits().max_order;
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        if (q > cap / p)
            throw LimitExceeded("field order " + std::to_string(p) + "^" + std::to_string(k)
                                + " exceeds the configured limit");
        q *= p;
    }
    return q;
}

void validate_characteristic(std::uint64_t p, int k)
{
    if (!is_prime(p))
        throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    if (k < 1)
        throw InvalidArgument("extension degree must be at least 1");
}

Poly poly_from_u32(const FieldPtr& fp, const std::vector<std::uint32_t>& c)
{
    std::vector<Elem> e;
    e.reserve(c.size());
    for (auto v : c)
        e.push_back(Elem{v});
    return Poly(fp, std::move(e));
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % sp == 0)
            return n == sp;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

Field::Field(std::uint64_t p, int k, std::vector<std::uint32_t> modulus, bool default_modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)), default_modulus_(default_modulus)
{
    for (int i = 0; i < k; ++i)
        q_ *= p;
    if (k_ > 1 && q_ <= limits().max_table_order)
        build_tables();
}

std::string Field::descriptor() const
{
    std::ostringstream os;
    os << p_ << '^' << k_;
    if (!default_modulus_) {
        os << '/';
        for (std::size_t i = 0; i < modulus_.size(); ++i)
            os << (i ? "," : "") << modulus_[i];
    }
    return os.str();
}

Elem Field::from_int(std::int64_t n) const
{
    auto pp = static_cast<std::int64_t>(p_);
    std::int64_t r = n % pp;
    if (r < 0)
        r += pp;
    return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_coords(std::span<const std::uint32_t> c) const
{
    if (c.size() > static_cast<std::size_t>(k_))
        throw InvalidArgument("too many coordinates for a degree-" + std::to_string(k_) + " field");
    std::uint64_t v = 0, pw = 1;
    for (auto ci : c) {
        if (ci >= p_)
            throw InvalidArgument("coordinate " + std::to_string(ci) + " out of range mod "
                                  + std::to_string(p_));
        v += ci * pw;
        pw *= p_;
    }
    return Elem{static_cast<std::uint32_t>(v)};
}

std::vector<std::uint32_t> Field::coords(Elem a) const
{
    std::vector<std::uint32_t> c(k_);
    std::uint64_t v = a.v;
    for (int i = 0; i < k_; ++i) {
        c[i] = static_cast<std::uint32_t>(v % p_);
        v /= p_;
    }
    return c;
}

std::vector<Elem> Field::elements() const
{
    std::vector<Elem> out(q_);
    for (std::uint64_t i = 0; i < q_; ++i)
        out[i] = Elem{static_cast<std::uint32_t>(i)};
    return out;
}

Elem Field::add_digits(Elem a, Elem b) const
{
    std::uint64_t x = a.v, y = b.v, r = 0, pw = 1;
    for (int i = 0; i < k_; ++i) {
        std::uint64_t s = x % p_ + y % p_;
        if (s >= p_)
            s -= p_;
        r += s * pw;
        pw *= p_;
        x /= p_;
        y /= p_;
    }
    return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::neg_digits(Elem a) const
{
    std::uint64_t x = a.v, r = 0, pw = 1;
    for (int i = 0; i < k_; ++i) {
        std::uint64_t d = x % p_;
        r += (d ? p_ - d : 0) * pw;
        pw *= p_;
        x /= p_;
    }
    return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::mul_slow(Elem a, Elem b) const
{
    // q <= 2^32 bounds k by 32
    std::array<std::uint64_t, 32> ca{}, cb{};
    std::array<std::uint64_t, 64> prod{};
    std::uint64_t x = a.v, y = b.v;
    for (int i = 0; i < k_; ++i) {
        ca[i] = x % p_;
        cb[i] = y % p_;
        x /= p_;
        y /= p_;
    }
    for (int i = 0; i < k_; ++i) {
        if (!ca[i])
            continue;
        for (int j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    }
    // X^k = -(m_0 + ... + m_{k-1} X^{k-1})
    for (int d = 2 * k_ - 2; d >= k_; --d) {
        std::uint64_t t = prod[d];
        if (!t)
            continue;
        prod[d] = 0;
        for (int i = 0; i < k_; ++i)
            prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - modulus_[i]) % p_ * t) % p_;
    }
    std::uint64_t v = 0, pw = 1;
    for (int i = 0; i < k_; ++i) {
        v += prod[i] * pw;
        pw *= p_;
    }
    return Elem{static_cast<std::uint32_t>(v)};
}

void Field::build_tables()
{
    const std::uint64_t n = q_ - 1;
    const auto primes = prime_divisors(n);
    Elem g{};
    for (std::uint64_t c = 2; c < q_; ++c) {
        Elem cand{static_cast<std::uint32_t>(c)};
        bool primitive = true;
        for (auto l : primes) {
            // square-and-multiply with the slow multiplier; tables are not ready yet
            Elem r = one(), b = cand;
            for (std::uint64_t e = n / l; e; e >>= 1) {
                if (e & 1)
                    r = mul_slow(r, b);
                b = mul_slow(b, b);
            }
            if (r == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = cand;
            break;
        }
    }
    log_.assign(q_, 0);
    exp_.assign(q_, 0);
    Elem x = one();
    for (std::uint64_t i = 0; i < n; ++i) {
        exp_[i] = x.v;
        log_[x.v] = static_cast<std::uint32_t>(i);
        x = mul_slow(x, g);
    }
    exp_[n] = exp_[0];
}

Elem Field::inv(Elem a) const
{
    if (a.v == 0)
        throw DomainError("inverse of zero");
    if (!log_.empty())
        return Elem{exp_[(q_ - 1 - log_[a.v]) % (q_ - 1)]};
    return pow_u(a, q_ - 2);
}

Elem Field::pow_u(Elem a, std::uint64_t e) const
{
    if (a.v == 0)
        return e == 0 ? one() : zero();
    if (k_ == 1)
        return Elem{static_cast<std::uint32_t>(powmod64(a.v, e, p_))};
    if (!log_.empty())
        return Elem{exp_[mulmod64(log_[a.v], e % (q_ - 1), q_ - 1)]};
    Elem r = one();
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elem Field::pow(Elem a, std::int64_t e) const
{
    if (e < 0)
        return pow_u(inv(a), static_cast<std::uint64_t>(-(e + 1)) + 1);
    return pow_u(a, static_cast<std::uint64_t>(e));
}

bool is_irreducible_over_prime_field(std::uint64_t p, const std::vector<std::uint32_t>& monic)
{
    auto fp = std::make_shared<const Field>(p, 1, std::vector<std::uint32_t>{0, 1}, true);
    return is_irreducible(poly_from_u32(fp, monic));
}

FieldPtr build_field(std::uint64_t p, int k)
{
    validate_characteristic(p, k);
    const std::uint64_t q = checked_order(p, k);
    if (k == 1)
        return std::make_shared<const Field>(p, 1, std::vector<std::uint32_t>{0, 1}, true);

    auto fp = std::make_shared<const Field>(p, 1, std::vector<std::uint32_t>{0, 1}, true);
    // Walk (c_0, ..., c_{k-1}) in lexicographic order: c_0 is the most significant digit.
    std::vector<std::uint32_t> m(k + 1, 0);
    m[k] = 1;
    for (std::uint64_t n = 0; n < q; ++n) {
        std::uint64_t t = n;
        for (int i = k - 1; i >= 0; --i) {
            m[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        if (m[0] == 0)
            continue;
        if (is_irreducible(poly_from_u32(fp, m)))
            return std::make_shared<const Field>(p, k, m, true);
    }
    throw Error("no irreducible polynomial found");
}

FieldPtr build_field(std::uint64_t p, std::vector<std::uint32_t> modulus)
{
    if (modulus.size() < 2)
        throw InvalidArgument("modulus must have degree at least 1");
    const int k = static_cast<int>(modulus.size()) - 1;
    validate_characteristic(p, k);
    checked_order(p, k);
    for (auto c : modulus)
        if (c >= p)
            throw InvalidArgument("modulus coefficient out of range");
    if (modulus.back() != 1)
        throw InvalidArgument("modulus must be monic");
    if (!is_irreducible_over_prime_field(p, modulus))
        throw InvalidArgument("modulus is not irreducible over F_" + std::to_string(p));
    if (k == 1) {
        // F_p[X]/(X - a) has the same coordinates for every a
        const bool canonical = modulus[0] == 0;
        return std::make_shared<const Field>(p, 1, std::move(modulus), canonical);
    }
    auto canonical = build_field(p, k);
    const bool is_default = canonical->modulus() == modulus;
    return std::make_shared<const Field>(p, k, std::move(modulus), is_default);
}

FieldExtension::FieldExtension(FieldPtr base, FieldPtr ext, std::vector<Elem> table)
    : base_(std::move(base)), ext_(std::move(ext)), table_(std::move(table)),
      inverse_(ext_->order(), -1)
{
    for (std::size_t i = 0; i < table_.size(); ++i)
        inverse_[table_[i].v] = static_cast<std::int64_t>(i);
}

std::optional<Elem> FieldExtension::restrict(Elem a) const
{
    auto i = inverse_[a.v];
    if (i < 0)
        return std::nullopt;
    return Elem{static_cast<std::uint32_t>(i)};
}

FieldExtension extend_field(const FieldPtr& base, int r)
{
    if (r < 1)
        throw InvalidArgument("extension degree must be at least 1");
    const std::uint64_t p = base->p();
    const int k = base->k();
    auto ext = build_field(p, k * r);

    // Image of the base generator: the smallest root of the base modulus in ext.
    Elem beta{};
    if (k > 1) {
        std::vector<Elem> mc;
        for (auto c : base->modulus())
            mc.push_back(Elem{c});
        auto rts = roots(Poly(ext, mc));
        if (rts.empty())
            throw Error("base modulus has no root in the extension");
        beta = rts.front();
    }
    std::vector<Elem> table(base->order());
    for (std::uint64_t i = 0; i < base->order(); ++i) {
        auto c = base->coords(Elem{static_cast<std::uint32_t>(i)});
        Elem acc{};
        for (int j = k - 1; j >= 0; --j)
            acc = ext->add(ext->mul(acc, beta), Elem{c[j]});
        table[i] = acc;
    }
    return FieldExtension(base, std::move(ext), std::move(table));
}

void FieldElement::check(const FieldElement& o) const
{
    if (!field_->same_as(*o.field_))
        throw DomainError("elements of F_" + field_->descriptor() + " and F_" + o.field_->descriptor()
                          + " cannot be combined");
}

FieldElement FieldElement::operator+(const FieldElement& o) const
{
    check(o);
    return {field_, field_->add(e_, o.e_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const
{
    check(o);
    return {field_, field_->sub(e_, o.e_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const
{
    check(o);
    return {field_, field_->mul(e_, o.e_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const
{
    check(o);
    return {field_, field_->div(e_, o.e_)};
}

} // namespace ffd
