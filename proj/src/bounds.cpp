#include "ffdecomp/bounds.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <sstream>

#include "ffdecomp/counting.hpp"

namespace ffd {

namespace {

int sign(const Rational& x)
{
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

} // namespace

int compare(const Rational& c, const SqrtExpr& s)
{
    const Rational l = c - s.a;
    if (s.b == 0 || s.q == 0)
        return sign(l);
    const Rational rhs2 = s.b * s.b * Rational(s.q);
    if (s.b > 0) {
        if (l <= 0)
            return -1;
        return sign(l * l - rhs2);
    }
    if (l >= 0)
        return 1;
    return sign(rhs2 - l * l);
}

std::string to_string(const SqrtExpr& s)
{
    std::ostringstream os;
    os << rational_string(s.a) << " + " << rational_string(s.b) << "*sqrt(" << s.q << ")";
    return os.str();
}

Interval ap_interval(int D, std::uint64_t q)
{
    if (D < 1)
        throw InvalidArgument("degree must be at least 1");
    const Rational slack = Rational((D - 1) * (D - 2));
    const Rational center = Rational(q + 1);
    return {SqrtExpr{center - D, -slack, BigInt(q)}, SqrtExpr{center, slack, BigInt(q)}};
}

Interval ap_projective_band(int D, std::uint64_t q)
{
    if (D < 1)
        throw InvalidArgument("degree must be at least 1");
    const Rational slack = Rational((D - 1) * (D - 2));
    const Rational center = Rational(q + 1);
    return {SqrtExpr{center, -slack, BigInt(q)}, SqrtExpr{center, slack, BigInt(q)}};
}

std::uint64_t non_abs_bound(int D)
{
    if (D < 1)
        throw InvalidArgument("degree must be at least 1");
    return static_cast<std::uint64_t>(D) * static_cast<std::uint64_t>(D) / 4;
}

SqrtExpr factor_sum_bound(int m, int dprime, std::uint64_t q)
{
    if (m < 1)
        throw InvalidArgument("factor count must be at least 1");
    const Rational ratio(dprime, m);
    return {Rational(m) * Rational(q + 1), Rational(m) * (ratio - 1) * (ratio - 2), BigInt(q)};
}

bool leq_sqrt_cbrt(const Rational& t, const Rational& u, const BigInt& q, const Rational& v, const BigInt& d)
{
    if (t < 0 || u < 0 || v < 0)
        throw InvalidArgument("leq_sqrt_cbrt expects nonnegative operands");
    const Rational qr(q), dr(d);
    // t <= u sqrt(q) settles it without the cube-root term
    if (t * t <= u * u * qr)
        return true;
    // s = t - u sqrt(q) > 0; need s^3 <= v^3 d, i.e. A <= B sqrt(q)
    const Rational A = t * t * t + 3 * t * u * u * qr - v * v * v * dr;
    const Rational B = 3 * t * t * u + u * u * u * qr;
    if (A <= 0)
        return true;
    return A * A <= B * B * qr;
}

CmBand cm_band(int n, int d, std::uint64_t q)
{
    if (n < 1 || d < 1)
        throw InvalidArgument("cm_band requires n >= 1 and d >= 1");
    // q^{n-2} as a rational (n = 1 gives 1/q)
    const Rational qn2 = n >= 2 ? Rational(ipow(BigInt(q), static_cast<unsigned>(n - 2)))
                                : Rational(BigInt(1), BigInt(q));
    const Rational center = n >= 1 ? Rational(ipow(BigInt(q), static_cast<unsigned>(n - 1))) : Rational(1);
    const Rational u = Rational((d - 1) * (d - 2)) * qn2;
    const Rational v = Rational(5) * Rational(ipow(BigInt(d), 4)) * qn2;
    return {center, u, v, BigInt(q), BigInt(d)};
}

bool CmBand::contains(const Rational& x) const
{
    Rational t = x - center;
    if (t < 0)
        t = -t;
    return leq_sqrt_cbrt(t, u, q, v, d);
}

std::string to_string(Classification c)
{
    return c == Classification::absolutely_irreducible ? "absolutely_irreducible" : "irreducible_not_absolutely";
}

BoundReport check_irreducible_curve(const BiPoly& F, std::string instance_id)
{
    BoundReport r;
    r.instance_id = std::move(instance_id);
    r.field = F.F().descriptor();
    r.q = F.F().order();
    r.degree = F.total_degree();
    r.poly = F;
    r.classification = is_absolutely_irreducible(F) ? Classification::absolutely_irreducible
                                                    : Classification::irreducible_not_absolutely;
    r.affine_count = count_affine(F);
    r.projective_count = count_projective(F);
    const int D = r.degree;
    std::ostringstream os;
    if (r.classification == Classification::absolutely_irreducible) {
        r.observed = r.projective_count;
        const bool proj_ok = ap_projective_band(D, r.q).contains(Rational(r.projective_count));
        const bool aff_ok = ap_interval(D, r.q).contains(Rational(r.affine_count));
        r.pass = proj_ok && aff_ok;
        os << "|N-" << (r.q + 1) << "|<=" << (D - 1) * (D - 2) << "*sqrt(" << r.q << ")";
    } else {
        r.observed = r.projective_count;
        const std::uint64_t cap = non_abs_bound(D);
        r.pass = r.projective_count <= cap && r.affine_count <= cap;
        os << "N<=" << cap;
    }
    r.bound = os.str();
    return r;
}

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t q, std::uint64_t i)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(i >> 32)};
    return std::mt19937_64(seq);
}

BiPoly random_bipoly(const FieldPtr& field, int D, std::mt19937_64& rng)
{
    if (D < 0)
        throw InvalidArgument("negative degree");
    std::uniform_int_distribution<std::uint64_t> any(0, field->order() - 1);
    std::uniform_int_distribution<std::uint64_t> nonzero(1, field->order() - 1);
    while (true) {
        BiPoly F(field, 2);
        for (int t = 0; t <= D; ++t)
            for (int i = 0; i <= t; ++i)
                F.add_term({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t - i)},
                           Elem{static_cast<std::uint32_t>(any(rng))});
        // force a top-degree term so the total degree is exactly D
        std::uniform_int_distribution<int> pick(0, D);
        const int i = pick(rng);
        Monomial top{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(D - i)};
        if (F.coeff(top).v == 0)
            F.add_term(top, Elem{static_cast<std::uint32_t>(nonzero(rng))});
        if (F.total_degree() == D)
            return F;
    }
}

BiPoly norm_form(const BiPoly& G, const FieldExtension& ext)
{
    const Field& E = *ext.ext();
    const std::uint64_t q = ext.base()->order();
    BiPoly prod = MPoly::constant(ext.ext(), G.nvars(), E.one());
    std::uint64_t power = 1;
    for (int i = 0; i < ext.degree(); ++i) {
        BiPoly conj(ext.ext(), G.nvars());
        for (const auto& [e, c] : G.terms())
            conj.add_term(e, E.pow_u(c, power));
        prod = prod * conj;
        power *= q;
    }
    auto down = restrict_coeffs(prod, ext);
    if (!down)
        throw Error("norm form did not descend to the base field");
    return *down;
}

namespace {

struct Attempt {
    std::vector<BoundReport> reports;
    bool accepted = false;
};

Attempt run_attempt(const SamplerConfig& cfg, const FieldPtr& field, std::uint64_t index)
{
    Attempt out;
    auto rng = instance_rng(cfg.seed, field->order(), index);
    std::uniform_int_distribution<int> deg(cfg.min_degree, cfg.max_degree);
    const std::string id = std::to_string(field->order()) + ":" + std::to_string(index);

    if (cfg.kind == SampleKind::norm_form) {
        const auto& ext = cached_extension(field, 2);
        const int half_max = std::max(1, cfg.max_degree / 2);
        std::uniform_int_distribution<int> gdeg(std::max(1, cfg.min_degree / 2), half_max);
        BiPoly F = norm_form(random_bipoly(ext.ext(), gdeg(rng), rng), ext);
        auto fac = kronecker_factor(F);
        if (fac.factors.size() != 1 || fac.factors.front().multiplicity != 1)
            return out;
        auto rep = check_irreducible_curve(fac.factors.front().poly, id);
        if (rep.classification != Classification::irreducible_not_absolutely)
            return out;
        rep.seed = cfg.seed;
        out.reports.push_back(std::move(rep));
        out.accepted = true;
        return out;
    }

    BiPoly F = random_bipoly(field, deg(rng), rng);
    auto fac = kronecker_factor(F);
    if (cfg.kind == SampleKind::absolutely_irreducible) {
        if (fac.factors.size() != 1 || fac.factors.front().multiplicity != 1)
            return out;
        auto rep = check_irreducible_curve(fac.factors.front().poly, id);
        if (rep.classification != Classification::absolutely_irreducible)
            return out;
        rep.seed = cfg.seed;
        out.reports.push_back(std::move(rep));
        out.accepted = true;
        return out;
    }
    for (std::size_t j = 0; j < fac.factors.size(); ++j) {
        auto rep = check_irreducible_curve(fac.factors[j].poly, id + "." + std::to_string(j));
        rep.seed = cfg.seed;
        out.reports.push_back(std::move(rep));
    }
    out.accepted = true;
    return out;
}

} // namespace

std::vector<BoundReport> verify_bounds_on_sample(const SamplerConfig& cfg)
{
    if (cfg.min_degree < 1 || cfg.max_degree < cfg.min_degree)
        throw InvalidArgument("invalid sampler degree range");
    if (cfg.per_field < 0)
        throw InvalidArgument("negative sample size");
    std::vector<BoundReport> all;
    for (std::uint64_t order : cfg.orders) {
        std::uint64_t p = 0;
        int k = 0;
        for (std::uint64_t cand = 2; cand <= order; ++cand) {
            if (order % cand == 0) {
                p = cand;
                break;
            }
        }
        for (std::uint64_t t = order; t > 1 && t % p == 0; t /= p)
            ++k;
        std::uint64_t check = 1;
        for (int i = 0; i < k; ++i)
            check *= p;
        if (check != order)
            throw InvalidArgument(std::to_string(order) + " is not a prime power");
        const FieldPtr field = build_field(p, k);
        // warm the extension cache outside the parallel region
        if (cfg.kind == SampleKind::norm_form)
            cached_extension(field, 2);

        int accepted = 0;
        std::uint64_t next = 0;
        const std::uint64_t max_attempts = 1000 * static_cast<std::uint64_t>(cfg.per_field) + 1000;
        while (accepted < cfg.per_field && next < max_attempts) {
            const auto batch = static_cast<std::int64_t>(std::max(8, 2 * (cfg.per_field - accepted)));
            std::vector<Attempt> results(batch);
            std::vector<std::exception_ptr> errors(batch);
#pragma omp parallel for schedule(dynamic, 1)
            for (std::int64_t i = 0; i < batch; ++i) {
                try {
                    results[i] = run_attempt(cfg, field, next + static_cast<std::uint64_t>(i));
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
            for (std::int64_t i = 0; i < batch && accepted < cfg.per_field; ++i) {
                if (errors[i])
                    std::rethrow_exception(errors[i]);
                if (!results[i].accepted)
                    continue;
                ++accepted;
                for (auto& r : results[i].reports)
                    all.push_back(std::move(r));
            }
            next += static_cast<std::uint64_t>(batch);
        }
        if (accepted < cfg.per_field)
            throw Error("sampler could not find enough instances over F_" + std::to_string(order));
    }
    return all;
}

std::string bounds_csv(const std::vector<BoundReport>& reports)
{
    std::ostringstream os;
    os << "instance_id,q,degree,classification,observed,bound,pass,seed\n";
    for (const auto& r : reports)
        os << r.instance_id << ',' << r.q << ',' << r.degree << ',' << to_string(r.classification) << ','
           << r.observed << ',' << r.bound << ',' << (r.pass ? "true" : "false") << ',' << r.seed << '\n';
    return os.str();
}

} // namespace ffd
