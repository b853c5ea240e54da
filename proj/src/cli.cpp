#include "ffdecomp/cli.hpp"

#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ffdecomp/bounds.hpp"
#include "ffdecomp/counting.hpp"
#include "ffdecomp/decomp.hpp"
#include "ffdecomp/limits.hpp"
#include "ffdecomp/mvar.hpp"
#include "ffdecomp/report.hpp"
#include "ffdecomp/text.hpp"
#include "ffdecomp/version.hpp"

namespace ffd::cli {

namespace {

struct Options {
    std::string field;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::uint64_t max_order = 0;

    std::string f, g, h, F, eps = "1";
    std::size_t nvars = 1;
    std::size_t bivars = 2;
    std::vector<std::string> x;
    std::string v;
    bool serial = false;
    bool no_search = false;
    bool search = false;

    std::string family;
    std::uint64_t r = 0;
    std::vector<std::string> span;
    int d = 0;
    std::string phi;

    std::vector<std::uint64_t> orders{5, 7, 11, 13};
    std::string kind = "random";
    int min_degree = 1;
    int max_degree = 4;
    int per_field = 50;
};

class LimitGuard {
public:
    explicit LimitGuard(std::uint64_t max_order) : saved_(limits())
    {
        if (max_order)
            limits().max_order = max_order;
    }
    ~LimitGuard() { limits() = saved_; }
    LimitGuard(const LimitGuard&) = delete;
    LimitGuard& operator=(const LimitGuard&) = delete;

private:
    Limits saved_;
};

const std::string& require(const std::string& value, const char* flag)
{
    if (value.empty())
        throw InvalidArgument(std::string(flag) + " is required");
    return value;
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    void dispatch(const std::string& name)
    {
        static const std::map<std::string, void (Runner::*)()> table{
            {"field-info", &Runner::field_info},
            {"eval", &Runner::eval},
            {"compose", &Runner::compose},
            {"factor-u", &Runner::factor_u},
            {"factor-b", &Runner::factor_b},
            {"count-affine", &Runner::count_affine_cmd},
            {"count-projective", &Runner::count_projective_cmd},
            {"count-pairs", &Runner::count_pairs_cmd},
            {"fibers", &Runner::fibers},
            {"check-t1", &Runner::check_t1},
            {"check-t31", &Runner::check_t31},
            {"check-t41", &Runner::check_t41},
            {"find-h", &Runner::find_h_cmd},
            {"find-h-mv", &Runner::find_h_mv_cmd},
            {"gen-g", &Runner::gen_g},
            {"verify-bounds", &Runner::verify_bounds},
        };
        name_ = name;
        (this->*table.at(name))();
    }

private:
    FieldPtr field()
    {
        if (!field_)
            field_ = parse_field(require(o_.field, "--field"));
        return field_;
    }

    Json header() { return report_header(name_, field()->descriptor(), o_.seed); }

    void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

    RatFun ratfun(const std::string& s, const char* flag) { return parse_ratfun(field(), require(s, flag)); }

    MRatFun mratfun(const std::string& s, const char* flag)
    {
        return parse_mratfun(field(), require(s, flag), o_.nvars);
    }

    void field_info()
    {
        const FieldPtr fp = field();
        Json j = header();
        j["p"] = fp->p();
        j["k"] = fp->k();
        j["q"] = fp->order();
        j["modulus"] = fp->modulus();
        const FieldPtr prime = build_field(fp->p(), 1);
        std::vector<Elem> m;
        for (auto c : fp->modulus())
            m.push_back(Elem{c});
        j["modulus_poly"] = format_poly(Poly(prime, m));
        j["default_modulus"] = fp->has_default_modulus();
        emit(j);
    }

    void eval()
    {
        if (o_.x.empty())
            throw InvalidArgument("--x is required");
        Json j = header();
        if (o_.nvars == 1) {
            if (o_.x.size() != 1)
                throw InvalidArgument("univariate evaluation takes one --x");
            const RatFun f = ratfun(o_.f, "--f");
            j["f"] = format_ratfun(f);
            j["x"] = o_.x.front();
            j["value"] = format_point(*field(), rat_eval(f, parse_point(*field(), o_.x.front())));
        } else {
            const MRatFun f = mratfun(o_.f, "--f");
            std::vector<Elem> pt;
            for (const auto& s : o_.x)
                pt.push_back(parse_elem(*field(), s));
            j["f"] = format_mratfun(f);
            j["x"] = o_.x;
            const auto v = mrat_eval(f, pt);
            j["value"] = v ? format_point(*field(), *v) : "undefined";
        }
        emit(j);
    }

    void compose()
    {
        Json j = header();
        const RatFun g = ratfun(o_.g, "--g");
        if (o_.nvars == 1) {
            const RatFun h = ratfun(o_.h, "--h");
            j["g"] = format_ratfun(g);
            j["h"] = format_ratfun(h);
            j["f"] = format_ratfun(rat_compose(g, h));
        } else {
            const MRatFun h = mratfun(o_.h, "--h");
            j["g"] = format_ratfun(g);
            j["h"] = format_mratfun(h);
            j["f"] = format_mratfun(mrat_compose(g, h));
        }
        emit(j);
    }

    void factor_u()
    {
        const Poly f = parse_poly(field(), require(o_.f, "--f"));
        if (f.is_zero())
            throw InvalidArgument("cannot factor the zero polynomial");
        const Factorization fac = factor(f);
        Json j = header();
        j["f"] = format_poly(f);
        j["unit"] = format_elem(*field(), fac.unit);
        j["factors"] = Json::array();
        for (const auto& pf : fac.factors)
            j["factors"].push_back({{"poly", format_poly(pf.poly)}, {"multiplicity", pf.multiplicity}});
        j["irreducible"] = f.degree() >= 1 && fac.factors.size() == 1 && fac.factors.front().multiplicity == 1;
        emit(j);
    }

    void factor_b()
    {
        const MPoly F = parse_mpoly(field(), require(o_.F, "--F"), o_.bivars);
        if (F.is_zero())
            throw InvalidArgument("cannot factor the zero polynomial");
        const auto names = default_names(o_.bivars);
        const MFactorization fac = kronecker_factor(F);
        Json j = header();
        j["F"] = format_mpoly(F, names);
        j["unit"] = format_elem(*field(), fac.unit);
        j["factors"] = Json::array();
        for (const auto& mf : fac.factors)
            j["factors"].push_back({{"poly", format_mpoly(mf.poly, names)},
                                    {"terms", format_terms(mf.poly)},
                                    {"multiplicity", mf.multiplicity},
                                    {"absolutely_irreducible", is_absolutely_irreducible(mf.poly)}});
        emit(j);
    }

    void count_affine_cmd()
    {
        const MPoly F = parse_mpoly(field(), require(o_.F, "--F"), o_.bivars);
        Json j = header();
        j["F"] = format_terms(F);
        j["nvars"] = o_.bivars;
        j["count"] = o_.serial ? count_affine_serial(F) : count_affine(F);
        emit(j);
    }

    void count_projective_cmd()
    {
        const MPoly F = parse_mpoly(field(), require(o_.F, "--F"), 2);
        Json j = header();
        j["F"] = format_terms(F);
        j["count"] = o_.serial ? count_projective_serial(F) : count_projective(F);
        emit(j);
    }

    void count_pairs_cmd()
    {
        const RatFun g = ratfun(o_.g, "--g");
        Json j = header();
        if (o_.nvars == 1) {
            const RatFun f = ratfun(o_.f, "--f");
            j["f"] = format_ratfun(f);
            j["g"] = format_ratfun(g);
            j["count"] = o_.serial ? count_pairs_serial(f, g) : count_pairs(f, g);
        } else {
            const MRatFun f = mratfun(o_.f, "--f");
            j["f"] = format_mratfun(f);
            j["g"] = format_ratfun(g);
            j["count"] = o_.serial ? count_pairs_mv_serial(f, g) : count_pairs_mv(f, g);
            j["undefined_points"] = undefined_count(f);
        }
        emit(j);
    }

    void fibers()
    {
        const RatFun g = ratfun(o_.g, "--g");
        const Field& F = *field();
        Json j = header();
        j["g"] = format_ratfun(g);
        if (!o_.v.empty()) {
            const auto fib = fiber(g, parse_point(F, o_.v));
            j["value"] = o_.v;
            j["size"] = fib.size();
            Json elems = Json::array();
            for (Elem e : fib)
                elems.push_back(format_elem(F, e));
            j["fiber"] = elems;
        }
        const FiberDiagnostics diag = small_fiber_diagnostics(g);
        j["delta"] = diag.delta;
        Json y2 = Json::array();
        for (Elem e : diag.y2_finite)
            y2.push_back(format_elem(F, e));
        j["y2_finite"] = y2;
        j["y2_infinity"] = diag.y2_infinity;
        j["y2_size"] = diag.y2_size();
        Json vs = Json::array();
        for (auto idx : diag.v_set)
            vs.push_back(idx == F.order() ? std::string("inf") : format_elem(F, F.element(idx)));
        j["v_set"] = vs;
        j["sandwich_holds"] = diag.sandwich_holds;
        std::map<std::uint64_t, std::uint64_t> sizes;
        std::vector<std::uint64_t> hist(F.order() + 1, 0);
        for (auto v : value_table(g))
            ++hist[v];
        for (auto c : hist)
            if (c)
                ++sizes[c];
        Json dist = Json::object();
        for (auto [size, count] : sizes)
            dist[std::to_string(size)] = count;
        j["fiber_size_distribution"] = dist;
        emit(j);
    }

    void check_t1()
    {
        const RatFun f = ratfun(o_.f, "--f"), g = ratfun(o_.g, "--g");
        DecompReport r = check_T1(f, g);
        if (!o_.no_search)
            attach_search(r, f, g);
        Json j = decomp_json(name_, *field(), o_.seed, r);
        j["f"] = format_ratfun(f);
        j["g"] = format_ratfun(g);
        emit(j);
    }

    void check_t31()
    {
        const RatFun f = ratfun(o_.f, "--f"), g = ratfun(o_.g, "--g");
        DecompReport r = check_T31(f, g, parse_rational(o_.eps));
        if (!o_.no_search)
            attach_search(r, f, g);
        Json j = decomp_json(name_, *field(), o_.seed, r);
        j["f"] = format_ratfun(f);
        j["g"] = format_ratfun(g);
        emit(j);
    }

    void check_t41()
    {
        const MRatFun f = mratfun(o_.f, "--f");
        const RatFun g = ratfun(o_.g, "--g");
        DecompReport r = check_T41(f, g, parse_rational(o_.eps));
        Json j = decomp_json(name_, *field(), o_.seed, r);
        if (o_.search) {
            const auto h = find_h_mv(f, g);
            j["h"] = h ? Json(format_mratfun(*h)) : Json(nullptr);
            j["verified"] = h && verify_h_mv(f, g, *h);
        }
        j["f"] = format_mratfun(f);
        j["g"] = format_ratfun(g);
        emit(j);
    }

    void find_h_cmd()
    {
        const RatFun f = ratfun(o_.f, "--f"), g = ratfun(o_.g, "--g");
        const auto h = find_h(f, g);
        Json j = header();
        j["f"] = format_ratfun(f);
        j["g"] = format_ratfun(g);
        j["h"] = h ? Json(format_ratfun(*h)) : Json(nullptr);
        j["verified"] = h && rat_compose(g, *h) == f;
        emit(j);
    }

    void find_h_mv_cmd()
    {
        const MRatFun f = mratfun(o_.f, "--f");
        const RatFun g = ratfun(o_.g, "--g");
        const auto h = find_h_mv(f, g);
        Json j = header();
        j["f"] = format_mratfun(f);
        j["g"] = format_ratfun(g);
        j["h"] = h ? Json(format_mratfun(*h)) : Json(nullptr);
        j["verified"] = h && verify_h_mv(f, g, *h);
        emit(j);
    }

    void gen_g()
    {
        const FieldPtr fp = field();
        const std::string& fam = require(o_.family, "--family");
        GFamily kind;
        if (fam == "artin-schreier") {
            kind = family::ArtinSchreier{o_.r};
        } else if (fam == "subspace") {
            std::vector<Elem> gens;
            for (const auto& s : o_.span)
                gens.push_back(parse_elem(*fp, s));
            kind = family::Subspace{gens};
        } else if (fam == "power") {
            kind = family::Power{o_.d};
        } else if (fam == "moebius-pre") {
            kind = family::MoebiusPre{ratfun(o_.g, "--g"), ratfun(o_.phi, "--phi")};
        } else if (fam == "moebius-post") {
            kind = family::MoebiusPost{ratfun(o_.g, "--g"), ratfun(o_.phi, "--phi")};
        } else {
            throw InvalidArgument("unknown family '" + fam + "'");
        }
        const RatFun g = gen_g_family(kind, fp);
        Json j = header();
        j["family"] = fam;
        j["g"] = format_ratfun(g);
        j["delta"] = g.degree();
        emit(j);
    }

    void verify_bounds()
    {
        SamplerConfig cfg;
        cfg.orders = o_.orders;
        cfg.min_degree = o_.min_degree;
        cfg.max_degree = o_.max_degree;
        cfg.per_field = o_.per_field;
        cfg.seed = o_.seed;
        if (o_.kind == "random")
            cfg.kind = SampleKind::random;
        else if (o_.kind == "absolutely-irreducible")
            cfg.kind = SampleKind::absolutely_irreducible;
        else if (o_.kind == "norm-form")
            cfg.kind = SampleKind::norm_form;
        else
            throw InvalidArgument("unknown sample kind '" + o_.kind + "'");
        for (auto q : cfg.orders)
            check_grid(q, 2);
        const auto reports = verify_bounds_on_sample(cfg);
        if (o_.format == "csv") {
            out_ << bounds_csv(reports);
            return;
        }
        std::string fields;
        for (auto q : cfg.orders)
            fields += (fields.empty() ? "" : ",") + std::to_string(q);
        Json j = report_header(name_, fields, o_.seed);
        j["kind"] = o_.kind;
        std::uint64_t violations = 0;
        Json items = Json::array();
        for (const auto& r : reports) {
            violations += !r.pass;
            items.push_back(bound_json(r));
        }
        j["instances"] = reports.size();
        j["violations"] = violations;
        j["reports"] = items;
        emit(j);
    }

    const Options& o_;
    std::ostream& out_;
    std::string name_;
    FieldPtr field_;
};

void add_fg(CLI::App* s, Options& o, bool with_nvars)
{
    s->add_option("--f", o.f, "rational function f");
    s->add_option("--g", o.g, "rational function g");
    if (with_nvars)
        s->add_option("--nvars", o.nvars, "number of X variables of f")->check(CLI::Range(1, 8));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact rational-function decomposition experiments over finite fields", kToolName};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));
    app.add_option("--field", o.field, "field descriptor p^k or p^k/c0,...,ck");
    app.add_option("--seed", o.seed, "seed for randomized subcommands");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--max-order", o.max_order, "override the enumeration size limit");

    app.add_subcommand("field-info", "field parameters and modulus");

    auto* eval = app.add_subcommand("eval", "evaluate f at a point");
    eval->add_option("--f", o.f, "rational function");
    eval->add_option("--x", o.x, "coordinate (repeat for several variables; 'inf' allowed when univariate)");
    eval->add_option("--nvars", o.nvars, "number of variables")->check(CLI::Range(1, 8));

    auto* compose = app.add_subcommand("compose", "g(h)");
    compose->add_option("--g", o.g, "outer function");
    compose->add_option("--h", o.h, "inner function");
    compose->add_option("--nvars", o.nvars, "number of variables of h")->check(CLI::Range(1, 8));

    auto* fu = app.add_subcommand("factor-u", "factor a univariate polynomial");
    fu->add_option("--f", o.f, "polynomial in X");

    auto* fb = app.add_subcommand("factor-b", "factor a bivariate (or n-variate) polynomial");
    fb->add_option("--F", o.F, "expression in X, Y or a term list");
    fb->add_option("--nvars", o.bivars, "number of variables")->check(CLI::Range(1, 8));

    auto* ca = app.add_subcommand("count-affine", "affine zero count");
    ca->add_option("--F", o.F, "polynomial");
    ca->add_option("--nvars", o.bivars, "number of variables")->check(CLI::Range(1, 8));
    ca->add_flag("--serial", o.serial, "use the serial reference kernel");

    auto* cp = app.add_subcommand("count-projective", "projective zero count of a plane curve");
    cp->add_option("--F", o.F, "bivariate polynomial");
    cp->add_flag("--serial", o.serial, "use the serial reference kernel");

    auto* pairs = app.add_subcommand("count-pairs", "pairs (x, y) with f(x) = g(y)");
    add_fg(pairs, o, true);
    pairs->add_flag("--serial", o.serial, "use the serial reference kernel");

    auto* fib = app.add_subcommand("fibers", "fiber statistics of g");
    fib->add_option("--g", o.g, "rational function g");
    fib->add_option("--v", o.v, "also list the fiber over this value ('inf' allowed)");

    auto* t1 = app.add_subcommand("check-t1", "univariate hypotheses with the 8(d+delta) exception budget");
    add_fg(t1, o, false);
    t1->add_flag("--no-search", o.no_search, "skip the search for h");

    auto* t31 = app.add_subcommand("check-t31", "univariate pair-count hypotheses");
    add_fg(t31, o, false);
    t31->add_option("--eps", o.eps, "epsilon as a/b");
    t31->add_flag("--no-search", o.no_search, "skip the search for h");

    auto* t41 = app.add_subcommand("check-t41", "multivariate pair-count hypotheses");
    add_fg(t41, o, true);
    t41->add_option("--eps", o.eps, "epsilon as a/b");
    t41->add_flag("--search", o.search, "also run the multivariate search for h");

    auto* fh = app.add_subcommand("find-h", "search for h with f = g(h)");
    add_fg(fh, o, false);

    auto* fhmv = app.add_subcommand("find-h-mv", "multivariate search for h with f = g(h)");
    add_fg(fhmv, o, true);

    auto* gg = app.add_subcommand("gen-g", "build g from a named family");
    gg->add_option("--family", o.family, "artin-schreier | subspace | power | moebius-pre | moebius-post");
    gg->add_option("--r", o.r, "subfield order for artin-schreier");
    gg->add_option("--span", o.span, "spanning elements for subspace (repeatable)");
    gg->add_option("--d", o.d, "exponent for power");
    gg->add_option("--g", o.g, "base g for the Moebius families");
    gg->add_option("--phi", o.phi, "degree-1 map for the Moebius families");

    auto* vb = app.add_subcommand("verify-bounds", "sample curves and check the point-count bounds");
    vb->add_option("--orders", o.orders, "field orders")->delimiter(',');
    vb->add_option("--kind", o.kind, "random | absolutely-irreducible | norm-form");
    vb->add_option("--min-degree", o.min_degree, "smallest total degree");
    vb->add_option("--max-degree", o.max_degree, "largest total degree");
    vb->add_option("--per-field", o.per_field, "instances per field order");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        LimitGuard guard(o.max_order);
        Runner(o, out).dispatch(app.get_subcommands().front()->get_name());
        return kOk;
    } catch (const LimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kLimit;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

} // namespace ffd::cli
