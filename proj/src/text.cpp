#include "ffdecomp/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ffdecomp/limits.hpp"

namespace ffd {

namespace {

constexpr int kMaxParsedDegree = 1 << 20;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what)
{
    s = trim(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec == std::errc::invalid_argument || ptr != s.data() + s.size())
        throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(s) + "'");
    if (ec == std::errc::result_out_of_range)
        throw LimitExceeded(std::string(what) + " out of range: " + std::string(s));
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[' || s[i] == '(')
            ++depth;
        else if (s[i] == ']' || s[i] == ')')
            --depth;
        else if (s[i] == sep && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

struct Frac {
    MPoly num;
    MPoly den;
};

class Parser {
public:
    Parser(const FieldPtr& fp, std::string_view s, std::size_t nvars) : fp_(fp), s_(s), nvars_(nvars) {}

    Frac parse()
    {
        Frac r = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InvalidArgument("cannot parse '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": "
                              + msg);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MPoly one() const { return MPoly::constant(fp_, nvars_, fp_->one()); }

    Frac simplify(Frac f) const
    {
        if (f.den.is_constant() && !(f.den == one())) {
            const Elem s = fp_->inv(f.den.coeff(Monomial(nvars_, 0)));
            f.num = f.num.scale(s);
            f.den = one();
        }
        return f;
    }

    Frac add(const Frac& a, const Frac& b, bool minus) const
    {
        const MPoly bn = minus ? -b.num : b.num;
        if (a.den == b.den)
            return simplify({a.num + bn, a.den});
        return simplify({a.num * b.den + bn * a.den, a.den * b.den});
    }

    Frac expr()
    {
        Frac r = term();
        while (true) {
            if (eat('+'))
                r = add(r, term(), false);
            else if (eat('-'))
                r = add(r, term(), true);
            else
                return r;
        }
    }

    Frac term()
    {
        Frac r = unary();
        while (true) {
            if (eat('*')) {
                Frac b = unary();
                r = simplify({r.num * b.num, r.den * b.den});
            } else if (eat('/')) {
                Frac b = unary();
                if (b.num.is_zero())
                    fail("division by zero");
                r = simplify({r.num * b.den, r.den * b.num});
            } else {
                return r;
            }
        }
    }

    Frac unary()
    {
        if (eat('-')) {
            Frac r = unary();
            return {-r.num, r.den};
        }
        if (eat('+'))
            return unary();
        return power();
    }

    Frac power()
    {
        Frac base = atom();
        if (!eat('^'))
            return base;
        skip();
        bool negative = false;
        if (eat('-'))
            negative = true;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an exponent");
        const std::uint64_t e = parse_u64(s_.substr(start, pos_ - start), "exponent");
        const int deg = std::max(base.num.total_degree(), base.den.total_degree());
        if (e > static_cast<std::uint64_t>(kMaxParsedDegree)
            || static_cast<std::uint64_t>(std::max(deg, 1)) * e > static_cast<std::uint64_t>(kMaxParsedDegree))
            throw LimitExceeded("exponent " + std::to_string(e) + " too large");
        if (negative) {
            if (base.num.is_zero())
                fail("zero to a negative power");
            std::swap(base.num, base.den);
        }
        const auto u = static_cast<unsigned>(e);
        return simplify({base.num.pow(u), base.den.pow(u)});
    }

    Frac constant(Elem c) const { return {MPoly::constant(fp_, nvars_, c), one()}; }

    Frac atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Frac r = expr();
            if (!eat(')'))
                fail("expected ')'");
            return r;
        }
        if (c == '[') {
            const std::size_t close = s_.find(']', pos_);
            if (close == std::string_view::npos)
                fail("unterminated '['");
            const Elem e = parse_elem(*fp_, s_.substr(pos_, close - pos_ + 1));
            pos_ = close + 1;
            return constant(e);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = (v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0')) % fp_->p();
                ++pos_;
            }
            return constant(fp_->from_int(static_cast<std::int64_t>(v)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            const std::size_t var = variable(s_.substr(start, pos_ - start));
            return {MPoly::var(fp_, nvars_, var), one()};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::size_t variable(std::string_view name)
    {
        if (name.size() == 1) {
            const std::size_t i = name[0] == 'X' ? 0 : name[0] == 'Y' ? 1 : name[0] == 'Z' ? 2 : nvars_;
            if (i < nvars_)
                return i;
        } else if (name[0] == 'X') {
            std::size_t i = 0;
            auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), i);
            if (ec == std::errc() && ptr == name.data() + name.size() && i >= 1 && i <= nvars_)
                return i - 1;
        }
        fail("unknown variable '" + std::string(name) + "' for " + std::to_string(nvars_) + " variable(s)");
    }

    const FieldPtr& fp_;
    std::string_view s_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

Frac parse_frac(const FieldPtr& F, std::string_view s, std::size_t nvars)
{
    if (trim(s).empty())
        throw InvalidArgument("empty expression");
    return Parser(F, s, nvars).parse();
}

MPoly parse_term_list(const FieldPtr& F, std::string_view s, std::size_t nvars)
{
    MPoly r(F, nvars);
    s = trim(s);
    if (s == "0")
        return r;
    for (auto item : split(s, ';')) {
        item = trim(item);
        if (item.empty())
            continue;
        const auto colon = item.rfind(':');
        if (colon == std::string_view::npos)
            throw InvalidArgument("term '" + std::string(item) + "' lacks ':'");
        const Elem c = parse_elem(*F, item.substr(0, colon));
        auto mono = trim(item.substr(colon + 1));
        if (mono.size() < 2 || mono.front() != '(' || mono.back() != ')')
            throw InvalidArgument("malformed exponent tuple '" + std::string(mono) + "'");
        const auto parts = split(mono.substr(1, mono.size() - 2), ',');
        if (parts.size() != nvars)
            throw InvalidArgument("exponent tuple '" + std::string(mono) + "' does not have "
                                  + std::to_string(nvars) + " entries");
        Monomial m;
        for (auto p : parts) {
            const std::uint64_t e = parse_u64(p, "exponent");
            if (e > static_cast<std::uint64_t>(kMaxParsedDegree))
                throw LimitExceeded("exponent " + std::to_string(e) + " too large");
            m.push_back(static_cast<std::uint32_t>(e));
        }
        r.add_term(m, c);
    }
    return r;
}

bool is_term_list(std::string_view s)
{
    return s.find(':') != std::string_view::npos;
}

std::string monomial_string(const Monomial& m, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += names[i];
        if (m[i] > 1)
            out += '^' + std::to_string(m[i]);
    }
    return out;
}

std::string term_string(const Field& F, Elem c, const std::string& mono)
{
    if (mono.empty())
        return format_elem(F, c);
    if (c == F.one())
        return mono;
    return format_elem(F, c) + "*" + mono;
}

std::string wrap(const std::string& s)
{
    return s.find_first_of("+*") == std::string::npos ? s : "(" + s + ")";
}

} // namespace

FieldPtr parse_field(std::string_view s)
{
    s = trim(s);
    std::string_view head = s, tail;
    const auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        head = trim(s.substr(0, slash));
        tail = trim(s.substr(slash + 1));
    }
    std::uint64_t p = 0, k = 1;
    const auto caret = head.find('^');
    if (caret == std::string_view::npos) {
        p = parse_u64(head, "field characteristic");
    } else {
        p = parse_u64(head.substr(0, caret), "field characteristic");
        k = parse_u64(head.substr(caret + 1), "extension degree");
    }
    if (!is_prime(p))
        throw InvalidArgument(std::to_string(p) + " is not prime");
    if (k < 1)
        throw InvalidArgument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (q > limits().max_order / p)
            throw LimitExceeded("field order " + std::string(head) + " exceeds the configured limit");
        q *= p;
    }
    if (slash == std::string_view::npos)
        return build_field(p, static_cast<int>(k));
    std::vector<std::uint32_t> modulus;
    for (auto c : split(tail, ',')) {
        const std::uint64_t v = parse_u64(c, "modulus coefficient");
        if (v >= p)
            throw InvalidArgument("modulus coefficient " + std::to_string(v) + " not reduced mod "
                                  + std::to_string(p));
        modulus.push_back(static_cast<std::uint32_t>(v));
    }
    if (modulus.size() != k + 1)
        throw InvalidArgument("modulus for " + std::string(head) + " needs " + std::to_string(k + 1)
                              + " coefficients");
    return build_field(p, std::move(modulus));
}

Elem parse_elem(const Field& F, std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']')
            throw InvalidArgument("unterminated coordinate list '" + std::string(s) + "'");
        const auto parts = split(s.substr(1, s.size() - 2), ',');
        if (parts.size() > static_cast<std::size_t>(F.k()))
            throw InvalidArgument("coordinate list '" + std::string(s) + "' longer than k = "
                                  + std::to_string(F.k()));
        std::vector<std::uint32_t> c;
        for (auto part : parts) {
            const std::uint64_t v = parse_u64(part, "coordinate");
            if (v >= F.p())
                throw InvalidArgument("coordinate " + std::to_string(v) + " not reduced mod " + std::to_string(F.p()));
            c.push_back(static_cast<std::uint32_t>(v));
        }
        c.resize(static_cast<std::size_t>(F.k()), 0);
        return F.from_coords(c);
    }
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw InvalidArgument("malformed field element '" + std::string(s) + "'");
    std::uint64_t v = 0;
    for (char ch : s)
        v = (v * 10 + static_cast<std::uint64_t>(ch - '0')) % F.p();
    const Elem e = F.from_int(static_cast<std::int64_t>(v));
    return negative ? F.neg(e) : e;
}

std::string format_elem(const Field& F, Elem a)
{
    if (F.k() == 1)
        return std::to_string(a.v);
    std::string out = "[";
    const auto c = F.coords(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(c[i]);
    }
    return out + "]";
}

PointOrInf parse_point(const Field& F, std::string_view s)
{
    s = trim(s);
    if (s == "inf" || s == "infinity")
        return PointOrInf::infinity();
    return PointOrInf::finite(parse_elem(F, s));
}

std::string format_point(const Field& F, const PointOrInf& p)
{
    return p.is_infinity() ? "inf" : format_elem(F, p.value());
}

Poly parse_poly(const FieldPtr& F, std::string_view s)
{
    const Frac f = parse_frac(F, s, 1);
    if (!f.den.is_constant())
        throw InvalidArgument("'" + std::string(s) + "' is not a polynomial");
    return f.num.to_poly(0);
}

RatFun parse_ratfun(const FieldPtr& F, std::string_view s)
{
    const Frac f = parse_frac(F, s, 1);
    return rat_make(f.num.to_poly(0), f.den.to_poly(0));
}

MPoly parse_mpoly(const FieldPtr& F, std::string_view s, std::size_t nvars)
{
    if (is_term_list(s))
        return parse_term_list(F, s, nvars);
    const Frac f = parse_frac(F, s, nvars);
    if (!f.den.is_constant())
        throw InvalidArgument("'" + std::string(s) + "' is not a polynomial");
    return f.num;
}

MRatFun parse_mratfun(const FieldPtr& F, std::string_view s, std::size_t nvars)
{
    if (is_term_list(s)) {
        const auto parts = split(s, '/');
        if (parts.size() > 2)
            throw InvalidArgument("more than one '/' in '" + std::string(s) + "'");
        const MPoly num = parse_term_list(F, parts[0], nvars);
        if (parts.size() == 1)
            return mrat_make(num);
        return mrat_make(num, parse_term_list(F, parts[1], nvars));
    }
    const Frac f = parse_frac(F, s, nvars);
    return mrat_make(f.num, f.den);
}

std::string format_poly(const Poly& p, std::string_view var)
{
    if (p.is_zero())
        return "0";
    const std::vector<std::string> names{std::string(var)};
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const Elem c = p.coeff(i);
        if (c.v == 0)
            continue;
        if (!out.empty())
            out += '+';
        out += term_string(p.F(), c, monomial_string({static_cast<std::uint32_t>(i)}, names));
    }
    return out;
}

std::string format_ratfun(const RatFun& f)
{
    if (f.den().is_one())
        return format_poly(f.num());
    return wrap(format_poly(f.num())) + " / " + wrap(format_poly(f.den()));
}

std::string format_terms(const MPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!out.empty())
            out += "; ";
        out += format_elem(p.F(), it->second) + ":(";
        for (std::size_t i = 0; i < it->first.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(it->first[i]);
        }
        out += ')';
    }
    return out;
}

std::string format_mpoly(const MPoly& p, const std::vector<std::string>& names)
{
    if (names.size() != p.nvars())
        throw InvalidArgument("wrong number of variable names");
    if (p.is_zero())
        return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!out.empty())
            out += '+';
        out += term_string(p.F(), it->second, monomial_string(it->first, names));
    }
    return out;
}

std::vector<std::string> default_names(std::size_t nvars)
{
    if (nvars == 1)
        return {"X"};
    if (nvars == 2)
        return {"X", "Y"};
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= nvars; ++i)
        names.push_back("X" + std::to_string(i));
    return names;
}

std::string format_mratfun(const MRatFun& f)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= f.nvars(); ++i)
        names.push_back("X" + std::to_string(i));
    const std::string num = format_mpoly(f.num(), names);
    if (f.den().is_constant() && f.den().coeff(Monomial(f.nvars(), 0)) == f.field()->one())
        return num;
    return wrap(num) + " / " + wrap(format_mpoly(f.den(), names));
}

} // namespace ffd
