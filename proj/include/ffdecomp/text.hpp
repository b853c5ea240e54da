#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ffdecomp/field.hpp"
#include "ffdecomp/mpoly.hpp"
#include "ffdecomp/mvar.hpp"
#include "ffdecomp/poly.hpp"
#include "ffdecomp/ratfun.hpp"

namespace ffd {

// Text formats.
//
// Field:      "p", "p^k", or "p^k/c0,c1,...,ck" (modulus, constant term first).
// Element:    an integer (reduced mod p) or a coordinate list "[c0,c1,...]".
// Expression: + - * / ^ and parentheses over elements and variables. Univariate
//             input uses X; bivariate X, Y; n-variate X1..Xn (X, Y, Z also accepted
//             for X1, X2, X3).
// Term list:  "c:(i,j); c:(i,j); ..." for MPoly; an MRatFun is "terms / terms".

FieldPtr parse_field(std::string_view s);

Elem parse_elem(const Field& F, std::string_view s);
/// Integer for prime fields, "[c0,...,c_{k-1}]" otherwise.
std::string format_elem(const Field& F, Elem a);

/// "inf" or an element.
PointOrInf parse_point(const Field& F, std::string_view s);
std::string format_point(const Field& F, const PointOrInf& p);

Poly parse_poly(const FieldPtr& F, std::string_view s);
RatFun parse_ratfun(const FieldPtr& F, std::string_view s);
/// Expression or term list.
MPoly parse_mpoly(const FieldPtr& F, std::string_view s, std::size_t nvars);
/// Expression or "terms / terms".
MRatFun parse_mratfun(const FieldPtr& F, std::string_view s, std::size_t nvars);

/// Descending powers, e.g. "X^2+3*X+1"; "0" for zero.
std::string format_poly(const Poly& p, std::string_view var = "X");
/// "num" for polynomials, "(num) / (den)" otherwise (parentheses only around sums).
std::string format_ratfun(const RatFun& f);
/// "c:(i,j); ..." from the lex-greatest term down; "0" for zero.
std::string format_terms(const MPoly& p);
/// Expression with the given variable names, lex-greatest term first.
std::string format_mpoly(const MPoly& p, const std::vector<std::string>& names);
/// Default names: X, Y for two variables, X1..Xn otherwise (X for one).
std::vector<std::string> default_names(std::size_t nvars);
/// X1..Xn names.
std::string format_mratfun(const MRatFun& f);

} // namespace ffd
