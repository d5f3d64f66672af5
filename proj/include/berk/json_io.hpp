#pragma once

#include <json.hpp>

#include "curveradial.hpp"

namespace berk {

using Json = nlohmann::json;

// Canonical JSON forms: rationals as "num/den" strings in lowest terms
// (plain "num" when the denominator is 1), radii as "zero" | {"exp": q} |
// "inf", keys sorted, structures mirroring the kernel types. All *_from
// parsers throw validation_error with a path-qualified message.

Json rat_json(const Rat& q);
Rat rat_from(const Json& j, const std::string& path);

Json int_json(const Int& n);
Int int_from(const Json& j, const std::string& path);

Json radius_json(const Radius& r);
Radius radius_from(const Json& j, const std::string& path);

Json monomial_json(const Monomial& m);
Monomial monomial_from(const Json& j, const std::string& path);

Json bpoint_json(const BPoint& x);
BPoint bpoint_from(const Json& j, const std::string& path);

Json basic_json(const BasicRadial& p);
BasicRadial basic_from(const Json& j, const std::string& path);

Json radial_json(const RadialSet& s);
RadialSet radial_from(const Json& j, const std::string& path);

Json expr_json(const SetExpr& e);
SetExpr expr_from(const Json& j, const std::string& path);

Json poly_json(const Polynomial& h);
Polynomial poly_from(const Json& j, const std::string& path);

Json map_json(const RationalMap& h);
RationalMap map_from(const Json& j, const std::string& path);

Json domain_json(const Domain& d);
Domain domain_from(const Field& F, const Json& j, const std::string& path);

Json triangulation_json(const Triangulation& t);
Triangulation triangulation_from(const Field& F, const Json& j,
                                 const std::string& path);

Json locus_json(const LocusReport& r);

Json fiber_json(const Fiber& f);

Json encoded_json(const EncodedPoint& e);
EncodedPoint encoded_from(const Json& j, const std::string& path);

Json facade_json(const Facade& f);

Json compiled_json(const CompiledMap& m);

Json curve_piece_json(const CurvePiece& p);
CurvePiece curve_piece_from(const Json& j, const std::string& path);

Json curve_set_json(const CurveRadialSet& s);
CurveRadialSet curve_set_from(const Json& j, const std::string& path);

Json definable_json(const DefinableCurve& d);
DefinableCurve definable_from(const Json& j, const std::string& path);

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& j);

} // namespace berk
