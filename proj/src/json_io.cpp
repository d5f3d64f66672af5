#include "berk/json_io.hpp"

namespace berk {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw validation_error(path + ": " + msg);
}

const Json& field(const Json& j, const std::string& path,
                  const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing key \"" + key + "\"");
    return *it;
}

std::string str_at(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

long long_from(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

bool bool_from(const Json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

std::string idx(const std::string& path, size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

std::string key(const std::string& path, const std::string& k) {
    return path + "." + k;
}

} // namespace

Json rat_json(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from(const Json& j, const std::string& path) {
    std::string s = str_at(j, path);
    if (s.empty()) fail(path, "empty rational string");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (!(std::isdigit((unsigned char)c) || c == '/' ||
              (c == '-' && (i == 0 || s[i - 1] == '/'))))
            fail(path, "invalid rational string \"" + s + "\"");
    }
    try {
        Rat q(s);
        if (q.get_den() == 0) fail(path, "zero denominator in \"" + s + "\"");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(path, "invalid rational string \"" + s + "\"");
    }
}

Json int_json(const Int& n) { return n.get_str(); }

Int int_from(const Json& j, const std::string& path) {
    Rat q = rat_from(j, path);
    if (q.get_den() != 1) fail(path, "expected an integer string");
    return q.get_num();
}

Json radius_json(const Radius& r) {
    if (r.is_zero()) return "zero";
    if (r.is_inf()) return "inf";
    return Json{{"exp", rat_json(r.exponent())}};
}

Radius radius_from(const Json& j, const std::string& path) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "zero") return Radius::zero();
        if (s == "inf") return Radius::inf();
        fail(path, "expected \"zero\", \"inf\", or {\"exp\": q}");
    }
    return Radius::exp(rat_from(field(j, path, "exp"), key(path, "exp")));
}

Json monomial_json(const Monomial& m) {
    return Json{{"rho", radius_json(m.coeff)}, {"g", rat_json(m.deg)}};
}

Monomial monomial_from(const Json& j, const std::string& path) {
    return {radius_from(field(j, path, "rho"), key(path, "rho")),
            rat_from(field(j, path, "g"), key(path, "g"))};
}

Json bpoint_json(const BPoint& x) {
    return Json{{"a", rat_json(x.a)}, {"r", radius_json(x.r)}};
}

BPoint bpoint_from(const Json& j, const std::string& path) {
    return {rat_from(field(j, path, "a"), key(path, "a")),
            radius_from(field(j, path, "r"), key(path, "r"))};
}

Json basic_json(const BasicRadial& p) {
    Json j{{"a", rat_json(p.a)}};
    switch (p.kind) {
    case BasicRadial::Kind::R0:
        j["kind"] = "R0";
        j["s"] = radius_json(p.s);
        break;
    case BasicRadial::Kind::R1:
        j["kind"] = "R1";
        j["s1"] = radius_json(p.s1);
        j["s2"] = radius_json(p.s2);
        break;
    case BasicRadial::Kind::R2:
        j["kind"] = "R2";
        j["s1"] = radius_json(p.s1);
        j["s2"] = radius_json(p.s2);
        j["m1"] = monomial_json(p.m1);
        break;
    case BasicRadial::Kind::R3:
        j["kind"] = "R3";
        j["s1"] = radius_json(p.s1);
        j["s2"] = radius_json(p.s2);
        j["m1"] = monomial_json(p.m1);
        j["m2"] = monomial_json(p.m2);
        break;
    case BasicRadial::Kind::R4:
    case BasicRadial::Kind::R5: {
        j["kind"] = p.kind == BasicRadial::Kind::R4 ? "R4" : "R5";
        j["s"] = radius_json(p.s);
        j["s1"] = radius_json(p.s1);
        if (p.kind == BasicRadial::Kind::R5) j["s2"] = radius_json(p.s2);
        Json holes = Json::array();
        for (const auto& h : p.holes) holes.push_back(rat_json(h));
        j["holes"] = std::move(holes);
        break;
    }
    case BasicRadial::Kind::R6:
        j["kind"] = "R6";
        j["s"] = radius_json(p.s);
        j["s1"] = radius_json(p.s1);
        break;
    case BasicRadial::Kind::R7:
        j["kind"] = "R7";
        j["s"] = radius_json(p.s);
        j["s1"] = radius_json(p.s1);
        j["s2"] = radius_json(p.s2);
        break;
    }
    return j;
}

BasicRadial basic_from(const Json& j, const std::string& path) {
    std::string kind = str_at(field(j, path, "kind"), key(path, "kind"));
    Rat a = rat_from(field(j, path, "a"), key(path, "a"));
    auto rad = [&](const char* k) {
        return radius_from(field(j, path, k), key(path, k));
    };
    auto mono = [&](const char* k) {
        return monomial_from(field(j, path, k), key(path, k));
    };
    auto holes = [&]() {
        const Json& hs = field(j, path, "holes");
        if (!hs.is_array()) fail(key(path, "holes"), "expected an array");
        std::vector<Rat> out;
        for (size_t i = 0; i < hs.size(); ++i)
            out.push_back(rat_from(hs[i], idx(key(path, "holes"), i)));
        return out;
    };
    if (kind == "R0") return BasicRadial::point(a, rad("s"));
    if (kind == "R1") return BasicRadial::branch_segment(a, rad("s1"), rad("s2"));
    if (kind == "R2")
        return BasicRadial::annulus_graph(a, rad("s1"), rad("s2"), mono("m1"));
    if (kind == "R3")
        return BasicRadial::annulus_band(a, rad("s1"), rad("s2"), mono("m1"),
                                         mono("m2"));
    if (kind == "R4")
        return BasicRadial::closed_cyl_level(a, rad("s"), holes(), rad("s1"));
    if (kind == "R5")
        return BasicRadial::closed_cyl_band(a, rad("s"), holes(), rad("s1"),
                                            rad("s2"));
    if (kind == "R6") return BasicRadial::open_cyl_level(a, rad("s"), rad("s1"));
    if (kind == "R7")
        return BasicRadial::open_cyl_band(a, rad("s"), rad("s1"), rad("s2"));
    fail(key(path, "kind"), "unknown piece kind \"" + kind + "\"");
}

Json radial_json(const RadialSet& s) {
    Json ps = Json::array();
    for (const auto& p : s.pieces) ps.push_back(basic_json(p));
    return Json{{"pieces", std::move(ps)}};
}

RadialSet radial_from(const Json& j, const std::string& path) {
    const Json& ps = field(j, path, "pieces");
    if (!ps.is_array()) fail(key(path, "pieces"), "expected an array");
    RadialSet out;
    for (size_t i = 0; i < ps.size(); ++i)
        out.pieces.push_back(basic_from(ps[i], idx(key(path, "pieces"), i)));
    return out;
}

Json expr_json(const SetExpr& e) {
    switch (e.op) {
    case SetExpr::Op::Leaf:
        return basic_json(e.leaf);
    case SetExpr::Op::Union:
    case SetExpr::Op::Inter:
    case SetExpr::Op::Diff:
    case SetExpr::Op::Compl: {
        Json args = Json::array();
        for (const auto& a : e.args) args.push_back(expr_json(a));
        const char* op = e.op == SetExpr::Op::Union   ? "union"
                         : e.op == SetExpr::Op::Inter ? "inter"
                         : e.op == SetExpr::Op::Diff  ? "diff"
                                                      : "compl";
        return Json{{"op", op}, {"args", std::move(args)}};
    }
    }
    fail("$", "unreachable");
}

SetExpr expr_from(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    if (!j.contains("op")) return SetExpr::of(basic_from(j, path));
    std::string op = str_at(j["op"], key(path, "op"));
    const Json& args = field(j, path, "args");
    if (!args.is_array()) fail(key(path, "args"), "expected an array");
    std::vector<SetExpr> xs;
    for (size_t i = 0; i < args.size(); ++i)
        xs.push_back(expr_from(args[i], idx(key(path, "args"), i)));
    if (op == "union") return SetExpr::unite(std::move(xs));
    if (op == "inter") return SetExpr::intersect(std::move(xs));
    if (op == "diff") {
        if (xs.size() != 2) fail(key(path, "args"), "diff takes two arguments");
        return SetExpr::diff(std::move(xs[0]), std::move(xs[1]));
    }
    if (op == "compl") {
        if (xs.size() != 1) fail(key(path, "args"), "compl takes one argument");
        return SetExpr::complement(std::move(xs[0]));
    }
    fail(key(path, "op"), "unknown operator \"" + op + "\"");
}

Json poly_json(const Polynomial& h) {
    Json cs = Json::array();
    for (const auto& c : h.coeffs) cs.push_back(rat_json(c));
    return Json{{"coeffs", std::move(cs)}};
}

Polynomial poly_from(const Json& j, const std::string& path) {
    const Json& cs = field(j, path, "coeffs");
    if (!cs.is_array()) fail(key(path, "coeffs"), "expected an array");
    std::vector<Rat> out;
    for (size_t i = 0; i < cs.size(); ++i)
        out.push_back(rat_from(cs[i], idx(key(path, "coeffs"), i)));
    return Polynomial::of(std::move(out));
}

Json map_json(const RationalMap& h) {
    return Json{{"num", poly_json(h.num)}, {"den", poly_json(h.den)}};
}

RationalMap map_from(const Json& j, const std::string& path) {
    Polynomial num = poly_from(field(j, path, "num"), key(path, "num"));
    Polynomial den = poly_from(field(j, path, "den"), key(path, "den"));
    if (den.is_zero()) fail(key(path, "den"), "zero denominator polynomial");
    return RationalMap::of(std::move(num), std::move(den));
}

Json domain_json(const Domain& d) {
    if (d.brick.kind == Brick::Kind::B1 && d.brick.s.is_inf() &&
        d.brick.a == 0)
        return d.has_infinity ? "P1" : "A1";
    Json j;
    j["a"] = rat_json(d.brick.a);
    j["s"] = radius_json(d.brick.s);
    if (d.brick.kind == Brick::Kind::B1) {
        j["kind"] = "open_disc";
    } else {
        j["kind"] = "tube";
        Json holes = Json::array();
        for (const auto& h : d.brick.holes) holes.push_back(rat_json(h));
        j["holes"] = std::move(holes);
    }
    return j;
}

Domain domain_from(const Field& F, const Json& j, const std::string& path) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "A1") return Domain::line();
        if (s == "P1") return Domain::projective_line();
        fail(path, "expected \"A1\", \"P1\", or a disc description");
    }
    std::string kind = str_at(field(j, path, "kind"), key(path, "kind"));
    Rat a = rat_from(field(j, path, "a"), key(path, "a"));
    Radius s = radius_from(field(j, path, "s"), key(path, "s"));
    if (kind == "open_disc") return Domain::open_disc(std::move(a), std::move(s));
    if (kind == "tube") {
        std::vector<Rat> holes;
        if (j.contains("holes")) {
            const Json& hs = j["holes"];
            if (!hs.is_array()) fail(key(path, "holes"), "expected an array");
            for (size_t i = 0; i < hs.size(); ++i)
                holes.push_back(rat_from(hs[i], idx(key(path, "holes"), i)));
        }
        try {
            return {Brick::tube(F, std::move(a), std::move(s),
                                std::move(holes)),
                    false};
        } catch (const validation_error& e) {
            fail(path, e.what());
        }
    }
    fail(key(path, "kind"), "unknown domain kind \"" + kind + "\"");
}

Json triangulation_json(const Triangulation& t) {
    Json ps = Json::array();
    for (const auto& x : t.points) ps.push_back(bpoint_json(x));
    return Json{{"domain", domain_json(t.domain)}, {"points", std::move(ps)}};
}

Triangulation triangulation_from(const Field& F, const Json& j,
                                 const std::string& path) {
    Domain dom = domain_from(F, field(j, path, "domain"), key(path, "domain"));
    const Json& ps = field(j, path, "points");
    if (!ps.is_array()) fail(key(path, "points"), "expected an array");
    std::vector<BPoint> points;
    for (size_t i = 0; i < ps.size(); ++i)
        points.push_back(bpoint_from(ps[i], idx(key(path, "points"), i)));
    return triangulate(F, dom, std::move(points));
}

Json locus_json(const LocusReport& r) {
    return Json{{"d", r.d},
                {"locus", radial_json(r.locus)},
                {"residual", r.residual}};
}

Json fiber_json(const Fiber& f) {
    Json ps = Json::array();
    for (const auto& x : f.points) ps.push_back(bpoint_json(x));
    return Json{{"count", f.count}, {"points", std::move(ps)}};
}

Json encoded_json(const EncodedPoint& e) {
    switch (e.kind) {
    case EncodedPoint::Kind::Vtx1:
        return Json{{"kind", "vtx1"}, {"vertex", e.vertex}};
    case EncodedPoint::Kind::Vtx2:
        return Json{{"kind", "vtx2"}, {"vertex", e.vertex}};
    case EncodedPoint::Kind::Edge:
        return Json{{"kind", "edge"},
                    {"edge", e.edge},
                    {"eta", bpoint_json(*e.eta)}};
    case EncodedPoint::Kind::Tube:
        return Json{{"kind", "tube"},
                    {"vertex", e.vertex},
                    {"alpha", int_json(e.alpha)},
                    {"eta", bpoint_json(*e.eta)}};
    case EncodedPoint::Kind::Disc:
        return Json{{"kind", "disc"},
                    {"vertex", e.vertex},
                    {"disc", e.disc},
                    {"eta", bpoint_json(*e.eta)}};
    }
    fail("$", "unreachable");
}

EncodedPoint encoded_from(const Json& j, const std::string& path) {
    std::string kind = str_at(field(j, path, "kind"), key(path, "kind"));
    auto num = [&](const char* k) {
        return (int)long_from(field(j, path, k), key(path, k));
    };
    auto eta = [&]() {
        return bpoint_from(field(j, path, "eta"), key(path, "eta"));
    };
    if (kind == "vtx1") return EncodedPoint::vtx1(num("vertex"));
    if (kind == "vtx2") return EncodedPoint::vtx2(num("vertex"));
    if (kind == "edge") return EncodedPoint::on_edge(num("edge"), eta());
    if (kind == "tube")
        return EncodedPoint::in_tube(
            num("vertex"),
            int_from(field(j, path, "alpha"), key(path, "alpha")), eta());
    if (kind == "disc")
        return EncodedPoint::in_disc(num("vertex"), num("disc"), eta());
    fail(key(path, "kind"), "unknown encoded-point kind \"" + kind + "\"");
}

Json facade_json(const Facade& f) {
    Json j;
    j["domain"] = domain_json(f.dom);
    Json pts = Json::array();
    for (const auto& x : f.S) pts.push_back(bpoint_json(x));
    j["points"] = std::move(pts);
    Json edges = Json::array();
    for (const auto& e : f.graph().edges)
        edges.push_back(Json{{"child", e.child},
                             {"parent", e.parent},
                             {"c", rat_json(e.c)},
                             {"lo", radius_json(e.lo)},
                             {"hi", radius_json(e.hi)}});
    j["edges"] = std::move(edges);
    Json charts = Json::array();
    for (const auto& ch : f.charts) {
        if (!ch) {
            charts.push_back(nullptr);
            continue;
        }
        Json excluded = Json::array();
        for (const auto& x : ch->excluded) excluded.push_back(int_json(x));
        Json discs = Json::array();
        for (const auto& m : ch->discs)
            discs.push_back(Json::array({rat_json(m.num.coeff(1)),
                                         rat_json(m.num.coeff(0)),
                                         rat_json(m.den.coeff(1)),
                                         rat_json(m.den.coeff(0))}));
        charts.push_back(Json{{"c", rat_json(ch->c)},
                              {"u", rat_json(ch->u)},
                              {"excluded", std::move(excluded)},
                              {"discs", std::move(discs)}});
    }
    j["charts"] = std::move(charts);
    return j;
}

Json compiled_json(const CompiledMap& m) {
    Json edges = Json::array();
    for (const auto& e : m.edges)
        edges.push_back(
            Json{{"edge", e.edge},
                 {"interval", Json::array({radius_json(e.lo), radius_json(e.hi)})},
                 {"monomial", monomial_json(e.m)},
                 {"degree", e.degree}});
    Json tubes = Json::array();
    for (const auto& t : m.tubes) {
        Json coeffs = Json::array();
        for (const auto& c : t.residue_coeffs) coeffs.push_back(int_json(c));
        tubes.push_back(Json{{"vertex", t.vertex},
                             {"image_vertex", t.image_vertex},
                             {"residue_map", std::move(coeffs)}});
    }
    return Json{{"edges", std::move(edges)}, {"tubes", std::move(tubes)}};
}

Json curve_piece_json(const CurvePiece& p) {
    if (p.kind == CurvePiece::Kind::Vertex)
        return Json{{"kind", "vertex"},  {"vertex", p.vertex},
                    {"lo", radius_json(p.lo)},   {"lo_in", p.lo_in},
                    {"hi", radius_json(p.hi)},   {"hi_in", p.hi_in}};
    return Json{{"kind", "edge"},        {"edge", p.edge},
                {"tlo", radius_json(p.tlo)},     {"tlo_in", p.tlo_in},
                {"thi", radius_json(p.thi)},     {"thi_in", p.thi_in},
                {"f1", monomial_json(p.f1)},     {"f1_in", p.f1_in},
                {"f2", monomial_json(p.f2)},     {"f2_in", p.f2_in}};
}

CurvePiece curve_piece_from(const Json& j, const std::string& path) {
    std::string kind = str_at(field(j, path, "kind"), key(path, "kind"));
    auto rad = [&](const char* k) {
        return radius_from(field(j, path, k), key(path, k));
    };
    auto flag = [&](const char* k) {
        return bool_from(field(j, path, k), key(path, k));
    };
    if (kind == "vertex")
        return CurvePiece::vertex_cyl(
            (int)long_from(field(j, path, "vertex"), key(path, "vertex")),
            rad("lo"), flag("lo_in"), rad("hi"), flag("hi_in"));
    if (kind == "edge")
        return CurvePiece::edge_band_on(
            (int)long_from(field(j, path, "edge"), key(path, "edge")),
            rad("tlo"), flag("tlo_in"), rad("thi"), flag("thi_in"),
            monomial_from(field(j, path, "f1"), key(path, "f1")), flag("f1_in"),
            monomial_from(field(j, path, "f2"), key(path, "f2")),
            flag("f2_in"));
    fail(key(path, "kind"), "unknown curve piece kind \"" + kind + "\"");
}

Json curve_set_json(const CurveRadialSet& s) {
    Json ps = Json::array();
    for (const auto& p : s.pieces) ps.push_back(curve_piece_json(p));
    return Json{{"pieces", std::move(ps)}};
}

CurveRadialSet curve_set_from(const Json& j, const std::string& path) {
    const Json& ps = field(j, path, "pieces");
    if (!ps.is_array()) fail(key(path, "pieces"), "expected an array");
    CurveRadialSet out;
    for (size_t i = 0; i < ps.size(); ++i)
        out.pieces.push_back(
            curve_piece_from(ps[i], idx(key(path, "pieces"), i)));
    return out;
}

Json definable_json(const DefinableCurve& d) {
    Json cyls = Json::array();
    for (const auto& z : d.cylinders) {
        Json exc = Json::array();
        for (const auto& x : z.exceptions) exc.push_back(int_json(x));
        cyls.push_back(Json{{"vertex", z.vertex},
                            {"lo", radius_json(z.lo)},
                            {"lo_in", z.lo_in},
                            {"hi", radius_json(z.hi)},
                            {"hi_in", z.hi_in},
                            {"exceptions", std::move(exc)}});
    }
    Json edges = Json::array();
    for (const auto& e : d.edges)
        edges.push_back(
            Json{{"edge", e.edge}, {"chart", radial_json(e.chart)}});
    return Json{{"cylinders", std::move(cyls)}, {"edges", std::move(edges)}};
}

DefinableCurve definable_from(const Json& j, const std::string& path) {
    DefinableCurve out;
    const Json& cyls = field(j, path, "cylinders");
    if (!cyls.is_array()) fail(key(path, "cylinders"), "expected an array");
    for (size_t i = 0; i < cyls.size(); ++i) {
        const Json& c = cyls[i];
        std::string p = idx(key(path, "cylinders"), i);
        ZCylinder z;
        z.vertex = (int)long_from(field(c, p, "vertex"), key(p, "vertex"));
        z.lo = radius_from(field(c, p, "lo"), key(p, "lo"));
        z.lo_in = bool_from(field(c, p, "lo_in"), key(p, "lo_in"));
        z.hi = radius_from(field(c, p, "hi"), key(p, "hi"));
        z.hi_in = bool_from(field(c, p, "hi_in"), key(p, "hi_in"));
        if (c.contains("exceptions")) {
            const Json& exc = c["exceptions"];
            if (!exc.is_array())
                fail(key(p, "exceptions"), "expected an array");
            for (size_t k = 0; k < exc.size(); ++k)
                z.exceptions.push_back(
                    int_from(exc[k], idx(key(p, "exceptions"), k)));
        }
        out.cylinders.push_back(std::move(z));
    }
    const Json& edges = field(j, path, "edges");
    if (!edges.is_array()) fail(key(path, "edges"), "expected an array");
    for (size_t i = 0; i < edges.size(); ++i) {
        const Json& e = edges[i];
        std::string p = idx(key(path, "edges"), i);
        out.edges.push_back(
            {(int)long_from(field(e, p, "edge"), key(p, "edge")),
             radial_from(field(e, p, "chart"), key(p, "chart"))});
    }
    return out;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

} // namespace berk
