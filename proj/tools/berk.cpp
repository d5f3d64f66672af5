#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "berk/acceptance.hpp"
#include "berk/json_io.hpp"
#include "berk/newton.hpp"
#include "berk/normalize.hpp"
#include "berk/sampling.hpp"

using namespace berk;

namespace {

// Inline JSON when the argument starts like a JSON value, otherwise a file.
Json load_json(const std::string& arg, const std::string& what) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{' && arg[0] != '[' && arg[0] != '"') {
        std::ifstream in(arg);
        if (!in)
            throw validation_error(what + ": cannot open file \"" + arg + "\"");
        text.assign(std::istreambuf_iterator<char>(in),
                    std::istreambuf_iterator<char>());
    }
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw validation_error(what + ": input is not valid JSON");
    return j;
}

struct Output {
    std::string path; // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw validation_error("--out: cannot write \"" + path + "\"");
        out << text;
    }
};

void write_file(const std::string& path, const std::string& text,
                const std::string& what) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error(what + ": cannot write \"" + path + "\"");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact kernel for type-1/2 points of the Berkovich line"};
    app.require_subcommand(1);

    long p = 2;
    app.add_option("--p", p, "prime of the ground field")->capture_default_str();
    Output out;
    app.add_option("--out", out.path, "write the report to a file");
    uint64_t seed = 1729;
    app.add_option("--seed", seed, "sampling seed (env BERK_SEED overrides)");
    long samples = 1024;
    app.add_option("--samples", samples, "sample count for sampling commands");
    std::string format = "json";
    app.add_option("--format", format, "output format where applicable");

    std::string expr_arg, set_arg, point_arg, map_arg, tri_arg, tri2_arg,
        code_arg, roots_arg, dot_path;
    long locus_d = 2;

    auto* c_norm = app.add_subcommand("normalize", "boolean normal form of a set expression");
    c_norm->add_option("--expr", expr_arg, "set expression (JSON or file)")->required();

    auto* c_member = app.add_subcommand("member", "membership of a point in a set expression");
    c_member->add_option("--expr", expr_arg, "set expression")->required();
    c_member->add_option("--point", point_arg, "BPoint")->required();

    auto* c_image = app.add_subcommand("image", "pushforward of a point under a rational map");
    c_image->add_option("--map", map_arg, "rational map")->required();
    c_image->add_option("--point", point_arg, "BPoint")->required();

    auto* c_degree = app.add_subcommand("degree", "local degree of a polynomial map at a point");
    c_degree->add_option("--map", map_arg, "rational map")->required();
    c_degree->add_option("--point", point_arg, "BPoint")->required();

    auto* c_locus = app.add_subcommand("locus", "multiplicity locus N_{h,d} over the line");
    c_locus->add_option("--map", map_arg, "rational map")->required();
    c_locus->add_option("--d", locus_d, "local degree")->required();

    auto* c_fiber = app.add_subcommand("fiber", "fiber of a point with rational root data");
    c_fiber->add_option("--map", map_arg, "rational map")->required();
    c_fiber->add_option("--point", point_arg, "BPoint")->required();
    c_fiber->add_option("--roots", roots_arg, "extra preimage centers (JSON array)");

    auto* c_skel = app.add_subcommand("skeleton", "skeleton graph of a triangulation");
    c_skel->add_option("--tri", tri_arg, "triangulation")->required();
    c_skel->add_option("--dot", dot_path, "write the DOT graph to a file");

    auto* c_facade = app.add_subcommand("facade", "build and serialize a facade");
    c_facade->add_option("--tri", tri_arg, "triangulation")->required();

    auto* c_encode = app.add_subcommand("encode", "encode a point through a facade");
    c_encode->add_option("--tri", tri_arg, "triangulation")->required();
    c_encode->add_option("--point", point_arg, "BPoint")->required();

    auto* c_decode = app.add_subcommand("decode", "decode an encoded point");
    c_decode->add_option("--tri", tri_arg, "triangulation")->required();
    c_decode->add_option("--code", code_arg, "encoded point")->required();

    auto* c_transport = app.add_subcommand("transport", "transport a code between facades");
    c_transport->add_option("--tri", tri_arg, "source triangulation")->required();
    c_transport->add_option("--tri2", tri2_arg, "target triangulation")->required();
    c_transport->add_option("--code", code_arg, "encoded point")->required();
    c_transport->add_option("--map", map_arg, "rational map (identity transport when absent)");

    auto* c_compile = app.add_subcommand("compile-map", "piecewise normal form of a map between facades");
    c_compile->add_option("--map", map_arg, "rational map")->required();
    c_compile->add_option("--tri", tri_arg, "source triangulation")->required();
    c_compile->add_option("--tri2", tri2_arg, "target triangulation")->required();

    auto* c_sample = app.add_subcommand("sample", "membership CSV on sampled points");
    c_sample->add_option("--expr", expr_arg, "set expression")->required();

    auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (const char* env = std::getenv("BERK_SEED"))
        seed = std::strtoull(env, nullptr, 10);

    try {
        Field F{Int(p)};
        auto the_map = [&]() {
            return map_from(load_json(map_arg, "--map"), "$.map");
        };
        auto the_point = [&]() {
            return bpoint_from(load_json(point_arg, "--point"), "$.point");
        };
        auto the_tri = [&](const std::string& arg, const char* path) {
            return triangulation_from(F, load_json(arg, "--tri"), path);
        };
        auto the_poly = [&]() {
            RationalMap h = the_map();
            if (!h.is_polynomial())
                throw unsupported_error("this command needs a polynomial map");
            return h.as_polynomial();
        };

        if (*c_norm) {
            SetExpr e = expr_from(load_json(expr_arg, "--expr"), "$.expr");
            RadialSet nf = bool_normalize(F, e);
            Json j = radial_json(nf);
            j["count"] = nf.pieces.size();
            out.write(dump_canonical(j));
        } else if (*c_member) {
            SetExpr e = expr_from(load_json(expr_arg, "--expr"), "$.expr");
            bool in = member(F, the_point(), e);
            out.write(dump_canonical(Json{{"member", in}}));
        } else if (*c_image) {
            ProjPoint img = pushforward(F, the_map(), the_point());
            Json j{{"at_infinity", img.at_infinity}};
            if (!img.at_infinity) j["point"] = bpoint_json(img.point);
            out.write(dump_canonical(j));
        } else if (*c_degree) {
            out.write(std::to_string(local_degree(F, the_poly(), the_point())) +
                      "\n");
        } else if (*c_locus) {
            LocusReport rep = multiplicity_locus(
                F, the_map(), locus_d, Brick::open_disc(0, Radius::inf()));
            out.write(dump_canonical(locus_json(rep)));
        } else if (*c_fiber) {
            std::vector<Rat> roots;
            if (!roots_arg.empty()) {
                Json rj = load_json(roots_arg, "--roots");
                if (!rj.is_array())
                    throw validation_error("$.roots: expected an array");
                for (size_t i = 0; i < rj.size(); ++i)
                    roots.push_back(rat_from(
                        rj[i], "$.roots[" + std::to_string(i) + "]"));
            }
            Fiber f = fiber_count(F, the_map(), the_point(), roots);
            out.write(dump_canonical(fiber_json(f)));
        } else if (*c_skel) {
            Retraction r = skeleton_retract(F, the_tri(tri_arg, "$.tri"));
            if (!dot_path.empty())
                write_file(dot_path, r.graph.to_dot(), "--dot");
            Json verts = Json::array();
            for (const auto& v : r.graph.vertices)
                verts.push_back(bpoint_json(v));
            Json edges = Json::array();
            for (const auto& e : r.graph.edges)
                edges.push_back(Json{{"child", e.child},
                                     {"parent", e.parent},
                                     {"c", rat_json(e.c)},
                                     {"lo", radius_json(e.lo)},
                                     {"hi", radius_json(e.hi)}});
            out.write(dump_canonical(
                Json{{"vertices", std::move(verts)}, {"edges", std::move(edges)}}));
        } else if (*c_facade) {
            out.write(dump_canonical(
                facade_json(build_facade(F, the_tri(tri_arg, "$.tri")))));
        } else if (*c_encode) {
            Facade fa = build_facade(F, the_tri(tri_arg, "$.tri"));
            out.write(dump_canonical(encoded_json(encode(fa, the_point()))));
        } else if (*c_decode) {
            Facade fa = build_facade(F, the_tri(tri_arg, "$.tri"));
            EncodedPoint e =
                encoded_from(load_json(code_arg, "--code"), "$.code");
            out.write(dump_canonical(bpoint_json(decode(fa, e))));
        } else if (*c_transport) {
            Facade f1 = build_facade(F, the_tri(tri_arg, "$.tri"));
            Facade f2 = build_facade(F, the_tri(tri2_arg, "$.tri2"));
            EncodedPoint e =
                encoded_from(load_json(code_arg, "--code"), "$.code");
            EncodedPoint res = map_arg.empty()
                                   ? transport_id(f1, f2, e)
                                   : map_transport(the_map(), f1, f2, e);
            out.write(dump_canonical(encoded_json(res)));
        } else if (*c_compile) {
            Facade f1 = build_facade(F, the_tri(tri_arg, "$.tri"));
            Facade f2 = build_facade(F, the_tri(tri2_arg, "$.tri2"));
            out.write(dump_canonical(compiled_json(compile_map(the_map(), f1, f2))));
        } else if (*c_sample) {
            SetExpr e = expr_from(load_json(expr_arg, "--expr"), "$.expr");
            PointSampler gen(seed);
            std::string csv = "a,r,member\n";
            for (long i = 0; i < samples; ++i) {
                BPoint x = gen.point();
                csv += rat_json(x.a).get<std::string>() + "," + x.r.str() +
                       "," + (member(F, x, e) ? "1" : "0") + "\n";
            }
            out.write(csv);
        } else if (*c_verify) {
            bool ok = true;
            std::string report;
            for (const auto& r : run_acceptance(seed)) {
                report += "criterion " + std::to_string(r.id) +
                          (r.pass ? " PASS  " : " FAIL  ") + r.name + " (" +
                          r.detail + ")\n";
                ok = ok && r.pass;
            }
            out.write(report);
            return ok ? 0 : 1;
        }
        return 0;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
