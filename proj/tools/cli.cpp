#include "cli.hpp"

#include "dercat/errors.hpp"
#include "dercat/ext.hpp"
#include "dercat/io.hpp"
#include "dercat/numerics.hpp"
#include "dercat/window.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dercat::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    Context(const Job& j, WindowOptions w) : job(j), window(w) {}

    const Job& job;
    WindowOptions window;
    ordered_json inputs = ordered_json::array();
    ordered_json result = ordered_json::object();
    std::ostringstream text;
    int exit_code = kOk;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void echo(Context& ctx, const std::string& path, const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception&) {
        doc = text;
    }
    ctx.inputs.push_back({{"path", path}, {"document", std::move(doc)}});
}

const std::string& input(const Context& ctx, std::size_t i, const char* what) {
    if (ctx.job.inputs.size() <= i) throw UsageError(ctx.job.command + ": missing " + what);
    return ctx.job.inputs[i];
}

void expect_inputs(const Context& ctx, std::size_t count) {
    if (ctx.job.inputs.size() != count) {
        throw UsageError(ctx.job.command + ": expected " + std::to_string(count) + " input(s), got " +
                         std::to_string(ctx.job.inputs.size()));
    }
}

LineBundleComplex load_complex(Context& ctx, std::size_t i) {
    const std::string& path = input(ctx, i, "complex file");
    const std::string text = read_file(path);
    echo(ctx, path, text);
    return parse_complex(text, path);
}

template <class T, class Parser>
T load(Context& ctx, std::size_t i, const char* what, Parser parser) {
    const std::string& path = input(ctx, i, what);
    const std::string text = read_file(path);
    echo(ctx, path, text);
    return parser(text, path);
}

ordered_json ext_json(const ExtTable& t) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : t.entries()) j[std::to_string(k)] = v;
    return j;
}

ordered_json int_map_json(const std::map<int, long>& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

void print_table(std::ostream& os, const ExtTable& t, const std::string& symbol) {
    if (t.is_zero()) {
        os << symbol << "^* = 0\n";
        return;
    }
    for (const auto& [k, v] : t.entries()) os << symbol << '^' << k << " = " << v << '\n';
}

ordered_json chern_json(const ChernPolynomial& p) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(c.to_string());
    return {{"n", p.dim()}, {"coeffs", std::move(coeffs)}, {"text", p.to_string()}};
}

std::vector<Scalar> parse_point(const std::string& spec) {
    std::vector<Scalar> coords;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(Scalar::parse(item));
    return coords;
}

// ------------------------------------------------------------- commands

void cmd_validate(Context& ctx) {
    expect_inputs(ctx, 1);
    const LineBundleComplex c = load_complex(ctx, 0);
    const ValidationReport r = validate(c);
    ctx.result["ok"] = r.ok;
    ctx.result["message"] = r.message;
    ctx.result["degree"] = r.degree ? ordered_json(*r.degree) : ordered_json(nullptr);
    ctx.result["entry"] =
        r.entry ? ordered_json::array({r.entry->first, r.entry->second}) : ordered_json(nullptr);
    if (r.ok) {
        ctx.text << "ok\n";
    } else {
        ctx.text << "invalid: " << r.message << '\n';
        ctx.exit_code = kValidation;
    }
}

void cmd_reduce(Context& ctx) {
    expect_inputs(ctx, 1);
    const WindowComplex w = reduce_to_window(load_complex(ctx, 0), ctx.window);
    ctx.result["complex"] = ordered_json::parse(format_complex(w.complex()));
    ctx.text << format_complex(w.complex()) << '\n';
}

void cmd_cone(Context& ctx) {
    expect_inputs(ctx, 1);
    const ChainMap f = load<ChainMap>(ctx, 0, "chain map file", parse_chain_map);
    const LineBundleComplex c = cone(f);
    ctx.result["complex"] = ordered_json::parse(format_complex(c));
    ctx.text << format_complex(c) << '\n';
}

void cmd_ext(Context& ctx) {
    expect_inputs(ctx, 2);
    const LineBundleComplex a = load_complex(ctx, 0);
    const LineBundleComplex b = load_complex(ctx, 1);
    const ExtTable t = ext_table(a, b, ctx.window);
    ctx.result["ext"] = ext_json(t);
    print_table(ctx.text, t, "Ext");
}

void cmd_cohomology(Context& ctx) {
    expect_inputs(ctx, 1);
    const ExtTable t = sheaf_cohomology(load_complex(ctx, 0), ctx.window);
    ctx.result["cohomology"] = ext_json(t);
    print_table(ctx.text, t, "H");
}

void cmd_serre_check(Context& ctx) {
    expect_inputs(ctx, 2);
    const LineBundleComplex a = load_complex(ctx, 0);
    const LineBundleComplex b = load_complex(ctx, 1);
    const SerreDualityReport r = serre_duality_check(a, b, ctx.window);
    ctx.result["holds"] = r.holds;
    ctx.result["ext_ab"] = ext_json(r.ext_ab);
    ctx.result["ext_b_sa"] = ext_json(r.ext_b_sa);
    ctx.text << "Ext^k(A, B):    " << r.ext_ab.to_string() << '\n'
             << "Ext^k(B, S A):  " << r.ext_b_sa.to_string() << '\n'
             << "Serre duality " << (r.holds ? "holds" : "FAILS") << '\n';
}

void cmd_point_check(Context& ctx) {
    expect_inputs(ctx, 1);
    PointCheckOptions opts;
    opts.window = ctx.window;
    opts.random_draws = ctx.job.draws;
    opts.seed = ctx.job.seed;
    const PointCandidateReport r = point_object_check(load_complex(ctx, 0), opts);
    ctx.result["serre_fixed"] = to_string(r.serre_fixed);
    ctx.result["simple"] = r.simple;
    ctx.result["no_negative_self_ext"] = r.no_negative_self_ext;
    ctx.result["mode"] = r.mode;
    ctx.result["self_ext_tables_agree"] = r.self_ext_tables_agree;
    ctx.result["self_ext"] = ext_json(r.self_ext);
    ctx.result["candidates_tried"] = r.candidates_tried;
    ctx.text << "self-Ext:             " << r.self_ext.to_string() << '\n'
             << "E ~ S(E)[-n]:         " << to_string(r.serre_fixed) << " (" << r.mode << ", "
             << r.candidates_tried << " candidates)\n"
             << "Hom(E, E) = k:        " << (r.simple ? "yes" : "no") << '\n'
             << "no negative self-Ext: " << (r.no_negative_self_ext ? "yes" : "no") << '\n';
}

void cmd_line_bundle_check(Context& ctx) {
    expect_inputs(ctx, 1);
    const LineBundleComplex c = load_complex(ctx, 0);
    const int n = c.ambient_dim();
    std::vector<std::vector<HomogPoly>> sample;
    ordered_json points = ordered_json::array();
    if (ctx.job.points.empty()) {
        sample = default_point_sample(n, ctx.job.random_points, ctx.job.seed);
        points = "default";
    } else {
        for (const auto& p : ctx.job.points) {
            sample.push_back(point_forms(n, parse_point(p)));
            points.push_back(p);
        }
    }
    const LineBundleCheckReport r = line_bundle_object_check(c, sample, ctx.window);
    ctx.result["points"] = points;
    ctx.result["pass"] = r.pass;
    ctx.result["common_degree"] = r.common_degree ? ordered_json(*r.common_degree) : ordered_json(nullptr);
    ordered_json per = ordered_json::array();
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const auto& s = r.samples[i];
        per.push_back({{"ext", ext_json(s.ext)},
                       {"pass", s.pass},
                       {"degree", s.degree ? ordered_json(*s.degree) : ordered_json(nullptr)}});
        ctx.text << "point " << i << ": Ext^*(C, O_x) = " << s.ext.to_string() << (s.pass ? "  pass\n" : "  fail\n");
    }
    ctx.result["samples"] = std::move(per);
    ctx.text << (r.pass ? "line-bundle object, shift s = " + std::to_string(*r.common_degree) : std::string("not a shifted line bundle"))
             << " (sampled)\n";
}

void cmd_beilinson(Context& ctx) {
    expect_inputs(ctx, 1);
    const LineBundleComplex c = load_complex(ctx, 0);
    const BeilinsonTable t = beilinson_multiplicities(c, ctx.window);
    ordered_json rows = ordered_json::array();
    for (int i = 0; i <= t.n; ++i) {
        ordered_json row = ordered_json::object();
        for (const auto& [k, m] : t.multiplicities[static_cast<std::size_t>(i)]) row[std::to_string(k)] = m;
        rows.push_back(std::move(row));
        ctx.text << "m[" << i << "] = " << ExtTable(t.multiplicities[static_cast<std::size_t>(i)]).to_string() << '\n';
    }
    const ChernPolynomial k = beilinson_k_class(t);
    const ChernPolynomial ch = chern_character(c);
    ctx.result["multiplicities"] = std::move(rows);
    ctx.result["k_class"] = chern_json(k);
    ctx.result["chern_character"] = chern_json(ch);
    ctx.result["matches"] = k == ch;
    ctx.text << "K-class: " << k.to_string() << '\n'
             << "ch:      " << ch.to_string() << '\n'
             << (k == ch ? "match\n" : "MISMATCH\n");
}

void cmd_hrr_check(Context& ctx) {
    expect_inputs(ctx, 2);
    const LineBundleComplex a = load_complex(ctx, 0);
    const LineBundleComplex b = load_complex(ctx, 1);
    const Scalar hrr = euler_pairing_hrr(a, b);
    const Scalar ext = euler_pairing_ext(a, b, ctx.window);
    ctx.result["chi_hrr"] = hrr.to_string();
    ctx.result["chi_ext"] = ext.to_string();
    ctx.result["equal"] = hrr == ext;
    ctx.text << "chi via HRR: " << hrr << "\nchi via Ext: " << ext << '\n' << (hrr == ext ? "equal\n" : "DIFFER\n");
}

void print_hh(Context& ctx, const HochschildTables& t) {
    ctx.result["cohomology"] = int_map_json(t.cohomology);
    ctx.result["homology"] = int_map_json(t.homology);
    for (const auto& [k, v] : t.cohomology) ctx.text << "HH^" << k << " = " << v << '\n';
    for (const auto& [k, v] : t.homology) ctx.text << "HH_" << k << " = " << v << '\n';
}

void cmd_hochschild(Context& ctx) {
    expect_inputs(ctx, 0);
    const Job& job = ctx.job;
    const int chosen = (job.pn ? 1 : 0) + (job.genus ? 1 : 0) + (job.hodge ? 1 : 0);
    if (chosen != 1) throw UsageError("hochschild: give exactly one of --pn, --genus, --hodge");
    if (job.pn) {
        print_hh(ctx, hh_pn(*job.pn, 3, ctx.window));
    } else if (job.genus) {
        print_hh(ctx, hh_curve(*job.genus));
    } else {
        const std::string text = read_file(*job.hodge);
        echo(ctx, *job.hodge, text);
        const HodgeTable h = parse_hodge_table(text, *job.hodge);
        const auto homology = hkr_aggregate(h, HkrMode::homology);
        ctx.result["homology"] = int_map_json(homology);
        for (const auto& [k, v] : homology) ctx.text << "HH_" << k << " = " << v << '\n';
    }
}

long parse_integer_arg(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("fm-elliptic: ") + what + " '" + s + "' is not an integer");
}

void cmd_fm_elliptic(Context& ctx) {
    expect_inputs(ctx, 2);
    const LatticeClass v{parse_integer_arg(ctx.job.inputs[0], "rank"), parse_integer_arg(ctx.job.inputs[1], "degree")};
    ctx.inputs.push_back({{"rank", v.rank}, {"degree", v.degree}});
    const LatticeClass w = fm_elliptic_apply(v);
    ctx.result["rank"] = w.rank;
    ctx.result["degree"] = w.degree;
    ctx.text << '(' << w.rank << ", " << w.degree << ")\n";
}

ordered_json grid_json(const CorrespondenceClass& k) {
    ordered_json g = ordered_json::array();
    for (int i = 0; i <= k.source_dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j <= k.target_dim(); ++j) row.push_back(k(i, j).to_string());
        g.push_back(std::move(row));
    }
    return {{"m", k.source_dim()}, {"n", k.target_dim()}, {"grid", std::move(g)}};
}

void cmd_corr_apply(Context& ctx) {
    expect_inputs(ctx, 2);
    const auto k = load<CorrespondenceClass>(ctx, 0, "correspondence file", parse_correspondence);
    const auto a = load<ChernPolynomial>(ctx, 1, "class file", parse_chern_polynomial);
    const ChernPolynomial out = corr_apply(k, a);
    ctx.result["class"] = chern_json(out);
    ctx.text << out.to_string() << '\n';
}

void cmd_corr_compose(Context& ctx) {
    expect_inputs(ctx, 2);
    const auto k1 = load<CorrespondenceClass>(ctx, 0, "correspondence file", parse_correspondence);
    const auto k2 = load<CorrespondenceClass>(ctx, 1, "correspondence file", parse_correspondence);
    const CorrespondenceClass k = corr_compose(k1, k2);
    ctx.result["class"] = grid_json(k);
    for (int i = 0; i <= k.source_dim(); ++i) {
        for (int j = 0; j <= k.target_dim(); ++j) ctx.text << (j ? " " : "") << k(i, j).to_string();
        ctx.text << '\n';
    }
}

void cmd_canonical_ring(Context& ctx) {
    expect_inputs(ctx, 0);
    const Job& job = ctx.job;
    if (!job.pn || !job.from || !job.to) throw UsageError("canonical-ring: --pn, --from and --to are required");
    const auto dims = pluricanonical_dimensions(*job.pn, *job.from, *job.to, ctx.window);
    ordered_json j = ordered_json::object();
    for (const auto& [i, d] : dims) {
        j[std::to_string(i)] = d;
        ctx.text << "h^0(omega^" << i << ") = " << d << '\n';
    }
    ctx.result["dimensions"] = std::move(j);
}

using Handler = std::function<void(Context&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"validate", cmd_validate},
        {"reduce", cmd_reduce},
        {"cone", cmd_cone},
        {"ext", cmd_ext},
        {"cohomology", cmd_cohomology},
        {"serre-check", cmd_serre_check},
        {"point-check", cmd_point_check},
        {"line-bundle-check", cmd_line_bundle_check},
        {"beilinson", cmd_beilinson},
        {"hrr-check", cmd_hrr_check},
        {"hochschild", cmd_hochschild},
        {"fm-elliptic", cmd_fm_elliptic},
        {"corr-apply", cmd_corr_apply},
        {"corr-compose", cmd_corr_compose},
        {"canonical-ring", cmd_canonical_ring},
    };
    return table;
}

ordered_json options_json(const Job& job, const Field& field) {
    ordered_json o;
    o["field"] = field.name();
    o["max_terms"] = job.max_terms;
    if (job.pn) o["pn"] = *job.pn;
    if (job.genus) o["genus"] = *job.genus;
    if (job.hodge) o["hodge"] = *job.hodge;
    if (job.from) o["from"] = *job.from;
    if (job.to) o["to"] = *job.to;
    if (job.command == "point-check") o["draws"] = job.draws;
    if (job.command == "line-bundle-check") {
        o["points"] = job.points;
        o["random_points"] = job.random_points;
    }
    return o;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, h] : handlers()) v.push_back(name);
        return v;
    }();
    return names;
}

Report run(const Job& job) {
    Report rep;
    auto it = handlers().find(job.command);
    if (it == handlers().end()) {
        rep.exit_code = kUsage;
        rep.err = "error: unknown command '" + job.command + "'\n";
        return rep;
    }
    Field field;
    try {
        field = Field::parse(job.field);
    } catch (const std::exception& e) {
        rep.exit_code = kUsage;
        rep.err = std::string("error: ") + e.what() + "\n";
        return rep;
    }

    Context ctx(job, WindowOptions{job.max_terms});
    const auto fail = [&](int code, const char* kind, const std::string& msg) {
        rep.exit_code = code;
        rep.err = std::string("error (") + kind + "): " + msg + "\n";
    };
    try {
        FieldScope scope(field);
        it->second(ctx);
        rep.exit_code = ctx.exit_code;
    } catch (const UsageError& e) {
        fail(kUsage, "usage", e.what());
    } catch (const ParseError& e) {
        fail(kParse, "parse", e.what());
    } catch (const ValidationError& e) {
        fail(kValidation, "validation", e.what());
    } catch (const ResourceError& e) {
        fail(kResource, "resource", e.what());
    } catch (const InternalError& e) {
        fail(kInternal, "internal", e.what());
    } catch (const std::invalid_argument& e) {
        fail(kUsage, "usage", e.what());
    } catch (const std::exception& e) {
        fail(kInternal, "internal", e.what());
    }
    if (rep.exit_code != kOk && rep.exit_code != kValidation) return rep;
    if (rep.exit_code == kValidation && !rep.err.empty()) return rep;

    if (job.output == OutputFormat::structured) {
        ordered_json doc;
        doc["operation"] = job.command;
        doc["inputs"] = ctx.inputs;
        doc["options"] = options_json(job, field);
        doc["result"] = ctx.result;
        doc["seed"] = job.seed;
        rep.out = doc.dump(2) + "\n";
    } else {
        rep.out = ctx.text.str();
    }
    return rep;
}

}  // namespace dercat::cli
