#include "dercat/io.hpp"

#include "dercat/errors.hpp"

#include <json.hpp>

#include <charconv>

namespace dercat {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class Reader {
public:
    explicit Reader(std::string origin) : origin_(std::move(origin)) {}

    json parse(std::string_view text) const {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            std::size_t line = 1;
            std::size_t col = 1;
            const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
            for (std::size_t i = 0; i < end; ++i) {
                if (text[i] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            throw ParseError(origin_ + ":" + std::to_string(line) + ":" + std::to_string(col) +
                             ": malformed JSON (" + e.what() + ")");
        }
    }

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
        throw ParseError(origin_ + ": field " + path + ": " + msg);
    }

    const json& field(const json& obj, const std::string& path, const char* key) const {
        if (!obj.is_object()) fail(path, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
        return *it;
    }

    long integer(const json& v, const std::string& path) const {
        if (!v.is_number_integer()) fail(path, "expected an integer");
        return v.get<long>();
    }

    int degree_key(const std::string& key, const std::string& path) const {
        int value = 0;
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
        if (ec != std::errc{} || ptr != key.data() + key.size()) fail(path, "degree key '" + key + "' is not an integer");
        return value;
    }

    Scalar scalar(const json& v, const std::string& path) const {
        if (v.is_number_integer()) return Scalar(v.get<long>());
        if (v.is_string()) {
            try {
                return Scalar::parse(v.get<std::string>());
            } catch (const ParseError& e) {
                fail(path, e.what());
            }
        }
        fail(path, "expected an integer or an \"a/b\" string");
    }

    HomogPoly poly(const json& v, int nvars, std::optional<int> expected, const std::string& path) const {
        std::string text;
        if (v.is_number_integer()) {
            text = std::to_string(v.get<long>());
        } else if (v.is_string()) {
            text = v.get<std::string>();
        } else {
            fail(path, "expected a polynomial string");
        }
        try {
            HomogPoly p = HomogPoly::parse(text, nvars);
            if (p.is_zero() && expected) return HomogPoly(nvars, *expected);
            return p;
        } catch (const ParseError& e) {
            fail(path, e.what());
        }
    }

    int ambient(const json& doc, const std::string& path) const {
        const std::string p = path.empty() ? "n" : path + ".n";
        const long n = integer(field(doc, path, "n"), p);
        if (n < 1 || n >= kMaxVariables) fail(p, "ambient dimension must lie in [1, " + std::to_string(kMaxVariables - 1) + "]");
        return static_cast<int>(n);
    }

    PolyMatrix matrix(const json& v, int nvars, const FreeTerm& target, const FreeTerm& source,
                      const std::string& path) const {
        if (!v.is_array()) fail(path, "expected a list of rows");
        std::size_t cols = source.size();
        if (!v.empty()) {
            if (!v.front().is_array()) fail(path + "[0]", "expected a row");
            cols = v.front().size();
        }
        PolyMatrix m(nvars, v.size(), cols);
        for (std::size_t r = 0; r < v.size(); ++r) {
            const std::string rp = path + "[" + std::to_string(r) + "]";
            if (!v[r].is_array()) fail(rp, "expected a row");
            if (v[r].size() != cols) fail(rp, "row has " + std::to_string(v[r].size()) + " entries, expected " + std::to_string(cols));
            for (std::size_t c = 0; c < cols; ++c) {
                std::optional<int> expected;
                if (r < target.size() && c < source.size()) expected = target[r] - source[c];
                m(r, c) = poly(v[r][c], nvars, expected, rp + "[" + std::to_string(c) + "]");
            }
        }
        return m;
    }

    LineBundleComplex complex(const json& doc, const std::string& path) const {
        const int n = ambient(doc, path);
        const std::string pre = path.empty() ? "" : path + ".";
        std::map<int, FreeTerm> terms;
        const json& jt = field(doc, path, "terms");
        if (!jt.is_object()) fail(pre + "terms", "expected an object");
        for (const auto& [key, list] : jt.items()) {
            const std::string tp = pre + "terms." + key;
            const int deg = degree_key(key, tp);
            if (!list.is_array()) fail(tp, "expected a list of twists");
            FreeTerm t;
            for (std::size_t j = 0; j < list.size(); ++j) {
                t.push_back(static_cast<int>(integer(list[j], tp + "[" + std::to_string(j) + "]")));
            }
            terms[deg] = std::move(t);
        }
        std::map<int, PolyMatrix> diffs;
        if (doc.contains("diffs")) {
            const json& jd = doc["diffs"];
            if (!jd.is_object()) fail(pre + "diffs", "expected an object");
            for (const auto& [key, mat] : jd.items()) {
                const std::string dp = pre + "diffs." + key;
                const int deg = degree_key(key, dp);
                const FreeTerm& src = terms.count(deg) ? terms[deg] : FreeTerm{};
                const FreeTerm& tgt = terms.count(deg + 1) ? terms[deg + 1] : FreeTerm{};
                diffs.emplace(deg, matrix(mat, n + 1, tgt, src, dp));
            }
        }
        return LineBundleComplex(n, std::move(terms), std::move(diffs));
    }

    std::vector<Scalar> scalar_list(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected a list");
        std::vector<Scalar> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(scalar(v[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

private:
    std::string origin_;
};

ordered_json complex_json(const LineBundleComplex& c) {
    ordered_json doc;
    doc["n"] = c.ambient_dim();
    ordered_json terms = ordered_json::object();
    for (const auto& [i, t] : c.terms()) terms[std::to_string(i)] = t;
    doc["terms"] = std::move(terms);
    ordered_json diffs = ordered_json::object();
    for (const auto& [i, m] : c.differentials()) {
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t col = 0; col < m.cols(); ++col) row.push_back(m(r, col).to_string());
            rows.push_back(std::move(row));
        }
        diffs[std::to_string(i)] = std::move(rows);
    }
    doc["diffs"] = std::move(diffs);
    return doc;
}

}  // namespace

LineBundleComplex parse_complex(std::string_view text, const std::string& origin) {
    Reader rd(origin);
    return rd.complex(rd.parse(text), "");
}

ChainMap parse_chain_map(std::string_view text, const std::string& origin) {
    Reader rd(origin);
    const json doc = rd.parse(text);
    LineBundleComplex source = rd.complex(rd.field(doc, "", "source"), "source");
    LineBundleComplex target = rd.complex(rd.field(doc, "", "target"), "target");
    if (source.ambient_dim() != target.ambient_dim()) rd.fail("target.n", "differs from source.n");
    std::map<int, PolyMatrix> maps;
    if (doc.contains("maps")) {
        const json& jm = doc["maps"];
        if (!jm.is_object()) rd.fail("maps", "expected an object");
        for (const auto& [key, mat] : jm.items()) {
            const std::string mp = "maps." + key;
            const int deg = rd.degree_key(key, mp);
            maps.emplace(deg, rd.matrix(mat, source.num_variables(), target.term(deg), source.term(deg), mp));
        }
    }
    return ChainMap(std::move(source), std::move(target), std::move(maps));
}

CorrespondenceClass parse_correspondence(std::string_view text, const std::string& origin) {
    Reader rd(origin);
    const json doc = rd.parse(text);
    const long m = rd.integer(rd.field(doc, "", "m"), "m");
    const long n = rd.integer(rd.field(doc, "", "n"), "n");
    if (m < 0) rd.fail("m", "must be non-negative");
    if (n < 0) rd.fail("n", "must be non-negative");
    const json& g = rd.field(doc, "", "grid");
    if (!g.is_array() || g.size() != static_cast<std::size_t>(m + 1)) {
        rd.fail("grid", "expected " + std::to_string(m + 1) + " rows");
    }
    std::vector<std::vector<Scalar>> grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string rp = "grid[" + std::to_string(i) + "]";
        grid.push_back(rd.scalar_list(g[i], rp));
        if (grid.back().size() != static_cast<std::size_t>(n + 1)) rd.fail(rp, "expected " + std::to_string(n + 1) + " entries");
    }
    return CorrespondenceClass(static_cast<int>(m), static_cast<int>(n), std::move(grid));
}

ChernPolynomial parse_chern_polynomial(std::string_view text, const std::string& origin) {
    Reader rd(origin);
    const json doc = rd.parse(text);
    const long n = rd.integer(rd.field(doc, "", "n"), "n");
    if (n < 0) rd.fail("n", "must be non-negative");
    FieldScope q(Field::rationals());
    std::vector<Scalar> coeffs = rd.scalar_list(rd.field(doc, "", "coeffs"), "coeffs");
    if (coeffs.size() > static_cast<std::size_t>(n + 1)) rd.fail("coeffs", "more than n+1 coefficients");
    return ChernPolynomial(static_cast<int>(n), std::move(coeffs));
}

HodgeTable parse_hodge_table(std::string_view text, const std::string& origin) {
    Reader rd(origin);
    const json doc = rd.parse(text);
    const json& g = doc.is_object() ? rd.field(doc, "", "grid") : doc;
    if (!g.is_array() || g.empty()) rd.fail("grid", "expected a non-empty square grid");
    std::vector<std::vector<long>> grid;
    for (std::size_t p = 0; p < g.size(); ++p) {
        const std::string rp = "grid[" + std::to_string(p) + "]";
        if (!g[p].is_array() || g[p].size() != g.size()) rd.fail(rp, "grid is not square");
        std::vector<long> row;
        for (std::size_t q = 0; q < g[p].size(); ++q) {
            const long v = rd.integer(g[p][q], rp + "[" + std::to_string(q) + "]");
            if (v < 0) rd.fail(rp + "[" + std::to_string(q) + "]", "Hodge numbers are non-negative");
            row.push_back(v);
        }
        grid.push_back(std::move(row));
    }
    return HodgeTable(std::move(grid));
}

std::string format_complex(const LineBundleComplex& c) { return complex_json(c).dump(2); }

std::string format_chain_map(const ChainMap& f) {
    ordered_json doc;
    doc["source"] = complex_json(f.source());
    doc["target"] = complex_json(f.target());
    ordered_json maps = ordered_json::object();
    for (const auto& [i, m] : f.components()) {
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t col = 0; col < m.cols(); ++col) row.push_back(m(r, col).to_string());
            rows.push_back(std::move(row));
        }
        maps[std::to_string(i)] = std::move(rows);
    }
    doc["maps"] = std::move(maps);
    return doc.dump(2);
}

}  // namespace dercat
