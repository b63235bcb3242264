#include "essint/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "essint/errors.hpp"

namespace essint {

// ---- canonical writer ---------------------------------------------------------

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void write_number(std::string& out, const Json& j) {
    char buf[40];
    if (j.is_number_integer() && !j.is_number_unsigned()) {
        std::snprintf(buf, sizeof buf, "%" PRId64, j.get<std::int64_t>());
    } else if (j.is_number_unsigned()) {
        std::snprintf(buf, sizeof buf, "%" PRIu64, j.get<std::uint64_t>());
    } else {
        double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";  // JSON has no Inf/NaN; reports never hold them
            return;
        }
        std::snprintf(buf, sizeof buf, "%.17g", v);
    }
    out += buf;
}

bool flat_array(const Json& j) {
    for (const auto& e : j)
        if (e.is_object() || e.is_array()) return false;
    return true;
}

void write_value(std::string& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string pad2(static_cast<std::size_t>(indent + 2), ' ');
    switch (j.type()) {
        case Json::value_t::null: out += "null"; break;
        case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case Json::value_t::string: write_escaped(out, j.get<std::string>()); break;
        case Json::value_t::object: {
            if (j.empty()) { out += "{}"; break; }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad2;
                write_escaped(out, it.key());
                out += ": ";
                write_value(out, it.value(), indent + 2);
            }
            out += '\n';
            out += pad;
            out += '}';
            break;
        }
        case Json::value_t::array: {
            if (j.empty()) { out += "[]"; break; }
            if (flat_array(j)) {
                out += '[';
                bool first = true;
                for (const auto& e : j) {
                    if (!first) out += ", ";
                    first = false;
                    write_value(out, e, indent);
                }
                out += ']';
            } else {
                out += "[\n";
                bool first = true;
                for (const auto& e : j) {
                    if (!first) out += ",\n";
                    first = false;
                    out += pad2;
                    write_value(out, e, indent + 2);
                }
                out += '\n';
                out += pad;
                out += ']';
            }
            break;
        }
        default: write_number(out, j);
    }
}

}  // namespace

std::string canonical_json(const Json& j) {
    std::string out;
    write_value(out, j, 0);
    out += '\n';
    return out;
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

// ---- parse helpers -------------------------------------------------------------

namespace {

const Json* find_key(const Json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

const Json& need(const Json& j, const char* key, const std::string& where) {
    const Json* v = find_key(j, key);
    if (!v) throw ParseError(where, std::string("missing field \"") + key + "\"");
    return *v;
}

double num_at(const Json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where, "expected a number");
    return j.get<double>();
}

long long int_at(const Json& j, const std::string& where) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ParseError(where, "expected an integer");
    return j.get<long long>();
}

std::string string_at(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where, "expected a string");
    return j.get<std::string>();
}

Vec vector_at(const Json& j, const std::string& where, int expect = -1) {
    if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
    Vec v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i)
        v(i) = num_at(j[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
    if (expect >= 0 && v.size() != expect)
        throw ParseError(where, "expected " + std::to_string(expect) + " entries, got " +
                                    std::to_string(v.size()));
    return v;
}

Mat matrix_at(const Json& j, const std::string& where, int expect_cols) {
    if (!j.is_array()) throw ParseError(where, "expected an array of rows");
    const int rows = static_cast<int>(j.size());
    Mat M(rows, expect_cols);
    for (int r = 0; r < rows; ++r) {
        Vec row = vector_at(j[static_cast<std::size_t>(r)], where + "[" + std::to_string(r) + "]");
        if (row.size() != expect_cols)
            throw ParseError(where + "[" + std::to_string(r) + "]",
                             "row has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(expect_cols));
        M.row(r) = row.transpose();
    }
    return M;
}

Objective objective_at(const Json& j, const std::string& where, int n) {
    std::string kind = string_at(need(j, "kind", where), where + ".kind");
    try {
        if (kind == "affine") {
            return Objective::affine(vector_at(need(j, "c", where), where + ".c", n),
                                     num_at(need(j, "d", where), where + ".d"));
        }
        if (kind == "max_affine") {
            const Json& pieces = need(j, "pieces", where);
            if (!pieces.is_array() || pieces.empty())
                throw ParseError(where + ".pieces", "expected a nonempty array");
            std::vector<Vec> cs;
            std::vector<double> ds;
            for (std::size_t t = 0; t < pieces.size(); ++t) {
                std::string pw = where + ".pieces[" + std::to_string(t) + "]";
                cs.push_back(vector_at(need(pieces[t], "c", pw), pw + ".c", n));
                ds.push_back(num_at(need(pieces[t], "d", pw), pw + ".d"));
            }
            return Objective::max_affine(std::move(cs), std::move(ds));
        }
        if (kind == "quadratic") {
            return Objective::quadratic(matrix_at(need(j, "Q", where), where + ".Q", n),
                                        vector_at(need(j, "c", where), where + ".c", n),
                                        num_at(need(j, "d", where), where + ".d"));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(where, e.what());
    }
    throw ParseError(where + ".kind", "unknown objective kind \"" + kind + "\"");
}

double horner(const std::vector<double>& coeffs, double t) {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
}

}  // namespace

// ---- ProblemFile -----------------------------------------------------------------

SampledMultifunction ProblemFile::multifunction() const {
    if (!space) throw ParseError("space", "this command needs a measure space");
    if (sets.empty()) throw ParseError("sets", "this command needs per-atom set values");
    return SampledMultifunction(*space, sets);
}

Vec ProblemFile::sip_gradient(double t) const {
    Vec g(static_cast<int>(sip_a.size()));
    for (int i = 0; i < g.size(); ++i) g(i) = horner(sip_a[static_cast<std::size_t>(i)], t);
    return g;
}

double ProblemFile::sip_bound(double t) const { return horner(sip_b, t); }

ProblemFile parse_problem(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("document", e.what());
    }
    if (!doc.is_object()) throw ParseError("document", "top level must be an object");

    ProblemFile p;
    p.raw = text;
    p.dimension = static_cast<int>(int_at(need(doc, "dimension", "document"), "dimension"));
    if (p.dimension < 1) throw ParseError("dimension", "must be >= 1");
    const int n = p.dimension;

    // Params first: later sections (schedule norms) read them.
    if (const Json* pa = find_key(doc, "params")) {
        if (const Json* v = find_key(*pa, "radius")) p.params.radius = num_at(*v, "params.radius");
        if (const Json* v = find_key(*pa, "p")) p.params.p = num_at(*v, "params.p");
        if (const Json* v = find_key(*pa, "seed"))
            p.params.seed = static_cast<std::uint64_t>(int_at(*v, "params.seed"));
        if (const Json* v = find_key(*pa, "max_halvings"))
            p.params.max_halvings = static_cast<int>(int_at(*v, "params.max_halvings"));
        if (const Json* v = find_key(*pa, "selection_budget"))
            p.params.selection_budget = static_cast<long>(int_at(*v, "params.selection_budget"));
        if (const Json* to = find_key(*pa, "tolerances")) {
            if (const Json* v = find_key(*to, "feas"))
                p.params.tol.feas = num_at(*v, "params.tolerances.feas");
            if (const Json* v = find_key(*to, "active"))
                p.params.tol.active = num_at(*v, "params.tolerances.active");
            if (const Json* v = find_key(*to, "strict_slack"))
                p.params.tol.strict_slack = num_at(*v, "params.tolerances.strict_slack");
        }
        if (p.params.radius <= 0) throw ParseError("params.radius", "must be positive");
    }

    if (const Json* sp = find_key(doc, "space")) {
        if (const Json* atoms = find_key(*sp, "atoms")) {
            if (!atoms->is_array() || atoms->empty())
                throw ParseError("space.atoms", "expected a nonempty array");
            std::vector<std::string> ids;
            std::vector<double> weights;
            for (std::size_t i = 0; i < atoms->size(); ++i) {
                std::string aw = "space.atoms[" + std::to_string(i) + "]";
                ids.push_back(string_at(need((*atoms)[i], "id", aw), aw + ".id"));
                weights.push_back(num_at(need((*atoms)[i], "weight", aw), aw + ".weight"));
            }
            try {
                p.space = AtomicMeasureSpace(std::move(ids), std::move(weights));
            } catch (const Error& e) {
                throw ParseError("space.atoms", e.what());
            }
        } else if (const Json* iv = find_key(*sp, "interval")) {
            p.interval_a = num_at(need(*iv, "a", "space.interval"), "space.interval.a");
            p.interval_b = num_at(need(*iv, "b", "space.interval"), "space.interval.b");
            p.interval_nodes = static_cast<int>(
                int_at(need(*iv, "nodes", "space.interval"), "space.interval.nodes"));
            p.interval_rule =
                [&] {
                    std::string r =
                        string_at(need(*iv, "rule", "space.interval"), "space.interval.rule");
                    try {
                        return parse_rule(r);
                    } catch (const Error& e) {
                        throw ParseError("space.interval.rule", e.what());
                    }
                }();
            try {
                p.space = discretize_interval(p.interval_a, p.interval_b, p.interval_nodes,
                                              p.interval_rule);
            } catch (const Error& e) {
                throw ParseError("space.interval", e.what());
            }
            p.space_from_interval = true;
        } else {
            throw ParseError("space", "need either an \"atoms\" or an \"interval\" block");
        }
    }

    if (const Json* st = find_key(doc, "sets")) {
        if (!p.space) throw ParseError("sets", "a space section must come with set values");
        if (!st->is_object()) throw ParseError("sets", "expected an object keyed by atom id");
        for (auto it = st->begin(); it != st->end(); ++it) {
            bool known = false;
            for (int i = 0; i < p.space->size() && !known; ++i)
                known = p.space->id(i) == it.key();
            if (!known) throw ParseError("sets." + it.key(), "no such atom id");
        }
        for (int i = 0; i < p.space->size(); ++i) {
            const std::string& id = p.space->id(i);
            const Json* entry = find_key(*st, id.c_str());
            if (!entry) throw ParseError("sets", "missing entry for atom id \"" + id + "\"");
            std::string sw = "sets." + id;
            const Json& pieces = need(*entry, "pieces", sw);
            if (!pieces.is_array() || pieces.empty())
                throw ParseError(sw + ".pieces", "expected a nonempty array");
            std::vector<Polyhedron> polys;
            for (std::size_t t = 0; t < pieces.size(); ++t) {
                std::string pw = sw + ".pieces[" + std::to_string(t) + "]";
                Mat A = matrix_at(need(pieces[t], "A", pw), pw + ".A", n);
                Vec b = vector_at(need(pieces[t], "b", pw), pw + ".b", static_cast<int>(A.rows()));
                try {
                    polys.emplace_back(A, b);
                } catch (const Error& e) {
                    throw ParseError(pw, e.what());
                }
            }
            try {
                p.sets.emplace_back(std::move(polys));
            } catch (const Error& e) {
                throw ParseError(sw, e.what());
            }
        }
    }

    if (const Json* ob = find_key(doc, "objective"))
        p.objective = objective_at(*ob, "objective", n);

    if (const Json* cs = find_key(doc, "constraints")) {
        if (!p.space) throw ParseError("constraints", "a space section is required");
        if (!cs->is_array() || static_cast<int>(cs->size()) != p.space->size())
            throw ParseError("constraints", "expected one entry per atom");
        for (std::size_t i = 0; i < cs->size(); ++i)
            p.constraints.push_back(
                objective_at((*cs)[i], "constraints[" + std::to_string(i) + "]", n));
    }

    p.point = vector_at(need(doc, "point", "document"), "point", n);

    if (const Json* pe = find_key(doc, "perturbations")) {
        if (!p.space) throw ParseError("perturbations", "a space section is required");
        const int m = p.space->size();
        std::string mode = string_at(need(*pe, "mode", "perturbations"), "perturbations.mode");
        try {
            if (mode == "explicit") {
                const Json& terms = need(*pe, "terms", "perturbations");
                if (!terms.is_array() || terms.empty())
                    throw ParseError("perturbations.terms", "expected a nonempty array");
                std::vector<std::vector<Vec>> a;
                for (std::size_t k = 0; k < terms.size(); ++k) {
                    std::string kw = "perturbations.terms[" + std::to_string(k) + "]";
                    if (!terms[k].is_array() || static_cast<int>(terms[k].size()) != m)
                        throw ParseError(kw, "expected one vector per atom");
                    std::vector<Vec> row;
                    for (int i = 0; i < m; ++i)
                        row.push_back(vector_at(terms[k][static_cast<std::size_t>(i)],
                                                kw + "[" + std::to_string(i) + "]", n));
                    a.push_back(std::move(row));
                }
                p.schedule = PerturbationSchedule(*p.space, std::move(a), p.params.p);
            } else if (mode == "scaled") {
                const Json& base = need(*pe, "base", "perturbations");
                if (!base.is_array() || static_cast<int>(base.size()) != m)
                    throw ParseError("perturbations.base", "expected one vector per atom");
                std::vector<Vec> b;
                for (int i = 0; i < m; ++i)
                    b.push_back(vector_at(base[static_cast<std::size_t>(i)],
                                          "perturbations.base[" + std::to_string(i) + "]", n));
                const Json& scales = need(*pe, "scales", "perturbations");
                std::vector<double> s;
                for (std::size_t k = 0; k < scales.size(); ++k)
                    s.push_back(num_at(scales[k],
                                       "perturbations.scales[" + std::to_string(k) + "]"));
                p.schedule = PerturbationSchedule::scaled(*p.space, b, s, p.params.p);
            } else {
                throw ParseError("perturbations.mode", "expected \"explicit\" or \"scaled\"");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError("perturbations", e.what());
        }
    }

    if (const Json* si = find_key(doc, "sip")) {
        const Json& a = need(*si, "a", "sip");
        if (!a.is_array() || static_cast<int>(a.size()) != n)
            throw ParseError("sip.a", "expected one coefficient row per coordinate");
        for (std::size_t i = 0; i < a.size(); ++i) {
            Vec row = vector_at(a[i], "sip.a[" + std::to_string(i) + "]");
            p.sip_a.emplace_back(row.data(), row.data() + row.size());
        }
        Vec brow = vector_at(need(*si, "b", "sip"), "sip.b");
        p.sip_b.assign(brow.data(), brow.data() + brow.size());
        p.has_sip = true;
    }

    return p;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

// ---- canonical problem form ---------------------------------------------------------

Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json mat_to_json(const Mat& M) {
    Json a = Json::array();
    for (int r = 0; r < M.rows(); ++r) a.push_back(vec_to_json(M.row(r).transpose()));
    return a;
}

Vec vec_from_json(const Json& j) { return vector_at(j, "value"); }

namespace {

Json objective_to_json(const Objective& h) {
    Json o = Json::object();
    switch (h.kind()) {
        case Objective::Kind::Affine:
            o["kind"] = "affine";
            o["c"] = vec_to_json(h.pieces_c()[0]);
            o["d"] = h.pieces_d()[0];
            break;
        case Objective::Kind::MaxAffine: {
            o["kind"] = "max_affine";
            Json pieces = Json::array();
            for (std::size_t t = 0; t < h.pieces_c().size(); ++t) {
                Json piece = Json::object();
                piece["c"] = vec_to_json(h.pieces_c()[t]);
                piece["d"] = h.pieces_d()[t];
                pieces.push_back(std::move(piece));
            }
            o["pieces"] = std::move(pieces);
            break;
        }
        case Objective::Kind::Quadratic:
            o["kind"] = "quadratic";
            o["Q"] = mat_to_json(h.quad());
            o["c"] = vec_to_json(h.pieces_c()[0]);
            o["d"] = h.pieces_d()[0];
            break;
    }
    return o;
}

}  // namespace

Json problem_to_json(const ProblemFile& p) {
    Json doc = Json::object();
    doc["dimension"] = p.dimension;

    if (p.space) {
        Json sp = Json::object();
        if (p.space_from_interval) {
            Json iv = Json::object();
            iv["a"] = p.interval_a;
            iv["b"] = p.interval_b;
            iv["nodes"] = p.interval_nodes;
            iv["rule"] = rule_name(p.interval_rule);
            sp["interval"] = std::move(iv);
        } else {
            Json atoms = Json::array();
            for (int i = 0; i < p.space->size(); ++i) {
                Json atom = Json::object();
                atom["id"] = p.space->id(i);
                atom["weight"] = p.space->weight(i);
                atoms.push_back(std::move(atom));
            }
            sp["atoms"] = std::move(atoms);
        }
        doc["space"] = std::move(sp);
    }

    if (!p.sets.empty() && p.space) {
        Json sets = Json::object();
        for (int i = 0; i < p.space->size(); ++i) {
            Json pieces = Json::array();
            for (const Polyhedron& P : p.sets[static_cast<std::size_t>(i)].pieces()) {
                Json piece = Json::object();
                piece["A"] = mat_to_json(P.A());
                piece["b"] = vec_to_json(P.b());
                pieces.push_back(std::move(piece));
            }
            Json entry = Json::object();
            entry["pieces"] = std::move(pieces);
            sets[p.space->id(i)] = std::move(entry);
        }
        doc["sets"] = std::move(sets);
    }

    if (p.objective) doc["objective"] = objective_to_json(*p.objective);

    if (!p.constraints.empty()) {
        Json cs = Json::array();
        for (const Objective& f : p.constraints) cs.push_back(objective_to_json(f));
        doc["constraints"] = std::move(cs);
    }

    doc["point"] = vec_to_json(p.point);

    if (p.schedule) {
        Json pe = Json::object();
        pe["mode"] = "explicit";
        Json terms = Json::array();
        for (int k = 0; k < p.schedule->count(); ++k) {
            Json row = Json::array();
            for (const Vec& a : p.schedule->term(k)) row.push_back(vec_to_json(a));
            terms.push_back(std::move(row));
        }
        pe["terms"] = std::move(terms);
        doc["perturbations"] = std::move(pe);
    }

    if (p.has_sip) {
        Json si = Json::object();
        Json rows = Json::array();
        for (const auto& row : p.sip_a) {
            Json r = Json::array();
            for (double c : row) r.push_back(c);
            rows.push_back(std::move(r));
        }
        si["a"] = std::move(rows);
        Json b = Json::array();
        for (double c : p.sip_b) b.push_back(c);
        si["b"] = std::move(b);
        doc["sip"] = std::move(si);
    }

    Json pa = Json::object();
    pa["radius"] = p.params.radius;
    pa["p"] = p.params.p;
    pa["seed"] = p.params.seed;
    pa["max_halvings"] = p.params.max_halvings;
    pa["selection_budget"] = static_cast<std::int64_t>(p.params.selection_budget);
    Json to = Json::object();
    to["feas"] = p.params.tol.feas;
    to["active"] = p.params.tol.active;
    to["strict_slack"] = p.params.tol.strict_slack;
    pa["tolerances"] = std::move(to);
    doc["params"] = std::move(pa);

    return doc;
}

Json report_skeleton(const std::string& command, const ProblemFile& p) {
    Json r = Json::object();
    r["version"] = kVersion;
    r["command"] = command;
    r["input_digest"] = content_digest(p.raw);
    return r;
}

}  // namespace essint
