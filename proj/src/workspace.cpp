#include "tiltkit/workspace.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tiltkit {

using nlohmann::json;

namespace {

mpq_class parse_entry(const FieldSpec& field, const json& v, const std::string& where) {
    try {
        if (v.is_number_integer()) return reduce_into(field, mpq_class(v.get<long>()));
        if (v.is_string()) return parse_scalar(field, v.get<std::string>());
    } catch (const std::exception& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
    throw std::runtime_error(where + ": scalar must be an integer or a string like \"3/4\"");
}

ExactMatrix parse_matrix(const FieldSpec& field, const json& v, std::size_t rows,
                         std::size_t cols, const std::string& where) {
    if (!v.is_array() || v.size() != rows)
        throw std::runtime_error(where + ": expected " + std::to_string(rows) + " rows");
    ExactMatrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = v[i];
        if (!row.is_array() || row.size() != cols)
            throw std::runtime_error(where + ": row " + std::to_string(i) + " needs " +
                                     std::to_string(cols) + " entries");
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, parse_entry(field, row[j],
                                    where + "[" + std::to_string(i) + "][" + std::to_string(j) +
                                        "]"));
    }
    return m;
}

FieldSpec parse_field(const json& j) {
    if (!j.contains("field")) throw std::runtime_error("missing \"field\"");
    const json& f = j["field"];
    std::string kind = f.value("kind", "");
    if (kind == "rational") return FieldSpec::rationals();
    if (kind == "prime") {
        if (!f.contains("p")) throw std::runtime_error("field: prime kind needs \"p\"");
        return FieldSpec::prime(f["p"].get<std::int64_t>());
    }
    throw std::runtime_error("field.kind must be \"rational\" or \"prime\"");
}

AlgebraPtr parse_algebra(const FieldSpec& field, const json& j) {
    if (!j.contains("algebra")) throw std::runtime_error("missing \"algebra\"");
    const json& a = j["algebra"];
    std::string kind = a.value("kind", "");
    if (kind == "bound_quiver") {
        Quiver q;
        const json vertices = a.value("vertices", json::array());
        for (const auto& v : vertices) q.vertices.push_back(v.get<std::string>());
        const json arrows = a.value("arrows", json::array());
        for (const auto& ar : arrows)
            q.arrows.push_back(Arrow{ar.at("name").get<std::string>(),
                                     ar.at("src").get<std::string>(),
                                     ar.at("tgt").get<std::string>()});
        RelationSet rels;
        const json relations = a.value("relations", json::array());
        for (const auto& rel : relations) {
            Relation r;
            for (const auto& term : rel) {
                RelationTerm t;
                t.coeff = term.contains("coeff")
                              ? parse_entry(field, term["coeff"], "relation coeff")
                              : mpq_class(1);
                for (const auto& p : term.at("path")) t.path.push_back(p.get<std::string>());
                r.terms.push_back(std::move(t));
            }
            rels.relations.push_back(std::move(r));
        }
        BoundQuiverOptions opts;
        if (a.contains("degree_bound")) opts.degree_bound = a["degree_bound"].get<std::size_t>();
        return bound_quiver_algebra(field, q, rels, opts);
    }
    if (kind == "structure_constants") {
        std::size_t dim = a.at("dim").get<std::size_t>();
        const json& table = a.at("table");
        std::vector<std::vector<std::vector<mpq_class>>> c(
            dim, std::vector<std::vector<mpq_class>>(dim, std::vector<mpq_class>(dim)));
        if (!table.is_array() || table.size() != dim)
            throw std::runtime_error("algebra.table must have dim rows");
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t jj = 0; jj < dim; ++jj)
                for (std::size_t k = 0; k < dim; ++k)
                    c[i][jj][k] = parse_entry(field, table[i][jj][k], "algebra.table");
        std::vector<mpq_class> unit(dim);
        for (std::size_t k = 0; k < dim; ++k)
            unit[k] = parse_entry(field, a.at("unit")[k], "algebra.unit");
        std::vector<std::string> labels;
        if (a.contains("labels"))
            for (const auto& l : a["labels"]) labels.push_back(l.get<std::string>());
        return Algebra::from_table(field, c, unit, labels);
    }
    throw std::runtime_error("algebra.kind must be \"bound_quiver\" or \"structure_constants\"");
}

}  // namespace

ModulePtr module_from_rep(const AlgebraPtr& algebra,
                          const std::map<std::string, std::size_t>& vertex_dims,
                          const std::map<std::string, std::vector<std::vector<mpq_class>>>&
                              arrow_mats) {
    if (!algebra->quiver())
        throw std::runtime_error("rep modules need a bound quiver algebra");
    const QuiverInfo& info = *algebra->quiver();
    const Quiver& q = info.quiver;
    const FieldSpec field = algebra->field();
    std::vector<std::size_t> dims(q.vertices.size(), 0);
    for (const auto& [name, d] : vertex_dims) dims[q.vertex_index(name)] = d;
    std::vector<std::size_t> offset(q.vertices.size(), 0);
    std::size_t total = 0;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        offset[v] = total;
        total += dims[v];
    }
    std::vector<ExactMatrix> arrows;
    for (const auto& ar : q.arrows) {
        std::size_t rs = dims[q.vertex_index(ar.src)], cs = dims[q.vertex_index(ar.tgt)];
        auto it = arrow_mats.find(ar.name);
        if (it == arrow_mats.end()) {
            arrows.emplace_back(field, rs, cs);  // omitted arrow acts by zero
            continue;
        }
        ExactMatrix m(field, rs, cs);
        if (it->second.size() != rs)
            throw std::runtime_error("arrow matrix '" + ar.name + "' needs " +
                                     std::to_string(rs) + " rows");
        for (std::size_t i = 0; i < rs; ++i) {
            if (it->second[i].size() != cs)
                throw std::runtime_error("arrow matrix '" + ar.name + "' row " +
                                         std::to_string(i) + " needs " + std::to_string(cs) +
                                         " entries");
            for (std::size_t jj = 0; jj < cs; ++jj) m.set(i, jj, it->second[i][jj]);
        }
        arrows.push_back(std::move(m));
    }
    // action of basis path p: block from src(p) to tgt(p), product of arrow blocks
    std::vector<ExactMatrix> action;
    for (std::size_t b = 0; b < algebra->dim(); ++b) {
        std::size_t src = info.path_src[b], tgt = info.path_tgt[b];
        ExactMatrix block = ExactMatrix::identity(field, dims[src]);
        for (std::size_t ai : info.path_arrows[b]) block = block * arrows[ai];
        ExactMatrix act(field, total, total);
        act.paste(block, offset[src], offset[tgt]);
        action.push_back(std::move(act));
    }
    return FdModule::make(algebra, std::move(action));
}

const ModulePtr& Workspace::module_named(const std::string& name) const {
    auto it = modules.find(name);
    if (it == modules.end()) throw std::runtime_error("unknown module '" + name + "'");
    return it->second;
}

const BoundedComplex& Workspace::complex_named(const std::string& name) const {
    auto it = complexes.find(name);
    if (it == complexes.end()) throw std::runtime_error("unknown complex '" + name + "'");
    return it->second;
}

Workspace parse_workspace_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("JSON parse error: ") + e.what());
    }
    Workspace ws;
    ws.field = parse_field(j);
    ws.algebra = parse_algebra(ws.field, j);
    const json modules_json = j.value("modules", json::object());
    for (const auto& [name, spec] : modules_json.items()) {
        std::string kind = spec.value("kind", "rep");
        try {
            if (kind == "rep") {
                std::map<std::string, std::size_t> vdims;
                const json vd_json = spec.value("vertex_dims", json::object());
                for (const auto& [v, d] : vd_json.items()) vdims[v] = d.get<std::size_t>();
                std::map<std::string, std::vector<std::vector<mpq_class>>> amats;
                const json am_json = spec.value("arrow_mats", json::object());
                for (const auto& [aname, mat] : am_json.items()) {
                    std::vector<std::vector<mpq_class>> rows;
                    for (const auto& r : mat) {
                        std::vector<mpq_class> row;
                        for (const auto& e : r)
                            row.push_back(parse_entry(ws.field, e, "module " + name));
                        rows.push_back(std::move(row));
                    }
                    amats[aname] = std::move(rows);
                }
                ws.modules.emplace(name, module_from_rep(ws.algebra, vdims, amats));
            } else if (kind == "action") {
                std::size_t dim = spec.at("dim").get<std::size_t>();
                std::vector<ExactMatrix> action;
                const json& mats = spec.at("action");
                if (mats.size() != ws.algebra->dim())
                    throw std::runtime_error("need one action matrix per basis element");
                for (std::size_t b = 0; b < ws.algebra->dim(); ++b)
                    action.push_back(parse_matrix(ws.field, mats[b], dim, dim,
                                                  "module " + name + ".action"));
                ws.modules.emplace(name, FdModule::make(ws.algebra, std::move(action)));
            } else {
                throw std::runtime_error("module kind must be \"rep\" or \"action\"");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("module '" + name + "': " + e.what());
        }
    }
    const json complexes_json = j.value("complexes", json::object());
    for (const auto& [name, spec] : complexes_json.items()) {
        try {
            int low = spec.at("low").get<int>();
            std::vector<ModulePtr> terms;
            for (const auto& t : spec.at("terms"))
                terms.push_back(ws.module_named(t.get<std::string>()));
            std::vector<ModuleMap> diffs;
            const json ds = spec.value("differentials", json::array());
            if (!terms.empty() && ds.size() + 1 != terms.size())
                throw std::runtime_error("need one differential between consecutive terms");
            for (std::size_t k = 0; k + 1 < terms.size(); ++k)
                diffs.emplace_back(terms[k], terms[k + 1],
                                   parse_matrix(ws.field, ds[k], terms[k]->dim(),
                                                terms[k + 1]->dim(),
                                                "complex " + name + " differential " +
                                                    std::to_string(low + static_cast<int>(k))));
            ws.complexes.emplace(name,
                                 BoundedComplex::make(ws.algebra, low, std::move(terms),
                                                      std::move(diffs)));
        } catch (const std::exception& e) {
            throw std::runtime_error("complex '" + name + "': " + e.what());
        }
    }
    return ws;
}

Workspace load_workspace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open workspace file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_workspace_text(ss.str());
}

}  // namespace tiltkit
