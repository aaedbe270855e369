#pragma once

#include <string>

#include "skein/arc_algebra.hpp"
#include "skein/cube.hpp"
#include "skein/field.hpp"
#include "skein/gluing.hpp"
#include "skein/handles.hpp"
#include "skein/jones.hpp"
#include "skein/report.hpp"

namespace skein {

struct JobConfig {
    Theory theory = Theory::Khovanov;
    FieldChoice field = FieldChoice::F2;
    int crossing_cap = 14;
    int matching_cap = 6;
    int cable_cap = 4;
    int threads = 1;
    bool machine = false;
};

inline void check_caps(const JobConfig& cfg) {
    if (cfg.crossing_cap <= 0 || cfg.matching_cap <= 0 || cfg.cable_cap <= 0 ||
        cfg.threads <= 0)
        throw InputError("caps and thread count must be positive");
}

template <class F>
json cmd_kh_impl(const TangleDiagram& d, const JobConfig& cfg) {
    auto spec = FrobeniusSpec<F>::make(cfg.theory);
    auto r = kh(d, spec, cfg.crossing_cap);
    json j = report_envelope("kh", theory_name(cfg.theory), field_name(cfg.field));
    j["result"] = {{"poincare", r.dims.poincare()},
                   {"dims", dims_to_json(r.dims)},
                   {"total_dimension", r.dims.total()},
                   {"crossings", d.crossing_count()},
                   {"writhe", d.writhe()}};
    return j;
}

inline json cmd_kh(const TangleDiagram& d, const JobConfig& cfg) {
    check_caps(cfg);
    return with_field(cfg.field, [&](auto tag) {
        using F = decltype(tag);
        return cmd_kh_impl<F>(d, cfg);
    });
}

inline json cmd_jones(const TangleDiagram& d, const JobConfig& cfg) {
    check_caps(cfg);
    Laurent p = jones(d, cfg.crossing_cap);
    json j = report_envelope("jones", theory_name(cfg.theory), field_name(cfg.field));
    j["result"] = {{"polynomial", p.str()},
                   {"coefficients", laurent_to_json(p)},
                   {"crossings", d.crossing_count()},
                   {"writhe", d.writhe()}};
    return j;
}

template <class F>
json cmd_arc_algebra_impl(int n, const JobConfig& cfg) {
    auto spec = FrobeniusSpec<F>::make(cfg.theory);
    auto alg = build_arc_algebra(n, spec, std::max(cfg.matching_cap, 0), cfg.crossing_cap,
                                 cfg.threads);
    json j = report_envelope("arc-algebra", theory_name(cfg.theory), field_name(cfg.field));
    json idems = json::array();
    for (size_t a = 0; a < alg.idempotent.size(); ++a) {
        const auto& ref = alg.inv.basis[alg.idempotent[a]];
        idems.push_back({{"matching", a}, {"index", alg.idempotent[a]}, {"q", ref.q}});
    }
    json table = json::array();
    int nonzero_products = 0;
    for (int x = 0; x < alg.dim(); ++x)
        for (int y = 0; y < alg.dim(); ++y) {
            if (alg.table[x][y].is_zero()) continue;
            ++nonzero_products;
            json terms = json::array();
            for (const auto& [t, c] : alg.table[x][y].ent)
                terms.push_back({{"index", t}, {"coeff", c.str()}});
            table.push_back({{"x", x}, {"y", y}, {"terms", terms}});
        }
    json basis = json::array();
    for (const auto& ref : alg.inv.basis)
        basis.push_back({{"a", ref.a}, {"b", ref.b}, {"t", ref.t}, {"q", ref.q}});
    j["result"] = {{"n", n},
                   {"dimension", alg.dim()},
                   {"dims", dims_to_json(alg.inv.dims)},
                   {"basis", basis},
                   {"idempotents", idems},
                   {"nonzero_products", nonzero_products},
                   {"table", table}};
    return j;
}

inline json cmd_arc_algebra(int n, const JobConfig& cfg) {
    check_caps(cfg);
    if (n > cfg.matching_cap)
        throw CapError("arc algebra size " + std::to_string(n) + " exceeds cap " +
                       std::to_string(cfg.matching_cap));
    return with_field(cfg.field, [&](auto tag) {
        using F = decltype(tag);
        return cmd_arc_algebra_impl<F>(n, cfg);
    });
}

template <class F>
json cmd_bimodule_impl(const TangleDiagram& d, const JobConfig& cfg) {
    auto spec = FrobeniusSpec<F>::make(cfg.theory);
    auto mod = build_tangle_invariant(d, spec, cfg.matching_cap, cfg.crossing_cap, cfg.threads);
    auto left_alg = build_arc_algebra(mod.m, spec, std::max(cfg.matching_cap, mod.m),
                                      cfg.crossing_cap, cfg.threads);
    auto right_alg = build_arc_algebra(mod.n, spec, std::max(cfg.matching_cap, mod.n),
                                       cfg.crossing_cap, cfg.threads);
    auto act = build_actions<F>(mod, &left_alg, &right_alg, cfg.crossing_cap);
    json j = report_envelope("bimodule", theory_name(cfg.theory), field_name(cfg.field));
    json summands = json::array();
    for (size_t a = 0; a < mod.piece.size(); ++a)
        for (size_t b = 0; b < mod.piece[a].size(); ++b) {
            GradedDims sd;
            for (const auto& c : mod.piece[a][b].classes()) sd.add(c.deg, c.q, 1);
            summands.push_back({{"a", a},
                                {"b", b},
                                {"dimension", mod.piece[a][b].dim()},
                                {"dims", dims_to_json(sd)}});
        }
    json left_ranks = json::array(), right_ranks = json::array();
    for (int h = 0; h < left_alg.dim(); ++h)
        left_ranks.push_back({{"algebra_index", h}, {"rank", rank(act.left[h])}});
    for (int h = 0; h < right_alg.dim(); ++h)
        right_ranks.push_back({{"algebra_index", h}, {"rank", rank(act.right[h])}});
    j["result"] = {{"m", mod.m},
                   {"n", mod.n},
                   {"total_dimension", static_cast<int64_t>(mod.basis.size())},
                   {"dims", dims_to_json(mod.dims)},
                   {"summands", summands},
                   {"left_action_ranks", left_ranks},
                   {"right_action_ranks", right_ranks}};
    return j;
}

inline json cmd_bimodule(const TangleDiagram& d, const JobConfig& cfg) {
    check_caps(cfg);
    return with_field(cfg.field, [&](auto tag) {
        using F = decltype(tag);
        return cmd_bimodule_impl<F>(d, cfg);
    });
}

template <class F>
json cmd_glue_check_impl(const TangleDiagram& d1, const TangleDiagram& d2,
                         const JobConfig& cfg) {
    auto spec = FrobeniusSpec<F>::make(cfg.theory);
    GlueReport rep = glue_verify(d1, d2, spec, cfg.crossing_cap, cfg.matching_cap, cfg.threads);
    json j = report_envelope("glue-check", theory_name(cfg.theory), field_name(cfg.field));
    j["result"] = {{"lhs_dims", dims_to_json(rep.lhs)},
                   {"rhs_dims", dims_to_json(rep.rhs)},
                   {"lhs_poincare", rep.lhs.poincare()},
                   {"rhs_poincare", rep.rhs.poincare()},
                   {"pass", rep.pass},
                   {"dims_only_pass", rep.dims_only}};
    return j;
}

inline json cmd_glue_check(const TangleDiagram& d1, const TangleDiagram& d2,
                           const JobConfig& cfg) {
    check_caps(cfg);
    return with_field(cfg.field, [&](auto tag) {
        using F = decltype(tag);
        return cmd_glue_check_impl<F>(d1, d2, cfg);
    });
}

template <class F>
json cmd_handle1_impl(const TangleDiagram& d, const JobConfig& cfg) {
    auto spec = FrobeniusSpec<F>::make(cfg.theory);
    GradedDims dims =
        attach_1_handle(d, spec, cfg.crossing_cap, cfg.matching_cap, cfg.threads);
    json j = report_envelope("handle1", theory_name(cfg.theory), field_name(cfg.field));
    j["result"] = {{"dims", dims_to_json(dims)},
                   {"poincare", dims.poincare()},
                   {"total_dimension", dims.total()}};
    return j;
}

inline json cmd_handle1(const TangleDiagram& d, const JobConfig& cfg) {
    check_caps(cfg);
    return with_field(cfg.field, [&](auto tag) {
        using F = decltype(tag);
        return cmd_handle1_impl<F>(d, cfg);
    });
}

template <class F>
json cmd_handle2_impl(const TangleDiagram& ambient, const TangleDiagram& knot, int framing,
                      int max_cable, const JobConfig& cfg) {
    if (max_cable > cfg.cable_cap)
        throw CapError("cable truncation " + std::to_string(max_cable) + " exceeds cap " +
                       std::to_string(cfg.cable_cap));
    auto spec = FrobeniusSpec<F>::make(cfg.theory);
    auto pres = attach_2_handle(ambient, knot, framing, max_cable, spec, cfg.crossing_cap, true,
                                cfg.threads);
    json j = report_envelope("handle2", theory_name(cfg.theory), field_name(cfg.field));
    json levels = json::array();
    for (const auto& lv : pres.levels)
        levels.push_back({{"n_plus", lv.n_plus},
                          {"n_minus", lv.n_minus},
                          {"dims", dims_to_json(lv.dims)}});
    json ranks = json::array();
    for (const auto& [tq, r] : pres.relation_ranks)
        ranks.push_back({{"t", tq.first}, {"q", tq.second}, {"rank", r}});
    json stab = json::array();
    for (const auto& [tq, c] : pres.previous_quotient_dims.entries())
        stab.push_back({{"t", tq.first},
                        {"q", tq.second},
                        {"previous", c},
                        {"current", pres.quotient_dims.at(tq.first, tq.second)}});
    j["result"] = {{"truncation", pres.truncation},
                   {"levels", levels},
                   {"generator_dims", dims_to_json(pres.generator_dims)},
                   {"relation_ranks", ranks},
                   {"quotient_dims", dims_to_json(pres.quotient_dims)},
                   {"quotient_poincare", pres.quotient_dims.poincare()},
                   {"braid_relation_consistent", pres.braid_relation_consistent},
                   {"stabilization_table", stab},
                   {"stabilization_consistent", pres.stabilization_consistent}};
    return j;
}

inline json cmd_handle2(const TangleDiagram& ambient, const TangleDiagram& knot, int framing,
                        int max_cable, const JobConfig& cfg) {
    check_caps(cfg);
    return with_field(cfg.field, [&](auto tag) {
        using F = decltype(tag);
        return cmd_handle2_impl<F>(ambient, knot, framing, max_cable, cfg);
    });
}

template <class F>
json cmd_handle3_impl(const json& module_doc, const json& relations_doc, const JobConfig& cfg) {
    GradedModule mod;
    for (const auto& e : module_doc.at("dims"))
        mod.dims[{e.at("t").get<int>(), e.at("q").get<int>()}] = e.at("dim").get<int>();
    std::vector<Handle3Relation<F>> rels;
    for (const auto& r : relations_doc.at("relations")) {
        Handle3Relation<F> rel;
        rel.eps = F(r.at("eps").get<int64_t>());
        for (const auto& b : r.at("blocks")) {
            int t = b.at("t").get<int>(), q = b.at("q").get<int>();
            auto it = mod.dims.find({t, q});
            if (it == mod.dims.end())
                throw InputError("3-handle: relation block names a missing bidegree");
            SparseMatrix<F> m(it->second, it->second);
            for (const auto& ent : b.at("entries")) {
                int row = ent.at(0).get<int>(), col = ent.at(1).get<int>();
                if (row < 0 || row >= it->second || col < 0 || col >= it->second)
                    throw InputError("3-handle: relation entry out of range");
                m.set(row, col, F(ent.at(2).get<int64_t>()));
            }
            rel.blocks[{t, q}] = std::move(m);
        }
        rels.push_back(std::move(rel));
    }
    GradedDims out = attach_3_handle(mod, rels);
    json j = report_envelope("handle3", theory_name(cfg.theory), field_name(cfg.field));
    GradedDims in_dims;
    for (const auto& [tq, d] : mod.dims) in_dims.add(tq.first, tq.second, d);
    j["result"] = {{"input_dims", dims_to_json(in_dims)},
                   {"relation_count", rels.size()},
                   {"dims", dims_to_json(out)},
                   {"poincare", out.poincare()}};
    return j;
}

inline json cmd_handle3(const json& module_doc, const json& relations_doc, const JobConfig& cfg) {
    check_caps(cfg);
    return with_field(cfg.field, [&](auto tag) {
        using F = decltype(tag);
        return cmd_handle3_impl<F>(module_doc, relations_doc, cfg);
    });
}

inline json cmd_handle4(const json& module_doc, const JobConfig& cfg) {
    check_caps(cfg);
    GradedDims dims;
    for (const auto& e : module_doc.at("dims"))
        dims.add(e.at("t").get<int>(), e.at("q").get<int>(), e.at("dim").get<int64_t>());
    GradedDims out = attach_4_handle(dims);
    json j = report_envelope("handle4", theory_name(cfg.theory), field_name(cfg.field));
    j["result"] = {{"dims", dims_to_json(out)},
                   {"poincare", out.poincare()},
                   {"note", "a 4-handle does not change the skein module"}};
    return j;
}

// Human rendering: a compact, stable text form of any report.
inline std::string render_human(const json& j) {
    std::string out;
    out += j.at("subcommand").get<std::string>() + " (" + j.at("theory").get<std::string>() +
           ", " + j.at("field").get<std::string>() + ")\n";
    const json& r = j.at("result");
    for (auto it = r.begin(); it != r.end(); ++it) {
        if (it.value().is_string())
            out += "  " + it.key() + ": " + it.value().get<std::string>() + "\n";
        else if (it.value().is_number_integer())
            out += "  " + it.key() + ": " + std::to_string(it.value().get<int64_t>()) + "\n";
        else if (it.value().is_boolean())
            out += "  " + it.key() + ": " + (it.value().get<bool>() ? "true" : "false") + "\n";
        else
            out += "  " + it.key() + ": " + it.value().dump() + "\n";
    }
    return out;
}

}  // namespace skein
