#pragma once

// A workspace is a named bundle of algebras, homs, modules, complexes, chain
// maps and matrices loaded from one JSON document.  Loading validates every
// invariant it can and reports all failures at once, not just the first.

#include <fstream>

#include "json_io.hpp"

namespace perfrank {

struct ComplexEntry {
    FreeComplex complex;
    std::optional<ChainMap> idempotent; // presence marks a direct-summand object (X, e)
    ComplexEntry(FreeComplex c, std::optional<ChainMap> e) : complex(std::move(c)), idempotent(std::move(e)) {}
};

struct WorkspaceDefaults {
    Period period = Period::infinite();
    int depth = 6;
    int samples = 200;
    std::uint64_t seed = 1;
};

struct Workspace {
    std::map<std::string, AlgebraRef> algebras;
    std::map<std::string, MatAlgebraHom> homs;
    std::map<std::string, FDModule> modules;
    std::map<std::string, ComplexEntry> complexes;
    std::map<std::string, ChainMap> chain_maps;
    std::map<std::string, MatrixOverA> matrices;
    WorkspaceDefaults defaults;

    template <typename M>
    static const typename M::mapped_type& named(const M& m, const std::string& name, const char* kind) {
        auto it = m.find(name);
        if (it == m.end()) throw std::invalid_argument(std::string("no ") + kind + " named '" + name + "'");
        return it->second;
    }

    const AlgebraRef& algebra(const std::string& n) const { return named(algebras, n, "algebra"); }
    const MatAlgebraHom& hom(const std::string& n) const { return named(homs, n, "hom"); }
    const FDModule& module(const std::string& n) const { return named(modules, n, "module"); }
    const ComplexEntry& complex(const std::string& n) const { return named(complexes, n, "complex"); }
    const ChainMap& chain_map(const std::string& n) const { return named(chain_maps, n, "chain map"); }
    const MatrixOverA& matrix(const std::string& n) const { return named(matrices, n, "matrix"); }
};

class WorkspaceError : public std::runtime_error {
  public:
    explicit WorkspaceError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
    const std::vector<std::string>& problems() const { return problems_; }

  private:
    static std::string join(const std::vector<std::string>& ps) {
        std::string out = "workspace validation failed:";
        for (const auto& p : ps) out += "\n  - " + p;
        return out;
    }
    std::vector<std::string> problems_;
};

namespace workspace_detail {

using jsonio::Json;

inline AlgebraRef algebra_from_json(const Json& j) {
    if (j.contains("quiver")) {
        const Json& q = j.at("quiver");
        FieldSpec f = q.contains("field") ? jsonio::field_from_json(q.at("field")) : FieldSpec::rationals();
        std::vector<std::string> vertices = q.at("vertices").get<std::vector<std::string>>();
        std::vector<QuiverArrow> arrows;
        for (const auto& a : q.at("arrows"))
            arrows.push_back(QuiverArrow{a.at("name").get<std::string>(), a.at("src").get<std::string>(),
                                         a.at("dst").get<std::string>()});
        std::vector<std::vector<PathTerm>> relations;
        if (q.contains("relations"))
            for (const auto& rel : q.at("relations")) {
                std::vector<PathTerm> terms;
                for (const auto& t : rel) {
                    PathTerm term;
                    term.arrows = t.at("arrows").get<std::vector<std::string>>();
                    term.coeff = t.contains("coeff") ? jsonio::rational_from_json(t.at("coeff")) : Rational(1);
                    terms.push_back(std::move(term));
                }
                relations.push_back(std::move(terms));
            }
        int cap = q.contains("path_cap") ? q.at("path_cap").get<int>() : 8;
        return from_quiver(f, vertices, arrows, relations, cap);
    }

    FieldSpec f = jsonio::field_from_json(j.at("field"));
    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    const int m = static_cast<int>(basis.size());
    FDAlgebra::Coords unit;
    for (const auto& u : j.at("unit")) unit.push_back(jsonio::rational_from_json(u));
    std::vector<std::vector<FDAlgebra::Coords>> products(
        static_cast<std::size_t>(m),
        std::vector<FDAlgebra::Coords>(static_cast<std::size_t>(m),
                                       FDAlgebra::Coords(static_cast<std::size_t>(m), Rational(0))));
    for (const auto& t : j.at("products")) {
        int a = t.at(0).get<int>(), b = t.at(1).get<int>(), c = t.at(2).get<int>();
        if (a < 0 || a >= m || b < 0 || b >= m || c < 0 || c >= m)
            throw std::invalid_argument("product triple index out of range");
        products[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] =
            jsonio::rational_from_json(t.at(3));
    }
    return from_structure_constants(f, std::move(basis), std::move(unit), std::move(products));
}

inline MatAlgebraHom hom_from_json(const Workspace& ws, const Json& j) {
    MatAlgebraHom phi;
    phi.source = ws.algebra(j.at("algebra").get<std::string>());
    phi.n = j.at("n").get<int>();
    phi.target_field = j.contains("field") ? jsonio::field_from_json(j.at("field")) : phi.source->field;
    phi.images.assign(static_cast<std::size_t>(phi.source->dim), ExactMatrix(phi.target_field, phi.n, phi.n));
    for (const auto& [label, img] : j.at("images").items()) {
        int idx = phi.source->basis_index(label);
        ExactMatrix m = jsonio::matrix_from_rows(phi.target_field, img);
        if (m.rows() != phi.n || m.cols() != phi.n) throw std::invalid_argument("hom image must be n x n");
        phi.images[static_cast<std::size_t>(idx)] = std::move(m);
    }
    return phi;
}

inline FDModule module_from_json(const Workspace& ws, const Json& j) {
    Side side = Side::Right;
    if (j.contains("side")) {
        std::string s = j.at("side").get<std::string>();
        if (s == "left") side = Side::Left;
        else if (s != "right") throw std::invalid_argument("side must be \"right\" or \"left\"");
    }
    if (j.contains("from_hom")) return FDModule::from_hom(ws.hom(j.at("from_hom").get<std::string>()), side);
    AlgebraRef alg = ws.algebra(j.at("algebra").get<std::string>());
    if (j.contains("regular") && j.at("regular").get<bool>()) return FDModule::regular(alg, side);
    int dim = j.at("dim").get<int>();
    std::vector<ExactMatrix> act(static_cast<std::size_t>(alg->dim), ExactMatrix(alg->field, dim, dim));
    // absent basis labels act as zero; the unit must be given through them
    for (const auto& [label, rows] : j.at("action").items()) {
        int idx = alg->basis_index(label);
        ExactMatrix m = jsonio::matrix_from_rows(alg->field, rows);
        if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("action matrix must be dim x dim");
        act[static_cast<std::size_t>(idx)] = std::move(m);
    }
    return FDModule(alg, dim, side, std::move(act));
}

inline FreeComplex complex_from_json(const Workspace& ws, const Json& j) {
    AlgebraRef alg = ws.algebra(j.at("algebra").get<std::string>());
    std::map<int, int> ranks;
    for (const auto& d : j.at("degrees")) ranks[d.at("n").get<int>()] = d.at("rank").get<int>();
    std::map<int, MatrixOverA> diffs;
    if (j.contains("differentials"))
        for (const auto& [deg, mat] : j.at("differentials").items())
            diffs.emplace(std::stoi(deg), jsonio::amatrix_from_json(alg, mat));
    return FreeComplex(alg, std::move(ranks), std::move(diffs));
}

inline ChainMap chain_map_from_json(const FreeComplex& src, const FreeComplex& tgt, const Json& components) {
    std::map<int, MatrixOverA> comps;
    for (const auto& [deg, mat] : components.items())
        comps.emplace(std::stoi(deg), jsonio::amatrix_from_json(src.algebra(), mat));
    ChainMap f(src, tgt, std::move(comps));
    if (!f.commutes_with_differentials()) throw std::invalid_argument("components do not commute with differentials");
    return f;
}

} // namespace workspace_detail

inline Workspace load_workspace(const jsonio::Json& doc) {
    using jsonio::Json;
    Workspace ws;
    std::vector<std::string> problems;

    auto guard = [&problems](const std::string& what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            problems.push_back(what + ": " + e.what());
        }
    };

    if (doc.contains("algebras"))
        for (const auto& [name, j] : doc.at("algebras").items())
            guard("algebra '" + name + "'", [&] { ws.algebras.emplace(name, workspace_detail::algebra_from_json(j)); });

    if (doc.contains("homs"))
        for (const auto& [name, j] : doc.at("homs").items())
            guard("hom '" + name + "'", [&] {
                MatAlgebraHom phi = workspace_detail::hom_from_json(ws, j);
                auto rep = verify_hom(phi);
                if (!rep.valid()) {
                    std::string msg = "fails verification:";
                    for (const auto& v : rep.violations) msg += " [" + v.detail + "]";
                    throw std::invalid_argument(msg);
                }
                ws.homs.emplace(name, std::move(phi));
            });

    if (doc.contains("modules"))
        for (const auto& [name, j] : doc.at("modules").items())
            guard("module '" + name + "'", [&] { ws.modules.emplace(name, workspace_detail::module_from_json(ws, j)); });

    if (doc.contains("complexes"))
        for (const auto& [name, j] : doc.at("complexes").items())
            guard("complex '" + name + "'", [&] {
                FreeComplex x = workspace_detail::complex_from_json(ws, j);
                auto val = x.validate();
                if (!val.empty()) {
                    std::string msg = "invalid complex:";
                    for (const auto& v : val) msg += " [" + v + "]";
                    throw std::invalid_argument(msg);
                }
                std::optional<ChainMap> idem;
                if (j.contains("idempotent")) {
                    ChainMap e = workspace_detail::chain_map_from_json(x, x, j.at("idempotent"));
                    IdempotentObject check(x, e); // throws unless strictly idempotent
                    idem = std::move(e);
                }
                ws.complexes.emplace(name, ComplexEntry(std::move(x), std::move(idem)));
            });

    if (doc.contains("chain_maps"))
        for (const auto& [name, j] : doc.at("chain_maps").items())
            guard("chain map '" + name + "'", [&] {
                const FreeComplex& src = ws.complex(j.at("source").get<std::string>()).complex;
                const FreeComplex& tgt = ws.complex(j.at("target").get<std::string>()).complex;
                ws.chain_maps.emplace(name, workspace_detail::chain_map_from_json(src, tgt, j.at("components")));
            });

    if (doc.contains("matrices"))
        for (const auto& [name, j] : doc.at("matrices").items())
            guard("matrix '" + name + "'", [&] {
                AlgebraRef alg = ws.algebra(j.at("algebra").get<std::string>());
                ws.matrices.emplace(name, jsonio::amatrix_from_json(alg, j));
            });

    if (doc.contains("defaults")) {
        const Json& d = doc.at("defaults");
        guard("defaults", [&] {
            if (d.contains("period")) ws.defaults.period = jsonio::period_from_json(d.at("period"));
            if (d.contains("depth")) ws.defaults.depth = d.at("depth").get<int>();
            if (d.contains("samples")) ws.defaults.samples = d.at("samples").get<int>();
            if (d.contains("seed")) ws.defaults.seed = d.at("seed").get<std::uint64_t>();
        });
    }

    if (!problems.empty()) throw WorkspaceError(std::move(problems));
    return ws;
}

inline Workspace load_workspace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WorkspaceError({"cannot open workspace file '" + path + "'"});
    jsonio::Json doc;
    try {
        doc = jsonio::Json::parse(in);
    } catch (const std::exception& e) {
        throw WorkspaceError({std::string("JSON parse error: ") + e.what()});
    }
    return load_workspace(doc);
}

inline Workspace load_workspace_string(const std::string& text) {
    jsonio::Json doc;
    try {
        doc = jsonio::Json::parse(text);
    } catch (const std::exception& e) {
        throw WorkspaceError({std::string("JSON parse error: ") + e.what()});
    }
    return load_workspace(doc);
}

} // namespace perfrank
