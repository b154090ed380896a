#pragma once

// JSON forms of the value types.  Rationals travel as "num/den" strings
// (plain integers when the denominator is 1); object keys are emitted in
// insertion order so that identical inputs serialize byte-identically.

#include <json.hpp>

#include "axioms.hpp"
#include "coeff.hpp"
#include "homalg.hpp"
#include "rank.hpp"

namespace perfrank::jsonio {

using Json = nlohmann::ordered_json;

// ---- scalars ----

inline Json rational_to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("expected a rational as string or integer, got " + j.dump());
}

inline Json field_to_json(const FieldSpec& f) {
    if (f.is_rationals()) return "Q";
    Json j;
    j["Fp"] = f.p;
    return j;
}

inline FieldSpec field_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return FieldSpec::rationals();
    if (j.is_object() && j.contains("Fp")) return FieldSpec::prime_field(j.at("Fp").get<std::uint64_t>());
    throw std::invalid_argument("expected \"Q\" or {\"Fp\": p}, got " + j.dump());
}

inline Json period_to_json(const Period& p) {
    if (p.is_infinite()) return "inf";
    return p.value();
}

inline Period period_from_json(const Json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "infinity") return Period::infinite();
        return Period::finite(std::stoll(s));
    }
    if (j.is_number_integer()) return Period::finite(j.get<std::int64_t>());
    throw std::invalid_argument("expected a period as integer or \"inf\", got " + j.dump());
}

// ---- coefficient polynomials ----

inline Json coeffpoly_to_json(const CoeffPoly& p) {
    Json j;
    j["period"] = period_to_json(p.period());
    Json coeffs = Json::array();
    for (const auto& [e, c] : p.coeffs()) coeffs.push_back(Json::array({e, rational_to_json(c)}));
    j["coeffs"] = coeffs;
    return j;
}

inline CoeffPoly coeffpoly_from_json(const Json& j) {
    Period p = period_from_json(j.at("period"));
    std::vector<std::pair<std::int64_t, Rational>> terms;
    for (const auto& t : j.at("coeffs"))
        terms.emplace_back(t.at(0).get<std::int64_t>(), rational_from_json(t.at(1)));
    return CoeffPoly::normalize(terms, p);
}

// ---- matrices over a field ----

inline Json matrix_to_json(const ExactMatrix& m) {
    Json j;
    j["field"] = field_to_json(m.field());
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m.at(r, c)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

inline ExactMatrix matrix_from_json(const Json& j) {
    FieldSpec f = field_from_json(j.at("field"));
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    ExactMatrix m(f, rows, cols);
    const Json& e = j.at("entries");
    if (static_cast<int>(e.size()) != rows) throw std::invalid_argument("entry row count mismatch");
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(e.at(static_cast<std::size_t>(r)).size()) != cols)
            throw std::invalid_argument("entry column count mismatch");
        for (int c = 0; c < cols; ++c)
            m.set(r, c, rational_from_json(e.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c))));
    }
    return m;
}

// plain 2D array form, with the field supplied externally
inline ExactMatrix matrix_from_rows(FieldSpec f, const Json& rows_json) {
    int rows = static_cast<int>(rows_json.size());
    int cols = rows == 0 ? 0 : static_cast<int>(rows_json.at(0).size());
    ExactMatrix m(f, rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = rows_json.at(static_cast<std::size_t>(r));
        if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.set(r, c, rational_from_json(row.at(static_cast<std::size_t>(c))));
    }
    return m;
}

inline Json matrix_rows_to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

// ---- matrices over an algebra (entries are coordinate vectors) ----

inline Json amatrix_to_json(const MatrixOverA& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            Json coords = Json::array();
            for (const auto& x : m.at(r, c).coords) coords.push_back(rational_to_json(x));
            row.push_back(coords);
        }
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

inline MatrixOverA amatrix_from_json(const AlgebraRef& alg, const Json& j) {
    int rows, cols;
    const Json* entries;
    if (j.is_object()) {
        rows = j.at("rows").get<int>();
        cols = j.at("cols").get<int>();
        entries = &j.at("entries");
    } else {
        // bare 2D array form
        rows = static_cast<int>(j.size());
        cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
        entries = &j;
    }
    MatrixOverA m(alg, rows, cols);
    if (static_cast<int>(entries->size()) != rows) throw std::invalid_argument("entry row count mismatch");
    for (int r = 0; r < rows; ++r) {
        const Json& row = entries->at(static_cast<std::size_t>(r));
        if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("entry column count mismatch");
        for (int c = 0; c < cols; ++c) {
            const Json& coords = row.at(static_cast<std::size_t>(c));
            if (static_cast<int>(coords.size()) != alg->dim)
                throw std::invalid_argument("coordinate vector length differs from algebra dimension");
            FDAlgebra::Coords v;
            for (const auto& x : coords) v.push_back(fieldops::canon(alg->field, rational_from_json(x)));
            m.at(r, c) = AlgElement(alg, std::move(v));
        }
    }
    return m;
}

// ---- axiom reports ----

inline Json axiom_report_to_json(const AxiomReport& rep) {
    Json j;
    j["all_passed"] = rep.all_passed();
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["checked"] = c.checked;
        cj["failed"] = c.failed;
        if (c.failed > 0) {
            cj["first_failure_seed"] = c.first_failure_seed;
            cj["first_counterexample"] = c.first_counterexample;
        }
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

inline Json epi_report_to_json(const EpiCheckReport& rep) {
    Json j;
    j["tensor_dim"] = rep.tensor_dimension;
    j["mult_bijective"] = rep.mult_bijective;
    j["tor_vanishing"] = rep.tor_vanishing;
    j["depth"] = rep.depth;
    j["passes"] = rep.passes;
    if (rep.first_obstruction > 0) j["first_obstruction"] = rep.first_obstruction;
    return j;
}

inline Json localizing_report_to_json(const LocalizingReport& rep) {
    Json j;
    j["normalized"] = rep.normalized;
    j["scaled_integral"] = rep.scaled_integral;
    j["samples"] = rep.samples;
    j["epicheck"] = epi_report_to_json(rep.epi);
    j["depth"] = rep.depth;
    j["consistent"] = rep.consistent;
    if (!rep.consistent) {
        if (rep.multiplication_obstructed) j["obstruction"] = "multiplication not bijective";
        else if (rep.obstruction_degree > 0)
            j["obstruction"] = "Tor_" + std::to_string(rep.obstruction_degree) + " nonzero";
    }
    return j;
}

} // namespace perfrank::jsonio
