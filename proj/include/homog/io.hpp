#pragma once

// JSON literals for jets, shears, 2x2 matrices and sparse planar maps.
// Unknown keys are rejected; every error names the offending field.

#include "homog/linmaps.hpp"
#include "homog/planar.hpp"
#include "homog/prolongation.hpp"
#include "homog/shears.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace homog::io {

using json = nlohmann::ordered_json;

using AnyJet = std::variant<Jet<Rational>, Jet<double>, Jet<Complex>>;
using AnyShear = std::variant<Shear<Rational>, Shear<double>>;
using AnyLinMap = std::variant<LinMap2<Rational>, LinMap2<double>>;
using AnyPlanarMap = std::variant<PlanarMap<Rational>, PlanarMap<double>>;

/// Parses text, reporting line and column on malformed JSON.
json parse_text(const std::string& text, const std::string& source);
json read_file(const std::string& path);

ScalarKind parse_kind(const json& j, const std::string& where);

/// {"kind": ..., "order": N, "coeffs": [...]}; missing trailing coefficients are zero.
AnyJet parse_jet(const json& j, const std::string& where = "jet");

/// Narrows to the requested kind; ScalarKindMismatch otherwise.
template <JetScalar T> Jet<T> jet_as(const AnyJet& j, const std::string& where = "jet")
{
    if (auto p = std::get_if<Jet<T>>(&j)) return *p;
    throw ScalarKindMismatch(where + ": expected kind " + to_string(scalar_traits<T>::kind));
}

json scalar_to_json(const Rational& v);
json scalar_to_json(double v);
json scalar_to_json(const Complex& v);

template <JetScalar T> json jet_to_json(const Jet<T>& a)
{
    json c = json::array();
    for (const T& v : a.coeffs()) c.push_back(scalar_to_json(v));
    return json{{"kind", to_string(scalar_traits<T>::kind)}, {"order", a.order()}, {"coeffs", c}};
}

/// {"base": <jet or builtin germ name>, "additive": <jet>, "closed_form": optional builtin shear name}.
AnyShear parse_shear(const json& j, int order);

/// {"kind": "rational"|"real", "entries": [[a, b], [c, d]]}.
AnyLinMap parse_matrix(const json& j);

template <JetScalar T> json matrix_to_json(const Mat2<T>& m)
{
    json rows = json::array();
    for (const auto& r : m) rows.push_back(json::array({scalar_to_json(r[0]), scalar_to_json(r[1])}));
    return json{{"kind", to_string(scalar_traits<T>::kind)}, {"entries", rows}};
}

/// {"kind": optional, "order": N, "fx": [[i, j, coef], ...], "fy": [...]}.
AnyPlanarMap parse_planar_map(const json& j);

template <JetScalar T> json bijet_to_json(const BiJet<T>& b)
{
    json terms = json::array();
    for (int d = 0; d <= b.order(); ++d)
        for (int i = d; i >= 0; --i)
            if (!(b(i, d - i) == T(0))) terms.push_back(json::array({i, d - i, scalar_to_json(b(i, d - i))}));
    return terms;
}

template <JetScalar T> json planar_map_to_json(const PlanarMap<T>& f)
{
    return json{{"kind", to_string(scalar_traits<T>::kind)},
                {"order", f.order()},
                {"fx", bijet_to_json(f.fx)},
                {"fy", bijet_to_json(f.fy)}};
}

/// n x m matrix of rationals (strings or integers) for flattening input.
DenseMatrix<Rational> parse_dense_rational(const json& j, const std::string& where);

} // namespace homog::io
