#include "homog/io.hpp"

#include "homog/builtins.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace homog::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw DomainError(where + ": " + what); }

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) fail(where, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key)) fail(where, "unknown key \"" + key + "\"");
}

const json& need(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) fail(where, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

Rational rational_of(const json& v, const std::string& where)
{
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const DomainError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a rational as \"p/q\" string or integer");
}

double real_of(const json& v, const std::string& where)
{
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return rational_of(v, where).get_d();
    fail(where, "expected a number");
}

Complex complex_of(const json& v, const std::string& where)
{
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2) fail(where, "expected [re, im]");
    return {real_of(v[0], where + "[0]"), real_of(v[1], where + "[1]")};
}

template <JetScalar T> T scalar_of(const json& v, const std::string& where)
{
    if constexpr (std::same_as<T, Rational>) return rational_of(v, where);
    else if constexpr (std::same_as<T, double>) return real_of(v, where);
    else return complex_of(v, where);
}

template <JetScalar T> Jet<T> jet_of(const json& coeffs, int order, const std::string& where)
{
    if (!coeffs.is_array()) fail(where + ".coeffs", "expected an array");
    if (static_cast<int>(coeffs.size()) > order + 1) fail(where + ".coeffs", "more than order + 1 coefficients");
    std::vector<T> c(static_cast<std::size_t>(order + 1), T(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        c[i] = scalar_of<T>(coeffs[i], where + ".coeffs[" + std::to_string(i) + "]");
    return Jet<T>(std::move(c));
}

int order_of(const json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long>() < 0 || j.get<long>() > 10000)
        fail(where, "expected an integer order in [0, 10000]");
    return j.get<int>();
}

template <JetScalar T> BiJet<T> bijet_of(const json& terms, int order, const std::string& where)
{
    if (!terms.is_array()) fail(where, "expected an array of [i, j, coef]");
    BiJet<T> b(order);
    for (std::size_t n = 0; n < terms.size(); ++n) {
        const std::string at = where + "[" + std::to_string(n) + "]";
        const json& t = terms[n];
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
            fail(at, "expected [i, j, coef]");
        const int i = t[0].get<int>(), k = t[1].get<int>();
        if (i < 0 || k < 0 || i + k > order) fail(at, "monomial outside total degree " + std::to_string(order));
        b.at(i, k) += scalar_of<T>(t[2], at + "[2]");
    }
    return b;
}

} // namespace

json parse_text(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(source + ": " + e.what());
    }
}

json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

ScalarKind parse_kind(const json& j, const std::string& where)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "rational") return ScalarKind::rational;
        if (s == "real") return ScalarKind::real;
        if (s == "complex") return ScalarKind::complex;
    }
    fail(where, "kind must be \"rational\", \"real\" or \"complex\"");
}

AnyJet parse_jet(const json& j, const std::string& where)
{
    check_keys(j, where, {"kind", "order", "coeffs"});
    const ScalarKind kind = parse_kind(need(j, "kind", where), where + ".kind");
    const int order = order_of(need(j, "order", where), where + ".order");
    const json& c = need(j, "coeffs", where);
    switch (kind) {
    case ScalarKind::rational: return jet_of<Rational>(c, order, where);
    case ScalarKind::real: return jet_of<double>(c, order, where);
    default: return jet_of<Complex>(c, order, where);
    }
}

json scalar_to_json(const Rational& v) { return to_string(v); }
json scalar_to_json(double v) { return v; }
json scalar_to_json(const Complex& v) { return json::array({v.real(), v.imag()}); }

AnyShear parse_shear(const json& j, int order)
{
    check_keys(j, "shear", {"base", "additive", "closed_form"});
    const json& base = need(j, "base", "shear");
    const AnyJet additive = parse_jet(need(j, "additive", "shear"), "shear.additive");
    const AnyJet base_jet = [&]() -> AnyJet {
        if (!base.is_string()) return parse_jet(base, "shear.base");
        try {
            return builtin_germ(base.get<std::string>(), order).germ.jet();
        } catch (const DomainError& e) {
            fail("shear.base", e.what());
        }
    }();
    std::optional<ShearClosedForm> closed;
    if (j.contains("closed_form")) {
        const json& name = j.at("closed_form");
        if (!name.is_string()) fail("shear.closed_form", "expected a builtin shear name");
        try {
            closed = builtin_shear(name.get<std::string>(), 2).closed_form;
        } catch (const DomainError& e) {
            fail("shear.closed_form", e.what());
        }
    }
    auto build = [&]<JetScalar T>(std::type_identity<T>) -> AnyShear {
        const Jet<T> b = jet_as<T>(base_jet, "shear.base"), g = jet_as<T>(additive, "shear.additive");
        const int n = std::min({order, b.order(), g.order()});
        Shear<T> s{Germ1<T>(b.truncated(n)), g.truncated(n), closed};
        return s;
    };
    if (std::holds_alternative<Jet<Complex>>(additive) || std::holds_alternative<Jet<Complex>>(base_jet))
        fail("shear", "shears are real: use the rational or real kind");
    if (std::holds_alternative<Jet<Rational>>(additive)) return build(std::type_identity<Rational>{});
    return build(std::type_identity<double>{});
}

AnyLinMap parse_matrix(const json& j)
{
    check_keys(j, "matrix", {"kind", "entries"});
    const ScalarKind kind = parse_kind(need(j, "kind", "matrix"), "matrix.kind");
    const json& e = need(j, "entries", "matrix");
    if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2 || !e[1].is_array() || e[1].size() != 2)
        fail("matrix.entries", "expected [[a, b], [c, d]]");
    auto build = [&]<JetScalar T>(std::type_identity<T>) {
        LinMap2<T> m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                m.m[r][c] = scalar_of<T>(e[r][c], "matrix.entries[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        return m;
    };
    if (kind == ScalarKind::rational) return build(std::type_identity<Rational>{});
    if (kind == ScalarKind::real) return build(std::type_identity<double>{});
    fail("matrix.kind", "linear maps are real: use the rational or real kind");
}

AnyPlanarMap parse_planar_map(const json& j)
{
    check_keys(j, "planar_map", {"kind", "order", "fx", "fy"});
    const ScalarKind kind = j.contains("kind") ? parse_kind(j.at("kind"), "planar_map.kind") : ScalarKind::rational;
    const int order = order_of(need(j, "order", "planar_map"), "planar_map.order");
    auto build = [&]<JetScalar T>(std::type_identity<T>) {
        return PlanarMap<T>(bijet_of<T>(need(j, "fx", "planar_map"), order, "planar_map.fx"),
                            bijet_of<T>(need(j, "fy", "planar_map"), order, "planar_map.fy"));
    };
    if (kind == ScalarKind::rational) return build(std::type_identity<Rational>{});
    if (kind == ScalarKind::real) return build(std::type_identity<double>{});
    fail("planar_map.kind", "planar maps are real: use the rational or real kind");
}

DenseMatrix<Rational> parse_dense_rational(const json& j, const std::string& where)
{
    if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
    DenseMatrix<Rational> out;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string at = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != j[0].size() || j[r].empty()) fail(at, "rows must be nonempty and of equal length");
        std::vector<Rational> row;
        for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(rational_of(j[r][c], at + "[" + std::to_string(c) + "]"));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace homog::io
