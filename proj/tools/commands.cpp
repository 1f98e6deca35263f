#include "commands.hpp"

#include "homog/builtins.hpp"
#include "homog/cartan.hpp"
#include "homog/involutions.hpp"
#include "homog/kernels.hpp"
#include "homog/linmaps.hpp"
#include "homog/prolongation.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace homog::cli {

using io::json;

namespace {

std::string num(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string join(std::initializer_list<std::string> parts)
{
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : ",") + p;
    return s;
}

bool is_file(const std::string& s) { return s.ends_with(".json") || std::filesystem::is_regular_file(s); }

std::vector<double> parse_list(const std::string& text, char sep, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw DomainError(what + ": cannot parse \"" + item + "\" as a number");
        }
    }
    return out;
}

Point2 parse_point(const std::string& text)
{
    const auto v = parse_list(text, ',', "--p0");
    if (v.size() != 2) throw DomainError("--p0: expected x,y");
    return {v[0], v[1]};
}

template <JetScalar T> double jet_max_abs(const Jet<T>& a)
{
    double m = 0.0;
    for (const T& v : a.coeffs()) m = std::max(m, magnitude(v));
    return m;
}

io::AnyJet load_germ_jet(const std::string& input, int order, std::string& label)
{
    if (is_file(input)) {
        label = input;
        return io::parse_jet(io::read_file(input), input);
    }
    label = input;
    return builtin_germ(input, order).germ.jet();
}

template <JetScalar T> json koenigs_doc(const Jet<T>& fj, int order)
{
    const Germ1<T> f(fj);
    const Germ1<T> eta = koenigs_linearize(f, order);
    const int n = std::min(eta.order(), f.order());
    const Jet<T> lhs = compose(eta.jet().truncated(n), f.truncated(n));
    const Jet<T> rhs = eta.jet().truncated(n) * f.multiplier();
    return json{{"multiplier", io::scalar_to_json(f.multiplier())},
                {"eta", io::jet_to_json(eta.jet())},
                {"functional_equation_residual", jet_max_abs(Jet<T>(lhs - rhs))}};
}

json shear_class_json(const ShearClass& c)
{
    json j = std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::same_as<K, HyperbolicShear>) return {{"type", "hyperbolic"}, {"lambda", k.lambda}};
            else if constexpr (std::same_as<K, ParabolicSolvable>)
                return {{"type", "parabolic_solvable"}, {"k", k.k}, {"ell", k.ell ? json(*k.ell) : json(nullptr)}};
            else if constexpr (std::same_as<K, ParabolicObstructed>)
                return {{"type", "parabolic_obstructed"}, {"k", k.k}, {"ell", k.ell}};
            else return {{"type", "trivial_base"}};
        },
        c.kind);
    json red = json::array();
    for (auto r : c.reductions) red.push_back(to_string(r));
    j["reductions"] = red;
    return j;
}

json reductions_json(const std::vector<Reduction>& rs)
{
    json a = json::array();
    for (auto r : rs) a.push_back(to_string(r));
    return a;
}

template <JetScalar T> json formal_json(const FormalCurveResult<T>& r)
{
    json j{{"solved", r.solved()}, {"reductions", reductions_json(r.reductions)}};
    if (r.curve) j["curve"] = io::jet_to_json(*r.curve);
    if (r.obstruction)
        j["obstruction"] = {{"ell", r.obstruction->ell}, {"coefficient", io::scalar_to_json(r.obstruction->coefficient)}};
    return j;
}

Output render_samples(json doc, const std::vector<NumericCurveResult>& rs, std::span<const double> xs)
{
    Output out;
    json samples = json::array();
    out.csv.push_back("x,f,terms_used,tail_estimate");
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& r = rs[i];
        samples.push_back({{"x", xs[i]},
                           {"value", r.value},
                           {"terms", r.terms},
                           {"tail_estimate", r.tail_estimate},
                           {"status", to_string(r.status)},
                           {"inverse_side", r.inverse_side},
                           {"closed_form_used", r.closed_form_used}});
        out.csv.push_back(join({num(xs[i]), num(r.value), std::to_string(r.terms), num(r.tail_estimate)}));
        if (r.status != SumStatus::converged) out.exit_code = 3;
    }
    doc["samples"] = samples;
    out.doc = std::move(doc);
    return out;
}

template <JetScalar T> Output shear_curve(const Shear<T>& s, const std::string& label, const RunConfig& cfg,
                                          const std::vector<double>& xs)
{
    json doc{{"command", "shear-curve"}, {"shear", label}, {"order", s.order()}};
    doc["class"] = shear_class_json(convergence_classifier(s));
    const auto formal = formal_invariant_curve(s, cfg.order);
    doc["formal"] = formal_json(formal);
    NumericCurveOptions opts;
    opts.tol = cfg.tol;
    opts.j_max = cfg.jmax;
    std::vector<NumericCurveResult> rs(xs.size());
    std::vector<double> nonzero;
    for (double x : xs)
        if (x != 0.0) nonzero.push_back(x);
    std::vector<Reduction> log;
    const Shear<T> work = detail::reduce_hyperbolic(s, log);
    if (work.base.is_identity()) throw DomainError("shear base is the identity: no orbit to sum");
    const auto batch = kernels::invariant_curve_batch(real_shear(work), nonzero, opts);
    for (std::size_t i = 0, k = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0) {
            rs[i].status = SumStatus::converged;
            continue;
        }
        rs[i] = batch[k++];
        rs[i].reductions.insert(rs[i].reductions.begin(), log.begin(), log.end());
    }
    Output out = render_samples(std::move(doc), rs, xs);
    if (!formal.solved()) out.exit_code = 3;
    return out;
}

GraphCurve builtin_curve(const std::string& name)
{
    if (name == "x2") return {"x^2", [](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; }};
    if (name == "x3")
        return {"x^3", [](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }, [](double x) { return 6 * x; }};
    if (name == "exp")
        return {"e^x", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
                [](double x) { return std::exp(x); }};
    if (name == "x4_3")
        return {"x^(4/3)", [](double x) { return std::cbrt(x) * x; }, [](double x) { return 4.0 / 3.0 * std::cbrt(x); },
                [](double x) { return 4.0 / 9.0 / std::cbrt(x * x); }};
    throw DomainError("unknown curve \"" + name + "\" (x2, x3, exp, x4_3)");
}

PlanarDiffeo builtin_diffeo(const std::string& name, int order)
{
    if (name == "identity")
        return {name, [](double x, double y) { return Point2{x, y}; },
                [](double, double) { return Mat2<double>{{{1, 0}, {0, 1}}}; }};
    if (name == "shear_up")
        return {name, [](double x, double y) { return Point2{x, y + x * x}; },
                [](double x, double) { return Mat2<double>{{{1, 0}, {2 * x, 1}}}; },
                [](double x, double y) { return Point2{x, y - x * x}; },
                [](double x, double) { return Mat2<double>{{{1, 0}, {-2 * x, 1}}}; }};
    if (name == "skew")
        return {name, [](double x, double y) { return Point2{x + y, y}; },
                [](double, double) { return Mat2<double>{{{1, 1}, {0, 1}}}; }};
    if (name == "diag21")
        return {name, [](double x, double y) { return Point2{2 * x, y}; },
                [](double, double) { return Mat2<double>{{{2, 0}, {0, 1}}}; }};
    if (is_file(name)) {
        return std::visit([&](const auto& m) { return to_diffeo(m.truncated(std::min(order, m.order())), name); },
                          io::parse_planar_map(io::read_file(name)));
    }
    throw DomainError("unknown map \"" + name + "\" (identity, shear_up, skew, diag21 or a PlanarMap JSON file)");
}

// phi^{-1} o L o phi for phi = (x + y^2, y + x^2 / 2): an involution conjugate to L.
PlanarMap<Rational> conjugated_involution(const LinMap2<Rational>& l, int order)
{
    const PlanarMap<Rational> phi(BiJet<Rational>::x(order) + BiJet<Rational>::monomial(Rational(1), 0, 2, order),
                                  BiJet<Rational>::y(order) + BiJet<Rational>::monomial(Rational(1, 2), 2, 0, order));
    return compose(inverse(phi), apply(l, phi));
}

PlanarMap<Rational> builtin_involution(const std::string& name, int order)
{
    if (name == "reflection") return conjugated_involution(LinMap2<Rational>{{{{1, 0}, {0, -1}}}}, order);
    if (name == "point_symmetry") return conjugated_involution(LinMap2<Rational>{{{{-1, 0}, {0, -1}}}}, order);
    if (name == "sheared_point_symmetry")
        return PlanarMap<Rational>(Rational(-1) * BiJet<Rational>::x(order),
                                   Rational(-1) * BiJet<Rational>::y(order) + BiJet<Rational>::monomial(Rational(1), 2, 0, order));
    throw DomainError("unknown involution \"" + name + "\" (reflection, point_symmetry, sheared_point_symmetry)");
}

LinMap2<Rational> builtin_matrix(const std::string& name)
{
    if (name == "resonant") return {{{{Rational(1, 2), 0}, {0, Rational(1, 8)}}}};
    if (name == "nonresonant") return {{{{Rational(1, 2), 0}, {0, Rational(1, 3)}}}};
    if (name == "weak") return {{{{Rational(1, 2), 0}, {0, Rational(1, 5)}}}};
    if (name == "jordan") return {{{{Rational(1, 2), 1}, {0, Rational(1, 2)}}}};
    throw DomainError("unknown matrix \"" + name + "\" (resonant, nonresonant, weak, jordan)");
}

template <JetScalar T> json classification_json(const LinClassification<T>& c)
{
    json j{{"kind", to_string(c.kind)}, {"eigenvalues", json::array({c.eig[0], c.eig[1]})}, {"scalar", c.scalar}};
    if (c.kind == LinKind::complex_pair) j["eigenvalues_imag"] = json::array({c.eig_imag[0], c.eig_imag[1]});
    if (c.exact) j["exact_eigenvalues"] = json::array({io::scalar_to_json((*c.exact)[0]), io::scalar_to_json((*c.exact)[1])});
    if (c.exact_basis) j["basis"] = io::matrix_to_json(*c.exact_basis)["entries"];
    else j["basis"] = io::matrix_to_json(c.basis)["entries"];
    return j;
}

template <JetScalar T> Output linmap(const LinMap2<T>& a, const std::string& label, const RunConfig& cfg)
{
    Output out;
    const auto c = classify(a);
    json doc{{"command", "linmap"}, {"matrix", label}, {"entries", io::matrix_to_json(a.m)["entries"]}};
    doc["classification"] = classification_json(c);
    if (c.kind == LinKind::diagonal_real && c.exact) {
        const bool diag = is_zero(a.m[0][1]) && is_zero(a.m[1][0]);
        const T l1 = diag ? a.m[0][0] : (*c.exact)[0];
        const T l2 = diag ? a.m[1][1] : (*c.exact)[1];
        doc["pair"] = json::array({io::scalar_to_json(l1), io::scalar_to_json(l2)});
        const auto sol = diagonal_invariant_solutions(l1, l2, cfg.order);
        json exps = json::array();
        for (int m : sol.exponents) exps.push_back(m);
        doc["resonance"] = {{"exponents", exps},
                            {"normalized", json::array({io::scalar_to_json(sol.normalized.l1),
                                                        io::scalar_to_json(sol.normalized.l2)})},
                            {"reductions", reductions_json(sol.normalized.reductions)}};
        const T& n1 = sol.normalized.l1;
        const T& n2 = sol.normalized.l2;
        if (n1 > 0 && n1 < 1 && n2 > 0) {
            const auto rd = rigidity_degree(n1, n2);
            doc["rigidity"] = {{"k_min", rd.k_min}, {"degree_bound", rd.degree_bound}};
        }
        if constexpr (std::same_as<T, Rational>) {
            if (sol.exponents.empty() && n1 > 0 && n1 < 1 && n2 > 0 && n2 < 1) {
                try {
                    const auto w = weak_regularity_example(n1, n2);
                    const auto xs = parse_grid(cfg.grid, "-1:1:21");
                    const double d1 = n1.get_d(), d2 = n2.get_d();
                    json rows = json::array();
                    out.csv.push_back("x,f,residual");
                    double worst = 0.0;
                    for (double x : xs) {
                        const double r = std::abs(w.sampler(d1 * x) - d2 * w.sampler(x));
                        worst = std::max(worst, r);
                        rows.push_back({{"x", x}, {"f", w.sampler(x)}, {"residual", r}});
                        out.csv.push_back(join({num(x), num(w.sampler(x)), num(r)}));
                    }
                    doc["weak_regularity"] = {{"alpha", w.alpha},
                                              {"smoothness_class", w.smoothness_class},
                                              {"max_residual", worst},
                                              {"table", rows}};
                } catch (const DomainError& e) {
                    doc["weak_regularity"] = {{"skipped", e.what()}};
                }
            }
        }
    }
    out.doc = std::move(doc);
    return out;
}

template <JetScalar T> Output involution(const PlanarMap<T>& psi, const std::string& label)
{
    Output out;
    const auto check = is_involution_to_order(psi);
    json doc{{"command", "involution"}, {"map", label}, {"order", psi.order()}, {"involution", check.holds},
             {"involution_residual", check.residual}};
    if (!check.holds) {
        out.doc = std::move(doc);
        out.exit_code = 2;
        return out;
    }
    doc["class"] = to_string(classify_involution(psi));
    const auto lin = linearize_involution(psi);
    doc["linear_part"] = io::matrix_to_json(lin.linear_part.m)["entries"];
    doc["conjugator"] = io::planar_map_to_json(lin.conjugator);
    doc["conjugation_residual"] = lin.residual;
    out.doc = std::move(doc);
    return out;
}

json prolonged_json(const ProlongedPoint& p) { return json::array({p.x, p.y, p.xi}); }

// Bernoulli shear (x/(1-x), x^2) formal jet and two-sided samples.
Output demo_bernoulli(const RunConfig& cfg)
{
    RunConfig c = cfg;
    if (c.grid.empty()) c.grid = "-0.05:0.05:11";
    Output out = shear_curve(builtin_shear("bernoulli", cfg.order), "bernoulli", c, parse_grid(c.grid, ""));
    out.doc["command"] = "demo bernoulli";
    return out;
}

Output demo_exp_curve(const RunConfig&)
{
    Output out;
    const MapFamily fam = builtin_family("affine_exp");
    std::vector<Point2> grid;
    for (double x : parse_grid("-1:1:5", ""))
        for (double y : parse_grid("-1:1:5", "")) grid.push_back({x, y});
    const auto gen = infinitesimal_generator(fam, halving_scales(), grid, true);
    double gen_dev = 0.0;
    for (const auto& s : gen.samples)
        gen_dev = std::max({gen_dev, std::abs(s.value[0] - 1.0), std::abs(s.value[1] - s.p[1])});
    FlowOptions fo;
    fo.tol = 1e-10;
    const GraphCurve exp_curve{"e^x", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }, {}};
    const FlowField exact{"(1, y)", [](double, double y) { return Point2{1.0, y}; }};
    const auto ts = parse_grid("0:1:11", "");
    const auto tr = integrate_flow(exact, {0, 1}, 1.0, fo);
    out.csv.push_back("t,x,y,curve_residual");
    json traj = json::array();
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const double r = std::abs(tr.points[i][1] - std::exp(tr.points[i][0]));
        traj.push_back({tr.t[i], tr.points[i][0], tr.points[i][1], r});
        out.csv.push_back(join({num(tr.t[i]), num(tr.points[i][0]), num(tr.points[i][1]), num(r)}));
    }
    const std::vector<double> xs = parse_grid("-2:2:41", "");
    out.doc = {{"command", "demo exp-curve"},
               {"family", fam.name},
               {"generator_max_deviation_from_(1,y)", gen_dev},
               {"generator_max_error_estimate", gen.max_error},
               {"flow_vs_curve_exact_field", flow_matches_curve(exact, exp_curve, {0, 1}, ts, fo)},
               {"flow_vs_curve_extracted_field", flow_matches_curve(gen.field, exp_curve, {0, 1}, ts, fo)},
               {"invariance_residual_t0.3", invariance_residual(exp_curve, fam.at(0.3), xs)},
               {"trajectory", traj}};
    return out;
}

Output demo_flattening(const RunConfig&)
{
    Output out;
    const DenseMatrix<Rational> J{{Rational(1), 0}, {0, 0}, {0, Rational(1)}, {0, 0}};
    const auto f = flattening_matrix(J);
    auto mat = [](const DenseMatrix<Rational>& m) {
        json a = json::array();
        for (const auto& r : m) {
            json row = json::array();
            for (const auto& v : r) row.push_back(to_string(v));
            a.push_back(row);
        }
        return a;
    };
    out.doc = {{"command", "demo flattening"}, {"J", mat(J)}, {"ell", f.ell}, {"A", mat(f.a)},
               {"combination", mat(f.combination)}, {"det", to_string(f.det)}};
    return out;
}

Output demo_prolong_x43(const RunConfig& cfg)
{
    Output out;
    const int n = std::max(cfg.order, 4);
    std::vector<Rational> xc(n + 1, Rational(0)), yc(n + 1, Rational(0));
    xc[3] = 1;
    yc[4] = 1;
    const auto pj = prolong_parametric(Jet<Rational>(xc), Jet<Rational>(yc));
    out.doc = {{"command", "demo prolong-x43"},
               {"X", io::jet_to_json(pj.x)},
               {"Y", io::jet_to_json(pj.y)},
               {"xi", io::jet_to_json(pj.xi)}};
    return out;
}

} // namespace

std::vector<double> parse_grid(const std::string& text, const std::string& fallback)
{
    const std::string g = text.empty() ? fallback : text;
    if (g.empty()) throw DomainError("--grid: empty grid");
    if (g.find(':') != std::string::npos) {
        const auto v = parse_list(g, ':', "--grid");
        if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2]) || v[2] > 1e7)
            throw DomainError("--grid: expected lo:hi:n with integer 1 <= n <= 1e7");
        const int n = static_cast<int>(v[2]);
        std::vector<double> out;
        for (int i = 0; i < n; ++i) out.push_back(n == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (n - 1));
        return out;
    }
    return parse_list(g, ',', "--grid");
}

Output cmd_koenigs(const RunConfig& cfg)
{
    std::string label;
    const auto jet = load_germ_jet(cfg.input.empty() ? "mobius_half" : cfg.input, cfg.order, label);
    Output out;
    out.doc = {{"command", "koenigs"}, {"germ", label}};
    out.doc.update(std::visit([&](const auto& j) { return koenigs_doc(j, cfg.order); }, jet));
    out.csv.push_back("n,coefficient");
    const auto& coeffs = out.doc["eta"]["coeffs"];
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& v = coeffs[i];
        out.csv.push_back(std::to_string(i) + "," + (v.is_string() ? v.get<std::string>() : v.dump()));
    }
    return out;
}

Output cmd_fatou(const RunConfig& cfg)
{
    std::string label;
    const auto jet = load_germ_jet(cfg.input.empty() ? "mobius_parabolic" : cfg.input, cfg.order, label);
    return std::visit(
        [&]<JetScalar T>(const Jet<T>& j) -> Output {
            Output out;
            const auto p = parabolic_normalize(Germ1<T>(j), cfg.order);
            const auto hp = to_halfplane(p, cfg.order);
            json doc{{"command", "fatou"}, {"germ", label}, {"k", p.k}, {"a", io::scalar_to_json(p.a)},
                     {"sign_flipped", p.sign_flipped}, {"b", io::scalar_to_json(hp.b)},
                     {"tail", io::jet_to_json(hp.tail.coeffs)}, {"tail_scale", io::scalar_to_json(hp.tail.scale)}};
            const auto nh = numeric(hp);
            FatouOptions fo;
            fo.n_max = cfg.jmax;
            fo.keep_increments = false;
            const auto ws = parse_grid(cfg.grid, "2:10:5");
            json sig = json::array();
            for (double w : ws) {
                const auto r = fatou_coordinate(nh, {w, 0.0}, fo);
                sig.push_back({{"w", w}, {"sigma", io::scalar_to_json(r.sigma)}, {"steps", r.steps},
                               {"status", r.status == FatouStatus::converged ? "converged"
                                          : r.status == FatouStatus::stalled ? "stalled"
                                                                             : "budget_exhausted"}});
                if (r.status != FatouStatus::converged) out.exit_code = 3;
            }
            doc["fatou"] = sig;
            const long J = std::min(cfg.jmax, 1'000'000L);
            const auto decay = orbit_decay_check(p, {cfg.z, 0.0}, J);
            doc["orbit_decay"] = {{"z", cfg.z}, {"J", J}, {"holds", decay.holds}, {"worst_ratio", decay.worst_ratio}};
            out.csv.push_back("j,value,bound");
            for (const auto& s : decay.samples) out.csv.push_back(join({std::to_string(s.j), num(s.value), num(s.bound)}));
            out.doc = std::move(doc);
            return out;
        },
        jet);
}

Output cmd_shear_curve(const RunConfig& cfg)
{
    const std::string input = cfg.input.empty() ? "bernoulli" : cfg.input;
    const auto xs = parse_grid(cfg.grid, "-0.05:0.05:11");
    if (is_file(input))
        return std::visit([&](const auto& s) { return shear_curve(s, input, cfg, xs); },
                          io::parse_shear(io::read_file(input), cfg.order));
    return shear_curve(builtin_shear(input, cfg.order), input, cfg, xs);
}

Output cmd_linmap(const RunConfig& cfg)
{
    const std::string input = cfg.input.empty() ? "resonant" : cfg.input;
    if (is_file(input))
        return std::visit([&](const auto& a) { return linmap(a, input, cfg); }, io::parse_matrix(io::read_file(input)));
    return linmap(builtin_matrix(input), input, cfg);
}

Output cmd_involution(const RunConfig& cfg)
{
    const std::string input = cfg.input.empty() ? "reflection" : cfg.input;
    const int order = std::min(cfg.order, 10);
    if (is_file(input))
        return std::visit([&](const auto& m) { return involution(m, input); }, io::parse_planar_map(io::read_file(input)));
    return involution(builtin_involution(input, order), input);
}

Output cmd_prolong(const RunConfig& cfg)
{
    Output out;
    if (!cfg.flatten.empty()) {
        const auto J = io::parse_dense_rational(io::read_file(cfg.flatten), cfg.flatten);
        const auto f = flattening_matrix(J);
        json a = json::array(), comb = json::array(), pt = json::array(), pb = json::array();
        for (const auto& r : f.a) {
            json row = json::array();
            for (const auto& v : r) row.push_back(to_string(v));
            a.push_back(row);
        }
        for (const auto& r : f.combination) {
            json row = json::array();
            for (const auto& v : r) row.push_back(to_string(v));
            comb.push_back(row);
        }
        for (int i : f.perm_top) pt.push_back(i);
        for (int i : f.perm_bottom) pb.push_back(i);
        out.doc = {{"command", "prolong --flatten"}, {"ell", f.ell}, {"perm_top", pt}, {"perm_bottom", pb},
                   {"A", a}, {"combination", comb}, {"det", to_string(f.det)}};
        return out;
    }
    const GraphCurve c = builtin_curve(cfg.curve);
    const PlanarDiffeo psi = builtin_diffeo(cfg.map, cfg.order);
    const auto xs = parse_grid(cfg.grid, "-1:1:21");
    const auto sq = prolong_curve_under_map(c, psi, xs);
    json rows = json::array();
    out.csv.push_back("x,y,xi");
    for (std::size_t i = 0; i < sq.x.size(); ++i) {
        rows.push_back({{"x", sq.x[i]}, {"lifted", prolonged_json(sq.lifted[i])}, {"image", prolonged_json(sq.image[i])}});
        const auto& p = sq.lifted[i];
        out.csv.push_back(join({num(p.x), num(p.y), num(p.xi)}));
    }
    out.doc = {{"command", "prolong"}, {"curve", c.name}, {"map", psi.name}, {"max_residual", sq.max_residual},
               {"samples", rows}};
    return out;
}

Output cmd_generator(const RunConfig& cfg)
{
    Output out;
    const MapFamily fam = builtin_family(cfg.input.empty() ? "affine_exp" : cfg.input);
    const auto axis = parse_grid(cfg.grid, "-1:1:5");
    std::vector<Point2> grid;
    for (double x : axis)
        for (double y : axis) grid.push_back({x, y});
    const auto gen = infinitesimal_generator(fam, halving_scales(), grid, true);
    json samples = json::array();
    for (const auto& s : gen.samples)
        samples.push_back({{"p", json::array({s.p[0], s.p[1]})}, {"value", json::array({s.value[0], s.value[1]})},
                           {"error", s.error}});
    FlowOptions fo;
    fo.tol = std::max(cfg.tol, 1e-13);
    const Point2 p0 = parse_point(cfg.p0);
    const auto tr = integrate_flow(gen.field, p0, cfg.t, fo);
    json traj = json::array();
    out.csv.push_back("t,x,y");
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        traj.push_back(json::array({tr.t[i], tr.points[i][0], tr.points[i][1]}));
        out.csv.push_back(join({num(tr.t[i]), num(tr.points[i][0]), num(tr.points[i][1])}));
    }
    const Point2 direct = fam.map(std::min(cfg.t, fam.t_max), p0[0], p0[1]);
    out.doc = {{"command", "generator"},
               {"family", fam.name},
               {"scales", gen.t_seq},
               {"max_error", gen.max_error},
               {"samples", samples},
               {"trajectory", traj},
               {"flow_steps", tr.steps},
               {"flow_error_estimate", tr.error_estimate}};
    if (cfg.t >= 0 && cfg.t <= fam.t_max)
        out.doc["round_trip_deviation"] = std::max(std::abs(tr.end()[0] - direct[0]), std::abs(tr.end()[1] - direct[1]));
    return out;
}

std::vector<std::string> demo_names()
{
    return {"bernoulli", "exp-curve", "mobius-half", "parabolic", "resonance", "weak-regularity", "involution",
            "prolong-x43", "flattening"};
}

Output cmd_demo(const RunConfig& cfg)
{
    const std::string& name = cfg.input;
    RunConfig c = cfg;
    Output out;
    if (name == "bernoulli") return demo_bernoulli(cfg);
    if (name == "exp-curve") return demo_exp_curve(cfg);
    if (name == "flattening") return demo_flattening(cfg);
    if (name == "prolong-x43") return demo_prolong_x43(cfg);
    if (name == "mobius-half") {
        c.input = "mobius_half";
        out = cmd_koenigs(c);
    } else if (name == "parabolic") {
        c.input = "mobius_parabolic";
        out = cmd_fatou(c);
    } else if (name == "resonance") {
        c.input = "resonant";
        out = cmd_linmap(c);
    } else if (name == "weak-regularity") {
        c.input = "weak";
        out = cmd_linmap(c);
    } else if (name == "involution") {
        c.input = "reflection";
        out = cmd_involution(c);
    } else {
        std::string known;
        for (const auto& n : demo_names()) known += (known.empty() ? "" : ", ") + n;
        throw DomainError("unknown demo \"" + name + "\" (" + known + ")");
    }
    out.doc["command"] = "demo " + name;
    return out;
}

Output run(const RunConfig& cfg)
{
    const std::string& s = cfg.subcommand;
    if (s == "koenigs") return cmd_koenigs(cfg);
    if (s == "fatou") return cmd_fatou(cfg);
    if (s == "shear-curve") return cmd_shear_curve(cfg);
    if (s == "linmap") return cmd_linmap(cfg);
    if (s == "involution") return cmd_involution(cfg);
    if (s == "prolong") return cmd_prolong(cfg);
    if (s == "generator") return cmd_generator(cfg);
    if (s == "demo") return cmd_demo(cfg);
    throw DomainError("unknown subcommand " + s);
}

std::string render(const Output& out, const std::string& format)
{
    if (format == "json") return out.doc.dump(2) + "\n";
    if (format != "csv") throw DomainError("--format must be json or csv");
    if (out.csv.empty()) throw DomainError("this command has no CSV form; use --format json");
    std::string s;
    for (const auto& line : out.csv) s += line + "\n";
    return s;
}

} // namespace homog::cli
