#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using homog::cli::RunConfig;

namespace {

void common_flags(CLI::App* sub, RunConfig& cfg, const std::string& grid_help)
{
    sub->add_option("--order", cfg.order, "truncation order")->check(CLI::Range(1, 400))->capture_default_str();
    sub->add_option("--tol", cfg.tol, "numeric tolerance")->check(CLI::Range(1e-16, 1.0))->capture_default_str();
    sub->add_option("--jmax", cfg.jmax, "orbit / iteration budget")->check(CLI::Range(1L, 1'000'000'000L))->capture_default_str();
    sub->add_option("--grid", cfg.grid, grid_help + " (lo:hi:n or a,b,c)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "output path (default stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Jets, germs, invariant curves and homogeneity tools"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* k = app.add_subcommand("koenigs", "Koenigs coordinate of a hyperbolic germ. CSV: n,coefficient");
    k->add_option("input", cfg.input, "builtin germ or jet JSON file (default mobius_half)");
    common_flags(k, cfg, "unused");

    auto* f = app.add_subcommand("fatou", "Parabolic normal form, half-plane model, Fatou coordinate. CSV: j,value,bound");
    f->add_option("input", cfg.input, "builtin germ or jet JSON file (default mobius_parabolic)");
    f->add_option("--z", cfg.z, "orbit-decay base point")->capture_default_str();
    common_flags(f, cfg, "half-plane base points w");

    auto* s = app.add_subcommand("shear-curve", "Formal and numeric invariant curve of a shear. CSV: x,f,terms_used,tail_estimate");
    s->add_option("input", cfg.input, "builtin shear or shear JSON file (default bernoulli)");
    common_flags(s, cfg, "sample points x");

    auto* l = app.add_subcommand("linmap", "Classification, resonance, rigidity of a 2x2 map. CSV: x,f,residual");
    l->add_option("input", cfg.input, "builtin matrix or matrix JSON file (default resonant)");
    common_flags(l, cfg, "weak-regularity residual grid");

    auto* i = app.add_subcommand("involution", "Detect, classify and linearize a planar involution");
    i->add_option("input", cfg.input, "builtin involution or PlanarMap JSON file (default reflection)");
    common_flags(i, cfg, "unused");

    auto* p = app.add_subcommand("prolong", "Prolongation commuting square or flattening matrix. CSV: x,y,xi");
    p->add_option("--curve", cfg.curve, "x2, x3, exp, x4_3")->capture_default_str();
    p->add_option("--map", cfg.map, "identity, shear_up, skew, diag21 or PlanarMap JSON file")->capture_default_str();
    p->add_option("--flatten", cfg.flatten, "JSON n x m rational matrix: compute the flattening matrix instead");
    common_flags(p, cfg, "sample points x");

    auto* g = app.add_subcommand("generator", "Infinitesimal generator of a map family and its flow. CSV: t,x,y");
    g->add_option("input", cfg.input, "affine_exp, translate, contract, contract_exp (default affine_exp)");
    g->add_option("--p0", cfg.p0, "flow start x,y")->capture_default_str();
    g->add_option("--t", cfg.t, "flow time")->capture_default_str();
    common_flags(g, cfg, "generator grid axis");

    auto* d = app.add_subcommand("demo", "Reproduce a worked example");
    d->add_option("name", cfg.input, "bernoulli, exp-curve, mobius-half, parabolic, resonance, weak-regularity, "
                                     "involution, prolong-x43, flattening")
        ->required();
    common_flags(d, cfg, "sample points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        const auto out = homog::cli::run(cfg);
        const std::string text = homog::cli::render(out, cfg.format);
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) throw homog::DomainError("cannot write " + cfg.out);
            file << text;
        }
        return out.exit_code;
    } catch (const homog::ConvergenceError& e) {
        std::cerr << "error (non-convergence): " << e.what() << "\n";
        return 3;
    } catch (const homog::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
