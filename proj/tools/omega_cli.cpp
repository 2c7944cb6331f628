#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "omega/cli.hpp"
#include "omega/scalar.hpp"

namespace {

std::optional<omega::Cx> parse_or_die(const std::string& text, const char* flag, bool& ok) {
    if (text.empty()) return std::nullopt;
    const auto v = omega::parse_complex(text);
    if (!v) {
        std::cerr << "error: bad complex literal for " << flag << ": '" << text << "'\n";
        ok = false;
        return std::nullopt;
    }
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Omega special functions: evaluation, continuation, symbolic reduction,\n"
                 "determinants and difference-equation solving."};
    app.require_subcommand(1);

    omega::cli::Request req;
    std::string s_str, s0_str, z_str, v_str;
    double tol = 0.0;

    auto add_common = [&](CLI::App* sub, bool needs_pot = true) {
        auto* pot = sub->add_option("--pot", req.potential,
                                    "potential text form, e.g. \"d=2;a1=0.5-0.25i\"");
        if (needs_pot) pot->required();
        auto* t = sub->add_option("--tol", tol, "target relative tolerance (default env OMEGA_TOL or 1e-10)");
        sub->add_option("--format", req.format, "output format: json|csv")->capture_default_str();
        sub->callback([&, t] {
            if (t->count() > 0) req.tol = tol;
        });
    };

    auto* eval = app.add_subcommand("eval", "evaluate Omega_k(s), continued across the plane");
    add_common(eval);
    eval->add_option("--k", req.k, "ray index (default 0)");
    eval->add_option("--s", s_str, "argument s (complex literal)");
    eval->add_option("--batch", req.batch_path, "file of s values, one re[,im] per line; emits CSV");

    auto* inc = app.add_subcommand("incomplete", "evaluate the incomplete function at (s, z)");
    add_common(inc);
    inc->add_option("--s", s_str, "argument s, Re s > 0")->required();
    inc->add_option("--z", z_str, "endpoint z != 0")->required();

    auto* res = app.add_subcommand("residues", "exp-series coefficients lambda_0..lambda_n");
    add_common(res);
    res->add_option("--n", req.n, "highest index")->required();

    auto* ml = app.add_subcommand("ml", "Mittag-Leffler route: principal parts plus entire tail");
    add_common(ml);
    ml->add_option("--k", req.k, "ray index (default 0)");
    ml->add_option("--s", s_str, "argument s")->required();
    ml->add_option("--n", req.n, "number of series terms (default adaptive)");

    auto* diff = app.add_subcommand("diff", "entire difference Omega_k(s) - Omega_l(s)");
    add_common(diff);
    diff->add_option("--k", req.k, "first ray index")->required();
    diff->add_option("--l", req.l, "second ray index")->required();
    diff->add_option("--s", s_str, "argument s")->required();

    auto* det = app.add_subcommand("det", "determinant of the shifted Omega matrix at s0");
    add_common(det);
    det->add_option("--s0", s0_str, "grid anchor s0 (columns at s0+1..s0+d)")->required();

    auto* solve = app.add_subcommand("solve", "solve the difference equation from d samples");
    add_common(solve);
    solve->add_option("--s0", s0_str, "grid anchor s0 (samples at s0+1..s0+d)")->required();
    solve->add_option("--v", v_str, "semicolon-separated sample values f(s0+1);..;f(s0+d)")->required();

    auto* reduce = app.add_subcommand("reduce", "reduce int_0^z t^s Q e^P dt to the Omega basis");
    add_common(reduce);
    reduce->add_option("--q", req.q_expr, "polynomial in t and T (T = t^s), e.g. \"t^3 - 2*t*T\"")
        ->required();

    auto* self = app.add_subcommand("selftest", "run the reduced invariant suite");
    add_common(self, /*needs_pot=*/false);

    CLI11_PARSE(app, argc, argv);

    req.command = app.get_subcommands().front()->get_name();

    bool ok = true;
    req.s = parse_or_die(s_str, "--s", ok);
    req.s0 = parse_or_die(s0_str, "--s0", ok);
    req.z = parse_or_die(z_str, "--z", ok);
    if (!v_str.empty()) {
        std::size_t pos = 0;
        while (pos <= v_str.size()) {
            std::size_t semi = v_str.find(';', pos);
            if (semi == std::string::npos) semi = v_str.size();
            const auto v = omega::parse_complex(v_str.substr(pos, semi - pos));
            if (!v) {
                std::cerr << "error: bad complex literal in --v\n";
                ok = false;
                break;
            }
            req.samples.push_back(*v);
            if (semi == v_str.size()) break;
            pos = semi + 1;
        }
    }
    if (!ok) return omega::cli::kInputError;

    const omega::cli::Response resp = omega::cli::run(req, std::cerr);
    std::cout << resp.text;
    return resp.exit_code;
}
