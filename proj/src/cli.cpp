#include "omega/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "omega/basis.hpp"
#include "omega/evaluator.hpp"
#include "omega/grid.hpp"
#include "omega/reduction.hpp"

namespace omega::cli {

using nlohmann::json;

namespace {

json to_json(Cx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json spoly_json(const SPoly& p) {
    json arr = json::array();
    for (const Cx& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

json reduction_json(const PeriodReduction& red) {
    json a = json::array();
    for (const auto& [key, p] : red.boundary.terms())
        a.push_back(json{{"i", key.first}, {"m", key.second}, {"spoly", spoly_json(p)}});
    json c = json::array();
    for (const auto& p : red.c) c.push_back(spoly_json(p));
    return json{{"A", a}, {"c", c}, {"sigma_shift", red.sigma_shift}};
}

double env_tol() {
    if (const char* v = std::getenv("OMEGA_TOL")) {
        char* end = nullptr;
        const double t = std::strtod(v, &end);
        if (end && *end == '\0' && t > 0.0 && t < 1.0) return t;
    }
    return 1e-10;
}

struct Outcome {
    json body;
    int exit_code = kOk;
    std::vector<Cx> values;
    double achieved = 0.0;
    bool tolerance_ok = true;
    std::vector<PoleInfo> poles;
    std::vector<std::string> warnings;
};

void absorb(Outcome& out, const EvalResult& e) {
    if (e.is_pole()) {
        out.poles.push_back(*e.pole);
        out.exit_code = kPoleAtPoint;
        return;
    }
    out.values.push_back(e.value);
    out.achieved = std::max(out.achieved, e.achieved_error);
    out.tolerance_ok = out.tolerance_ok && e.converged;
}

Cx require(const std::optional<Cx>& v, const char* flag) {
    if (!v) throw std::invalid_argument(std::string("missing required argument ") + flag);
    return *v;
}

std::string csv_row(const GridPointResult& r) {
    // s_re, s_im, value_re, value_im, achieved_error, pole, residue_re, residue_im, error
    std::array<std::string, 9> f;
    f[0] = format_double(r.s.real());
    f[1] = format_double(r.s.imag());
    if (r.ok && !r.pole) {
        f[2] = format_double(r.value.real());
        f[3] = format_double(r.value.imag());
        f[4] = format_double(r.achieved_error);
        f[5] = "0";
        if (!r.converged) f[8] = "tolerance_unmet";
    } else if (r.ok && r.pole) {
        f[5] = "1";
        f[6] = format_double(r.pole->residue.real());
        f[7] = format_double(r.pole->residue.imag());
    } else {
        f[8] = r.message;
    }
    std::string row = f[0];
    for (std::size_t i = 1; i < f.size(); ++i) {
        row += ',';
        row += f[i];
    }
    return row;
}

constexpr const char* kCsvHeader =
    "s_re,s_im,value_re,value_im,achieved_error,pole,residue_re,residue_im,error";

Response render_batch(const Request& req, const OmegaEvaluator& ev) {
    std::ifstream in(*req.batch_path);
    if (!in) throw std::invalid_argument("cannot open batch file " + *req.batch_path);

    std::vector<Cx> points;
    std::vector<std::string> bad_lines; // rows that failed to parse, kept in order
    std::vector<int> slot;              // index into points, or -1 for a parse failure
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
        std::size_t begin = 0;
        while (begin < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[begin]))) ++begin;
        trimmed.erase(0, begin);
        if (trimmed.empty()) continue;
        double re = 0.0, im = 0.0;
        const std::size_t comma = trimmed.find(',');
        bool ok = true;
        try {
            re = std::stod(trimmed.substr(0, comma));
            if (comma != std::string::npos) im = std::stod(trimmed.substr(comma + 1));
        } catch (...) {
            ok = false;
        }
        if (ok) {
            slot.push_back(static_cast<int>(points.size()));
            points.emplace_back(re, im);
        } else {
            slot.push_back(-1);
            bad_lines.push_back(trimmed);
        }
    }

    const auto results = eval_grid_parallel(ev, req.k, points);

    std::ostringstream os;
    if (!slot.empty()) os << kCsvHeader << '\n';
    std::size_t bad = 0;
    std::size_t succeeded = 0;
    for (int idx : slot) {
        if (idx < 0) {
            os << ",,,,,,,," << "parse_error: " << bad_lines[bad++] << '\n';
            continue;
        }
        const auto& r = results[static_cast<std::size_t>(idx)];
        os << csv_row(r) << '\n';
        if (r.ok) ++succeeded;
    }
    Response resp;
    resp.text = os.str();
    resp.exit_code = (slot.empty() || succeeded > 0) ? kOk : kToleranceUnmet;
    return resp;
}

} // namespace

int selftest(std::ostream& log); // defined in selftest.cpp

Response run(const Request& req, std::ostream& diag) {
    Outcome out;
    out.body["command"] = req.command;
    out.body["status"] = "ok";
    const double tol = req.tol.value_or(env_tol());
    out.body["tolerance"] = tol;

    try {
        if (req.command == "selftest") {
            const int failures = selftest(diag);
            out.body["selftest_failures"] = failures;
            if (failures > 0) {
                out.body["status"] = "selftest_failed";
                return Response{1, out.body.dump() + "\n"};
            }
            return Response{kOk, out.body.dump() + "\n"};
        }

        if (req.format != "json" && req.format != "csv")
            throw std::invalid_argument("unknown output format '" + req.format + "'");

        const Potential pot = Potential::parse(req.potential);
        out.body["potential"] = pot.to_string();
        QuadConfig cfg;
        cfg.tol = tol;
        const OmegaEvaluator ev(pot, cfg);

        if (req.batch_path) {
            if (req.command != "eval")
                throw std::invalid_argument("--batch is only supported by the eval command");
            return render_batch(req, ev);
        }

        if (req.command == "eval") {
            absorb(out, ev.omega(req.k, require(req.s, "--s")));
        } else if (req.command == "incomplete") {
            absorb(out, ev.incomplete(require(req.s, "--s"), require(req.z, "--z")));
        } else if (req.command == "residues") {
            if (req.n < 0) throw std::invalid_argument("residues: requires --n >= 0");
            auto lam = ev.lambdas(static_cast<std::size_t>(req.n) + 1);
            for (int i = 0; i <= req.n; ++i) out.values.push_back((*lam)[static_cast<std::size_t>(i)]);
        } else if (req.command == "ml") {
            absorb(out, ev.mittag_leffler(req.k, require(req.s, "--s"), req.n));
        } else if (req.command == "diff") {
            absorb(out, ev.omega_diff(req.k, req.l, require(req.s, "--s")));
        } else if (req.command == "det") {
            const DetReport rep = delta(ev, require(req.s0, "--s0"));
            out.values.push_back(rep.value);
            json det;
            det["delta"] = to_json(rep.value);
            det["closed_form_monomial"] =
                rep.closed_form_monomial ? to_json(*rep.closed_form_monomial) : json(nullptr);
            det["reference_formula"] =
                rep.reference_formula_value ? to_json(*rep.reference_formula_value) : json(nullptr);
            out.body["det"] = det;
            if (rep.closed_form_monomial && rep.reference_formula_value) {
                const double diff_rel = std::abs(*rep.reference_formula_value - rep.value) /
                                        std::max(std::abs(rep.value), 1e-300);
                if (diff_rel > 1e-6)
                    out.warnings.push_back(
                        "reference closed-form constant disagrees with the computed determinant "
                        "(factor of modulus d^{d/2}); the monomial closed form matches the "
                        "quadrature oracle");
            }
        } else if (req.command == "solve") {
            const SolveReport rep = solve_samples(ev, require(req.s0, "--s0"), req.samples);
            out.values = rep.spec.c;
            json sv;
            sv["c"] = json::array();
            for (const Cx& c : rep.spec.c) sv["c"].push_back(to_json(c));
            sv["scale"] = to_json(rep.spec.scale);
            sv["residual"] = rep.residual;
            sv["condition"] = rep.condition;
            out.body["solve"] = sv;
            if (rep.ill_conditioned)
                out.warnings.push_back("sample system condition estimate exceeds 1e8");
        } else if (req.command == "reduce") {
            if (req.q_expr.empty()) throw std::invalid_argument("reduce: requires --q <expression>");
            const BivarPoly q = parse_q_expression(req.q_expr);
            std::vector<PeriodReduction> reds;
            if (q.max_y_power() <= 0) {
                reds.push_back(reduce_tpoly(pot, q.t_slice(0)));
            } else {
                reds = reduce_mixed(pot, q);
            }
            json arr = json::array();
            for (const auto& red : reds) arr.push_back(reduction_json(red));
            out.body["reductions"] = arr;
        } else {
            throw std::invalid_argument("unknown command '" + req.command + "'");
        }
    } catch (const PoleProximityError& ex) {
        out.body["status"] = "pole";
        out.body["error"] = ex.what();
        out.body["poles"] = json::array({json{{"n", ex.n}}});
        diag << "error: " << ex.what() << '\n';
        return Response{kPoleAtPoint, out.body.dump() + "\n"};
    } catch (const std::invalid_argument& ex) {
        out.body["status"] = "input_error";
        out.body["error"] = ex.what();
        diag << "error: " << ex.what() << '\n';
        return Response{kInputError, out.body.dump() + "\n"};
    } catch (const std::exception& ex) {
        out.body["status"] = "error";
        out.body["error"] = ex.what();
        diag << "error: " << ex.what() << '\n';
        return Response{kInputError, out.body.dump() + "\n"};
    }

    json values = json::array();
    for (const Cx& v : out.values) values.push_back(to_json(v));
    out.body["values"] = values;
    out.body["achieved_error"] = out.achieved;
    json poles = json::array();
    for (const PoleInfo& p : out.poles)
        poles.push_back(json{{"n", p.n}, {"residue", to_json(p.residue)}});
    out.body["poles"] = poles;
    out.body["warnings"] = out.warnings;

    int code = out.exit_code;
    if (code == kOk && !out.tolerance_ok) {
        code = kToleranceUnmet;
        out.body["status"] = "tolerance_unmet";
    } else if (code == kPoleAtPoint) {
        out.body["status"] = "pole";
    }

    Response resp;
    resp.exit_code = code;
    if (req.format == "csv" && !out.poles.empty()) {
        std::ostringstream os;
        os << kCsvHeader << '\n';
        GridPointResult r;
        r.s = req.s.value_or(Cx(0.0));
        r.pole = out.poles.front();
        os << csv_row(r) << '\n';
        resp.text = os.str();
    } else if (req.format == "csv") {
        std::ostringstream os;
        os << kCsvHeader << '\n';
        for (const Cx& v : out.values) {
            GridPointResult r;
            r.s = req.s.value_or(Cx(0.0));
            r.value = v;
            r.achieved_error = out.achieved;
            r.converged = out.tolerance_ok;
            os << csv_row(r) << '\n';
        }
        resp.text = os.str();
    } else {
        resp.text = out.body.dump() + "\n";
    }
    return resp;
}

} // namespace omega::cli
