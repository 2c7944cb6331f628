#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "omega/scalar.hpp"

namespace omega::cli {

// Exit codes shared by run() and the binary.
enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kToleranceUnmet = 3,
    kPoleAtPoint = 4,
};

struct Request {
    std::string command; // eval|incomplete|residues|ml|diff|det|solve|reduce|selftest
    std::string potential;
    int k = 0;
    int l = 0;
    int n = -1;
    std::optional<Cx> s{};
    std::optional<Cx> s0{};
    std::optional<Cx> z{};
    std::vector<Cx> samples{}; // solve right-hand side
    std::string q_expr;
    std::optional<double> tol{};
    std::string format = "json"; // json|csv
    std::optional<std::string> batch_path{};
};

struct Response {
    int exit_code = kOk;
    std::string text; // rendered JSON (or CSV stream) for stdout
};

// Dispatches a request; never throws. Diagnostics land in the JSON body, a
// textual duplicate of fatal errors goes to `diag` (the binary wires stderr).
Response run(const Request& req, std::ostream& diag);

// Reduced-sample invariant suite; returns the number of failed checks and
// prints one line per check.
int selftest(std::ostream& log);

} // namespace omega::cli
